#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/weights.hpp"

namespace carleson {

// Complex literal: "1.5", "-2i", "0.3+0.4i", "1e-3-2i".
Complex parse_complex(std::string_view text);

// weight := const:C | poly:G | exp2:B | tilt:K,P[@weight] | product:weight,weight
Weight parse_weight(std::string_view spec);

// measure := zero | lebesgue | gauss:B | atoms:PATH | pullback:A,B
//          | volterra:C0,C1,... | sum:measure;measure[;...]
// pullback and volterra take p and alpha from the command.
Measure parse_measure(std::string_view spec, double p, double alpha);

// Rows "x,y,mass"; '#' starts a comment; a non-numeric first row is a header.
std::vector<Atom> read_atoms_csv(const std::string& path);
std::vector<Atom> parse_atoms_csv(std::string_view text, const std::string& source = "<text>");

// Flat sweep config: one "key = v1 | v2 | ..." per line, '#' comments. The
// cases are the cartesian product, last key varying fastest in file order.
struct SweepConfig {
  std::vector<std::pair<std::string, std::vector<std::string>>> keys;
  std::vector<std::map<std::string, std::string>> cases() const;
};

SweepConfig parse_sweep_config(std::string_view text);

}  // namespace carleson
