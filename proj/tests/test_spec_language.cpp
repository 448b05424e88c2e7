#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "carleson/errors.hpp"
#include "carleson/spec_language.hpp"

using namespace carleson;

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("-2i") == Complex(0, -2));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("0.3+0.4i") == Complex(0.3, 0.4));
  CHECK(parse_complex("1e-3-2i") == Complex(1e-3, -2));
  CHECK(parse_complex("-1-i") == Complex(-1, -1));
  CHECK_THROWS_AS(parse_complex("abc"), ParseError);
  CHECK_THROWS_AS(parse_complex(""), ParseError);
}

TEST_CASE("weight grammar") {
  const Complex z(1.2, -0.7);
  CHECK(parse_weight("const:2")(z) == doctest::Approx(2.0));
  CHECK(parse_weight("poly:2")(z) == doctest::Approx(Weight::radial_power(2)(z)));
  CHECK(parse_weight("exp2:0.3")(z) == doctest::Approx(Weight::gaussian_growth(0.3)(z)));
  CHECK(parse_weight("tilt:1,2")(z) == doctest::Approx(tilted_weight(Weight::constant(1), 1, 2)(z)));
  CHECK(parse_weight("tilt:-1,2@poly:1")(z) == doctest::Approx(tilted_weight(Weight::radial_power(1), -1, 2)(z)));
  CHECK(parse_weight("product:tilt:1,2,poly:1")(z) ==
        doctest::Approx(tilted_weight(Weight::constant(1), 1, 2)(z) * Weight::radial_power(1)(z)));
  CHECK(parse_weight(" product:const:2,product:const:3,poly:0 ")(z) == doctest::Approx(6.0));
  CHECK_THROWS_AS(parse_weight("const:0"), ParseError);
  CHECK_THROWS_AS(parse_weight("tilt:1.5,2"), ParseError);
  CHECK_THROWS_AS(parse_weight("poly:1x"), ParseError);
  CHECK_THROWS_AS(parse_weight("wiggle:1"), ParseError);
  CHECK_THROWS_AS(parse_weight("product:const:1"), ParseError);
}

TEST_CASE("measure grammar") {
  const GridSpec grid;
  CHECK(parse_measure("zero", 2, 1).is_zero());
  CHECK(parse_measure("lebesgue", 2, 1).has_density());
  CHECK(parse_measure("gauss:0.5", 2, 1).has_density());
  CHECK(parse_measure("pullback:0.5,1+i", 2, 1).has_density());
  CHECK(parse_measure("volterra:1,2", 2, 1).has_density());
  const Measure sum = parse_measure("sum:gauss:1;gauss:1", 2, 1);
  const Measure one = parse_measure("gauss:1", 2, 1);
  CHECK(mass_on_cell(sum, {0, 1}, grid) == doctest::Approx(2 * mass_on_cell(one, {0, 1}, grid)));
  CHECK_THROWS_AS(parse_measure("gauss", 2, 1), ParseError);
  CHECK_THROWS_AS(parse_measure("pullback:1", 2, 1), ParseError);
  CHECK_THROWS_AS(parse_measure("atoms:/nonexistent/file.csv", 2, 1), ParseError);
}

TEST_CASE("atoms csv") {
  const auto atoms = parse_atoms_csv("x,y,mass\n0,0,1 # origin\n\n1.5,-2,0.25\n");
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[1].location == Complex(1.5, -2));
  CHECK(atoms[1].mass == 0.25);
  CHECK(parse_atoms_csv("1,2,3\n").size() == 1);
  CHECK_THROWS_AS(parse_atoms_csv("0,0,1\nfoo,1,1\n"), ParseError);
  CHECK_THROWS_AS(parse_atoms_csv("0,0,-1\n"), ParseError);
  CHECK_THROWS_AS(parse_atoms_csv("0,0\n"), ParseError);

  const std::string path = "test_spec_language_atoms.csv";
  std::ofstream(path) << "0.5,0.5,2\n";
  const Measure mu = parse_measure("atoms:" + path, 2, 1);
  CHECK(mu.atoms().size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("sweep config expands to the cartesian product") {
  const auto cfg = parse_sweep_config("# grid\np = 1.5 | 2\nr = 1|2|5\nmeasure = gauss:1 # only one\n");
  REQUIRE(cfg.keys.size() == 3);
  const auto cases = cfg.cases();
  REQUIRE(cases.size() == 6);
  CHECK(cases[0].at("p") == "1.5");
  CHECK(cases[0].at("r") == "1");
  CHECK(cases[1].at("r") == "2");
  CHECK(cases[3].at("p") == "2");
  CHECK(cases[5].at("measure") == "gauss:1");
  CHECK_THROWS_AS(parse_sweep_config("p 2\n"), ParseError);
  CHECK_THROWS_AS(parse_sweep_config("p = 1 |\n"), ParseError);
  CHECK_THROWS_AS(parse_sweep_config("p = 1\np = 2\n"), ParseError);
}
