#pragma once

#include <map>
#include <string>
#include <string_view>

namespace carleson {

struct Band {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  // Band widened by a relative slack on both sides (0.2 → ±20%).
  bool contains_with_slack(double x, double slack) const { return x >= lo / (1.0 + slack) && x <= hi * (1.0 + slack); }
};

// Versioned table of pinned ratio bands, keyed by case id. The compiled-in
// table is identical to data/calibration.txt.
class Calibration {
 public:
  static const Calibration& builtin();
  static Calibration parse(std::string_view text);
  static Calibration load(const std::string& path);

  int version() const { return version_; }
  bool has(const std::string& id) const { return bands_.count(id) != 0; }
  // Throws DomainError for an unknown id.
  const Band& band(const std::string& id) const;
  const std::map<std::string, Band>& bands() const { return bands_; }

 private:
  int version_ = 0;
  std::map<std::string, Band> bands_;
};

std::string_view builtin_calibration_text();

}  // namespace carleson
