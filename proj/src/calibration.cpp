#include "carleson/calibration.hpp"

#include <fstream>
#include <sstream>

#include "carleson/errors.hpp"

namespace carleson {

std::string_view builtin_calibration_text() {
  static constexpr std::string_view kText =
#include "calibration_table.inc"
      ;
  return kText;
}

const Calibration& Calibration::builtin() {
  static const Calibration table = parse(builtin_calibration_text());
  return table;
}

Calibration Calibration::parse(std::string_view text) {
  Calibration cal;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_version = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string id;
    if (!(fields >> id)) continue;
    if (id == "version") {
      if (!(fields >> cal.version_)) throw ParseError("calibration line " + std::to_string(line_no) + ": bad version");
      have_version = true;
      continue;
    }
    Band b;
    if (!(fields >> b.lo >> b.hi) || !(b.lo <= b.hi))
      throw ParseError("calibration line " + std::to_string(line_no) + ": expected '<id> <lo> <hi>' with lo <= hi");
    if (!cal.bands_.emplace(id, b).second)
      throw ParseError("calibration line " + std::to_string(line_no) + ": duplicate id " + id);
  }
  if (!have_version) throw ParseError("calibration table has no version line");
  return cal;
}

Calibration Calibration::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open calibration file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Band& Calibration::band(const std::string& id) const {
  const auto it = bands_.find(id);
  if (it == bands_.end()) throw DomainError("calibration has no band for " + id);
  return it->second;
}

}  // namespace carleson
