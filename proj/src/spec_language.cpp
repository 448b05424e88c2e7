#include "carleson/spec_language.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "carleson/errors.hpp"

namespace carleson {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

bool to_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty();
}

double number(std::string_view s, std::string_view what) {
  double v = 0.0;
  if (!to_double(s, v)) throw ParseError("expected a number for " + std::string(what) + ", got '" + std::string(s) + "'");
  return v;
}

// Cursor-based reader for the weight grammar.
class WeightParser {
 public:
  explicit WeightParser(std::string_view text) : text_(text) {}

  Weight parse() {
    Weight w = term();
    if (pos_ != text_.size())
      throw ParseError("unexpected '" + std::string(text_.substr(pos_)) + "' in weight spec");
    return w;
  }

 private:
  Weight term() {
    const std::string_view rest = text_.substr(pos_);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("weight spec needs 'kind:args', got '" + std::string(rest) + "'");
    const std::string kind(trim(rest.substr(0, colon)));
    pos_ += colon + 1;
    if (kind == "const") {
      const double c = num("const:C");
      if (!(c > 0.0)) throw ParseError("const:C needs C > 0");
      return Weight::constant(c);
    }
    if (kind == "poly") return Weight::radial_power(num("poly:G"));
    if (kind == "exp2") return Weight::gaussian_growth(num("exp2:B"));
    if (kind == "tilt") {
      const double k = num("tilt:K");
      if (k != std::floor(k)) throw ParseError("tilt:K needs an integer K");
      expect(',');
      const double p = num("tilt:K,P");
      Weight base = Weight::constant(1.0);
      if (peek() == '@') {
        ++pos_;
        base = term();
      }
      return tilted_weight(base, static_cast<int>(k), p);
    }
    if (kind == "product") {
      Weight a = term();
      expect(',');
      Weight b = term();
      return product(a, b);
    }
    throw ParseError("unknown weight kind '" + kind + "'");
  }

  // Longest numeric token at the cursor.
  double num(std::string_view what) {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
                                  text_[end] == '-' || text_[end] == '+' || text_[end] == 'e' || text_[end] == 'E'))
      ++end;
    const double v = number(text_.substr(pos_, end - pos_), what);
    pos_ = end;
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "' in weight spec at offset " + std::to_string(pos_));
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty complex number");
  if (s.back() != 'i') return {number(s, "complex number"), 0.0};
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      const std::string_view im = body.substr(i);
      return {number(body.substr(0, i), "real part"), im.size() == 1 ? (im[0] == '-' ? -1.0 : 1.0) : number(im, "imaginary part")};
    }
  }
  if (body.empty() || body == "+") return {0.0, 1.0};
  if (body == "-") return {0.0, -1.0};
  return {0.0, number(body, "imaginary part")};
}

Weight parse_weight(std::string_view spec) { return WeightParser(trim(spec)).parse(); }

Measure parse_measure(std::string_view spec, double p, double alpha) {
  spec = trim(spec);
  if (spec == "zero") return Measure::zero();
  if (spec == "lebesgue") return Measure::lebesgue();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown measure spec '" + std::string(spec) + "'");
  const std::string kind(spec.substr(0, colon));
  const std::string_view args = spec.substr(colon + 1);
  if (kind == "gauss") return Measure::gaussian(number(args, "gauss:B"));
  if (kind == "atoms") return Measure::from_atoms(read_atoms_csv(std::string(trim(args))), "atoms:" + std::string(trim(args)));
  if (kind == "pullback") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw ParseError("pullback needs 'pullback:A,B'");
    return pullback_measure(AffineSymbol{parse_complex(parts[0]), parse_complex(parts[1])}, p, alpha);
  }
  if (kind == "volterra") {
    std::vector<Complex> c;
    for (auto part : split(args, ',')) c.push_back(parse_complex(part));
    return volterra_measure(PolynomialSymbol(c), p);
  }
  if (kind == "sum") {
    const auto parts = split(args, ';');
    Measure total = parse_measure(parts.front(), p, alpha);
    for (std::size_t i = 1; i < parts.size(); ++i) total = total + parse_measure(parts[i], p, alpha);
    return total;
  }
  throw ParseError("unknown measure kind '" + kind + "'");
}

std::vector<Atom> parse_atoms_csv(std::string_view text, const std::string& source) {
  std::vector<Atom> atoms;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto cols = split(row, ',');
    double x = 0, y = 0, m = 0;
    const bool numeric = cols.size() == 3 && to_double(cols[0], x) && to_double(cols[1], y) && to_double(cols[2], m);
    if (!numeric) {
      if (first && cols.size() == 3) {
        first = false;
        continue;  // header
      }
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected 'x,y,mass'");
    }
    first = false;
    if (!(m >= 0.0)) throw ParseError(source + ":" + std::to_string(line_no) + ": mass must be nonnegative");
    atoms.push_back({Complex(x, y), m});
  }
  return atoms;
}

std::vector<Atom> read_atoms_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open atoms file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_atoms_csv(buf.str(), path);
}

SweepConfig parse_sweep_config(std::string_view text) {
  SweepConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string_view::npos) throw ParseError("sweep line " + std::to_string(line_no) + ": expected 'key = values'");
    const std::string key(trim(row.substr(0, eq)));
    if (key.empty()) throw ParseError("sweep line " + std::to_string(line_no) + ": empty key");
    for (const auto& [k, v] : cfg.keys)
      if (k == key) throw ParseError("sweep line " + std::to_string(line_no) + ": duplicate key " + key);
    std::vector<std::string> values;
    for (auto v : split(row.substr(eq + 1), '|')) {
      if (v.empty()) throw ParseError("sweep line " + std::to_string(line_no) + ": empty value");
      values.emplace_back(v);
    }
    cfg.keys.emplace_back(key, std::move(values));
  }
  return cfg;
}

std::vector<std::map<std::string, std::string>> SweepConfig::cases() const {
  std::vector<std::map<std::string, std::string>> out{{}};
  for (const auto& [key, values] : keys) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& partial : out)
      for (const auto& v : values) {
        auto c = partial;
        c[key] = v;
        next.push_back(std::move(c));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace carleson
