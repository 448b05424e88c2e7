#include "carleson/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "carleson/errors.hpp"
#include "carleson/fock_space.hpp"
#include "carleson/operator_classifiers.hpp"
#include "carleson/oracle_suite.hpp"
#include "carleson/parallel.hpp"
#include "carleson/spec_language.hpp"

namespace carleson {
namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; }

struct GridOptions {
  int window = GridSpec::kDefaultWindow;
  double step = GridSpec::kDefaultStep;
  double radius = GridSpec::kDefaultRadius;

  void attach(CLI::App* app) {
    app->add_option("--window", window, "lattice window half width n_max")->check(CLI::PositiveNumber);
    app->add_option("--step", step, "quadrature step")->check(CLI::PositiveNumber);
    app->add_option("--radius", radius, "truncation radius")->check(CLI::PositiveNumber);
  }
  GridSpec grid() const { return GridSpec(step, radius, Window(window)); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void print_verdict(std::ostream& out, const SummingVerdict& v) {
  out << "regime          " << to_string(v.regime) << "\n"
      << "s               " << fmt(v.s) << "\n"
      << "lattice_norm    " << fmt(v.lattice_norm) << "\n"
      << "integral_norm   " << fmt(v.integral_norm) << "\n"
      << "pi_low          " << fmt(v.pi_low) << "\n"
      << "pi_high         " << fmt(v.pi_high) << "\n"
      << "classification  " << to_string(v.classification) << "\n"
      << "basis           " << v.basis << "\n";
}

int exit_for(Classification c) { return c == Classification::inconclusive ? kExitInconclusive : kExitOk; }

int report_operator(std::ostream& out, std::ostream& err, const OperatorReport& r) {
  out << "verdict         " << to_string(r.verdict) << "\n"
      << "bounded         " << (r.bounded ? "yes" : "no") << "\n";
  if (r.cross_check)
    out << "cross_check     " << to_string(r.cross_check->classification) << "\n";
  out << "reason          " << r.reason << "\n";
  if (!r.agrees) {
    err << "error: cross-check contradicts the closed form\n";
    return kExitError;
  }
  return r.verdict == Verdict::inconclusive ? kExitInconclusive : kExitOk;
}

const char* const kSweepKeys[] = {"p", "r", "alpha", "weight", "measure", "window", "step", "radius"};

struct SweepCase {
  std::string id;
  std::map<std::string, std::string> values;
  std::optional<SummingVerdict> verdict;
  std::string error;
};

double sweep_number(const std::map<std::string, std::string>& c, const std::string& key, std::optional<double> fallback) {
  const auto it = c.find(key);
  if (it == c.end()) {
    if (!fallback) throw ParseError("sweep config is missing required key '" + key + "'");
    return *fallback;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size()) throw ParseError("sweep key '" + key + "' needs a number, got '" + it->second + "'");
  return v;
}

int run_sweep(const std::string& config_path, const std::string& csv_path, const Calibration& cal, std::ostream& out,
              std::ostream& err) {
  const SweepConfig cfg = parse_sweep_config(read_file(config_path));
  for (const auto& [key, values] : cfg.keys)
    if (std::find(std::begin(kSweepKeys), std::end(kSweepKeys), key) == std::end(kSweepKeys))
      throw ParseError("unknown sweep key '" + key + "'");
  if (!std::any_of(cfg.keys.begin(), cfg.keys.end(), [](const auto& kv) { return kv.first == "measure"; }))
    throw ParseError("sweep config is missing required key 'measure'");

  std::vector<SweepCase> cases;
  for (const auto& values : cfg.cases()) {
    char id[32];
    std::snprintf(id, sizeof id, "case_%04zu", cases.size());
    cases.push_back({id, values, std::nullopt, {}});
  }
  // Validate numbers up front so a typo fails before any work.
  for (const auto& c : cases) {
    sweep_number(c.values, "p", std::nullopt);
    sweep_number(c.values, "r", std::nullopt);
    sweep_number(c.values, "alpha", 1.0);
    sweep_number(c.values, "window", GridSpec::kDefaultWindow);
    sweep_number(c.values, "step", GridSpec::kDefaultStep);
    sweep_number(c.values, "radius", GridSpec::kDefaultRadius);
  }

  parallel_for(cases.size(), [&](std::size_t i) {
    SweepCase& c = cases[i];
    try {
      const double p = sweep_number(c.values, "p", std::nullopt);
      const double alpha = sweep_number(c.values, "alpha", 1.0);
      const GridSpec grid(sweep_number(c.values, "step", GridSpec::kDefaultStep),
                          sweep_number(c.values, "radius", GridSpec::kDefaultRadius),
                          Window(static_cast<int>(sweep_number(c.values, "window", GridSpec::kDefaultWindow))));
      const auto wit = c.values.find("weight");
      const Weight w = parse_weight(wit == c.values.end() ? "const:1" : wit->second);
      const Measure mu = parse_measure(c.values.at("measure"), p, alpha);
      c.verdict = classify_embedding(p, sweep_number(c.values, "r", std::nullopt), alpha, w, mu, grid, cal);
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });

  std::string csv = csv_header() + "\n";
  int rc = kExitOk;
  for (const auto& c : cases) {
    if (!c.verdict) {
      err << c.id << ": " << c.error << "\n";
      rc = kExitError;
      continue;
    }
    csv += csv_row(c.id, *c.verdict) + "\n";
    out << c.id << "  " << to_string(c.verdict->classification) << "\n";
    if (rc == kExitOk && c.verdict->classification == Classification::inconclusive) rc = kExitInconclusive;
  }
  if (!csv_path.empty()) write_file(csv_path, csv);
  return rc;
}

}  // namespace

std::string csv_header() {
  return "case_id,p,r,alpha,regime,s,lattice_norm,integral_norm,pi_low,pi_high,classification";
}

std::string csv_row(const std::string& case_id, const SummingVerdict& v) {
  std::string row = case_id;
  for (double x : {v.p, v.r, v.alpha}) row += "," + fmt(x);
  row += std::string(",") + to_string(v.regime);
  for (double x : {v.s, v.lattice_norm, v.integral_norm, v.pi_low, v.pi_high}) row += "," + fmt(x);
  row += std::string(",") + to_string(v.classification);
  return row;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Summing-operator diagnostics for weighted Fock spaces", "carleson"};
  app.require_subcommand(1);
  std::string calibration_path;
  app.add_option("--calibration", calibration_path, "calibration table (defaults to the built-in one)");

  std::optional<int> result;
  auto calibration = [&]() { return calibration_path.empty() ? Calibration::builtin() : Calibration::load(calibration_path); };

  // classify-embedding
  auto* emb = app.add_subcommand("classify-embedding", "r-summability of F^p_{α,w} → L^p_α(μ)");
  double p = 2.0, r = 2.0, alpha = 1.0;
  std::string weight = "const:1", measure, csv_path;
  GridOptions emb_grid;
  emb->add_option("--p", p)->required();
  emb->add_option("--r", r)->required();
  emb->add_option("--alpha", alpha);
  emb->add_option("--weight", weight);
  emb->add_option("--measure", measure)->required();
  std::uint64_t emb_seed = 1;
  emb->add_option("--seed", emb_seed, "accepted for uniformity; this path draws no random numbers");
  emb->add_option("--csv", csv_path, "write a one-row CSV");
  emb_grid.attach(emb);
  emb->callback([&] {
    const Measure mu = parse_measure(measure, p, alpha);
    const SummingVerdict v = classify_embedding(p, r, alpha, parse_weight(weight), mu, emb_grid.grid(), calibration());
    print_verdict(out, v);
    if (!csv_path.empty()) write_file(csv_path, csv_header() + "\n" + csv_row("cli", v) + "\n");
    result = exit_for(v.classification);
  });

  // apr-constant
  auto* apr = app.add_subcommand("apr-constant", "A_{p,r}-type constant of a weight");
  double apr_p = 2.0, apr_t = 1.0;
  std::string apr_weight;
  GridOptions apr_grid;
  apr->add_option("--p", apr_p)->required();
  apr->add_option("--t", apr_t)->check(CLI::PositiveNumber);
  apr->add_option("--weight", apr_weight)->required();
  apr_grid.attach(apr);
  apr->callback([&] {
    const ConstantReport rep = apr_constant_report(parse_weight(apr_weight), apr_p, apr_t, apr_grid.grid());
    out << "value           " << fmt(rep.value) << "\n"
        << "argmax          " << fmt(rep.argmax) << "\n"
        << "membership      " << to_string(rep.membership) << "\n";
    for (const auto& [n, v] : rep.trace) out << "trace           " << n << " " << fmt(v) << "\n";
    result = rep.membership == Membership::inconclusive ? kExitInconclusive : kExitOk;
  });

  // kernel-norm
  auto* kn = app.add_subcommand("kernel-norm", "‖K_u‖ in F^p_{α,w} against its proxy");
  std::string kn_u = "0", kn_weight = "const:1";
  double kn_p = 2.0, kn_alpha = 1.0;
  GridOptions kn_grid;
  kn->add_option("--u", kn_u, "complex point, e.g. 1.5-2i");
  kn->add_option("--p", kn_p)->required();
  kn->add_option("--alpha", kn_alpha);
  kn->add_option("--weight", kn_weight);
  kn_grid.attach(kn);
  kn->callback([&] {
    const KernelNorm k = kernel_norm(parse_complex(kn_u), kn_p, kn_alpha, parse_weight(kn_weight), kn_grid.grid());
    out << "log_direct      " << fmt(k.log_direct) << "\n"
        << "log_proxy       " << fmt(k.log_proxy) << "\n"
        << "ratio           " << fmt(k.ratio()) << "\n";
    result = kExitOk;
  });

  // classify-composition
  auto* comp = app.add_subcommand("classify-composition", "C_φ with φ(z) = az + b");
  std::string comp_a, comp_b = "0";
  double comp_p = 2.0, comp_r = 2.0, comp_alpha = 1.0;
  GridOptions comp_grid;
  comp->add_option("--a", comp_a)->required();
  comp->add_option("--b", comp_b);
  comp->add_option("--p", comp_p)->required();
  comp->add_option("--r", comp_r)->required();
  comp->add_option("--alpha", comp_alpha);
  comp_grid.attach(comp);
  comp->callback([&] {
    const AffineSymbol phi{parse_complex(comp_a), parse_complex(comp_b)};
    result = report_operator(out, err, classify_composition(phi, comp_p, comp_r, comp_alpha, comp_grid.grid()));
  });

  // classify-volterra
  auto* vol = app.add_subcommand("classify-volterra", "J_g with polynomial symbol g");
  std::string vol_g;
  double vol_p = 2.0, vol_r = 2.0, vol_alpha = 1.0;
  GridOptions vol_grid;
  vol->add_option("--g", vol_g, "coefficients c0,c1,... (complex allowed)")->required();
  vol->add_option("--p", vol_p)->required();
  vol->add_option("--r", vol_r)->required();
  vol->add_option("--alpha", vol_alpha);
  vol_grid.attach(vol);
  vol->callback([&] {
    std::vector<Complex> coeffs;
    std::stringstream ss(vol_g);
    for (std::string tok; std::getline(ss, tok, ',');) coeffs.push_back(parse_complex(tok));
    result = report_operator(out, err, classify_volterra(PolynomialSymbol(coeffs), vol_p, vol_r, vol_alpha, vol_grid.grid()));
  });

  // classify-differentiation
  auto* diff = app.add_subcommand("classify-differentiation", "D^(k): F^p_{α,w} → L^p_α(μ)");
  int diff_k = 1;
  double diff_p = 2.0, diff_r = 2.0, diff_alpha = 1.0;
  std::string diff_weight = "const:1", diff_measure;
  GridOptions diff_grid;
  diff->add_option("--k", diff_k)->required();
  diff->add_option("--p", diff_p)->required();
  diff->add_option("--r", diff_r)->required();
  diff->add_option("--alpha", diff_alpha);
  diff->add_option("--weight", diff_weight);
  diff->add_option("--measure", diff_measure)->required();
  diff_grid.attach(diff);
  diff->callback([&] {
    const Measure mu = parse_measure(diff_measure, diff_p, diff_alpha);
    result = report_operator(
        out, err, reduce_differentiation(diff_k, diff_p, diff_r, diff_alpha, parse_weight(diff_weight), mu, diff_grid.grid()));
  });

  // verify
  auto* ver = app.add_subcommand("verify", "run an oracle suite");
  std::string suite = "all";
  std::uint64_t seed = 1;
  GridOptions ver_grid;
  ver->add_option("--suite", suite)
      ->check(CLI::IsMember({"lattice-integral", "gaussian-sum", "hs", "berezin", "diag", "monotonicity", "order-bounded", "all"}));
  ver->add_option("--seed", seed);
  ver_grid.attach(ver);
  ver->callback([&] {
    bool all = true;
    for (const auto& line : run_suite(suite, seed, ver_grid.grid(), calibration())) {
      out << (line.pass ? "PASS  " : "FAIL  ") << line.name << "  " << line.detail << "\n";
      all = all && line.pass;
    }
    result = all ? kExitOk : kExitError;
  });

  // sweep
  auto* sw = app.add_subcommand("sweep", "classify-embedding over a cartesian parameter grid");
  std::string sweep_config, sweep_csv;
  sw->add_option("--config", sweep_config)->required();
  sw->add_option("--csv", sweep_csv);
  sw->callback([&] { result = run_sweep(sweep_config, sweep_csv, calibration(), out, err); });

  std::vector<const char*> argv{"carleson"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return result.value_or(kExitOk);
}

}  // namespace carleson
