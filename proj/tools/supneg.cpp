// supneg: entanglement measures and superposition bounds for tripartite pure states.
//
//   supneg measure --named ghz
//   supneg bounds --s1 named:ghz --s2 named:w --a1 'sqrt(0.5)' --a2 'sqrt(0.5)'
//   supneg sweep --grid 0,1,21 --phi 0 --output z.csv
//   supneg verify --samples 100 --seed 42 --tol 1e-9
//
// Exit codes: 0 success, 1 verification violation, 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "supneg/bounds.hpp"
#include "supneg/io.hpp"
#include "supneg/measures.hpp"
#include "supneg/sweep.hpp"
#include "supneg/verify.hpp"

namespace {

using supneg::io::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr double kCliCoefficientTol = 1e-6;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

supneg::PureState load_normalized(const std::string& source) {
  auto s = supneg::io::load_state(source);
  if (!s.is_normalized()) {
    std::cerr << "warning: state '" << source << "' has squared norm " << supneg::io::format_double(s.norm_sq())
              << "; normalizing\n";
    s = supneg::normalize(s).state;
  }
  return s;
}

std::string csv_line(const json& flat) {
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [k, v] : flat.items()) {
    head << (first ? "" : ",") << k;
    row << (first ? "" : ",")
        << (v.is_number_float() ? supneg::io::format_double(v.get<double>()) : v.dump());
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

std::string render(const json& j, const std::string& format) {
  if (format == "csv") return csv_line(j);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
  std::string named, state, output, format = "json";
  double tol = supneg::kBiseparableTol;
};

int run_measure(const MeasureArgs& a) {
  if (a.named.empty() == a.state.empty()) throw UsageError("measure: give exactly one of --named or --state");
  const auto s = load_normalized(a.named.empty() ? a.state : "named:" + a.named);
  supneg::require_tripartite(s, "measure");
  auto j = supneg::io::to_json(supneg::measure(s));
  j["biseparable"] = supneg::is_biseparable(s, a.tol).biseparable;
  emit(render(j, a.format), a.output);
  return kExitOk;
}

// ----------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string s1, s2, a1, a2, output, format = "json";
  bool no_coeff_check = false, dump_terms = false;
};

int run_bounds(const BoundsArgs& a) {
  const auto a1 = supneg::io::parse_complex(a.a1);
  const auto a2 = supneg::io::parse_complex(a.a2);
  const double total = std::norm(a1) + std::norm(a2);
  if (!a.no_coeff_check && std::abs(total - 1.0) > kCliCoefficientTol)
    throw supneg::CoefficientError("|a1|^2 + |a2|^2 = " + supneg::io::format_double(total) +
                                   " (use --no-coeff-check to bypass)");
  const supneg::SuperpositionSpec spec(a1, load_normalized(a.s1), a2, load_normalized(a.s2), false);
  const auto report = supneg::bounds_report(spec);
  const bool terms = a.dump_terms && a.format != "csv";
  emit(render(supneg::io::to_json(report, terms), a.format), a.output);
  return kExitOk;
}

// ------------------------------------------------------------------ sweep

struct SweepArgs {
  std::string grid = "0,1,21", output, fit;
  double phi = 0.0;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--grid expects start,stop,steps");
  const double steps = supneg::io::parse_double(parts[2]);
  if (steps < 1 || steps != std::floor(steps)) throw UsageError("--grid: steps must be a positive integer");
  return supneg::linear_grid(supneg::io::parse_double(parts[0]), supneg::io::parse_double(parts[1]),
                             static_cast<std::size_t>(steps));
}

json fit_json(const supneg::ThreeTermFit& fit, const std::array<double, 3>& printed) {
  json table = json::array();
  const char* names[] = {"c1_(1-p)", "c2_sqrt(p(1-p))", "c3_p"};
  for (int k = 0; k < 3; ++k)
    table.push_back({{"term", names[k]},
                     {"fitted", fit.c[k]},
                     {"printed", printed[k]},
                     {"printed_over_fitted", printed[k] / fit.c[k]}});
  return {{"c1", fit.c[0]}, {"c2", fit.c[1]}, {"c3", fit.c[2]}, {"max_residual", fit.max_residual},
          {"comparison", table}};
}

int run_sweep(const SweepArgs& a) {
  const auto grid = parse_grid(a.grid);
  const auto rows = supneg::z_family_sweep(grid, a.phi);
  std::ostringstream csv;
  supneg::io::write_sweep_csv(csv, rows);
  emit(csv.str(), a.output);

  std::string fit_path = a.fit;
  if (fit_path.empty() && !a.output.empty() && a.output != "-") fit_path = a.output + ".fit.json";
  if (!fit_path.empty() && grid.size() >= 3) {
    std::vector<double> ps, ngme, nmulti;
    double max_gap = -INFINITY;
    for (const auto& r : rows) {
      ps.push_back(r.p);
      ngme.push_back(r.report.ngme_exact);
      nmulti.push_back(r.report.n_exact);
      max_gap = std::max(max_gap, r.report.t2_gap());
    }
    const json side = {
        {"phi", a.phi},
        {"points", rows.size()},
        {"max_t2_gap", max_gap},
        {"ngme_fit", fit_json(supneg::fit_three_term(ps, ngme), supneg::kPrintedGmeConstants)},
        {"n_fit", fit_json(supneg::fit_three_term(ps, nmulti), supneg::kPrintedNegativityConstants)}};
    emit(side.dump(2) + "\n", fit_path);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::string output, generator_scale = "canonical";
};

int run_verify(const VerifyArgs& a) {
  if (a.samples < 1) throw UsageError("verify: --samples must be >= 1");
  supneg::verify::Options opt;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.tol = a.tol;
  if (a.generator_scale == "half") opt.convention = supneg::GeneratorConvention::half_normalized();
  else if (a.generator_scale != "canonical") throw UsageError("--generator-scale: canonical or half");

  const auto summary = supneg::verify::run(opt);
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
  emit(supneg::verify::to_json(summary).dump(2) + "\n", a.output);
  if (!summary.pass()) {
    for (const auto& [name, c] : summary.checks)
      if (!c.pass())
        std::cerr << "FAIL " << name << ": max violation " << supneg::io::format_double(c.max_violation) << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement measures and superposition bounds for tripartite pure states"};
  app.require_subcommand(1);

  MeasureArgs m;
  auto* measure = app.add_subcommand("measure", "negativities and concurrences of one state");
  measure->add_option("--named", m.named, "named state: ghz, ghz:d=3, w, z:p=0.3,phi=0.0");
  measure->add_option("--state", m.state, "JSON state file");
  measure->add_option("--tol", m.tol, "biseparability tolerance");
  measure->add_option("--format", m.format)->check(CLI::IsMember({"json", "csv"}));
  measure->add_option("-o,--output", m.output);

  BoundsArgs b;
  auto* bounds = app.add_subcommand("bounds", "exact values and bounds for a1|s1> + a2|s2>");
  bounds->add_option("--s1", b.s1, "first state (file or named:<spec>)")->required();
  bounds->add_option("--s2", b.s2, "second state (file or named:<spec>)")->required();
  bounds->add_option("--a1", b.a1, "coefficient, re+imi or sqrt(x)")->required();
  bounds->add_option("--a2", b.a2, "coefficient, re+imi or sqrt(x)")->required();
  bounds->add_flag("--no-coeff-check", b.no_coeff_check, "allow |a1|^2+|a2|^2 != 1");
  bounds->add_flag("--dump-terms", b.dump_terms, "include the cross-term table");
  bounds->add_option("--format", b.format)->check(CLI::IsMember({"json", "csv"}));
  bounds->add_option("-o,--output", b.output);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "bounds along sqrt(p) GHZ + e^{i phi} sqrt(1-p) W");
  sweep->add_option("--grid", sw.grid, "start,stop,steps")->capture_default_str();
  sweep->add_option("--phi", sw.phi, "relative phase on the W component");
  sweep->add_option("-o,--output", sw.output, "CSV path (stdout if omitted)");
  sweep->add_option("--fit", sw.fit, "least-squares fit sidecar (JSON); defaults to <output>.fit.json");

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "property checks over seeded random ensembles");
  verify->add_option("--samples", v.samples)->capture_default_str();
  verify->add_option("--seed", v.seed)->capture_default_str();
  verify->add_option("--tol", v.tol)->capture_default_str();
  verify->add_option("-o,--output", v.output);
  verify->add_option("--generator-scale", v.generator_scale, "canonical | half (mutation check)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*measure) return run_measure(m);
    if (*bounds) return run_bounds(b);
    if (*sweep) return run_sweep(sw);
    if (*verify) return run_verify(v);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
