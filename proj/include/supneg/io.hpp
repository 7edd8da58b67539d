#pragma once

#include <cctype>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "measures.hpp"
#include "state.hpp"
#include "states.hpp"
#include "sweep.hpp"

namespace supneg::io {

using json = nlohmann::ordered_json;

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- state files
// {"dims":[dA,dB,dC], "amplitudes":[[re,im],...]}, row-major amplitudes.

inline json state_to_json(const PureState& s) {
  json amps = json::array();
  for (const auto& a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"dims", s.dims()}, {"amplitudes", std::move(amps)}};
}

inline PureState state_from_json(const json& j) {
  try {
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    std::vector<complex> amps;
    for (const auto& a : j.at("amplitudes")) {
      if (!a.is_array() || a.size() != 2) throw ParseError("state file: amplitude must be [re, im]");
      amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    return PureState(std::move(dims), std::move(amps));
  } catch (const json::exception& e) {
    throw ParseError(std::string("state file: ") + e.what());
  }
}

inline PureState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("state file '" + path + "': " + e.what());
  }
  return state_from_json(j);
}

inline void write_state_file(const std::string& path, const PureState& s) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << state_to_json(s).dump(2) << '\n';
}

// ------------------------------------------------------------- scalar parsing

inline double parse_double(std::string_view text) {
  const std::string buf(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + buf + "'");
  }
  if (used != buf.size()) throw ParseError("not a number: '" + buf + "'");
  return v;
}

namespace detail {

inline std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// real literal, or sqrt(x), optionally signed
inline double parse_real_term(std::string_view t) {
  std::string s = strip(t);
  double sign = 1.0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    const double x = parse_double(s.substr(5, s.size() - 6));
    if (x < 0) throw ParseError("sqrt of negative number");
    return sign * std::sqrt(x);
  }
  return sign * parse_double(s);
}

}  // namespace detail

/// "re", "re+imi", "re-imi", "imi", "i", with sqrt(x) allowed for either part.
inline complex parse_complex(std::string_view text) {
  std::string s = detail::strip(text);
  if (s.empty()) throw ParseError("empty complex literal");
  if (s.back() != 'i') return {detail::parse_real_term(s), 0.0};
  s.pop_back();
  // find the sign that separates real and imaginary parts (not an exponent sign, not inside sqrt())
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const char c = s[k];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
  }
  auto imag_of = [](std::string part) {
    part = detail::strip(part);
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return detail::parse_real_term(part);
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  return {detail::parse_real_term(s.substr(0, split)), imag_of(s.substr(split))};
}

// ------------------------------------------------------------- named states
// ghz, ghz:d=3, w, z:p=0.3,phi=0.0, and basis:i (computational basis state on qubits)

inline std::map<std::string, std::string> parse_kv(std::string_view body) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    const auto item = body.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value in '" + std::string(item) + "'");
    kv[detail::strip(item.substr(0, eq))] = detail::strip(item.substr(eq + 1));
    pos = comma + 1;
  }
  return kv;
}

inline PureState named_state(std::string_view spec) {
  if (spec.rfind("named:", 0) == 0) spec.remove_prefix(6);
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const auto kv = colon == std::string_view::npos ? std::map<std::string, std::string>{} : parse_kv(spec.substr(colon + 1));
  auto get = [&](const std::string& key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_double(it->second);
  };
  for (const auto& [k, v] : kv) {
    const bool known = (name == "ghz" && k == "d") || (name == "z" && (k == "p" || k == "phi")) ||
                       (name == "basis" && k == "index");
    if (!known) throw ParseError("unknown parameter '" + k + "' for named state '" + name + "'");
  }
  if (name == "ghz") {
    const double d = get("d", 2);
    if (d < 2 || d != std::floor(d)) throw ParseError("ghz: d must be an integer >= 2");
    return ghz(static_cast<std::size_t>(d));
  }
  if (name == "w") return w_state();
  if (name == "z") return normalize(z_family({get("p", 0.5), get("phi", 0.0)}).chi()).state;
  if (name == "basis") return basis_state({2, 2, 2}, static_cast<std::size_t>(get("index", 0)));
  throw ParseError("unknown named state '" + name + "'");
}

/// Either a named-state spec ("ghz", "named:w", ...) or a JSON state file path.
inline PureState load_state(const std::string& source) {
  if (source.rfind("named:", 0) == 0 || !std::filesystem::exists(source)) return named_state(source);
  return read_state_file(source);
}

// ------------------------------------------------------------------ reports

inline json to_json(const MeasureReport& r) {
  return {{"n_a", r.n[0]},       {"n_b", r.n[1]},   {"n_c", r.n[2]},         {"n_multi", r.n_multi},
          {"n_gme", r.n_gme},    {"c2_a", r.c2[0]}, {"c2_b", r.c2[1]},       {"c2_c", r.c2[2]},
          {"c2_multi", r.c2_multi}, {"c_gme", r.c_gme}, {"c_gme_unscaled", r.c_gme_unscaled}};
}

inline json to_json(const CrossTermTable& t) {
  const char* pair_names[] = {"11", "22", "12"};
  json raw;
  for (std::size_t p = 0; p < 3; ++p)
    raw[pair_names[p]] = {{"A", t.raw[p][0]}, {"B", t.raw[p][1]}, {"C", t.raw[p][2]}};
  return {{"raw", raw},     {"F11", t.F11}, {"F22", t.F22}, {"F12", t.F12}, {"f11", t.f11}, {"f22", t.f22},
          {"f12", t.f12},   {"g11", t.g11}, {"g22", t.g22}, {"g12", t.g12}};
}

inline json to_json(const BoundsReport& r, bool with_terms = false) {
  json j = {{"norm_sq", r.norm_sq},         {"n_exact", r.n_exact},     {"t1_upper", r.t1.upper},
            {"t1_lower_raw", r.t1.lower_raw}, {"t1_lower", r.t1.lower}, {"ngme_exact", r.ngme_exact},
            {"t2_upper", r.t2.upper},       {"t2_lower_raw", r.t2.lower_raw}, {"t2_lower", r.t2.lower},
            {"t2_gap", r.t2_gap()}};
  if (with_terms) j["cross_terms"] = to_json(r.terms);
  return j;
}

/// Shortest text that round-trips a double (max_digits10).
inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline constexpr const char* kSweepHeader =
    "p,phi,norm_sq,n_exact,t1_upper,t1_lower,ngme_exact,t2_upper,t2_lower,t2_gap";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    const double cols[] = {row.p,       row.phi,       r.norm_sq,    r.n_exact,    r.t1.upper,
                           r.t1.lower,  r.ngme_exact,  r.t2.upper,   r.t2.lower,   r.t2_gap()};
    for (std::size_t k = 0; k < std::size(cols); ++k) out << (k ? "," : "") << format_double(cols[k]);
    out << '\n';
  }
}

}  // namespace supneg::io
