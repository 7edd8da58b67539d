#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "errors.hpp"
#include "measures.hpp"
#include "state.hpp"

namespace supneg {

/// a1|psi1> + a2|psi2> with |a1|^2 + |a2|^2 = 1 (unless the check is bypassed).
struct SuperpositionSpec {
  complex a1;
  PureState psi1;
  complex a2;
  PureState psi2;
  bool check_coefficients = true;

  SuperpositionSpec(complex a1_, PureState psi1_, complex a2_, PureState psi2_, bool check = true)
      : a1(a1_), psi1(std::move(psi1_)), a2(a2_), psi2(std::move(psi2_)), check_coefficients(check) {
    require_tripartite(psi1, "SuperpositionSpec");
    require_same_dims(psi1, psi2, "SuperpositionSpec");
    if (check && std::abs(std::norm(a1) + std::norm(a2) - 1.0) > kCoefficientTol)
      throw CoefficientError("SuperpositionSpec: |a1|^2 + |a2|^2 must equal 1");
  }

  PureState chi() const { return superpose(a1, psi1, a2, psi2, check_coefficients); }
};

/// Raw generator sums S_gamma(psi_i, psi_j) and the coefficient-weighted terms built from them.
struct CrossTermTable {
  // index 0: (1,1), 1: (2,2), 2: (1,2); inner index: gamma = A, B, C
  std::array<std::array<double, 3>, 3> raw{};

  double F11 = 0, F22 = 0, F12 = 0;  // summed over gamma, carrying the prefactor 2 of N
  double f11 = 0, f22 = 0, f12 = 0;  // |a_i a_j| max_gamma S
  double g11 = 0, g22 = 0, g12 = 0;  // |a_i a_j| min_gamma S
};

inline CrossTermTable cross_terms(const SuperpositionSpec& spec) {
  CrossTermTable t;
  const PureState* pairs[3][2] = {{&spec.psi1, &spec.psi1}, {&spec.psi2, &spec.psi2}, {&spec.psi1, &spec.psi2}};
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t k = 0; k < 3; ++k) t.raw[p][k] = cross_sum(*pairs[p][0], *pairs[p][1], kParties[k]);

  const double w[3] = {std::norm(spec.a1), std::norm(spec.a2), std::abs(spec.a1 * spec.a2)};
  auto sum = [](const std::array<double, 3>& r) { return r[0] + r[1] + r[2]; };
  auto mx = [](const std::array<double, 3>& r) { return std::max({r[0], r[1], r[2]}); };
  auto mn = [](const std::array<double, 3>& r) { return std::min({r[0], r[1], r[2]}); };

  t.F11 = w[0] * 2.0 * sum(t.raw[0]);
  t.F22 = w[1] * 2.0 * sum(t.raw[1]);
  t.F12 = w[2] * 2.0 * sum(t.raw[2]);
  t.f11 = w[0] * mx(t.raw[0]);
  t.f22 = w[1] * mx(t.raw[1]);
  t.f12 = w[2] * mx(t.raw[2]);
  t.g11 = w[0] * mn(t.raw[0]);
  t.g22 = w[1] * mn(t.raw[1]);
  t.g12 = w[2] * mn(t.raw[2]);
  return t;
}

struct Bounds {
  double upper;
  double lower_raw;  // may be negative
  double lower;      // max(lower_raw, 0)
};

/// Bounds on ||chi||^2 N(chi') for the usual multipartite negativity.
inline Bounds theorem1_bounds(const CrossTermTable& t) {
  const double upper = t.F11 + t.F22 + 2.0 * t.F12;
  const double lower =
      std::max({t.F11 - t.F22 - 2.0 * t.F12, -t.F11 + t.F22 - 2.0 * t.F12, -t.F11 - t.F22 + 2.0 * t.F12});
  return {upper, lower, std::max(lower, 0.0)};
}

/// Bounds on ||chi||^2 N_GME(chi').
inline Bounds theorem2_bounds(const CrossTermTable& t) {
  const double upper = std::min(
      {t.g11 + t.f22 + 2.0 * t.f12, t.f11 + t.g22 + 2.0 * t.f12, t.f11 + t.f22 + 2.0 * t.g12});
  const double lower = std::max(
      {t.g11 - t.f22 - 2.0 * t.f12, -t.f11 + t.g22 - 2.0 * t.f12, -t.f11 - t.f22 + 2.0 * t.g12});
  return {upper, lower, std::max(lower, 0.0)};
}

inline Bounds theorem1_bounds(const SuperpositionSpec& spec) { return theorem1_bounds(cross_terms(spec)); }
inline Bounds theorem2_bounds(const SuperpositionSpec& spec) { return theorem2_bounds(cross_terms(spec)); }

using Triple = std::array<double, 3>;

namespace detail {
inline void require_positive(const Triple& t) {
  for (double v : t)
    if (!(v > 0.0)) throw std::invalid_argument("min/max lemma: entries must be positive");
}
}  // namespace detail

/// min_k(b_k + c_k + d_k) <= min b + max c + max d
inline bool min_combine_upper(const Triple& b, const Triple& c, const Triple& d) {
  detail::require_positive(b), detail::require_positive(c), detail::require_positive(d);
  const double lhs = std::min({b[0] + c[0] + d[0], b[1] + c[1] + d[1], b[2] + c[2] + d[2]});
  const double rhs = std::min({b[0], b[1], b[2]}) + std::max({c[0], c[1], c[2]}) + std::max({d[0], d[1], d[2]});
  return lhs <= rhs;
}

/// min_k(b_k - c_k - d_k) >= min b - max c - max d
inline bool min_combine_lower(const Triple& b, const Triple& c, const Triple& d) {
  detail::require_positive(b), detail::require_positive(c), detail::require_positive(d);
  const double lhs = std::min({b[0] - c[0] - d[0], b[1] - c[1] - d[1], b[2] - c[2] - d[2]});
  const double rhs = std::min({b[0], b[1], b[2]}) - std::max({c[0], c[1], c[2]}) - std::max({d[0], d[1], d[2]});
  return lhs >= rhs;
}

struct BoundsReport {
  double norm_sq = 0.0;     // <chi|chi>
  double n_exact = 0.0;     // ||chi||^2 N(chi')
  double ngme_exact = 0.0;  // ||chi||^2 N_GME(chi')
  Bounds t1{};
  Bounds t2{};
  CrossTermTable terms;

  double t2_gap() const { return t2.upper - ngme_exact; }
};

/// Exact values and both theorems' bounds. Throws NearZeroNorm when chi vanishes.
inline BoundsReport bounds_report(const SuperpositionSpec& spec) {
  BoundsReport r;
  r.terms = cross_terms(spec);
  r.t1 = theorem1_bounds(r.terms);
  r.t2 = theorem2_bounds(r.terms);
  const auto [chi_n, norm_sq] = normalize(spec.chi());
  r.norm_sq = norm_sq;
  r.n_exact = norm_sq * multipartite_negativity(chi_n);
  r.ngme_exact = norm_sq * gme_negativity(chi_n);
  return r;
}

}  // namespace supneg
