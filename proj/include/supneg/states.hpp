#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "state.hpp"

namespace supneg {

inline PureState ghz(std::size_t d = 2) {
  if (d < 2) throw DimensionError("ghz: d must be >= 2");
  std::vector<complex> amps(d * d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) amps[(i * d + i) * d + i] = a;
  return PureState({d, d, d}, std::move(amps));
}

/// (|001> + |010> + |100>) / sqrt3
inline PureState w_state() {
  std::vector<complex> amps(8);
  const double a = 1.0 / std::sqrt(3.0);
  amps[1] = amps[2] = amps[4] = a;
  return PureState({2, 2, 2}, std::move(amps));
}

inline PureState basis_state(std::vector<std::size_t> dims, std::size_t index) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  if (index >= n) throw DimensionError("basis_state: index out of range");
  std::vector<complex> amps(n);
  amps[index] = 1.0;
  return PureState(std::move(dims), std::move(amps));
}

struct ZFamilyParams {
  double p = 0.5;
  double phi = 0.0;
};

/// sqrt(p) GHZ + e^{i phi} sqrt(1-p) W.
inline SuperpositionSpec z_family(ZFamilyParams params) {
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw std::domain_error("z_family: p must lie in [0, 1]");
  const complex a1 = std::sqrt(params.p);
  const complex a2 = std::polar(std::sqrt(1.0 - params.p), params.phi);
  return SuperpositionSpec(a1, ghz(2), a2, w_state());
}

/// Portable seeded source: std::mt19937_64 (fully specified by the standard)
/// feeding a 53-bit uniform and Box-Muller, so draws do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  complex complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Decorrelates derived seeds (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::vector<complex> haar_vector(std::size_t n, Rng& rng) {
  std::vector<complex> v(n);
  double n2 = 0.0;
  for (auto& a : v) {
    a = rng.complex_normal();
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : v) a *= inv;
  return v;
}

inline PureState haar_random(std::vector<std::size_t> dims, Rng& rng) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  auto v = haar_vector(n, rng);
  return PureState(std::move(dims), std::move(v));
}

inline PureState haar_random(std::vector<std::size_t> dims, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random(std::move(dims), rng);
}

/// Haar state on gamma tensored with a Haar state on the complement.
inline PureState random_biseparable(Party kept, std::vector<std::size_t> dims, std::uint64_t seed) {
  if (dims.size() != 3) throw DimensionError("random_biseparable: tripartite dims required");
  Rng rng(seed);
  const std::size_t rows = dims[static_cast<std::size_t>(kept)];
  const std::size_t cols = dims[0] * dims[1] * dims[2] / rows;
  const auto u = haar_vector(rows, rng);
  const auto v = haar_vector(cols, rng);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u[r] * v[c];
  return flatten(m, dims, kept);
}

/// Haar unitary: QR of a complex Ginibre matrix by modified Gram-Schmidt
/// (positive diagonal R, so the distribution is exactly Haar).
inline Matrix random_unitary(std::size_t d, Rng& rng) {
  Matrix q(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) q(r, c) = rng.complex_normal();
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      complex dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(q(r, prev)) * q(r, c);
      for (std::size_t r = 0; r < d; ++r) q(r, c) -= dot * q(r, prev);
    }
    double n2 = 0.0;
    for (std::size_t r = 0; r < d; ++r) n2 += std::norm(q(r, c));
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t r = 0; r < d; ++r) q(r, c) *= inv;
  }
  return q;
}

/// (U_A (x) U_B (x) U_C)|psi>.
inline PureState apply_local(const PureState& s, const Matrix& ua, const Matrix& ub, const Matrix& uc) {
  require_tripartite(s, "apply_local");
  const auto& d = s.dims();
  if (ua.rows() != d[0] || ub.rows() != d[1] || uc.rows() != d[2])
    throw DimensionError("apply_local: unitary size mismatch");
  return PureState(d, (kron(kron(ua, ub), uc) * [&] {
                        Matrix col(s.size(), 1);
                        for (std::size_t i = 0; i < s.size(); ++i) col(i, 0) = s[i];
                        return col;
                      }())
                          .data());
}

}  // namespace supneg
