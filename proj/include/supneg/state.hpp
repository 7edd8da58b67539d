#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hermitian.hpp"
#include "matrix.hpp"

namespace supneg {

inline constexpr double kNormFloor = 1e-14;
inline constexpr double kNormalizedTol = 1e-12;

/// Pure state of a multipartite system, amplitudes in row-major order
/// ((i_A * d_B + i_B) * d_C + i_C for three parties). Not necessarily normalized.
class PureState {
 public:
  PureState(std::vector<std::size_t> dims, std::vector<complex> amplitudes)
      : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (dims_.empty()) throw DimensionError("PureState: no subsystems");
    for (auto d : dims_)
      if (d < 2) throw DimensionError("PureState: every subsystem dimension must be >= 2");
    const std::size_t total =
        std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
    if (amps_.size() != total)
      throw DimensionError("PureState: expected " + std::to_string(total) + " amplitudes, got " +
                           std::to_string(amps_.size()));
    for (const auto& a : amps_) norm_sq_ += std::norm(a);
    if (std::sqrt(norm_sq_) < kNormFloor) throw NearZeroNorm("PureState: zero vector");
  }

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::span<const complex> amplitudes() const noexcept { return amps_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::size_t parties() const noexcept { return dims_.size(); }
  const complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_sq() const noexcept { return norm_sq_; }
  bool is_normalized() const noexcept { return std::abs(norm_sq_ - 1.0) <= kNormalizedTol; }

  friend bool operator==(const PureState& a, const PureState& b) {
    return a.dims_ == b.dims_ && a.amps_ == b.amps_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<complex> amps_;
  double norm_sq_ = 0.0;
};

inline PureState new_state(std::vector<std::size_t> dims, std::vector<complex> amplitudes) {
  return PureState(std::move(dims), std::move(amplitudes));
}

inline void require_tripartite(const PureState& s, const char* who) {
  if (s.parties() != 3) throw DimensionError(std::string(who) + ": tripartite state required");
}

inline void require_same_dims(const PureState& a, const PureState& b, const char* who) {
  if (a.dims() != b.dims()) throw DimensionError(std::string(who) + ": dimension mismatch");
}

inline complex inner_product(const PureState& a, const PureState& b) {
  require_same_dims(a, b, "inner_product");
  complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

struct Normalized {
  PureState state;
  double norm_sq;
};

inline Normalized normalize(const PureState& s) {
  const double n2 = s.norm_sq();
  const double n = std::sqrt(n2);
  if (n < kNormFloor) throw NearZeroNorm("normalize: near-zero vector");
  std::vector<complex> out(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& a : out) a /= n;
  return {PureState(s.dims(), std::move(out)), n2};
}

inline constexpr double kCoefficientTol = 1e-10;

/// a1|psi1> + a2|psi2>, left unnormalized; the squared norm is on the result.
/// `check_coefficients = false` skips the |a1|^2+|a2|^2 = 1 test.
inline PureState superpose(complex a1, const PureState& psi1, complex a2, const PureState& psi2,
                           bool check_coefficients = true) {
  require_same_dims(psi1, psi2, "superpose");
  if (check_coefficients && std::abs(std::norm(a1) + std::norm(a2) - 1.0) > kCoefficientTol)
    throw CoefficientError("superpose: |a1|^2 + |a2|^2 must equal 1");
  std::vector<complex> out(psi1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a1 * psi1[i] + a2 * psi2[i];
  return PureState(psi1.dims(), std::move(out));
}

inline PureState conjugate(const PureState& s) {
  std::vector<complex> out(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& a : out) a = std::conj(a);
  return PureState(s.dims(), std::move(out));
}

enum class Party : std::size_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::C};

inline const char* party_name(Party p) {
  switch (p) {
    case Party::A: return "A";
    case Party::B: return "B";
    case Party::C: return "C";
  }
  return "?";
}

/// Split gamma | complement of a tripartite system.
struct Bipartition {
  Party kept;
  std::size_t row_dim;  // d_gamma
  std::size_t col_dim;  // product of the other two

  static Bipartition of(const PureState& s, Party kept) {
    require_tripartite(s, "Bipartition");
    const auto& d = s.dims();
    const auto k = static_cast<std::size_t>(kept);
    return {kept, d[k], s.size() / d[k]};
  }

  std::string label() const {
    switch (kept) {
      case Party::A: return "A|BC";
      case Party::B: return "B|AC";
      case Party::C: return "C|AB";
    }
    return "?";
  }
};

inline std::array<Bipartition, 3> bipartitions(const PureState& s) {
  return {Bipartition::of(s, Party::A), Bipartition::of(s, Party::B), Bipartition::of(s, Party::C)};
}

namespace detail {

// (row, col) of amplitude `flat` in the gamma | complement matricization.
inline std::pair<std::size_t, std::size_t> split_index(const std::vector<std::size_t>& dims,
                                                       std::size_t flat, Party kept) {
  const std::size_t ic = flat % dims[2];
  const std::size_t ib = (flat / dims[2]) % dims[1];
  const std::size_t ia = flat / (dims[1] * dims[2]);
  switch (kept) {
    case Party::A: return {ia, ib * dims[2] + ic};
    case Party::B: return {ib, ia * dims[2] + ic};
    case Party::C: return {ic, ia * dims[1] + ib};
  }
  return {0, 0};
}

}  // namespace detail

/// d_gamma x D_complement amplitude matrix; the complement index runs
/// row-major over the remaining parties in A,B,C order.
inline Matrix matricize(const PureState& s, Party kept) {
  const auto bp = Bipartition::of(s, kept);
  Matrix m(bp.row_dim, bp.col_dim);
  for (std::size_t f = 0; f < s.size(); ++f) {
    const auto [r, c] = detail::split_index(s.dims(), f, kept);
    m(r, c) = s[f];
  }
  return m;
}

/// Inverse of matricize.
inline PureState flatten(const Matrix& m, const std::vector<std::size_t>& dims, Party kept) {
  std::vector<complex> amps(m.rows() * m.cols());
  if (dims.size() != 3 || amps.size() != dims[0] * dims[1] * dims[2] ||
      m.rows() != dims[static_cast<std::size_t>(kept)])
    throw DimensionError("flatten: matrix shape does not match dims");
  for (std::size_t f = 0; f < amps.size(); ++f) {
    const auto [r, c] = detail::split_index(dims, f, kept);
    amps[f] = m(r, c);
  }
  return PureState(dims, std::move(amps));
}

/// rho_gamma = M M^dagger. Unnormalized input is rejected unless its squared
/// norm is supplied, in which case the result is divided by it.
inline oracle::HermitianMatrix reduced_density(const PureState& s, Party kept, double norm_sq = 0.0) {
  double scale = 1.0;
  if (norm_sq > 0.0) {
    scale = 1.0 / norm_sq;
  } else if (!s.is_normalized()) {
    throw std::invalid_argument("reduced_density: state is not normalized");
  }
  const Matrix m = matricize(s, kept);
  Matrix rho(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.rows(); ++j) {
      complex v = 0.0;
      for (std::size_t c = 0; c < m.cols(); ++c) v += m(i, c) * std::conj(m(j, c));
      rho(i, j) = v * scale;
      rho(j, i) = std::conj(v) * scale;
    }
  for (std::size_t i = 0; i < rho.rows(); ++i) rho(i, i) = rho(i, i).real();
  return oracle::HermitianMatrix(std::move(rho));
}

/// Tr(rho^2) as sum |rho_mn|^2.
inline double purity(const oracle::HermitianMatrix& rho) {
  double s = 0.0;
  for (const auto& v : rho.matrix().data()) s += std::norm(v);
  return s;
}

struct SchmidtSpectrum {
  std::vector<double> lambdas;  // descending, clamped to [0, 1]

  double sum() const { return std::accumulate(lambdas.begin(), lambdas.end(), 0.0); }
  std::size_t rank(double tol) const {
    return static_cast<std::size_t>(
        std::count_if(lambdas.begin(), lambdas.end(), [tol](double l) { return l > tol; }));
  }
};

inline SchmidtSpectrum schmidt_spectrum(const PureState& s, Party kept) {
  auto ev = oracle::hermitian_eigenvalues(reduced_density(s, kept));
  for (auto& l : ev) l = std::clamp(l, 0.0, 1.0);
  return {std::move(ev)};
}

}  // namespace supneg
