#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace supneg::oracle {

/// Square complex matrix that is Hermitian within `hermitian_tol` (entrywise).
class HermitianMatrix {
 public:
  static constexpr double hermitian_tol = 1e-10;

  explicit HermitianMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("HermitianMatrix: not square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i; j < m_.cols(); ++j)
        if (std::abs(m_(i, j) - std::conj(m_(j, i))) > hermitian_tol)
          throw NotHermitian("HermitianMatrix: H != H^dagger");
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix m_;
};

struct JacobiOptions {
  double relative_tol = 1e-12;
  int max_sweeps = 100;
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, descending.
///
/// Each pivot (p,q) is first phase-rotated so that H(p,q) is real and then
/// annihilated by a real Givens rotation. Converged when the off-diagonal
/// Frobenius norm drops below relative_tol * ||H||_F. Throws NotConverged
/// (carrying the residual) if max_sweeps is exhausted.
inline std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, JacobiOptions opts = {}) {
  Matrix a = h.matrix();
  const std::size_t n = a.rows();
  const double scale = a.frobenius_norm();
  const double target = opts.relative_tol * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  double off = off_norm();
  int sweep = 0;
  for (; sweep < opts.max_sweeps && off > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Below noise relative to the diagonal: drop it.
        if (mag < 1e-300 || (std::abs(a(p, p).real()) + mag == std::abs(a(p, p).real()) &&
                             std::abs(a(q, q).real()) + mag == std::abs(a(q, q).real()))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const complex phase = a(p, q) / mag;  // e^{i phi}
        for (std::size_t k = 0; k < n; ++k) {
          a(k, q) *= std::conj(phase);
          a(q, k) *= phase;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
    off = off_norm();
  }
  if (off > target) throw NotConverged("hermitian_eigenvalues: Jacobi did not converge", off);

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace supneg::oracle
