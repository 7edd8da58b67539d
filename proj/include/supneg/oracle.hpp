#pragma once

// Brute-force reference path: dense |psi><psi|, partial transpose, trace norm.
// Kept independent of the generator-sum code in measures.hpp.

#include <cmath>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "hermitian.hpp"
#include "state.hpp"

namespace supneg::oracle {

inline std::size_t default_dense_cap = 256;

inline HermitianMatrix density_matrix(const PureState& s) {
  const std::size_t n = s.size();
  Matrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = s[i] * std::conj(s[j]);
  for (std::size_t i = 0; i < n; ++i) rho(i, i) = rho(i, i).real();
  return HermitianMatrix(std::move(rho));
}

/// Transposes the row/column indices of `subsystem` in rho over a product space `dims`.
inline HermitianMatrix partial_transpose(const HermitianMatrix& rho, const std::vector<std::size_t>& dims,
                                         std::size_t subsystem) {
  const std::size_t n =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (n != rho.dim() || subsystem >= dims.size())
    throw DimensionError("partial_transpose: dims inconsistent with matrix");
  std::size_t stride = 1;
  for (std::size_t k = subsystem + 1; k < dims.size(); ++k) stride *= dims[k];
  const std::size_t d = dims[subsystem];

  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rs = (r / stride) % d;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cs = (c / stride) % d;
      // swap the subsystem digit between row and column
      const std::size_t r2 = r + (cs - rs) * stride;
      const std::size_t c2 = c + (rs - cs) * stride;
      out(r2, c2) = rho(r, c);
    }
  }
  return HermitianMatrix(std::move(out));
}

inline double trace_norm(const HermitianMatrix& h) {
  double s = 0.0;
  for (double l : hermitian_eigenvalues(h)) s += std::abs(l);
  return s;
}

/// ||rho^{T_gamma}||_1 - 1 from the dense spectrum.
inline double negativity_pt_oracle(const PureState& s, Party kept, std::size_t dense_cap = default_dense_cap) {
  require_tripartite(s, "negativity_pt_oracle");
  if (s.size() > dense_cap)
    throw DimensionError("negativity_pt_oracle: total dimension " + std::to_string(s.size()) +
                         " exceeds dense cap " + std::to_string(dense_cap));
  const auto pt = partial_transpose(density_matrix(s), s.dims(), static_cast<std::size_t>(kept));
  return trace_norm(pt) - 1.0;
}

}  // namespace supneg::oracle
