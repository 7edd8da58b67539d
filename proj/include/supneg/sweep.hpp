#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bounds.hpp"
#include "parallel.hpp"
#include "states.hpp"

namespace supneg {

struct SweepRow {
  double p;
  double phi;
  BoundsReport report;
};

/// Bounds along |Z(p, phi)>, one row per grid point in grid order.
inline std::vector<SweepRow> z_family_sweep(const std::vector<double>& p_grid, double phi,
                                            unsigned threads = thread_count()) {
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("z_family_sweep: p must lie in [0, 1]");
  return parallel_map<SweepRow>(
      p_grid.size(),
      [&](std::size_t i) { return SweepRow{p_grid[i], phi, bounds_report(z_family({p_grid[i], phi}))}; },
      threads);
}

/// start, start + (stop-start)/(steps-1), ..., stop
inline std::vector<double> linear_grid(double start, double stop, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("linear_grid: empty grid");
  if (steps == 1) return {start};
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i)
    g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  g.back() = stop;
  return g;
}

/// Least-squares fit of y(p) = c1 (1-p) + c2 sqrt(p(1-p)) + c3 p.
struct ThreeTermFit {
  std::array<double, 3> c{};
  double max_residual = 0.0;

  double operator()(double p) const { return c[0] * (1.0 - p) + c[1] * std::sqrt(p * (1.0 - p)) + c[2] * p; }
};

inline ThreeTermFit fit_three_term(const std::vector<double>& ps, const std::vector<double>& ys) {
  if (ps.size() != ys.size() || ps.size() < 3) throw std::invalid_argument("fit_three_term: need >= 3 points");
  // Normal equations, solved with partial pivoting; the basis is well conditioned on [0,1].
  double a[3][4] = {};
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const double p = ps[k];
    const double phi[3] = {1.0 - p, std::sqrt(p * (1.0 - p)), p};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] += phi[i] * phi[j];
      a[i][3] += phi[i] * ys[k];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) throw std::runtime_error("fit_three_term: singular design");
    for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
    }
  }
  ThreeTermFit fit;
  for (int i = 0; i < 3; ++i) fit.c[i] = a[i][3] / a[i][i];
  for (std::size_t k = 0; k < ps.size(); ++k) fit.max_residual = std::max(fit.max_residual, std::abs(fit(ps[k]) - ys[k]));
  return fit;
}

/// Closed forms printed alongside the GHZ/W example, for the discrepancy table:
/// N:     32 (1-p) + 16 sqrt6 sqrt(p(1-p)) + 24 p
/// N_GME: 16/3 (1-p) + 8/3 sqrt6 sqrt(p(1-p)) + 4 p
inline constexpr std::array<double, 3> kPrintedNegativityConstants{32.0, 16.0 * 2.449489742783178098, 24.0};
inline constexpr std::array<double, 3> kPrintedGmeConstants{16.0 / 3.0, 8.0 / 3.0 * 2.449489742783178098, 4.0};

}  // namespace supneg
