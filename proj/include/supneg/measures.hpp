#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "state.hpp"

namespace supneg {

/// Index pair (i, j), i < j, naming the antisymmetric generator |i><j| - |j><i|
/// of SO(dim) on one tensor factor.
struct GeneratorPair {
  std::size_t i;
  std::size_t j;
  friend bool operator==(const GeneratorPair&, const GeneratorPair&) = default;
};

/// All generators of SO(dim) in lexicographic order; dim(dim-1)/2 of them.
inline std::vector<GeneratorPair> generator_pairs(std::size_t dim) {
  if (dim < 2) throw DimensionError("generator_pairs: dim must be >= 2");
  std::vector<GeneratorPair> out;
  out.reserve(dim * (dim - 1) / 2);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) out.push_back({i, j});
  return out;
}

/// Scale applied to every SO generator. The canonical choice is 1 (no 1/sqrt2);
/// it is the one for which the squared generator sum reproduces 2(1 - Tr rho^2).
/// Other values exist to run the verification harness against a mis-normalized build.
struct GeneratorConvention {
  double scale = 1.0;

  static constexpr GeneratorConvention canonical() { return {1.0}; }
  static GeneratorConvention half_normalized() { return {1.0 / std::sqrt(2.0)}; }

  // J = L (x) S carries scale^2
  double j_factor() const { return scale * scale; }
};

/// Conjugated gamma|complement matricization, the operand of every bilinear form.
class ConjugateUnfolding {
 public:
  ConjugateUnfolding(const PureState& s, Party kept) : m_(matricize(s, kept)) {
    for (std::size_t r = 0; r < m_.rows(); ++r)
      for (std::size_t c = 0; c < m_.cols(); ++c) m_(r, c) = std::conj(m_(r, c));
  }
  const complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }

 private:
  Matrix m_;
};

/// <psi| L_alpha (x) S_beta |phi*> from the four nonzero entries of J.
inline complex bilinear_form(const ConjugateUnfolding& psi, const ConjugateUnfolding& phi,
                             GeneratorPair alpha, GeneratorPair beta,
                             GeneratorConvention conv = GeneratorConvention::canonical()) {
  const auto [i, j] = alpha;
  const auto [k, l] = beta;
  // grouped so that swapping psi and phi gives a bitwise-identical result
  const complex v = (psi(i, k) * phi(j, l) + phi(i, k) * psi(j, l)) - (psi(i, l) * phi(j, k) + phi(i, l) * psi(j, k));
  return conv.j_factor() * v;
}

inline complex bilinear_form(const PureState& psi, const PureState& phi, Party kept, GeneratorPair alpha,
                             GeneratorPair beta, GeneratorConvention conv = GeneratorConvention::canonical()) {
  require_same_dims(psi, phi, "bilinear_form");
  const ConjugateUnfolding u(psi, kept), v(phi, kept);
  if (alpha.j >= u.rows() || beta.j >= u.cols() || alpha.i >= alpha.j || beta.i >= beta.j)
    throw DimensionError("bilinear_form: generator index out of range");
  return bilinear_form(u, v, alpha, beta, conv);
}

namespace detail {

// Visits every (alpha, beta) value in lexicographic order.
template <class F>
void for_each_bilinear(const ConjugateUnfolding& u, const ConjugateUnfolding& v, GeneratorConvention conv, F&& f) {
  const std::size_t rows = u.rows(), cols = u.cols();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i + 1; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k)
        for (std::size_t l = k + 1; l < cols; ++l) f(bilinear_form(u, v, {i, j}, {k, l}, conv));
}

}  // namespace detail

/// S_gamma(psi, phi) = sum over (alpha, beta) of |<psi|J|phi*>|. Symmetric in its arguments.
inline double cross_sum(const PureState& psi, const PureState& phi, Party kept,
                        GeneratorConvention conv = GeneratorConvention::canonical()) {
  require_same_dims(psi, phi, "cross_sum");
  const ConjugateUnfolding u(psi, kept), v(phi, kept);
  double s = 0.0;
  detail::for_each_bilinear(u, v, conv, [&](complex b) { s += std::abs(b); });
  return s;
}

/// Sum of |<psi|J|phi*>|^2; for psi = phi it is the squared concurrence.
inline double cross_sum_sq(const PureState& psi, const PureState& phi, Party kept,
                           GeneratorConvention conv = GeneratorConvention::canonical()) {
  require_same_dims(psi, phi, "cross_sum_sq");
  const ConjugateUnfolding u(psi, kept), v(phi, kept);
  double s = 0.0;
  detail::for_each_bilinear(u, v, conv, [&](complex b) { s += std::norm(b); });
  return s;
}

inline void require_normalized(const PureState& s, const char* who) {
  if (!s.is_normalized()) throw std::invalid_argument(std::string(who) + ": state is not normalized");
}

/// N_gamma as the generator l1 sum. Coincides with ||rho^{T_gamma}||_1 - 1 only
/// when the gamma|complement matricization is in Schmidt form; in general it is
/// an upper bound on it.
inline double negativity_so(const PureState& s, Party kept,
                            GeneratorConvention conv = GeneratorConvention::canonical()) {
  require_normalized(s, "negativity_so");
  return cross_sum(s, s, kept, conv);
}

/// (sum sqrt(lambda))^2 - 1 over the Schmidt spectrum: the partial-transpose negativity.
inline double negativity_schmidt(const PureState& s, Party kept) {
  require_normalized(s, "negativity_schmidt");
  double r = 0.0;
  for (double l : schmidt_spectrum(s, kept).lambdas) r += std::sqrt(l);
  return r * r - 1.0;
}

inline double multipartite_negativity(const PureState& s,
                                      GeneratorConvention conv = GeneratorConvention::canonical()) {
  double n = 0.0;
  for (auto p : kParties) n += negativity_so(s, p, conv);
  return 2.0 * n;
}

inline double gme_negativity(const PureState& s, GeneratorConvention conv = GeneratorConvention::canonical()) {
  double n = negativity_so(s, Party::A, conv);
  n = std::min(n, negativity_so(s, Party::B, conv));
  return std::min(n, negativity_so(s, Party::C, conv));
}

inline constexpr double kConcurrencePathTol = 1e-8;

struct ConcurrenceSq {
  double via_purity;      // 2 (1 - Tr rho_gamma^2)
  double via_generators;  // sum |B_ab|^2
  double difference() const { return via_generators - via_purity; }
  double value() const { return via_purity; }
};

/// Squared concurrence by both routes; throws ConsistencyError if they part by more than 1e-8.
inline ConcurrenceSq concurrence_sq(const PureState& s, Party kept,
                                    GeneratorConvention conv = GeneratorConvention::canonical()) {
  require_normalized(s, "concurrence_sq");
  ConcurrenceSq c{2.0 * (1.0 - purity(reduced_density(s, kept))), cross_sum_sq(s, s, kept, conv)};
  if (std::abs(c.difference()) > kConcurrencePathTol)
    throw ConsistencyError("concurrence_sq: purity and generator routes disagree by " +
                           std::to_string(c.difference()));
  return c;
}

inline double multipartite_concurrence_sq(const PureState& s) {
  double c = 0.0;
  for (auto p : kParties) c += concurrence_sq(s, p).value();
  return c;
}

/// min over gamma of sqrt(2 (1 - Tr rho_gamma^2)).
inline double gme_concurrence(const PureState& s) {
  double c = concurrence_sq(s, Party::A).value();
  c = std::min(c, concurrence_sq(s, Party::B).value());
  c = std::min(c, concurrence_sq(s, Party::C).value());
  return std::sqrt(std::max(c, 0.0));
}

struct MeasureReport {
  std::array<double, 3> n{};   // N_A, N_B, N_C
  double n_multi = 0.0;        // 2 (N_A + N_B + N_C)
  double n_gme = 0.0;          // min N_gamma
  std::array<double, 3> c2{};  // 2 (1 - Tr rho_gamma^2)
  double c2_multi = 0.0;
  double c_gme = 0.0;           // min sqrt(c2)
  double c_gme_unscaled = 0.0;  // min sqrt(1 - Tr rho^2), the variant without the factor 2
};

inline MeasureReport measure(const PureState& s) {
  MeasureReport r;
  for (std::size_t k = 0; k < 3; ++k) {
    r.n[k] = negativity_so(s, kParties[k]);
    r.c2[k] = concurrence_sq(s, kParties[k]).value();
  }
  r.n_multi = 2.0 * (r.n[0] + r.n[1] + r.n[2]);
  r.n_gme = std::min({r.n[0], r.n[1], r.n[2]});
  r.c2_multi = r.c2[0] + r.c2[1] + r.c2[2];
  const double c2_min = std::max(std::min({r.c2[0], r.c2[1], r.c2[2]}), 0.0);
  r.c_gme = std::sqrt(c2_min);
  r.c_gme_unscaled = std::sqrt(c2_min / 2.0);
  return r;
}

inline constexpr double kBiseparableTol = 1e-9;

struct BiseparabilityResult {
  std::array<bool, 3> separable{};         // per bipartition: N_gamma <= tol
  std::array<std::size_t, 3> schmidt_rank{};  // count of lambda > tol
  bool biseparable = false;                // any bipartition separable
};

inline BiseparabilityResult is_biseparable(const PureState& s, double tol = kBiseparableTol) {
  BiseparabilityResult r;
  for (std::size_t k = 0; k < 3; ++k) {
    r.separable[k] = negativity_so(s, kParties[k]) <= tol;
    r.schmidt_rank[k] = schmidt_spectrum(s, kParties[k]).rank(tol);
  }
  r.biseparable = r.separable[0] || r.separable[1] || r.separable[2];
  return r;
}

}  // namespace supneg
