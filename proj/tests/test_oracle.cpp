#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "supneg/oracle.hpp"
#include "supneg/states.hpp"

using namespace supneg;
using namespace supneg::oracle;

namespace {

Matrix diag(std::initializer_list<double> v) {
  Matrix m(v.size(), v.size());
  std::size_t i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

HermitianMatrix bell_density() {
  std::vector<complex> amps(4);
  amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
  Matrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = amps[i] * std::conj(amps[j]);
  return HermitianMatrix(rho);
}

}  // namespace

TEST(DensityMatrix, Product) {
  const auto rho = density_matrix(basis_state({2, 2, 2}, 0));
  EXPECT_EQ(rho(0, 0), complex(1.0));
  double rest = 0.0;
  for (auto v : rho.matrix().data()) rest += std::abs(v);
  EXPECT_EQ(rest, 1.0);
}

TEST(DensityMatrix, Ghz) {
  const auto rho = density_matrix(ghz(2));
  ASSERT_EQ(rho.dim(), 8u);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      const bool hot = (r == 0 || r == 7) && (c == 0 || c == 7);
      EXPECT_NEAR(std::abs(rho(r, c) - (hot ? 0.5 : 0.0)), 0.0, 1e-15);
    }
}

TEST(DensityMatrix, PureOnHaarSamples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = density_matrix(haar_random({2, 3, 2}, seed));
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_NEAR(purity(rho), 1.0, 1e-10);
  }
}

TEST(Eigenvalues, Diagonal) {
  const auto ev = hermitian_eigenvalues(HermitianMatrix(diag({3, 1, 2})));
  EXPECT_EQ(ev, (std::vector<double>{3, 2, 1}));
}

TEST(Eigenvalues, PauliX) {
  Matrix x(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto ev = hermitian_eigenvalues(HermitianMatrix(x));
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], -1.0, 1e-14);
}

TEST(Eigenvalues, PauliYComplexOffDiagonal) {
  Matrix y(2, 2);
  y(0, 1) = complex(0, -1);
  y(1, 0) = complex(0, 1);
  const auto ev = hermitian_eigenvalues(HermitianMatrix(y));
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], -1.0, 1e-14);
}

TEST(Eigenvalues, UnitaryConjugationRecoversSpectrum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + seed % 7;
    std::vector<double> d(n);
    Matrix dm(n, n);
    for (std::size_t i = 0; i < n; ++i) dm(i, i) = d[i] = rng.normal();
    const Matrix u = random_unitary(n, rng);
    Matrix h = u * dm * u.adjoint();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) h(j, i) = std::conj(h(i, j));
    for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
    const auto ev = hermitian_eigenvalues(HermitianMatrix(h));
    std::sort(d.begin(), d.end(), std::greater<>());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ev[i], d[i], 1e-10);
  }
}

TEST(Eigenvalues, TraceIdentities) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const std::size_t n = 27;
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      h(i, i) = rng.normal();
      for (std::size_t j = i + 1; j < n; ++j) {
        h(i, j) = rng.complex_normal();
        h(j, i) = std::conj(h(i, j));
      }
    }
    const HermitianMatrix hm(h);
    const auto ev = hermitian_eigenvalues(hm);
    double s1 = 0, s2 = 0;
    for (double l : ev) s1 += l, s2 += l * l;
    EXPECT_NEAR(s1, h.trace().real(), 1e-9);
    EXPECT_NEAR(s2, purity(hm), 1e-9);
  }
}

TEST(Eigenvalues, Errors) {
  Matrix bad(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(HermitianMatrix{bad}, NotHermitian);
  EXPECT_THROW(HermitianMatrix(Matrix(2, 3)), DimensionError);

  Matrix x(3, 3);
  x(0, 1) = x(1, 0) = 1.0;
  x(1, 2) = x(2, 1) = 0.5;
  try {
    hermitian_eigenvalues(HermitianMatrix(x), {1e-12, 0});
    FAIL() << "expected NotConverged";
  } catch (const NotConverged& e) {
    EXPECT_GT(e.residual, 0.0);
  }
}

TEST(PartialTranspose, BellSpectrum) {
  const auto pt = partial_transpose(bell_density(), {2, 2}, 1);
  const auto ev = hermitian_eigenvalues(pt);
  EXPECT_NEAR(ev[0], 0.5, 1e-14);
  EXPECT_NEAR(ev[1], 0.5, 1e-14);
  EXPECT_NEAR(ev[2], 0.5, 1e-14);
  EXPECT_NEAR(ev[3], -0.5, 1e-14);
}

TEST(PartialTranspose, ProductStateKeepsSpectrum) {
  Rng rng(3);
  const auto a = haar_vector(2, rng), b = haar_vector(3, rng);
  std::vector<complex> amps;
  for (auto x : a)
    for (auto y : b) amps.push_back(x * y);
  Matrix rho(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) rho(i, j) = amps[i] * std::conj(amps[j]);
  const HermitianMatrix h(rho);
  const auto e0 = hermitian_eigenvalues(h);
  for (std::size_t sub : {0u, 1u}) {
    const auto e1 = hermitian_eigenvalues(partial_transpose(h, {2, 3}, sub));
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(e0[i], e1[i], 1e-12);
  }
}

TEST(PartialTranspose, InvolutionAndTrace) {
  const auto s = haar_random({2, 3, 2}, 11);
  const auto rho = density_matrix(s);
  for (std::size_t sub = 0; sub < 3; ++sub) {
    const auto pt = partial_transpose(rho, s.dims(), sub);
    EXPECT_NEAR(pt.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_EQ(partial_transpose(pt, s.dims(), sub).matrix(), rho.matrix());
  }
  EXPECT_THROW(partial_transpose(rho, {2, 2, 2}, 0), DimensionError);
}

TEST(PtOracle, KnownStates) {
  for (auto p : kParties) {
    EXPECT_NEAR(negativity_pt_oracle(ghz(2), p), 1.0, 1e-12);
    EXPECT_NEAR(negativity_pt_oracle(basis_state({2, 2, 2}, 0), p), 0.0, 1e-12);
    EXPECT_NEAR(negativity_pt_oracle(w_state(), p), 2.0 * std::numbers::sqrt2 / 3.0, 1e-12);
  }
}

TEST(PtOracle, NegativePartIsHalfNegativity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = haar_random({3, 3, 3}, seed);
    for (auto p : kParties) {
      const auto ev = hermitian_eigenvalues(partial_transpose(density_matrix(s), s.dims(), static_cast<std::size_t>(p)));
      double sum = 0, neg = 0;
      for (double l : ev) sum += l, neg += l < 0 ? -l : 0.0;
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_NEAR(neg, negativity_pt_oracle(s, p) / 2.0, 1e-9);
    }
  }
}

TEST(PtOracle, DenseCap) {
  EXPECT_THROW(negativity_pt_oracle(ghz(7), Party::A), DimensionError);
  EXPECT_NO_THROW(negativity_pt_oracle(ghz(7), Party::A, 400));
}
