#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ttp/densmat.hpp"
#include "ttp/spin_models.hpp"

using namespace ttp;

namespace {

CMatrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return CMatrix::diagonal(v);
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(pauli::identity(), pauli::identity()), CMatrix::identity(4)), 0.0);
}

TEST(Kron, ZZIsDiagonal) {
  EXPECT_EQ(max_abs_diff(kron(pauli::z(), pauli::z()), diag({1, -1, -1, 1})), 0.0);
}

TEST(Kron, TraceOfInputTimesMaximallyMixed) {
  const PureQubit up(1.0, 0.0);
  const CMatrix m = kron(up.projector(), DensityMatrix::maximally_mixed(4).matrix());
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-15);
  EXPECT_EQ(m.dim(), 8);
}

TEST(Kron, RejectsOversizedProduct) {
  try {
    kron(CMatrix(4), CMatrix(4));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unsupported dimension");
  }
}

TEST(Kron, AssociativeAndTraceMultiplicative) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const CMatrix a = oracle::random_hermitian(rng, 2, 1.0);
    const CMatrix b = oracle::random_hermitian(rng, 2, 1.0);
    const CMatrix c = oracle::random_hermitian(rng, 2, 1.0);
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-13);
    EXPECT_LE(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12);
  }
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937_64 rng(2);
  const CMatrix a = oracle::random_density(rng, 2);
  const CMatrix b = oracle::random_density(rng, 2);
  const CMatrix c = oracle::random_density(rng, 2);
  EXPECT_LE(max_abs_diff(partial_trace_first_two(kron(kron(a, b), c)), c), 1e-15);
}

TEST(PartialTrace, MaximallyMixed) {
  const DensityMatrix r = partial_trace_first_two(DensityMatrix::maximally_mixed(8));
  EXPECT_LE(max_abs_diff(r.matrix(), CMatrix::identity(2) * Complex(0.5)), 1e-15);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const double h = std::sqrt(0.5);
  const std::array<Complex, 4> phi_plus{h, 0, 0, h};
  const PureQubit in(0.3, 1.1);
  const CMatrix full = kron(in.projector(), DensityMatrix::pure(phi_plus).matrix());
  // direct index sum: rho_C(z,z') = sum_{xy} full[(xy z),(xy z')]
  CMatrix expected(2);
  for (int z = 0; z < 2; ++z)
    for (int zp = 0; zp < 2; ++zp)
      for (int xy = 0; xy < 4; ++xy) expected(z, zp) += full(2 * xy + z, 2 * xy + zp);
  EXPECT_LE(max_abs_diff(expected, CMatrix::identity(2) * Complex(0.5)), 1e-15);
  EXPECT_LE(max_abs_diff(partial_trace_first_two(full), expected), 1e-15);
}

TEST(PartialTrace, TracePreservingAndLinear) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const CMatrix a = oracle::random_density(rng, 8);
    const CMatrix b = oracle::random_density(rng, 8);
    const double w = u(rng);
    const CMatrix mix = a * Complex(w) + b * Complex(1.0 - w);
    EXPECT_NEAR(partial_trace_first_two(a).trace().real(), 1.0, 1e-12);
    EXPECT_LE(max_abs_diff(partial_trace_first_two(mix),
                           partial_trace_first_two(a) * Complex(w) +
                               partial_trace_first_two(b) * Complex(1.0 - w)),
              1e-14);
  }
}

TEST(PartialTrace, WrongDimension) {
  EXPECT_THROW(partial_trace_first_two(CMatrix(4)), Error);
}

TEST(HermitianEigen, PauliX) {
  const EigenSystem e = hermitian_eigen(pauli::x());
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(HermitianEigen, DiagonalSorted) {
  const EigenSystem e = hermitian_eigen(diag({3, 1, 2, 0}));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], i, 1e-15);
}

TEST(HermitianEigen, XXXSpectrum) {
  // blocks: jz +- eta = 2 +- 0, -jz +- chi = -2 +- 4
  const EigenSystem e = hermitian_eigen(build_hamiltonian({2, 2, 2, 0, 0}));
  const double expected[] = {-6, 2, 2, 2};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], expected[i], 1e-12);
}

TEST(HermitianEigen, RejectsNonHermitian) {
  CMatrix m(2);
  m(0, 1) = 1.0;
  try {
    hermitian_eigen(m);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "expected Hermitian");
  }
}

TEST(HermitianEigen, ReconstructsRandomInputs) {
  std::mt19937_64 rng(4);
  for (int dim : {2, 4, 8}) {
    for (int i = 0; i < 30; ++i) {
      const CMatrix m = oracle::random_hermitian(rng, dim, 3.0);
      const EigenSystem e = hermitian_eigen(m);
      const CMatrix v = e.vectors;
      const CMatrix rebuilt = v * CMatrix::diagonal(e.values) * v.adjoint();
      EXPECT_LE(max_abs_diff(rebuilt, m), 1e-10);
      EXPECT_LE(max_abs_diff(v.adjoint() * v, CMatrix::identity(dim)), 1e-10);
      for (int k = 1; k < dim; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
    }
  }
}

TEST(Expm, ZeroMatrixGivesIdentity) {
  EXPECT_LE(max_abs_diff(expm_hermitian(CMatrix(4), 3.0), CMatrix::identity(4)), 1e-15);
}

TEST(Expm, PauliZ) {
  const CMatrix e = expm_hermitian(pauli::z(), 1.0);
  EXPECT_NEAR(e(0, 0).real(), std::exp(1.0), 1e-14);
  EXPECT_NEAR(e(1, 1).real(), std::exp(-1.0), 1e-15);
  EXPECT_EQ(std::abs(e(0, 1)), 0.0);
}

TEST(Expm, MatchesTaylorOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.1, 1.0);
  for (int i = 0; i < 50; ++i) {
    CMatrix h = oracle::random_hermitian(rng, 4, 1.0);
    // rescale so that ||beta H|| <= 20 in the spectral norm
    const double b = beta(rng);
    const EigenSystem eh = hermitian_eigen(h);
    const double spectral = std::max(std::abs(eh.values.front()), std::abs(eh.values.back()));
    h *= Complex(20.0 * b / spectral);
    const CMatrix got = expm_hermitian(h, -1.0);
    const CMatrix want = oracle::taylor_expm(h, -1.0);
    EXPECT_LE(max_abs_diff(got, want) / std::max(1.0, want.max_abs()), 1e-10);
  }
}

TEST(Expm, ShiftedFormDoesNotOverflow) {
  const ShiftedExponential s = expm_hermitian_shifted(pauli::z() * Complex(1000.0), 1.0);
  EXPECT_NEAR(s.log_scale, 1000.0, 1e-12);
  EXPECT_NEAR(s.matrix(0, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(s.matrix(1, 1).real(), 0.0);
}

TEST(DensityMatrix, ValidatesInvariants) {
  CMatrix m = CMatrix::identity(2) * Complex(0.5);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(m));
  CMatrix bad_trace = CMatrix::identity(2);
  EXPECT_THROW(DensityMatrix::from_matrix(bad_trace), Error);
  CMatrix bad_sign = CMatrix{{1.5, 0.0}, {0.0, -0.5}};
  EXPECT_THROW(DensityMatrix::from_matrix(bad_sign), Error);
  CMatrix bad_herm = m;
  bad_herm(0, 1) = Complex(0.1, 0.0);
  EXPECT_THROW(DensityMatrix::from_matrix(bad_herm), Error);
}

TEST(PureQubit, AmplitudesNormalized) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const PureQubit q(u(rng), 2.0 * std::numbers::pi * u(rng));
    const auto k = q.ket();
    EXPECT_NEAR(std::norm(k[0]) + std::norm(k[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::norm(k[0]), q.alpha_sq(), 1e-15);
  }
  EXPECT_THROW(PureQubit(1.5, 0.0), Error);
}
