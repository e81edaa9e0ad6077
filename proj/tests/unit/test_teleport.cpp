#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ttp/spin_models.hpp"
#include "ttp/teleport.hpp"

using namespace ttp;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = std::sqrt(0.5);

DensityMatrix bell_state(BellLabel l) {
  std::array<Complex, 4> k{};
  switch (l) {
    case BellLabel::PhiPlus: k = {kH, 0, 0, kH}; break;
    case BellLabel::PhiMinus: k = {kH, 0, 0, -kH}; break;
    case BellLabel::PsiPlus: k = {0, kH, kH, 0}; break;
    case BellLabel::PsiMinus: k = {0, kH, -kH, 0}; break;
  }
  return DensityMatrix::pure(k);
}

}  // namespace

TEST(BellBasis, StandardBellAtQuarterPi) {
  const auto b = bell_basis(kPi / 4);
  EXPECT_LE(max_abs_diff(b.projectors[0], bell_state(BellLabel::PhiPlus).matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(b.projectors[1], bell_state(BellLabel::PhiMinus).matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(b.projectors[2], bell_state(BellLabel::PsiPlus).matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(b.projectors[3], bell_state(BellLabel::PsiMinus).matrix()), 1e-15);
}

TEST(BellBasis, SeparableAtZero) {
  const auto b = bell_basis(0.0);
  EXPECT_EQ(b.kets[0][0], 1.0);
  EXPECT_EQ(b.kets[1][3], -1.0);
}

TEST(BellBasis, OrthogonalAtThirdPi) {
  const auto b = bell_basis(kPi / 3);
  double dot = 0.0;
  for (int i = 0; i < 4; ++i) dot += b.kets[0][i] * b.kets[1][i];
  EXPECT_NEAR(dot, 0.0, 1e-16);
}

TEST(BellBasis, ProjectorInvariants) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double phi = u(rng);
    const auto b = bell_basis(phi);
    EXPECT_GE(b.phi, 0.0);
    EXPECT_LE(b.phi, kPi);
    CMatrix sum(4);
    for (int j = 0; j < 4; ++j) {
      const CMatrix& p = b.projectors[j];
      EXPECT_LE(p.hermiticity_error(), 1e-15);
      EXPECT_LE(max_abs_diff(p * p, p), 1e-12);
      EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
      for (int k = 0; k < 4; ++k)
        if (k != j) EXPECT_LE((p * b.projectors[k]).max_abs(), 1e-12);
      sum += p;
    }
    EXPECT_LE(max_abs_diff(sum, CMatrix::identity(4)), 1e-12);
  }
}

TEST(CorrectionSet, TableEntries) {
  EXPECT_LE(max_abs_diff(correction_set(BellLabel::PhiPlus).unitaries[0], pauli::identity()), 0.0);
  EXPECT_LE(max_abs_diff(correction_set(BellLabel::PhiPlus).unitaries[1], pauli::z()), 0.0);
  EXPECT_LE(max_abs_diff(correction_set(BellLabel::PsiMinus).unitaries[3], pauli::identity()), 0.0);
  EXPECT_LE(max_abs_diff(correction_set(BellLabel::PsiPlus).unitaries[1], pauli::z() * pauli::x()),
            0.0);
}

TEST(CorrectionSet, UnitaryAndOrthogonal) {
  for (BellLabel l : kAllBellLabels) {
    const CorrectionSet s = correction_set(l);
    EXPECT_EQ(s.label, l);
    for (int j = 0; j < 4; ++j) {
      EXPECT_LE(max_abs_diff(s.unitaries[j] * s.unitaries[j].adjoint(), CMatrix::identity(2)),
                1e-14);
      for (int k = 0; k < 4; ++k) {
        const Complex t = (s.unitaries[j] * s.unitaries[k].adjoint()).trace();
        EXPECT_EQ(t, Complex(j == k ? 2.0 : 0.0));
      }
    }
  }
}

TEST(CorrectionSet, LabelRoundTrip) {
  for (BellLabel l : kAllBellLabels) EXPECT_EQ(bell_label_from_string(to_string(l)), l);
  EXPECT_THROW(bell_label_from_string("Chi+"), Error);
}

TEST(RunOutcome, IdealStandardProtocol) {
  const auto b = bell_basis(kPi / 4);
  const auto set = correction_set(BellLabel::PhiPlus);
  const PureQubit in(0.37, 2.1);
  for (int j = 1; j <= 4; ++j) {
    const TeleportOutcome o = run_outcome(in, bell_state(BellLabel::PhiPlus), b, set, j);
    EXPECT_TRUE(o.reachable);
    EXPECT_NEAR(o.probability, 0.25, 1e-15);
    EXPECT_NEAR(o.fidelity, 1.0, 1e-14);
  }
}

TEST(RunOutcome, MaximallyMixedChannel) {
  const PureQubit in(0.8, 0.4);
  for (double phi : {0.0, 0.3, kPi / 4}) {
    for (BellLabel l : kAllBellLabels) {
      for (int j = 1; j <= 4; ++j) {
        const TeleportOutcome o =
            run_outcome(in, DensityMatrix::maximally_mixed(4), bell_basis(phi), correction_set(l), j);
        const double want =
            oracle::teleport(in.ket(), CMatrix::identity(4) * Complex(0.25), phi, j - 1, 0)
                .probability;
        EXPECT_NEAR(o.probability, want, 1e-15);
        if (phi == kPi / 4) EXPECT_NEAR(o.probability, 0.25, 1e-15);
        EXPECT_NEAR(o.fidelity, 0.5, 1e-14);
        EXPECT_LE(max_abs_diff(o.output_state->matrix(), CMatrix::identity(2) * Complex(0.5)),
                  1e-14);
      }
    }
  }
}

TEST(RunOutcome, SingletWithWrongCorrection) {
  const auto b = bell_basis(kPi / 4);
  const auto set = correction_set(BellLabel::PhiPlus);
  const DensityMatrix ch = bell_state(BellLabel::PsiMinus);
  // value from the independent index-sum oracle
  for (double gamma : {kPi / 2, 0.0}) {
    const PureQubit in(0.5, gamma);
    const oracle::Run ref = oracle::teleport(in.ket(), ch.matrix(), kPi / 4, 0, 0);
    const TeleportOutcome o = run_outcome(in, ch, b, set, 1);
    EXPECT_NEAR(o.fidelity, ref.fidelity_times_probability / ref.probability, 1e-14);
  }
  EXPECT_NEAR(run_outcome(PureQubit(0.5, kPi / 2), ch, b, set, 1).fidelity, 1.0, 1e-14);
  EXPECT_NEAR(run_outcome(PureQubit(0.5, 0.0), ch, b, set, 1).fidelity, 0.0, 1e-14);
}

TEST(RunOutcome, UnreachableOutcomeIsFlagged) {
  // |00> channel, phi = 0: outcome B2 = -|11> on qubits 1,2 needs Alice's qubit in |1>
  const std::array<Complex, 4> k{1, 0, 0, 0};
  const TeleportOutcome o = run_outcome(PureQubit(0.3, 0.0), DensityMatrix::pure(k), bell_basis(0.0),
                                        correction_set(BellLabel::PhiPlus), 2);
  EXPECT_FALSE(o.reachable);
  EXPECT_FALSE(o.output_state.has_value());
  EXPECT_EQ(o.fidelity, 0.0);
  EXPECT_LT(o.probability, kUnreachableProbability);
}

TEST(RunOutcome, RejectsBadOutcomeIndex) {
  EXPECT_THROW(run_outcome(PureQubit(0.5, 0.0), DensityMatrix::maximally_mixed(4), bell_basis(0.1),
                           correction_set(BellLabel::PhiPlus), 5),
               Error);
}

TEST(RunOutcome, MatchesIndexSumOracleAndCompleteness) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix ch = DensityMatrix::from_matrix(oracle::random_density(rng, 4));
    const double phi = kPi * u(rng);
    const PureQubit in(u(rng), 2 * kPi * u(rng));
    const auto basis = bell_basis(phi);
    const int e = i % 4;
    const auto set = correction_set(kAllBellLabels[e]);
    double total = 0.0;
    for (int j = 1; j <= 4; ++j) {
      const TeleportOutcome o = run_outcome(in, ch, basis, set, j);
      total += o.probability;
      EXPECT_GE(o.probability, 0.0);
      EXPECT_LE(o.probability, 1.0);
      if (i < 200) {
        const oracle::Run ref = oracle::teleport(in.ket(), ch.matrix(), phi, j - 1, e);
        EXPECT_NEAR(o.probability, ref.probability, 1e-14);
        if (ref.probability > 1e-6)
          EXPECT_NEAR(o.fidelity, ref.fidelity_times_probability / ref.probability, 1e-10);
      }
      if (o.probability > 1e-12) {
        const DensityCheck c = check_density(o.output_state->matrix());
        EXPECT_TRUE(c.ok());
        EXPECT_GE(o.fidelity, -1e-12);
        EXPECT_LE(o.fidelity, 1.0 + 1e-12);
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(RunOutcome, IdealChannelsWithMatchingSets) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (BellLabel l : kAllBellLabels) {
    const DensityMatrix ch = bell_state(l);
    const auto set = correction_set(l);
    for (int i = 0; i < 100; ++i) {
      const PureQubit in(u(rng), 2 * kPi * u(rng));
      for (int j = 1; j <= 4; ++j)
        EXPECT_NEAR(run_outcome(in, ch, bell_basis(kPi / 4), set, j).fidelity, 1.0, 1e-12);
    }
  }
}

TEST(RunOutcome, PiShiftInvariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix ch = thermal_state(oracle::random_params(rng, 2.0), 0.5 + u(rng)).rho;
    const PureQubit in(u(rng), 2 * kPi * u(rng));
    const double phi = kPi * u(rng);
    const auto set = correction_set(kAllBellLabels[i % 4]);
    for (int j = 1; j <= 4; ++j) {
      const auto a = run_outcome(in, ch, bell_basis(phi), set, j);
      const auto b = run_outcome(in, ch, bell_basis(phi + kPi), set, j);
      EXPECT_NEAR(a.fidelity, b.fidelity, 1e-12);
      EXPECT_NEAR(a.probability, b.probability, 1e-14);
    }
  }
}

TEST(TransferMaps, AgreeWithDensePipeline) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix ch = DensityMatrix::from_matrix(oracle::random_density(rng, 4));
    const double phi = kPi * u(rng);
    const TransferMaps maps(ch, bell_basis(phi));
    const PureQubit in(u(rng), 2 * kPi * u(rng));
    for (int j = 0; j < 4; ++j) {
      const oracle::Run ref = oracle::teleport(in.ket(), ch.matrix(), phi, j, 0);
      const CMatrix m = maps.apply(j, in.projector());
      EXPECT_NEAR(m.trace().real(), ref.probability, 1e-14);
      const auto block = maps.apply_pure(j, in.ket());
      EXPECT_NEAR(std::abs(block[0] - m(0, 0)) + std::abs(block[1] - m(0, 1)) +
                      std::abs(block[2] - m(1, 0)) + std::abs(block[3] - m(1, 1)),
                  0.0, 1e-15);
    }
  }
}
