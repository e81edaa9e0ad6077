#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ttp/densmat.hpp"
#include "ttp/teleport.hpp"

namespace ttp {

/// Gauss-Legendre nodes in alpha^2 on [0,1] (weights sum to 1) times equally
/// spaced gamma on [0, 2pi) with weight 1/n_gamma.
struct QuadratureGrid {
  int n_alpha = 0;
  int n_gamma = 0;
  std::vector<double> alpha_nodes;
  std::vector<double> alpha_weights;

  static QuadratureGrid make(int n_alpha, int n_gamma);
  static const QuadratureGrid& default_grid();  // 64 x 64
};

inline constexpr int kDefaultQuadratureNodes = 64;
inline constexpr double kUndefinedConditional = 1e-14;

/// Averages over the uniform (alpha^2, gamma) input distribution. Correction
/// sets are indexed by index_of(BellLabel), outcomes j by 0..3.
struct AveragedQuantities {
  std::array<double, 4> qbar{};
  // fq[j][e] = integral of F_j Q_j with set e; the numerator of fbar_cond
  std::array<std::array<double, 4>, 4> fq{};
  std::array<std::array<double, 4>, 4> fbar_cond{};
  std::array<bool, 4> cond_defined{};  // false where qbar_j < 1e-14
  std::array<double, 4> fbar_det{};

  // Only filled by the Monte Carlo estimator.
  std::array<double, 4> qbar_stderr{};
  std::array<std::array<double, 4>, 4> fbar_cond_stderr{};
  std::array<double, 4> fbar_det_stderr{};
  std::uint64_t seed = 0;
  long samples = 0;
};

AveragedQuantities average_all(const DensityMatrix& channel, double phi,
                               const QuadratureGrid& grid = QuadratureGrid::default_grid());

/// Plain Monte Carlo over the same distribution with std::mt19937_64.
AveragedQuantities average_all_montecarlo(const DensityMatrix& channel, double phi, long samples,
                                          std::uint64_t seed);

/// Every unnormalized average (qbar_j, fq[j][e]) is a quadratic form
/// A cos^2(phi) + B sin^2(phi) + C sin(phi) cos(phi) because the projectors are.
/// Quadrature at phi = 0, pi/4 and pi/2 (with exact kets) fixes the
/// coefficients, after which any phi costs a handful of flops. This basis keeps
/// small rates near phi = 0 or pi/2 free of cancellation.
class AngularAverages {
 public:
  explicit AngularAverages(const DensityMatrix& channel,
                           const QuadratureGrid& grid = QuadratureGrid::default_grid());

  AveragedQuantities at(double phi) const;

  /// Direct quadrature at phi. Slower than at(), but small rates away from
  /// phi = 0 and pi/2 keep full relative accuracy.
  AveragedQuantities direct(double phi) const;

  double qbar(int j, double phi) const;
  double fq(int j, int e, double phi) const;
  double fbar_det(int e, double phi) const;
  std::array<double, 4> fbar_det_all(double phi) const;

  /// phi in [0, pi) where qbar_j is smallest.
  double rate_minimum(int j) const;

 private:
  struct Quadratic {
    double a = 0.0, b = 0.0, c = 0.0;
    double operator()(double cs, double sn) const { return a * cs * cs + b * sn * sn + c * sn * cs; }
  };
  DensityMatrix channel_;
  QuadratureGrid grid_;
  std::array<Quadratic, 4> q_{};
  std::array<std::array<Quadratic, 4>, 4> fq_{};
};

/// Optimum of the oracle averages over phi in [0, pi] (grid plus golden section).
/// The conditional optimum is re-evaluated with direct quadrature at the chosen phi.
struct OracleOptimum {
  double value = 0.0;
  double phi = 0.0;
  BellLabel set = BellLabel::PhiPlus;
  int outcome_j = 0;          // 1..4 for the conditional optimum, 0 for <F>
  double success_rate = 1.0;  // Qbar_j + Qbar of the paired outcome (j, 5 - j)
};

/// Outcomes rarer than this are left out of the postselection search. Matches
/// kMinPostselectionRate on the closed-form side.
inline constexpr double kOracleMinRate = kUndefinedConditional;

OracleOptimum oracle_det_optimal(const AngularAverages& avg);
OracleOptimum oracle_prob_optimal(const AngularAverages& avg);

}  // namespace ttp
