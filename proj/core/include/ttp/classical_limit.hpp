#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ttp/closed_form.hpp"
#include "ttp/densmat.hpp"

namespace ttp {

struct BlochVector {
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  double norm() const;
  void validate() const;  // |a| <= 1 + 1e-12
};

/// (1 + a.sigma)/2
DensityMatrix bloch_density(const BlochVector& a);
/// a_k = Tr[sigma_k rho]
BlochVector bloch_of(const DensityMatrix& rho);

struct SeparableTerm {
  double weight = 0.0;
  BlochVector a;
  BlochVector b;
};

/// sum_k p_k rho_a(k) (x) rho_b(k)
struct SeparableChannel {
  std::vector<SeparableTerm> terms;

  void validate() const;
  DensityMatrix assemble() const;
};

struct SignedFidelity {
  double plus = 0.0;
  double minus = 0.0;
};

/// Product-channel average fidelity for the "+" and "-" sets of a family.
SignedFidelity product_avg_fidelity(const BlochVector& a, const BlochVector& b, Branch branch,
                                    double phi);

/// Maximum of the four phi-optimized product expressions.
double product_opt_fidelity(const BlochVector& a, const BlochVector& b);

inline constexpr double kClassicalLimit = 2.0 / 3.0;

/// Values within this of 2/3 count as classical; absorbs rounding on exact-2/3 plateaus.
inline constexpr double kClassicalMargin = 1e-12;
inline constexpr int kBoundQuadratureNodes = 16;

/// Best oracle <F> over phi and all four correction sets.
double oracle_optimal_det_fidelity(const DensityMatrix& channel);

/// Random separable channel: n in 1..4 terms, flat Dirichlet weights, Bloch
/// vectors uniform in the unit ball.
SeparableChannel random_separable_channel(std::mt19937_64& rng);

struct ClassicalBoundResult {
  double max_fidelity = 0.0;  // over the random samples
  long samples = 0;
  std::uint64_t seed = 0;
  double saturating_case = 0.0;     // a = b = (0,0,1)
  double entangled_control = 0.0;   // singlet channel, not separable
};

ClassicalBoundResult verify_classical_bound(long samples, std::uint64_t seed);

}  // namespace ttp
