#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "ttp/densmat.hpp"

namespace ttp {

/// Labels shared by the Bell states and the correction sets built for them.
enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels{
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

std::string_view to_string(BellLabel label);
BellLabel bell_label_from_string(std::string_view s);
int index_of(BellLabel label);

/// Projectors onto
///   |B1> = cos(phi)|00> + sin(phi)|11>,  |B2> = sin(phi)|00> - cos(phi)|11>,
///   |B3> = cos(phi)|01> + sin(phi)|10>,  |B4> = sin(phi)|01> - cos(phi)|10>.
/// phi is reduced modulo pi; the projectors are pi-periodic.
struct GeneralizedBellBasis {
  double phi;
  std::array<std::array<double, 4>, 4> kets;
  std::array<CMatrix, 4> projectors;
};

GeneralizedBellBasis bell_basis(double phi);

/// Same basis from cos(phi) and sin(phi) supplied by the caller, so that
/// phi = pi/2 can be hit exactly.
GeneralizedBellBasis bell_basis(double cos_phi, double sin_phi, double phi);

/// Bob's Pauli corrections U_1..U_4 indexed by Alice's outcome.
struct CorrectionSet {
  BellLabel label;
  std::array<CMatrix, 4> unitaries;
};

CorrectionSet correction_set(BellLabel label);

struct TeleportOutcome {
  int outcome_j = 0;  // 1..4
  double probability = 0.0;
  bool reachable = false;
  std::optional<DensityMatrix> output_state;  // empty when unreachable
  double fidelity = 0.0;                      // 0 when unreachable
};

inline constexpr double kUnreachableProbability = 1e-15;

/// One run of the protocol on qubits (input, Alice, Bob), measuring qubits 1
/// and 2 in the given basis and correcting qubit 3. j is 1-based.
TeleportOutcome run_outcome(const PureQubit& input, const DensityMatrix& channel,
                            const GeneralizedBellBasis& basis, const CorrectionSet& set, int j);

/// For fixed channel and basis, Bob's unnormalized pre-correction state
/// Tr_12[(P_j (x) 1) (rho_in (x) rho_ch) (P_j (x) 1)] is linear in rho_in.
/// The map is tabulated on the four matrix units through the dense pipeline.
class TransferMaps {
 public:
  TransferMaps(const DensityMatrix& channel, const GeneralizedBellBasis& basis);

  /// 2x2 row-major block.
  using Block = std::array<Complex, 4>;

  /// Unnormalized output for outcome j (0-based) given input operator rho_in.
  CMatrix apply(int j, const CMatrix& rho_in) const;

  /// Same for a pure input ket; avoids building rho_in.
  Block apply_pure(int j, const std::array<Complex, 2>& ket) const;

 private:
  // unit_[j][2a+b] = image of |a><b|
  std::array<std::array<Block, 4>, 4> unit_{};
};

}  // namespace ttp
