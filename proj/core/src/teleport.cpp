#include "ttp/teleport.hpp"

#include <cmath>
#include <numbers>

namespace ttp {

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "Phi+";
    case BellLabel::PhiMinus: return "Phi-";
    case BellLabel::PsiPlus: return "Psi+";
    case BellLabel::PsiMinus: return "Psi-";
  }
  return "?";
}

BellLabel bell_label_from_string(std::string_view s) {
  for (BellLabel l : kAllBellLabels)
    if (to_string(l) == s) return l;
  throw Error("unknown Bell label: " + std::string(s));
}

int index_of(BellLabel label) { return static_cast<int>(label); }

GeneralizedBellBasis bell_basis(double phi) {
  if (!std::isfinite(phi)) throw Error("phi must be finite");
  double reduced = std::fmod(phi, std::numbers::pi);
  if (reduced < 0.0) reduced += std::numbers::pi;
  // Kets are built from the caller's phi; a shift by pi only flips their sign.
  return bell_basis(std::cos(phi), std::sin(phi), reduced);
}

GeneralizedBellBasis bell_basis(double c, double s, double phi) {
  GeneralizedBellBasis b{phi,
                         {{{c, 0.0, 0.0, s}, {s, 0.0, 0.0, -c}, {0.0, c, s, 0.0}, {0.0, s, -c, 0.0}}},
                         {CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4)}};
  for (int j = 0; j < 4; ++j)
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col) b.projectors[j](r, col) = b.kets[j][r] * b.kets[j][col];
  return b;
}

CorrectionSet correction_set(BellLabel label) {
  const CMatrix one = pauli::identity();
  const CMatrix z = pauli::z();
  const CMatrix x = pauli::x();
  const CMatrix zx = z * x;
  switch (label) {
    case BellLabel::PhiPlus: return {label, {one, z, x, zx}};
    case BellLabel::PhiMinus: return {label, {z, one, zx, x}};
    case BellLabel::PsiPlus: return {label, {x, zx, one, z}};
    case BellLabel::PsiMinus: return {label, {zx, x, z, one}};
  }
  throw Error("unknown correction set");
}

TeleportOutcome run_outcome(const PureQubit& input, const DensityMatrix& channel,
                            const GeneralizedBellBasis& basis, const CorrectionSet& set, int j) {
  if (j < 1 || j > 4) throw Error("outcome index must be in 1..4");
  if (channel.dim() != 4) throw Error("channel must be a two-qubit state");

  const CMatrix rho = kron(input.projector(), channel.matrix());
  const CMatrix proj = kron(basis.projectors[j - 1], pauli::identity());

  TeleportOutcome out;
  out.outcome_j = j;
  out.probability = std::max(0.0, (proj * rho).trace().real());
  if (out.probability < kUnreachableProbability) return out;

  CMatrix bob = partial_trace_first_two(proj * rho * proj);
  const CMatrix& u = set.unitaries[j - 1];
  bob = u * bob * u.adjoint();
  bob = (bob + bob.adjoint()) * Complex(0.5);
  bob *= Complex(1.0 / bob.trace().real());

  out.reachable = true;
  out.output_state = DensityMatrix::from_matrix(bob);
  const auto k = input.ket();
  Complex f = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) f += std::conj(k[r]) * bob(r, c) * k[c];
  out.fidelity = f.real();
  return out;
}

TransferMaps::TransferMaps(const DensityMatrix& channel, const GeneralizedBellBasis& basis) {
  if (channel.dim() != 4) throw Error("channel must be a two-qubit state");
  for (int j = 0; j < 4; ++j) {
    const CMatrix proj = kron(basis.projectors[j], pauli::identity());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        CMatrix unit(2);
        unit(a, b) = 1.0;
        const CMatrix img = partial_trace_first_two(proj * kron(unit, channel.matrix()) * proj);
        unit_[j][2 * a + b] = {img(0, 0), img(0, 1), img(1, 0), img(1, 1)};
      }
  }
}

CMatrix TransferMaps::apply(int j, const CMatrix& rho_in) const {
  if (rho_in.dim() != 2) throw Error("input operator must be 2x2");
  CMatrix out(2);
  for (int ab = 0; ab < 4; ++ab) {
    const Complex w = rho_in(ab / 2, ab % 2);
    for (int e = 0; e < 4; ++e) out(e / 2, e % 2) += w * unit_[j][ab][e];
  }
  return out;
}

TransferMaps::Block TransferMaps::apply_pure(int j, const std::array<Complex, 2>& ket) const {
  Block out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Complex w = ket[a] * std::conj(ket[b]);
      const auto& img = unit_[j][2 * a + b];
      for (int e = 0; e < 4; ++e) out[e] += w * img[e];
    }
  return out;
}

}  // namespace ttp
