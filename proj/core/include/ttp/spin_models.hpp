#pragma once

#include <array>
#include <variant>

#include "ttp/densmat.hpp"

namespace ttp {

/// H = jx XX + jy YY + jz ZZ + ha Z(x)1 + hb 1(x)Z on the channel qubits
/// (Alice's qubit 2 first, Bob's qubit 3 second). Energies in units with k = 1.
struct HeisenbergParams {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double ha = 0.0;
  double hb = 0.0;

  void validate() const;
  friend bool operator==(const HeisenbergParams&, const HeisenbergParams&) = default;
};

/// Sector quantities. The {|00>,|11>} block has energies jz +- eta and the
/// {|01>,|10>} block has energies -jz +- chi.
struct DerivedParams {
  double delta_j = 0.0;  // jx - jy
  double sigma_j = 0.0;  // jx + jy
  double delta_h = 0.0;  // ha - hb
  double sigma_h = 0.0;  // ha + hb
  double eta = 0.0;      // hypot(delta_j, sigma_h)
  double chi = 0.0;      // hypot(delta_h, sigma_j)
};

DerivedParams derive(const HeisenbergParams& p);

/// H = -lambda[(1+zeta) XX + (1-zeta) YY] - Z(x)1 - 1(x)Z.
struct XYFieldParams {
  double lambda = 0.0;
  double zeta = 0.0;
};

/// H = 2J[XX + YY + delta ZZ] - (h/2)[Z(x)1 + 1(x)Z].
struct XXZFieldParams {
  double exchange_j = 0.0;
  double delta = 0.0;
  double field_h = 0.0;
};

HeisenbergParams from_xy_field(const XYFieldParams& q);
HeisenbergParams from_xxz_field(const XXZFieldParams& q);

CMatrix build_hamiltonian(const HeisenbergParams& p);

enum class Sector { Phi, Psi };

struct EnergyLevel {
  double energy = 0.0;
  Sector sector = Sector::Phi;
  std::array<double, 4> ket{};  // real amplitudes on |00>,|01>,|10>,|11>
};

/// Analytic diagonalization of the two 2x2 blocks, sorted by ascending energy.
std::array<EnergyLevel, 4> block_spectrum(const HeisenbergParams& p);

struct ThermalState {
  DensityMatrix rho;
  double partition_z;  // sum of exp(-beta (E - E_min))
  double beta;
  HeisenbergParams params;
};

/// Gibbs state exp(-H/kT)/Z from the block spectrum. Throws
/// "temperature must be positive" unless kT > 0.
ThermalState thermal_state(const HeisenbergParams& p, double kT);

/// Same state through the generic dense exponential; used as a cross-check.
DensityMatrix thermal_state_dense(const HeisenbergParams& p, double kT);

struct XYCritical {};
struct XXXFieldCritical {
  double field_h = 0.0;
};
struct XXZFieldCritical {
  double exchange_j = 0.0;
  double field_h = 0.0;
};
using CriticalModel = std::variant<XYCritical, XXXFieldCritical, XXZFieldCritical>;

/// Ground-level crossing of the two-site model. XY returns the chain value
/// lambda = 1; the others bisect on the sign of min(Phi block) - min(Psi block)
/// over J in [1e-6, 10] or delta in [-5, 5]. Throws "no level crossing found".
double critical_point(const CriticalModel& model);

/// Infinite-order transition of the XXZ chain at J = 1, h = 4. Literature
/// value, not computed here.
inline constexpr double kXXZDeltaInfLiterature = 2.74;

}  // namespace ttp
