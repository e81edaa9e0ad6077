#include "ttp/spin_models.hpp"

#include <algorithm>
#include <cmath>

namespace ttp {
namespace {

struct Block2 {
  double lower, upper;
  std::array<double, 2> lower_vec, upper_vec;
};

// [[d + m, o], [o, d - m]]
// The rotation half-angle is taken from m/r directly so that diagonal blocks
// (o = 0) give exact basis vectors.
Block2 diagonalize_block(double d, double m, double o) {
  const double r = std::hypot(m, o);
  double c = 1.0, s = 0.0;
  if (r > 0.0) {
    if (m >= 0.0) {
      c = std::sqrt(0.5 * (1.0 + m / r));
      s = o / (2.0 * r * c);
    } else {
      s = std::copysign(std::sqrt(0.5 * (1.0 - m / r)), o);
      c = o / (2.0 * r * s);
    }
  }
  return {d - r, d + r, {-s, c}, {c, s}};
}

constexpr double kBisectionTol = 1e-10;

template <class Gap>
double bisect_crossing(Gap gap, double lo, double hi) {
  double glo = gap(lo), ghi = gap(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0.0) == (ghi < 0.0)) throw Error("no level crossing found");
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ground_gap(const HeisenbergParams& p) {
  const DerivedParams d = derive(p);
  return (p.jz - d.eta) - (-p.jz - d.chi);
}

}  // namespace

void HeisenbergParams::validate() const {
  for (double v : {jx, jy, jz, ha, hb})
    if (!std::isfinite(v)) throw Error("Heisenberg couplings must be finite");
}

DerivedParams derive(const HeisenbergParams& p) {
  DerivedParams d;
  d.delta_j = p.jx - p.jy;
  d.sigma_j = p.jx + p.jy;
  d.delta_h = p.ha - p.hb;
  d.sigma_h = p.ha + p.hb;
  d.eta = std::hypot(d.delta_j, d.sigma_h);
  d.chi = std::hypot(d.delta_h, d.sigma_j);
  return d;
}

HeisenbergParams from_xy_field(const XYFieldParams& q) {
  if (!(q.lambda >= 0.0)) throw Error("lambda must be non-negative");
  return {-q.lambda * (1.0 + q.zeta), -q.lambda * (1.0 - q.zeta), 0.0, -1.0, -1.0};
}

HeisenbergParams from_xxz_field(const XXZFieldParams& q) {
  const double j2 = 2.0 * q.exchange_j;
  return {j2, j2, j2 * q.delta, -0.5 * q.field_h, -0.5 * q.field_h};
}

CMatrix build_hamiltonian(const HeisenbergParams& p) {
  using namespace pauli;
  const CMatrix one = identity();
  return kron(x(), x()) * Complex(p.jx) + kron(y(), y()) * Complex(p.jy) +
         kron(z(), z()) * Complex(p.jz) + kron(z(), one) * Complex(p.ha) +
         kron(one, z()) * Complex(p.hb);
}

std::array<EnergyLevel, 4> block_spectrum(const HeisenbergParams& p) {
  const DerivedParams d = derive(p);
  const Block2 phi = diagonalize_block(p.jz, d.sigma_h, d.delta_j);
  const Block2 psi = diagonalize_block(-p.jz, d.delta_h, d.sigma_j);

  auto phi_level = [](double e, const std::array<double, 2>& v) {
    return EnergyLevel{e, Sector::Phi, {v[0], 0.0, 0.0, v[1]}};
  };
  auto psi_level = [](double e, const std::array<double, 2>& v) {
    return EnergyLevel{e, Sector::Psi, {0.0, v[0], v[1], 0.0}};
  };
  std::array<EnergyLevel, 4> levels{
      phi_level(phi.lower, phi.lower_vec), phi_level(phi.upper, phi.upper_vec),
      psi_level(psi.lower, psi.lower_vec), psi_level(psi.upper, psi.upper_vec)};
  std::stable_sort(levels.begin(), levels.end(),
                   [](const EnergyLevel& a, const EnergyLevel& b) { return a.energy < b.energy; });
  return levels;
}

ThermalState thermal_state(const HeisenbergParams& p, double kT) {
  p.validate();
  if (!(kT > 0.0)) throw Error("temperature must be positive");
  const double beta = 1.0 / kT;
  const auto levels = block_spectrum(p);
  const double e_min = levels.front().energy;

  std::array<double, 4> w{};
  double z = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = std::exp(-beta * (levels[i].energy - e_min));
    z += w[i];
  }
  CMatrix rho(4);
  for (int i = 0; i < 4; ++i) {
    const auto& v = levels[i].ket;
    const double wi = w[i] / z;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) rho(r, c) += wi * v[r] * v[c];
  }
  return {DensityMatrix::from_matrix(rho), z, beta, p};
}

DensityMatrix thermal_state_dense(const HeisenbergParams& p, double kT) {
  p.validate();
  if (!(kT > 0.0)) throw Error("temperature must be positive");
  CMatrix e = expm_hermitian_shifted(build_hamiltonian(p), -1.0 / kT).matrix;
  e *= Complex(1.0 / e.trace().real());
  return DensityMatrix::from_matrix(e);
}

double critical_point(const CriticalModel& model) {
  struct Visitor {
    double operator()(const XYCritical&) const { return 1.0; }
    double operator()(const XXXFieldCritical& m) const {
      return bisect_crossing(
          [&](double j) { return ground_gap(from_xxz_field({j, 1.0, m.field_h})); }, 1e-6, 10.0);
    }
    double operator()(const XXZFieldCritical& m) const {
      return bisect_crossing(
          [&](double delta) {
            return ground_gap(from_xxz_field({m.exchange_j, delta, m.field_h}));
          },
          -5.0, 5.0);
    }
  };
  return std::visit(Visitor{}, model);
}

}  // namespace ttp
