#include "ttp/classical_limit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "ttp/averaging.hpp"

namespace ttp {

double BlochVector::norm() const { return std::sqrt(ax * ax + ay * ay + az * az); }

void BlochVector::validate() const {
  if (!std::isfinite(ax) || !std::isfinite(ay) || !std::isfinite(az) || norm() > 1.0 + 1e-12)
    throw Error("Bloch vector must lie in the unit ball");
}

DensityMatrix bloch_density(const BlochVector& a) {
  a.validate();
  return DensityMatrix::from_matrix(CMatrix{{0.5 * (1.0 + a.az), Complex(0.5 * a.ax, -0.5 * a.ay)},
                                            {Complex(0.5 * a.ax, 0.5 * a.ay), 0.5 * (1.0 - a.az)}});
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error("expected a single-qubit state");
  const CMatrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

void SeparableChannel::validate() const {
  if (terms.empty()) throw Error("separable channel needs at least one term");
  double total = 0.0;
  for (const SeparableTerm& t : terms) {
    if (!(t.weight >= 0.0 && t.weight <= 1.0)) throw Error("weights must lie in [0,1]");
    t.a.validate();
    t.b.validate();
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("weights must sum to 1");
}

DensityMatrix SeparableChannel::assemble() const {
  validate();
  CMatrix m(4);
  for (const SeparableTerm& t : terms)
    m += kron(bloch_density(t.a).matrix(), bloch_density(t.b).matrix()) * Complex(t.weight);
  return DensityMatrix::from_matrix(m);
}

SignedFidelity product_avg_fidelity(const BlochVector& a, const BlochVector& b, Branch branch,
                                    double phi) {
  const double s2 = std::sin(2.0 * phi);
  if (branch == Branch::Phi) {
    const double base = 3.0 + a.az * b.az, t = (a.ax * b.ax - a.ay * b.ay) * s2;
    return {(base + t) / 6.0, (base - t) / 6.0};
  }
  const double base = 3.0 - a.az * b.az, t = (a.ax * b.ax + a.ay * b.ay) * s2;
  return {(base + t) / 6.0, (base - t) / 6.0};
}

double product_opt_fidelity(const BlochVector& a, const BlochVector& b) {
  const double phi = (3.0 + a.az * b.az + std::abs(a.ax * b.ax - a.ay * b.ay)) / 6.0;
  const double psi = (3.0 - a.az * b.az + std::abs(a.ax * b.ax + a.ay * b.ay)) / 6.0;
  return std::max(phi, psi);
}

double oracle_optimal_det_fidelity(const DensityMatrix& channel) {
  static const QuadratureGrid grid =
      QuadratureGrid::make(kBoundQuadratureNodes, kBoundQuadratureNodes);
  return oracle_det_optimal(AngularAverages(channel, grid)).value;
}

SeparableChannel random_separable_channel(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::exponential_distribution<double> gamma1(1.0);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  auto ball = [&] {
    for (;;) {
      const BlochVector v{cube(rng), cube(rng), cube(rng)};
      if (v.norm() <= 1.0) return v;
    }
  };
  SeparableChannel ch;
  const int n = count(rng);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    SeparableTerm t;
    t.weight = gamma1(rng);
    t.a = ball();
    t.b = ball();
    total += t.weight;
    ch.terms.push_back(t);
  }
  for (SeparableTerm& t : ch.terms) t.weight /= total;
  return ch;
}

ClassicalBoundResult verify_classical_bound(long samples, std::uint64_t seed) {
  if (samples < 1000) throw Error("classical bound check needs at least 1000 samples");
  std::mt19937_64 rng(seed);
  std::vector<SeparableChannel> channels(samples);
  for (auto& c : channels) c = random_separable_channel(rng);

  std::vector<double> best(samples);
  detail::parallel_for(channels.size(), [&](std::size_t i) {
    best[i] = oracle_optimal_det_fidelity(channels[i].assemble());
  });

  ClassicalBoundResult r;
  r.samples = samples;
  r.seed = seed;
  r.max_fidelity = *std::max_element(best.begin(), best.end());
  const BlochVector up{0.0, 0.0, 1.0};
  r.saturating_case = oracle_optimal_det_fidelity(SeparableChannel{{{1.0, up, up}}}.assemble());
  const std::array<Complex, 4> singlet{0.0, std::sqrt(0.5), -std::sqrt(0.5), 0.0};
  r.entangled_control = oracle_optimal_det_fidelity(DensityMatrix::pure(singlet));
  return r;
}

}  // namespace ttp
