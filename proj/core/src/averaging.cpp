#include "ttp/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "summation.hpp"
#include "ttp/optimize.hpp"

namespace ttp {
namespace {

using detail::CompensatedSum;
using Mat2 = std::array<Complex, 4>;

// Gauss-Legendre on [-1,1] by Newton iteration from the Chebyshev guess.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

std::array<std::array<Mat2, 4>, 4> correction_table() {
  std::array<std::array<Mat2, 4>, 4> t{};
  for (BellLabel label : kAllBellLabels) {
    const CorrectionSet set = correction_set(label);
    for (int j = 0; j < 4; ++j) {
      const CMatrix& u = set.unitaries[j];
      t[index_of(label)][j] = {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
    }
  }
  return t;
}

const std::array<std::array<Mat2, 4>, 4>& corrections() {
  static const auto table = correction_table();
  return table;
}

// <psi| U rho U^dag |psi> for 2x2 row-major U and rho.
double corrected_overlap(const Mat2& u, const Mat2& rho, const std::array<Complex, 2>& psi) {
  // v = U^dag psi
  const Complex v0 = std::conj(u[0]) * psi[0] + std::conj(u[2]) * psi[1];
  const Complex v1 = std::conj(u[1]) * psi[0] + std::conj(u[3]) * psi[1];
  const Complex r = std::conj(v0) * (rho[0] * v0 + rho[1] * v1) +
                    std::conj(v1) * (rho[2] * v0 + rho[3] * v1);
  return r.real();
}

struct NodeValues {
  std::array<double, 4> q{};
  std::array<std::array<double, 4>, 4> fq{};
};

NodeValues evaluate_node(const TransferMaps& maps, const std::array<Complex, 2>& psi) {
  NodeValues v;
  const auto& table = corrections();
  for (int j = 0; j < 4; ++j) {
    const Mat2 out = maps.apply_pure(j, psi);
    v.q[j] = (out[0] + out[3]).real();
    for (int e = 0; e < 4; ++e) v.fq[j][e] = corrected_overlap(table[e][j], out, psi);
  }
  return v;
}

std::array<Complex, 2> input_ket(double alpha_sq, double gamma) {
  return {Complex(std::sqrt(alpha_sq), 0.0), std::polar(std::sqrt(1.0 - alpha_sq), gamma)};
}

void finish(AveragedQuantities& r) {
  for (int e = 0; e < 4; ++e) {
    double det = 0.0;
    for (int j = 0; j < 4; ++j) det += r.fq[j][e];
    r.fbar_det[e] = det;
  }
  for (int j = 0; j < 4; ++j) {
    r.cond_defined[j] = r.qbar[j] >= kUndefinedConditional;
    for (int e = 0; e < 4; ++e) r.fbar_cond[j][e] = r.cond_defined[j] ? r.fq[j][e] / r.qbar[j] : 0.0;
  }
}

}  // namespace

QuadratureGrid QuadratureGrid::make(int n_alpha, int n_gamma) {
  if (n_alpha < 1 || n_gamma < 1) throw Error("quadrature node counts must be positive");
  QuadratureGrid g;
  g.n_alpha = n_alpha;
  g.n_gamma = n_gamma;
  gauss_legendre(n_alpha, g.alpha_nodes, g.alpha_weights);
  for (int i = 0; i < n_alpha; ++i) {
    g.alpha_nodes[i] = 0.5 * (g.alpha_nodes[i] + 1.0);
    g.alpha_weights[i] *= 0.5;
  }
  return g;
}

const QuadratureGrid& QuadratureGrid::default_grid() {
  static const QuadratureGrid g = make(kDefaultQuadratureNodes, kDefaultQuadratureNodes);
  return g;
}

namespace {

AveragedQuantities average_basis(const DensityMatrix& channel, const GeneralizedBellBasis& basis,
                                 const QuadratureGrid& grid) {
  if (grid.n_alpha < 8 || grid.n_gamma < 8) throw Error("quadrature grid needs at least 8 nodes per axis");
  const TransferMaps maps(channel, basis);

  std::array<CompensatedSum, 4> q;
  std::array<std::array<CompensatedSum, 4>, 4> fq;
  for (int ia = 0; ia < grid.n_alpha; ++ia) {
    const double wa = grid.alpha_weights[ia] / grid.n_gamma;
    for (int ig = 0; ig < grid.n_gamma; ++ig) {
      const double gamma = 2.0 * std::numbers::pi * ig / grid.n_gamma;
      const NodeValues v = evaluate_node(maps, input_ket(grid.alpha_nodes[ia], gamma));
      for (int j = 0; j < 4; ++j) {
        q[j].add(wa * v.q[j]);
        for (int e = 0; e < 4; ++e) fq[j][e].add(wa * v.fq[j][e]);
      }
    }
  }

  AveragedQuantities r;
  for (int j = 0; j < 4; ++j) {
    r.qbar[j] = q[j].value();
    for (int e = 0; e < 4; ++e) r.fq[j][e] = fq[j][e].value();
  }
  finish(r);
  return r;
}

}  // namespace

AveragedQuantities average_all(const DensityMatrix& channel, double phi,
                               const QuadratureGrid& grid) {
  return average_basis(channel, bell_basis(phi), grid);
}

AveragedQuantities average_all_montecarlo(const DensityMatrix& channel, double phi, long samples,
                                          std::uint64_t seed) {
  if (samples < 1000) throw Error("Monte Carlo needs at least 1000 samples");
  const TransferMaps maps(channel, bell_basis(phi));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<NodeValues> draws(samples);
  for (auto& d : draws) {
    const double alpha_sq = unit(rng);
    const double gamma = 2.0 * std::numbers::pi * unit(rng);
    d = evaluate_node(maps, input_ket(alpha_sq, gamma));
  }
  const double n = static_cast<double>(samples);

  AveragedQuantities r;
  r.seed = seed;
  r.samples = samples;
  for (int j = 0; j < 4; ++j) {
    CompensatedSum s;
    for (const auto& d : draws) s.add(d.q[j]);
    r.qbar[j] = s.value() / n;
    for (int e = 0; e < 4; ++e) {
      CompensatedSum f;
      for (const auto& d : draws) f.add(d.fq[j][e]);
      r.fq[j][e] = f.value() / n;
    }
  }
  finish(r);

  auto stderr_of = [&](auto&& value, double mean) {
    CompensatedSum s;
    for (const auto& d : draws) {
      const double dev = value(d) - mean;
      s.add(dev * dev);
    }
    return std::sqrt(s.value() / (n - 1.0) / n);
  };
  for (int j = 0; j < 4; ++j) {
    r.qbar_stderr[j] = stderr_of([&](const NodeValues& d) { return d.q[j]; }, r.qbar[j]);
    for (int e = 0; e < 4; ++e) {
      if (!r.cond_defined[j]) continue;
      // delta method for the ratio of means
      const double ratio = r.fbar_cond[j][e];
      r.fbar_cond_stderr[j][e] =
          stderr_of([&](const NodeValues& d) { return d.fq[j][e] - ratio * d.q[j]; }, 0.0) /
          r.qbar[j];
    }
  }
  for (int e = 0; e < 4; ++e) {
    r.fbar_det_stderr[e] = stderr_of(
        [&](const NodeValues& d) {
          double s = 0.0;
          for (int j = 0; j < 4; ++j) s += d.fq[j][e];
          return s;
        },
        r.fbar_det[e]);
  }
  return r;
}

AngularAverages::AngularAverages(const DensityMatrix& channel, const QuadratureGrid& grid)
    : channel_(channel), grid_(grid) {
  const double h = std::sqrt(0.5);
  const AveragedQuantities x0 = average_basis(channel, bell_basis(1.0, 0.0, 0.0), grid);
  const AveragedQuantities x1 =
      average_basis(channel, bell_basis(h, h, std::numbers::pi / 4.0), grid);
  const AveragedQuantities x2 =
      average_basis(channel, bell_basis(0.0, 1.0, std::numbers::pi / 2.0), grid);
  // at pi/4: (a + b + c) / 2, up to the rounding of h * h
  const double hh = h * h;
  auto fit = [hh](double v0, double v1, double v2) {
    return Quadratic{v0, v2, v1 / hh - v0 - v2};
  };
  for (int j = 0; j < 4; ++j) {
    q_[j] = fit(x0.qbar[j], x1.qbar[j], x2.qbar[j]);
    for (int e = 0; e < 4; ++e) fq_[j][e] = fit(x0.fq[j][e], x1.fq[j][e], x2.fq[j][e]);
  }
}

double AngularAverages::qbar(int j, double phi) const {
  return q_[j](std::cos(phi), std::sin(phi));
}

double AngularAverages::fq(int j, int e, double phi) const {
  return fq_[j][e](std::cos(phi), std::sin(phi));
}

double AngularAverages::fbar_det(int e, double phi) const {
  const double cs = std::cos(phi), sn = std::sin(phi);
  double s = 0.0;
  for (int j = 0; j < 4; ++j) s += fq_[j][e](cs, sn);
  return s;
}

std::array<double, 4> AngularAverages::fbar_det_all(double phi) const {
  const double cs = std::cos(phi), sn = std::sin(phi);
  std::array<double, 4> out{};
  for (int e = 0; e < 4; ++e)
    for (int j = 0; j < 4; ++j) out[e] += fq_[j][e](cs, sn);
  return out;
}

AveragedQuantities AngularAverages::at(double phi) const {
  const double cs = std::cos(phi), sn = std::sin(phi);
  AveragedQuantities r;
  for (int j = 0; j < 4; ++j) {
    r.qbar[j] = q_[j](cs, sn);
    for (int e = 0; e < 4; ++e) r.fq[j][e] = fq_[j][e](cs, sn);
  }
  finish(r);
  return r;
}

double AngularAverages::rate_minimum(int j) const {
  // (a + b)/2 + (a - b)/2 cos(2phi) + c/2 sin(2phi)
  const Quadratic& q = q_[j];
  double phi = 0.5 * std::atan2(q.c, q.a - q.b) + 0.5 * std::numbers::pi;
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  return phi;
}

AveragedQuantities AngularAverages::direct(double phi) const {
  return average_all(channel_, phi, grid_);
}

OracleOptimum oracle_det_optimal(const AngularAverages& avg) {
  const Maximum m = maximize_grid_golden(
      [&](double phi) {
        const auto v = avg.fbar_det_all(phi);
        return *std::max_element(v.begin(), v.end());
      },
      0.0, std::numbers::pi);
  const auto v = avg.fbar_det_all(m.x);
  const int e = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  return {v[e], m.x, kAllBellLabels[e], 0, 1.0};
}

OracleOptimum oracle_prob_optimal(const AngularAverages& avg) {
  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    int j = -1, e = -1;
  };
  auto best_of = [](const AveragedQuantities& a) {
    Best b;
    for (int j = 0; j < 4; ++j) {
      if (a.qbar[j] < kOracleMinRate) continue;
      for (int e = 0; e < 4; ++e)
        if (a.fbar_cond[j][e] > b.value) b = {a.fbar_cond[j][e], j, e};
    }
    return b;
  };
  std::vector<double> seeds{0.0, std::numbers::pi / 2.0, std::numbers::pi};
  for (int j = 0; j < 4; ++j) seeds.push_back(avg.rate_minimum(j));
  const Maximum m = maximize_grid_golden(
      [&](double phi) { return best_of(avg.at(phi)).value; }, 0.0, std::numbers::pi, seeds);
  AveragedQuantities a = avg.direct(m.x);
  Best b = best_of(a);
  if (b.j < 0) {
    a = avg.at(m.x);
    b = best_of(a);
  }
  if (b.j < 0) throw Error("no outcome with a usable success rate");
  return {b.value, m.x, kAllBellLabels[b.e], b.j + 1, a.qbar[b.j] + a.qbar[3 - b.j]};
}

}  // namespace ttp
