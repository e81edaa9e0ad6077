#include "ttp/closed_form.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ttp/optimize.hpp"

namespace ttp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallGap = 1e-8;
constexpr double kDegenerate = 1e-300;
// q_rate is extremal here; g can peak within a sliver of these points.
constexpr std::array<double, 3> kRateExtrema{0.0, kPi / 2.0, kPi};

// 1 - t and 1 + t for some t in [-1, 1], each carried without cancellation.
struct Tilt {
  double om = 1.0;
  double op = 1.0;
};

// t = cos(2x) from sin(x) and cos(x)
Tilt tilt_from(double s, double c) { return {2.0 * s * s, 2.0 * c * c}; }

Tilt tilt_cos2(double phi) { return tilt_from(std::sin(phi), std::cos(phi)); }

// t = sin(2 phi) = cos(2 (phi - pi/4))
Tilt tilt_sin2(double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  return tilt_from((s - c) * std::sqrt(0.5), (c + s) * std::sqrt(0.5));
}

// t = p / hypot(p, r)
Tilt tilt_ratio(double p, double r) {
  const double x = std::hypot(p, r);
  if (x == 0.0) return {};
  const double small = r * r / (x * (x + std::abs(p)));
  const double large = 1.0 + std::abs(p) / x;
  return p >= 0.0 ? Tilt{small, large} : Tilt{large, small};
}

// t = cos(2 phi - theta) with theta = atan2(r, p). The half angle comes from
// tilt_ratio rather than atan2, so that phi = theta/2 at 0 or pi/2 stays exact.
Tilt tilt_shifted(double phi, double p, double r) {
  const Tilt t = tilt_ratio(p, r);
  const double ch = std::sqrt(0.5 * t.op);
  const double sh = std::copysign(std::sqrt(0.5 * t.om), r);
  const double s = std::sin(phi), c = std::cos(phi);
  return tilt_from(s * ch - c * sh, c * ch + s * sh);
}

Tilt tilt_product(const Tilt& u, const Tilt& w) {
  return {0.5 * (u.om * w.op + u.op * w.om), 0.5 * (u.op * w.op + u.om * w.om)};
}

// Sum of c_i exp(e_i), kept unexpanded so ratios can be shifted.
class ExpSum {
 public:
  void add(double coef, double exponent) {
    if (coef == 0.0) return;
    terms_[n_++] = {coef, exponent};
  }

  // cosh(beta x) e^{shift}
  void add_cosh(double beta, double x, double shift) {
    add(0.5, beta * x + shift);
    add(0.5, -beta * x + shift);
  }

  // [cosh(beta x) - a sinh(beta x)/x] e^{shift} with a = t x
  void add_k(double beta, double x, double a, const Tilt& t, double shift) {
    if (x < kSmallGap && beta * x < 1e-3) {
      const double s = beta + beta * beta * beta * x * x / 6.0;
      add(std::cosh(beta * x) - a * s, shift);
      return;
    }
    add(0.5 * t.om, beta * x + shift);
    add(0.5 * t.op, -beta * x + shift);
  }

  double max_exponent() const {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) m = std::max(m, terms_[i].second);
    return m;
  }

  double shifted(double m) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += terms_[i].first * std::exp(terms_[i].second - m);
    return s;
  }

 private:
  std::array<std::pair<double, double>, 8> terms_{};
  int n_ = 0;
};

double ratio(const ExpSum& num, const ExpSum& den) {
  const double m = std::max(num.max_exponent(), den.max_exponent());
  return num.shifted(m) / den.shifted(m);
}

Branch other(Branch b) { return b == Branch::Phi ? Branch::Psi : Branch::Phi; }

Branch family_of(BellLabel l) {
  return l == BellLabel::PhiPlus || l == BellLabel::PhiMinus ? Branch::Phi : Branch::Psi;
}

bool is_plus(BellLabel l) { return l == BellLabel::PhiPlus || l == BellLabel::PsiPlus; }

BellLabel plus_label(Branch b) { return b == Branch::Phi ? BellLabel::PhiPlus : BellLabel::PsiPlus; }
BellLabel minus_label(Branch b) {
  return b == Branch::Phi ? BellLabel::PhiMinus : BellLabel::PsiMinus;
}

ClosedFormInputs transformed(const ClosedFormInputs& in, Convention conv) {
  ClosedFormInputs out = in;
  if (conv.flip_jz) out.jz = -in.jz;
  return out;
}

Branch printed_label(Branch family, Convention conv) {
  return conv.swap_sectors ? other(family) : family;
}

// K(chi, c2 dh) + e^{2 beta jz} K(eta, c2 sh), scaled by e^{shift}
void add_rate_terms(ExpSum& s, const ClosedFormInputs& in, double phi, double shift) {
  const DerivedParams& d = in.derived;
  const double b = in.beta, c2 = std::cos(2.0 * phi);
  const Tilt u = tilt_cos2(phi);
  s.add_k(b, d.chi, c2 * d.delta_h, tilt_product(u, tilt_ratio(d.delta_h, d.sigma_j)), shift);
  s.add_k(b, d.eta, c2 * d.sigma_h, tilt_product(u, tilt_ratio(d.sigma_h, d.delta_j)),
          2.0 * b * in.jz + shift);
}

}  // namespace

ClosedFormInputs ClosedFormInputs::from_beta(const HeisenbergParams& p, double beta) {
  p.validate();
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error("beta must be finite and non-negative");
  return {derive(p), p.jz, beta, 0.0};
}

ClosedFormInputs ClosedFormInputs::from(const HeisenbergParams& p, double kT) {
  if (!(kT > 0.0)) throw Error("temperature must be positive");
  return from_beta(p, 1.0 / kT);
}

std::string_view to_string(Branch b) { return b == Branch::Phi ? "Phi" : "Psi"; }

std::string_view to_string(OutcomePair p) { return p == OutcomePair::Pair14 ? "14" : "23"; }

std::string Convention::name() const {
  if (flip_jz && swap_sectors) return "flip_jz+swap_sectors";
  if (flip_jz) return "flip_jz";
  if (swap_sectors) return "swap_sectors";
  return "identity";
}

namespace printed {

double q(const ClosedFormInputs& in, double phi) {
  const DerivedParams& d = in.derived;
  ExpSum num, den;
  add_rate_terms(num, in, phi, 0.0);
  den.add_cosh(in.beta, d.chi, std::log(4.0));
  den.add_cosh(in.beta, d.eta, 2.0 * in.beta * in.jz + std::log(4.0));
  return ratio(num, den);
}

double f(const ClosedFormInputs& in, Branch label, double phi) {
  const DerivedParams& d = in.derived;
  const double b = in.beta, s2 = std::sin(2.0 * phi);
  const Tilt v = tilt_sin2(phi);
  ExpSum num, den;
  if (label == Branch::Phi) {
    num.add_k(b, d.chi, d.sigma_j * s2, tilt_product(tilt_ratio(d.sigma_j, d.delta_h), v), 0.0);
    den.add_cosh(b, d.chi, std::log(3.0));
    den.add_cosh(b, d.eta, 2.0 * b * in.jz + std::log(3.0));
  } else {
    num.add_k(b, d.eta, d.delta_j * s2, tilt_product(tilt_ratio(d.delta_j, d.sigma_h), v), 0.0);
    den.add_cosh(b, d.chi, -2.0 * b * in.jz + std::log(3.0));
    den.add_cosh(b, d.eta, std::log(3.0));
  }
  return 1.0 / 3.0 + in.constant_offset + ratio(num, den);
}

double g(const ClosedFormInputs& in, Branch label, double phi) {
  if (!(q(in, phi) > kDegenerate)) throw Error("degenerate conditional average");
  const DerivedParams& d = in.derived;
  const double b = in.beta, c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
  ExpSum num, den;
  if (label == Branch::Phi) {
    num.add_k(b, d.chi, d.delta_h * c2 + d.sigma_j * s2,
              tilt_shifted(phi, d.delta_h, d.sigma_j), 0.0);
    add_rate_terms(den, in, phi, std::log(3.0));
  } else {
    num.add_k(b, d.eta, d.delta_j * s2 + d.sigma_h * c2,
              tilt_shifted(phi, d.sigma_h, d.delta_j), 0.0);
    add_rate_terms(den, in, phi, -2.0 * b * in.jz + std::log(3.0));
  }
  return 1.0 / 3.0 + in.constant_offset + ratio(num, den);
}

}  // namespace printed

double q_rate(const ClosedFormInputs& in, double phi, Convention conv) {
  return printed::q(transformed(in, conv), phi);
}

double f_branch(const ClosedFormInputs& in, Branch family, double phi, Convention conv) {
  return printed::f(transformed(in, conv), printed_label(family, conv), phi);
}

double g_branch(const ClosedFormInputs& in, Branch family, double phi, Convention conv) {
  return printed::g(transformed(in, conv), printed_label(family, conv), phi);
}

double predict_qbar(const ClosedFormInputs& in, int j, double phi, Convention conv) {
  return q_rate(in, j == 0 || j == 3 ? phi : kPi / 2.0 - phi, conv);
}

double predict_fbar_det(const ClosedFormInputs& in, BellLabel set, double phi, Convention conv) {
  return f_branch(in, family_of(set), is_plus(set) ? phi : -phi, conv);
}

double predict_fbar_cond(const ClosedFormInputs& in, int j, BellLabel set, double phi,
                         Convention conv) {
  const double signed_phi = is_plus(set) ? phi : -phi;
  return g_branch(in, family_of(set), j == 0 || j == 3 ? signed_phi : kPi / 2.0 - signed_phi,
                  conv);
}

OptimizationResult f_det_optimal(const ClosedFormInputs& in, Convention conv) {
  const ClosedFormInputs t = transformed(in, conv);
  OptimizationResult r;
  r.best_phi = kPi / 4.0;
  r.success_rate = 1.0;
  bool first = true;
  for (Branch family : {Branch::Phi, Branch::Psi}) {
    const Branch label = printed_label(family, conv);
    const double coupling = label == Branch::Phi ? t.derived.sigma_j : t.derived.delta_j;
    // "+" at pi/4 carries -coupling; "-" carries +coupling
    const bool plus = coupling <= 0.0;
    const double value = printed::f(t, label, plus ? kPi / 4.0 : -kPi / 4.0);
    (family == Branch::Phi ? r.phi_branch_value : r.psi_branch_value) = value;
    if (first || value > r.best_value) {
      r.best_value = value;
      r.best_branch = family;
      r.best_set = plus ? plus_label(family) : minus_label(family);
      first = false;
    }
  }
  return r;
}

OptimizationResult prob_optimal(const ClosedFormInputs& in, Convention conv) {
  OptimizationResult r;
  r.best_value = -std::numeric_limits<double>::infinity();
  for (Branch family : {Branch::Phi, Branch::Psi}) {
    const Maximum m = maximize_grid_golden(
        [&](double phi) {
          try {
            if (q_rate(in, phi, conv) < kMinPostselectionRate)
              return std::numeric_limits<double>::quiet_NaN();
            return g_branch(in, family, phi, conv);
          } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
          }
        },
        0.0, kPi, kRateExtrema);
    (family == Branch::Phi ? r.phi_branch_value : r.psi_branch_value) = m.value;
    if (m.value > r.best_value) {
      r.best_value = m.value;
      r.best_phi = m.x;
      r.best_branch = family;
      r.best_set = plus_label(family);
    }
  }
  if (!std::isfinite(r.best_value)) throw Error("degenerate conditional average");
  r.outcome_pair = OutcomePair::Pair14;
  r.success_rate = 2.0 * q_rate(in, r.best_phi, conv);
  return r;
}

}  // namespace ttp
