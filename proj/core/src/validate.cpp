#include <cmath>
#include <numbers>
#include <random>

#include "ttp/averaging.hpp"
#include "ttp/classical_limit.hpp"
#include "ttp/optimize.hpp"
#include "ttp/sweeps.hpp"
#include "ttp/version.hpp"

namespace ttp {
namespace {

struct Suite {
  std::string name;
  bool ok = true;
  nlohmann::json detail = nlohmann::json::object();
};

HeisenbergParams random_params(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

Suite spectrum_suite(std::mt19937_64& rng, int cases) {
  Suite s{"spectrum"};
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const HeisenbergParams p = random_params(rng, 5.0);
    const EigenSystem eig = hermitian_eigen(build_hamiltonian(p));
    const auto levels = block_spectrum(p);
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(eig.values[k] - levels[k].energy));
  }
  s.ok = worst <= 1e-10;
  s.detail = {{"cases", cases}, {"max_energy_error", worst}};
  return s;
}

Suite teleport_suite(std::mt19937_64& rng, int cases) {
  Suite s{"teleport"};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const ThermalState th = thermal_state(random_params(rng, 3.0), 0.05 + 3.0 * unit(rng));
    const PureQubit in(unit(rng), 2.0 * std::numbers::pi * unit(rng));
    const auto basis = bell_basis(std::numbers::pi * unit(rng));
    const auto set = correction_set(kAllBellLabels[i % 4]);
    double total = 0.0;
    for (int j = 1; j <= 4; ++j) total += run_outcome(in, th.rho, basis, set, j).probability;
    worst = std::max(worst, std::abs(total - 1.0));
  }
  s.ok = worst <= 1e-12;
  s.detail = {{"cases", cases}, {"max_completeness_error", worst}};
  return s;
}

Suite averaging_suite(std::mt19937_64& rng, int cases) {
  Suite s{"averaging_symmetry"};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const ThermalState th = thermal_state(random_params(rng, 3.0), 0.1 + 3.0 * unit(rng));
    const AveragedQuantities a = average_all(th.rho, std::numbers::pi * unit(rng));
    double sum = 0.0;
    for (double q : a.qbar) sum += q;
    worst = std::max({worst, std::abs(sum - 1.0), std::abs(a.qbar[0] - a.qbar[3]),
                      std::abs(a.qbar[1] - a.qbar[2])});
    for (int e = 0; e < 4; ++e) {
      if (a.qbar[0] > 1e-6) worst = std::max(worst, std::abs(a.fbar_cond[0][e] - a.fbar_cond[3][e]));
      if (a.qbar[1] > 1e-6) worst = std::max(worst, std::abs(a.fbar_cond[1][e] - a.fbar_cond[2][e]));
    }
  }
  s.ok = worst <= 1e-10;
  s.detail = {{"cases", cases}, {"max_symmetry_error", worst}};
  return s;
}

Suite closed_form_suite(std::mt19937_64& rng, int cases, const Convention& conv, double offset) {
  Suite s{"closed_form_properties"};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double bound_violation = 0.0, rule_excess = 0.0, prob_deficit = 0.0;
  for (int i = 0; i < cases; ++i) {
    ClosedFormInputs in = ClosedFormInputs::from_beta(random_params(rng, 3.0), 20.0 * unit(rng));
    in.constant_offset = offset;
    const double phi = std::numbers::pi * unit(rng);
    const double q = q_rate(in, phi, conv);
    bound_violation = std::max({bound_violation, -q, q - 0.5});
    for (Branch b : {Branch::Phi, Branch::Psi}) {
      const double f = f_branch(in, b, phi, conv);
      bound_violation = std::max({bound_violation, 1.0 / 3.0 - f, f - 1.0});
    }
    const OptimizationResult det = f_det_optimal(in, conv);
    const OptimizationResult prob = prob_optimal(in, conv);
    for (Branch b : {Branch::Phi, Branch::Psi}) {
      const Maximum m = maximize_grid_golden(
          [&](double x) { return f_branch(in, b, x, conv); }, 0.0, std::numbers::pi);
      rule_excess = std::max(rule_excess, m.value - det.best_value);
    }
    prob_deficit = std::max(prob_deficit, det.best_value - prob.best_value);
  }
  s.ok = bound_violation <= 1e-12 && rule_excess <= 1e-10 && prob_deficit <= 1e-10;
  s.detail = {{"cases", cases},
              {"max_bound_violation", bound_violation},
              {"max_grid_excess_over_rule", rule_excess},
              {"max_det_minus_prob", prob_deficit}};
  return s;
}

Suite critical_suite() {
  Suite s{"critical_points"};
  const double jc = critical_point(XXXFieldCritical{8.0});
  const double d1 = critical_point(XXZFieldCritical{1.0, 4.0});
  s.ok = std::abs(jc - 1.0) <= 1e-9 && std::abs(d1) <= 1e-9;
  s.detail = {{"xxx_h8_J_c", jc}, {"xxz_J1_h4_delta_1", d1}};
  return s;
}

Suite bound_suite(long samples, std::uint64_t seed) {
  Suite s{"classical_bound"};
  const ClassicalBoundResult r = verify_classical_bound(samples, seed);
  s.ok = r.max_fidelity <= kClassicalLimit + 1e-9 &&
         std::abs(r.saturating_case - kClassicalLimit) <= 1e-10 &&
         r.entangled_control > kClassicalLimit;
  s.detail = {{"samples", r.samples},
              {"max_separable_fidelity", r.max_fidelity},
              {"saturating_case", r.saturating_case},
              {"entangled_control", r.entangled_control}};
  return s;
}

}  // namespace

ValidationReport validate(const ValidationOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Suite> suites;

  const ReconciliationReport rec =
      reconcile_conventions(options.cases, options.seed, options.fault_offset);
  Suite rs{"reconciliation", rec.resolved(), rec.to_json()};
  suites.push_back(rs);

  suites.push_back(spectrum_suite(rng, options.cases));
  suites.push_back(teleport_suite(rng, options.cases));
  suites.push_back(averaging_suite(rng, std::max(10, options.cases / 4)));
  suites.push_back(closed_form_suite(rng, std::max(10, options.cases / 4),
                                     rec.mapping.value_or(kReconciledConvention),
                                     options.fault_offset));
  suites.push_back(critical_suite());
  suites.push_back(bound_suite(options.bound_samples, options.seed));

  ValidationReport out;
  out.ok = true;
  nlohmann::json js = nlohmann::json::array();
  for (const Suite& s : suites) {
    out.ok = out.ok && s.ok;
    js.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  }
  out.report = {{"schema", "ttp.validation/1"},
                {"tool_version", std::string(kVersion)},
                {"seed", options.seed},
                {"cases", options.cases},
                {"bound_samples", options.bound_samples},
                {"fault_offset", options.fault_offset},
                {"ok", out.ok},
                {"mapping", rec.resolved() ? rec.mapping->name() : "unresolved"},
                {"suites", js}};
  return out;
}

}  // namespace ttp
