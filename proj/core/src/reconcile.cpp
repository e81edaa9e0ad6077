#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "parallel.hpp"
#include "ttp/averaging.hpp"
#include "ttp/closed_form.hpp"
#include "ttp/version.hpp"

namespace ttp {
namespace {

struct Comparison {
  std::string quantity;
  double oracle = 0.0;
  std::array<double, 4> predicted{};
};

struct CaseSpec {
  std::string name;
  HeisenbergParams params;
  double beta = 0.0;
  double phi = 0.0;
};

template <class Fn>
std::array<double, 4> per_candidate(Fn&& fn) {
  std::array<double, 4> out{};
  for (std::size_t c = 0; c < kCandidateConventions.size(); ++c) {
    try {
      out[c] = fn(kCandidateConventions[c]);
    } catch (const Error&) {
      out[c] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

std::vector<Comparison> compare_case(const CaseSpec& cs, double offset) {
  ClosedFormInputs in = ClosedFormInputs::from_beta(cs.params, cs.beta);
  in.constant_offset = offset;
  const ThermalState th = thermal_state(cs.params, 1.0 / cs.beta);
  const AveragedQuantities avg = average_all(th.rho, cs.phi);

  std::vector<Comparison> out;
  for (int j = 0; j < 4; ++j) {
    out.push_back({"qbar[" + std::to_string(j + 1) + "]", avg.qbar[j],
                   per_candidate([&](Convention c) { return predict_qbar(in, j, cs.phi, c); })});
  }
  for (BellLabel set : kAllBellLabels) {
    const int e = index_of(set);
    const std::string tag(to_string(set));
    out.push_back({"fbar_det[" + tag + "]", avg.fbar_det[e], per_candidate([&](Convention c) {
                     return predict_fbar_det(in, set, cs.phi, c);
                   })});
    for (int j = 0; j < 4; ++j) {
      if (!avg.cond_defined[j]) continue;
      out.push_back({"fbar_cond[" + std::to_string(j + 1) + "][" + tag + "]", avg.fbar_cond[j][e],
                     per_candidate([&](Convention c) {
                       return predict_fbar_cond(in, j, set, cs.phi, c);
                     })});
    }
  }
  return out;
}

// Best oracle <F> at phi = pi/4 against each candidate's deterministic optimum.
ReconciliationCase optimum_case(const CaseSpec& cs, double offset) {
  ClosedFormInputs in = ClosedFormInputs::from_beta(cs.params, cs.beta);
  in.constant_offset = offset;
  const AveragedQuantities avg =
      average_all(thermal_state(cs.params, 1.0 / cs.beta).rho, std::numbers::pi / 4.0);
  ReconciliationCase rc;
  rc.name = cs.name;
  rc.params = cs.params;
  rc.beta = cs.beta;
  rc.phi = std::numbers::pi / 4.0;
  rc.quantity = "deterministic optimum";
  rc.oracle = *std::max_element(avg.fbar_det.begin(), avg.fbar_det.end());
  rc.predicted = per_candidate([&](Convention c) { return f_det_optimal(in, c).best_value; });
  return rc;
}

double error_of(double predicted, double oracle) {
  return std::isfinite(predicted) ? std::abs(predicted - oracle) : 1.0;
}

nlohmann::json params_json(const HeisenbergParams& p) {
  return {{"jx", p.jx}, {"jy", p.jy}, {"jz", p.jz}, {"ha", p.ha}, {"hb", p.hb}};
}

}  // namespace

ReconciliationReport reconcile_conventions(int case_count, std::uint64_t seed,
                                           double constant_offset) {
  if (case_count < 100) throw Error("reconciliation needs at least 100 cases");

  std::vector<CaseSpec> cases{
      {"singlet-ground", {1.0, 1.0, 1.0, 0.0, 0.0}, 20.0, std::numbers::pi / 4.0},
      {"xxx-field-h8-J2", from_xxz_field({2.0, 1.0, 8.0}), 20.0, std::numbers::pi / 4.0},
      {"xxx-field-h8-J2-offangle", from_xxz_field({2.0, 1.0, 8.0}), 2.0, 0.4},
      {"field-jx1-jy1-h2", {1.0, 1.0, 0.0, 2.0, 2.0}, 1.0, 0.3},
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coupling(-3.0, 3.0);
  std::uniform_real_distribution<double> beta(0.0, 20.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int i = 0; i < case_count; ++i) {
    CaseSpec cs;
    cs.name = "random-" + std::to_string(i);
    cs.params = {coupling(rng), coupling(rng), coupling(rng), coupling(rng), coupling(rng)};
    do cs.beta = beta(rng);
    while (cs.beta == 0.0);
    cs.phi = angle(rng);
    cases.push_back(cs);
  }

  std::vector<std::vector<Comparison>> results(cases.size());
  std::vector<ReconciliationCase> discriminating(2);
  detail::parallel_for(cases.size(), [&](std::size_t i) {
    results[i] = compare_case(cases[i], constant_offset);
  });
  for (std::size_t i = 0; i < discriminating.size(); ++i)
    discriminating[i] = optimum_case(cases[i], constant_offset);

  ReconciliationReport report;
  report.seed = seed;
  report.cases_tested = static_cast<int>(cases.size());
  report.discriminating = discriminating;
  for (const Convention& conv : kCandidateConventions) report.candidates.push_back({conv, 0.0, ""});

  auto record = [&](std::size_t c, double err, const std::string& where) {
    if (err > report.candidates[c].max_abs_error || report.candidates[c].worst_quantity.empty()) {
      report.candidates[c].max_abs_error = std::max(err, report.candidates[c].max_abs_error);
      report.candidates[c].worst_quantity = where;
    }
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (const Comparison& cmp : results[i]) {
      ++report.comparisons;
      for (std::size_t c = 0; c < 4; ++c)
        record(c, error_of(cmp.predicted[c], cmp.oracle), cases[i].name + " " + cmp.quantity);
    }
  }
  for (const ReconciliationCase& rc : discriminating) {
    ++report.comparisons;
    for (std::size_t c = 0; c < 4; ++c)
      record(c, error_of(rc.predicted[c], rc.oracle), rc.name + " " + rc.quantity);
  }

  int accepted = 0;
  for (const CandidateResult& cr : report.candidates) {
    if (cr.max_abs_error <= kReconciliationTolerance) {
      ++accepted;
      report.mapping = cr.convention;
      report.max_abs_error = cr.max_abs_error;
    }
  }
  if (accepted != 1) {
    report.mapping.reset();
    report.max_abs_error = 0.0;
  }
  return report;
}

nlohmann::json ReconciliationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "ttp.reconciliation/1";
  j["tool_version"] = std::string(kVersion);
  j["seed"] = seed;
  j["cases_tested"] = cases_tested;
  j["comparisons"] = comparisons;
  j["tolerance"] = kReconciliationTolerance;
  j["resolved"] = resolved();
  j["mapping"] = resolved() ? mapping->name() : "unresolved";
  j["max_abs_error"] = max_abs_error;
  j["candidates"] = nlohmann::json::array();
  for (const CandidateResult& c : candidates) {
    j["candidates"].push_back({{"name", c.convention.name()},
                               {"flip_jz", c.convention.flip_jz},
                               {"swap_sectors", c.convention.swap_sectors},
                               {"max_abs_error", c.max_abs_error},
                               {"worst_quantity", c.worst_quantity},
                               {"accepted", c.max_abs_error <= kReconciliationTolerance}});
  }
  j["discriminating_cases"] = nlohmann::json::array();
  for (const ReconciliationCase& rc : discriminating) {
    nlohmann::json pred;
    for (std::size_t c = 0; c < kCandidateConventions.size(); ++c)
      pred[kCandidateConventions[c].name()] = rc.predicted[c];
    j["discriminating_cases"].push_back({{"name", rc.name},
                                         {"params", params_json(rc.params)},
                                         {"beta", rc.beta},
                                         {"phi", rc.phi},
                                         {"quantity", rc.quantity},
                                         {"oracle", rc.oracle},
                                         {"predicted", pred}});
  }
  return j;
}

}  // namespace ttp
