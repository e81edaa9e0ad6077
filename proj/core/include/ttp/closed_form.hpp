#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttp/spin_models.hpp"
#include "ttp/teleport.hpp"

namespace ttp {

struct ClosedFormInputs {
  DerivedParams derived;
  double jz = 0.0;
  double beta = 0.0;
  // Added to every 1/3 baseline. Zero except in fault-injection runs.
  double constant_offset = 0.0;

  static ClosedFormInputs from(const HeisenbergParams& p, double kT);
  static ClosedFormInputs from_beta(const HeisenbergParams& p, double beta);
};

/// Correction-set family. Phi uses Phi+/Phi-, Psi uses Psi+/Psi-.
enum class Branch { Phi, Psi };
std::string_view to_string(Branch b);

enum class OutcomePair { Pair14, Pair23 };
std::string_view to_string(OutcomePair p);

/// Symbol transformation applied before evaluating the printed expressions:
/// optionally jz -> -jz, optionally exchanging which family the printed Phi and
/// Psi expressions describe.
struct Convention {
  bool flip_jz = false;
  bool swap_sectors = false;

  std::string name() const;
  friend bool operator==(const Convention&, const Convention&) = default;
};

inline constexpr Convention kIdentityConvention{false, false};
inline constexpr Convention kReconciledConvention{true, true};
inline constexpr std::array<Convention, 4> kCandidateConventions{
    Convention{false, false}, Convention{true, false}, Convention{false, true},
    Convention{true, true}};

/// The expressions as printed, with the labels as printed. Hyperbolic terms are
/// evaluated in a shifted, cancellation-free form.
namespace printed {
double q(const ClosedFormInputs& in, double phi);
double f(const ClosedFormInputs& in, Branch printed_label, double phi);
/// Throws "degenerate conditional average" when the postselected probability
/// underflows.
double g(const ClosedFormInputs& in, Branch printed_label, double phi);
}  // namespace printed

/// Q1 = Q4 = q_rate(phi) and Q2 = Q3 = q_rate(pi/2 - phi).
double q_rate(const ClosedFormInputs& in, double phi, Convention conv = kReconciledConvention);

/// <F> for the "+" set of the family at phi. The "-" set equals f_branch(-phi).
double f_branch(const ClosedFormInputs& in, Branch family, double phi,
                Convention conv = kReconciledConvention);

/// F_1 = F_4 for the "+" set of the family at phi. F_2 = F_3 is g_branch(pi/2 - phi);
/// the "-" set follows from phi -> -phi.
double g_branch(const ClosedFormInputs& in, Branch family, double phi,
                Convention conv = kReconciledConvention);

/// Closed-form prediction of one averaging-oracle entry under a convention.
double predict_qbar(const ClosedFormInputs& in, int j, double phi, Convention conv);
double predict_fbar_det(const ClosedFormInputs& in, BellLabel set, double phi, Convention conv);
double predict_fbar_cond(const ClosedFormInputs& in, int j, BellLabel set, double phi,
                         Convention conv);

struct OptimizationResult {
  double best_value = 0.0;
  double best_phi = 0.0;
  Branch best_branch = Branch::Phi;
  BellLabel best_set = BellLabel::PhiPlus;
  double success_rate = 1.0;
  OutcomePair outcome_pair = OutcomePair::Pair14;
  double phi_branch_value = 0.0;
  double psi_branch_value = 0.0;
};

/// +-pi/4 rule: the family's coupling sign picks the set, the value uses its
/// magnitude. best_phi is pi/4.
OptimizationResult f_det_optimal(const ClosedFormInputs& in,
                                 Convention conv = kReconciledConvention);

/// Outcome pairs whose per-outcome rate q_rate is below this are left out of
/// the postselection search, as in the oracle.
inline constexpr double kMinPostselectionRate = 1e-14;

/// Grid plus golden-section over phi in [0, pi] of both g branches, reported as
/// outcome pair (1,4) of the "+" set with success rate 2 q_rate(best_phi).
OptimizationResult prob_optimal(const ClosedFormInputs& in,
                                Convention conv = kReconciledConvention);

struct ReconciliationCase {
  std::string name;
  HeisenbergParams params;
  double beta = 0.0;
  double phi = 0.0;
  std::string quantity;
  double oracle = 0.0;
  std::array<double, 4> predicted{};  // per candidate, same order as kCandidateConventions
};

struct CandidateResult {
  Convention convention;
  double max_abs_error = 0.0;
  std::string worst_quantity;
};

struct ReconciliationReport {
  std::vector<CandidateResult> candidates;
  std::optional<Convention> mapping;  // empty when unresolved
  double max_abs_error = 0.0;         // of the selected mapping
  int cases_tested = 0;
  long comparisons = 0;
  std::uint64_t seed = 0;
  std::vector<ReconciliationCase> discriminating;

  bool resolved() const { return mapping.has_value(); }
  nlohmann::json to_json() const;
};

inline constexpr double kReconciliationTolerance = 1e-8;

/// Compares every printed q/f/g prediction with the averaging oracle on fixed
/// discriminating cases followed by case_count random tuples.
ReconciliationReport reconcile_conventions(int case_count, std::uint64_t seed,
                                           double constant_offset = 0.0);

}  // namespace ttp
