#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttp/closed_form.hpp"
#include "ttp/spin_models.hpp"

namespace ttp {

enum class ModelKind { Ising, XX, XY, XXX, XXZ, Raw };
std::string_view to_string(ModelKind m);
ModelKind model_from_string(std::string_view s);

/// Parameters for every family; only those relevant to `kind` are used.
/// Ising fixes zeta = 1, XX fixes zeta = 0, XXX fixes delta = 1.
struct ModelSpec {
  ModelKind kind = ModelKind::Raw;
  HeisenbergParams raw;
  double lambda = 0.0;
  double zeta = 0.0;
  double bigj = 0.0;
  double delta = 0.0;
  double field = 0.0;

  HeisenbergParams params() const;
  /// Copy with the family-fixed values filled in.
  ModelSpec normalized() const;
};

enum class SweepVar { KT, Lambda, J, Delta };
std::string_view to_string(SweepVar v);
SweepVar sweep_var_from_string(std::string_view s);

enum class Engine { Oracle, Closed, Both };
std::string_view to_string(Engine e);
Engine engine_from_string(std::string_view s);

struct SweepSpec {
  ModelSpec model;
  double kT = 1.0;  // fixed temperature when the swept variable is not kT
  SweepVar var = SweepVar::KT;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  Engine engine = Engine::Both;

  void validate() const;
  double value_at(int i) const;
};

struct SweepRecord {
  ModelSpec model;
  HeisenbergParams params;
  double kT = 0.0;
  Engine engine = Engine::Both;

  double det_value = 0.0;
  double det_phi = 0.0;
  BellLabel det_set = BellLabel::PhiPlus;
  double det_phi_branch = 0.0;  // best <F> within the Phi family
  double det_psi_branch = 0.0;

  double prob_value = 0.0;
  double prob_phi = 0.0;
  BellLabel prob_set = BellLabel::PhiPlus;
  OutcomePair prob_pair = OutcomePair::Pair14;
  double success_rate = 0.0;

  bool above_classical_det = false;
  bool above_classical_prob = false;
  double engine_disagreement = 0.0;  // max |oracle - closed| over det and prob values
};

/// Mapping used for closed-form outputs. Computed once per process from a fixed
/// seed; empty if reconciliation did not resolve.
const ReconciliationReport& process_reconciliation();

inline constexpr int kProcessReconciliationCases = 200;
inline constexpr std::uint64_t kProcessReconciliationSeed = 20240601;

/// One parameter point. Throws if the closed engine is requested without a
/// resolved mapping; the both engine falls back to the oracle alone.
SweepRecord evaluate_point(const ModelSpec& model, double kT, Engine engine);

/// Records ordered by swept value, computed on a worker pool.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kSweepSchema = "ttp.sweep/1";

std::string csv_header();
std::string csv_row(const SweepRecord& r);
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);

nlohmann::json to_json(const SweepRecord& r);

/// 17 significant digits, the format used in every CSV.
std::string format_double(double v);

enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6, Fig7 };
FigureId figure_from_string(std::string_view s);
std::string_view to_string(FigureId f);

struct FigureOutput {
  std::vector<std::filesystem::path> files;
  nlohmann::json metadata;
};

inline constexpr std::string_view kFigureSchema = "ttp.figure/1";

/// Writes per-curve CSVs, the full record CSV, a gnuplot script and a metadata
/// JSON into outdir.
FigureOutput reproduce_figure(FigureId id, const std::filesystem::path& outdir,
                              Engine engine = Engine::Both);

struct ValidationOptions {
  std::uint64_t seed = 12345;
  int cases = 200;
  long bound_samples = 2000;
  double fault_offset = 0.0;  // nonzero perturbs the closed-form 1/3 baseline
};

struct ValidationReport {
  bool ok = false;
  nlohmann::json report;
};

ValidationReport validate(const ValidationOptions& options);

}  // namespace ttp
