#include "ttp/sweeps.hpp"

#include <cmath>
#include <fstream>
#include <locale>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "ttp/averaging.hpp"
#include "ttp/classical_limit.hpp"
#include "ttp/optimize.hpp"

namespace ttp {
namespace {

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::array<Enum, N>& all, const char* what) {
  for (Enum e : all)
    if (to_string(e) == s) return e;
  throw Error(std::string("unknown ") + what + ": " + std::string(s));
}

constexpr std::array kModels{ModelKind::Ising, ModelKind::XX,  ModelKind::XY,
                             ModelKind::XXX,   ModelKind::XXZ, ModelKind::Raw};
constexpr std::array kVars{SweepVar::KT, SweepVar::Lambda, SweepVar::J, SweepVar::Delta};
constexpr std::array kEngines{Engine::Oracle, Engine::Closed, Engine::Both};

Branch family_of(BellLabel l) {
  return l == BellLabel::PhiPlus || l == BellLabel::PhiMinus ? Branch::Phi : Branch::Psi;
}

double oracle_family_det(const AngularAverages& avg, Branch family) {
  const int plus = family == Branch::Phi ? 0 : 2;
  return maximize_grid_golden(
             [&](double phi) {
               const auto v = avg.fbar_det_all(phi);
               return std::max(v[plus], v[plus + 1]);
             },
             0.0, std::numbers::pi)
      .value;
}

}  // namespace

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Ising: return "ising";
    case ModelKind::XX: return "xx";
    case ModelKind::XY: return "xy";
    case ModelKind::XXX: return "xxx";
    case ModelKind::XXZ: return "xxz";
    case ModelKind::Raw: return "raw";
  }
  return "?";
}

ModelKind model_from_string(std::string_view s) { return parse_enum(s, kModels, "model"); }

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::KT: return "kT";
    case SweepVar::Lambda: return "lambda";
    case SweepVar::J: return "J";
    case SweepVar::Delta: return "delta";
  }
  return "?";
}

SweepVar sweep_var_from_string(std::string_view s) {
  if (s == "kt") return SweepVar::KT;
  if (s == "j" || s == "bigj") return SweepVar::J;
  return parse_enum(s, kVars, "sweep variable");
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Oracle: return "oracle";
    case Engine::Closed: return "closed";
    case Engine::Both: return "both";
  }
  return "?";
}

Engine engine_from_string(std::string_view s) { return parse_enum(s, kEngines, "engine"); }

ModelSpec ModelSpec::normalized() const {
  ModelSpec m = *this;
  if (kind == ModelKind::Ising) m.zeta = 1.0;
  if (kind == ModelKind::XX) m.zeta = 0.0;
  if (kind == ModelKind::XXX) m.delta = 1.0;
  return m;
}

HeisenbergParams ModelSpec::params() const {
  const ModelSpec m = normalized();
  switch (kind) {
    case ModelKind::Ising:
    case ModelKind::XX:
    case ModelKind::XY: return from_xy_field({m.lambda, m.zeta});
    case ModelKind::XXX:
    case ModelKind::XXZ: return from_xxz_field({m.bigj, m.delta, m.field});
    case ModelKind::Raw: return raw;
  }
  throw Error("unknown model");
}

void SweepSpec::validate() const {
  if (!(from < to)) throw Error("sweep range needs from < to");
  if (steps < 2) throw Error("sweep needs at least 2 steps");
  const bool xy = model.kind == ModelKind::Ising || model.kind == ModelKind::XX ||
                  model.kind == ModelKind::XY;
  switch (var) {
    case SweepVar::KT:
      if (!(from > 0.0)) throw Error("temperature must be positive");
      break;
    case SweepVar::Lambda:
      if (!xy) throw Error("lambda sweeps need an XY-family model");
      if (from < 0.0) throw Error("lambda must be non-negative");
      break;
    case SweepVar::J:
      if (model.kind != ModelKind::XXX && model.kind != ModelKind::XXZ)
        throw Error("J sweeps need the xxx or xxz model");
      break;
    case SweepVar::Delta:
      if (model.kind != ModelKind::XXZ) throw Error("delta sweeps need the xxz model");
      break;
  }
  if (var != SweepVar::KT && !(kT > 0.0)) throw Error("temperature must be positive");
}

double SweepSpec::value_at(int i) const {
  if (i == steps - 1) return to;
  return from + (to - from) * i / (steps - 1);
}

const ReconciliationReport& process_reconciliation() {
  static const ReconciliationReport report =
      reconcile_conventions(kProcessReconciliationCases, kProcessReconciliationSeed);
  return report;
}

SweepRecord evaluate_point(const ModelSpec& model, double kT, Engine engine) {
  SweepRecord r;
  r.model = model.normalized();
  r.params = model.params();
  r.kT = kT;
  r.engine = engine;
  if (!(kT > 0.0)) throw Error("temperature must be positive");

  const ReconciliationReport& rec = process_reconciliation();
  if (!rec.resolved()) {
    if (engine == Engine::Closed)
      throw Error("convention reconciliation is unresolved; use --engine oracle");
    if (engine == Engine::Both) r.engine = engine = Engine::Oracle;
  }

  std::optional<OptimizationResult> det_c, prob_c;
  if (engine != Engine::Oracle) {
    const ClosedFormInputs in = ClosedFormInputs::from(r.params, kT);
    det_c = f_det_optimal(in, *rec.mapping);
    prob_c = prob_optimal(in, *rec.mapping);
  }

  if (engine == Engine::Closed) {
    r.det_value = det_c->best_value;
    r.det_phi = det_c->best_phi;
    r.det_set = det_c->best_set;
    r.det_phi_branch = det_c->phi_branch_value;
    r.det_psi_branch = det_c->psi_branch_value;
    r.prob_value = prob_c->best_value;
    r.prob_phi = prob_c->best_phi;
    r.prob_set = prob_c->best_set;
    r.prob_pair = prob_c->outcome_pair;
    r.success_rate = prob_c->success_rate;
  } else {
    const AngularAverages avg(thermal_state(r.params, kT).rho);
    const OracleOptimum det = oracle_det_optimal(avg);
    const OracleOptimum prob = oracle_prob_optimal(avg);
    r.det_value = det.value;
    r.det_phi = det.phi;
    r.det_set = det.set;
    r.det_phi_branch = oracle_family_det(avg, Branch::Phi);
    r.det_psi_branch = oracle_family_det(avg, Branch::Psi);
    r.prob_value = prob.value;
    r.prob_phi = prob.phi;
    r.prob_set = prob.set;
    r.prob_pair = prob.outcome_j == 1 || prob.outcome_j == 4 ? OutcomePair::Pair14
                                                             : OutcomePair::Pair23;
    r.success_rate = prob.success_rate;
    if (engine == Engine::Both) {
      r.engine_disagreement = std::max(std::abs(det.value - det_c->best_value),
                                       std::abs(prob.value - prob_c->best_value));
    }
  }
  r.above_classical_det = r.det_value > kClassicalLimit + kClassicalMargin;
  r.above_classical_prob = r.prob_value > kClassicalLimit + kClassicalMargin;
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  process_reconciliation();
  std::vector<SweepRecord> out(spec.steps);
  detail::parallel_for(out.size(), [&](std::size_t i) {
    ModelSpec m = spec.model;
    double kT = spec.kT;
    const double v = spec.value_at(static_cast<int>(i));
    switch (spec.var) {
      case SweepVar::KT: kT = v; break;
      case SweepVar::Lambda: m.lambda = v; break;
      case SweepVar::J: m.bigj = v; break;
      case SweepVar::Delta: m.delta = v; break;
    }
    out[i] = evaluate_point(m, kT, spec.engine);
  });
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << (v == 0.0 ? 0.0 : v);  // no "-0"
  return os.str();
}

std::string csv_header() {
  return "schema,model,jx,jy,jz,ha,hb,lambda,zeta,bigj,delta,field,kT,engine,"
         "det_value,det_phi,det_set,det_phi_branch,det_psi_branch,"
         "prob_value,prob_phi,prob_set,prob_pair,success_rate,"
         "above_classical_det,above_classical_prob,engine_disagreement";
}

std::string csv_row(const SweepRecord& r) {
  std::ostringstream os;
  auto num = [&](double v) { os << ',' << format_double(v); };
  auto str = [&](std::string_view s) { os << ',' << s; };
  os << kSweepSchema;
  str(to_string(r.model.kind));
  for (double v : {r.params.jx, r.params.jy, r.params.jz, r.params.ha, r.params.hb}) num(v);
  for (double v : {r.model.lambda, r.model.zeta, r.model.bigj, r.model.delta, r.model.field}) num(v);
  num(r.kT);
  str(to_string(r.engine));
  num(r.det_value);
  num(r.det_phi);
  str(to_string(r.det_set));
  num(r.det_phi_branch);
  num(r.det_psi_branch);
  num(r.prob_value);
  num(r.prob_phi);
  str(to_string(r.prob_set));
  str(to_string(r.prob_pair));
  num(r.success_rate);
  str(r.above_classical_det ? "1" : "0");
  str(r.above_classical_prob ? "1" : "0");
  num(r.engine_disagreement);
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << csv_header() << '\n';
  for (const SweepRecord& r : records) os << csv_row(r) << '\n';
}

void write_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string());
  write_csv(os, records);
}

nlohmann::json to_json(const SweepRecord& r) {
  return {{"schema", kSweepSchema},
          {"model", to_string(r.model.kind)},
          {"params",
           {{"jx", r.params.jx}, {"jy", r.params.jy}, {"jz", r.params.jz}, {"ha", r.params.ha},
            {"hb", r.params.hb}}},
          {"family",
           {{"lambda", r.model.lambda}, {"zeta", r.model.zeta}, {"bigj", r.model.bigj},
            {"delta", r.model.delta}, {"field", r.model.field}}},
          {"kT", r.kT},
          {"engine", to_string(r.engine)},
          {"deterministic",
           {{"value", r.det_value}, {"phi", r.det_phi}, {"set", to_string(r.det_set)},
            {"branch", to_string(family_of(r.det_set))}, {"phi_branch", r.det_phi_branch},
            {"psi_branch", r.det_psi_branch}, {"above_classical", r.above_classical_det}}},
          {"probabilistic",
           {{"value", r.prob_value}, {"phi", r.prob_phi}, {"set", to_string(r.prob_set)},
            {"branch", to_string(family_of(r.prob_set))}, {"pair", to_string(r.prob_pair)},
            {"success_rate", r.success_rate}, {"above_classical", r.above_classical_prob}}},
          {"engine_disagreement", r.engine_disagreement}};
}

}  // namespace ttp
