#include <fstream>
#include <locale>
#include <sstream>

#include "ttp/sweeps.hpp"
#include "ttp/version.hpp"

namespace ttp {
namespace {

struct Curve {
  std::string label;
  ModelSpec model;
  double kT = 1.0;
  bool implementer_chosen = false;
};

struct Panel {
  std::string prefix;
  std::string title;
  SweepVar var = SweepVar::KT;
  double from = 0.05;
  double to = 3.0;
  int steps = 60;
  std::vector<Curve> curves;
};

ModelSpec xy_family(ModelKind kind, double lambda, double zeta = 0.0) {
  ModelSpec m;
  m.kind = kind;
  m.lambda = lambda;
  m.zeta = zeta;
  return m.normalized();
}

ModelSpec xxz_family(ModelKind kind, double j, double delta, double h) {
  ModelSpec m;
  m.kind = kind;
  m.bigj = j;
  m.delta = delta;
  m.field = h;
  return m.normalized();
}

constexpr double kXYZeta = 0.5;

// Curve labels only; data columns use format_double.
std::string short_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

Panel temperature_panel(const std::string& prefix, const std::string& title, ModelKind kind,
                        bool zeta_chosen) {
  Panel p{prefix, title, SweepVar::KT, 0.05, 3.0, 60, {}};
  for (double lambda : {0.7, 1.3})
    p.curves.push_back({"lambda=" + short_number(lambda), xy_family(kind, lambda, kXYZeta), 1.0,
                        zeta_chosen});
  return p;
}

Panel lambda_panel(const std::string& prefix, const std::string& title, ModelKind kind) {
  Panel p{prefix, title, SweepVar::Lambda, 0.05, 3.0, 120, {}};
  for (double kT : {0.1, 0.3})
    p.curves.push_back({"kT=" + short_number(kT), xy_family(kind, 1.0, kXYZeta), kT,
                        kind == ModelKind::XY});
  return p;
}

std::vector<Panel> panels_for(FigureId id) {
  switch (id) {
    case FigureId::Fig2:
      return {temperature_panel("ising", "Ising model in a transverse field", ModelKind::Ising,
                                false)};
    case FigureId::Fig3:
      return {temperature_panel("xx", "XX model in a transverse field", ModelKind::XX, false)};
    case FigureId::Fig4:
      return {temperature_panel("xy", "anisotropic XY model in a transverse field (zeta=0.5)",
                                ModelKind::XY, true)};
    case FigureId::Fig5: {
      Panel p{"xxx", "XXX model, h=8", SweepVar::KT, 0.05, 10.0, 80, {}};
      for (double j : {-1.0, 0.5, 1.5, 2.0})
        p.curves.push_back({"J=" + short_number(j), xxz_family(ModelKind::XXX, j, 1.0, 8.0), 1.0,
                            true});
      return {p};
    }
    case FigureId::Fig6: {
      Panel p{"xxz", "XXZ model, J=1, h=4", SweepVar::KT, 0.05, 10.0, 80, {}};
      for (double d : {-1.0, -0.5, 0.5, 1.0})
        p.curves.push_back({"delta=" + short_number(d), xxz_family(ModelKind::XXZ, 1.0, d, 4.0),
                            1.0, true});
      return {p};
    }
    case FigureId::Fig7: {
      std::vector<Panel> v{lambda_panel("ising_lambda", "Ising model vs lambda", ModelKind::Ising),
                           lambda_panel("xx_lambda", "XX model vs lambda", ModelKind::XX),
                           lambda_panel("xy_lambda", "XY model (zeta=0.5) vs lambda",
                                        ModelKind::XY)};
      Panel pj{"xxx_J", "XXX model, h=8, vs J", SweepVar::J, 0.05, 3.0, 120, {}};
      Panel pd{"xxz_delta", "XXZ model, J=1, h=4, vs delta", SweepVar::Delta, -2.0, 4.0, 120, {}};
      for (double kT : {0.1, 1.0}) {
        pj.curves.push_back({"kT=" + short_number(kT), xxz_family(ModelKind::XXX, 1.0, 1.0, 8.0),
                             kT, false});
        pd.curves.push_back({"kT=" + short_number(kT), xxz_family(ModelKind::XXZ, 1.0, 0.0, 4.0),
                             kT, false});
      }
      v.push_back(pj);
      v.push_back(pd);
      return v;
    }
  }
  throw Error("unknown figure");
}

double x_of(const SweepRecord& r, SweepVar var) {
  switch (var) {
    case SweepVar::KT: return r.kT;
    case SweepVar::Lambda: return r.model.lambda;
    case SweepVar::J: return r.model.bigj;
    case SweepVar::Delta: return r.model.delta;
  }
  return 0.0;
}

std::string_view family_name(BellLabel l) {
  return l == BellLabel::PhiPlus || l == BellLabel::PhiMinus ? "Phi" : "Psi";
}

nlohmann::json model_json(const ModelSpec& m) {
  return {{"model", to_string(m.kind)}, {"lambda", m.lambda}, {"zeta", m.zeta},
          {"bigj", m.bigj},             {"delta", m.delta},   {"field", m.field}};
}

std::string gnuplot_script(const std::string& fig, const std::vector<Panel>& panels) {
  std::ostringstream gp;
  gp << "# " << fig << ": solid = deterministic, dashed = probabilistic\n"
     << "set datafile separator ','\n"
     << "set terminal pngcairo size 900," << 520 * panels.size() << "\n"
     << "set output '" << fig << ".png'\n"
     << "set multiplot layout " << panels.size() << ",1\n";
  for (const Panel& p : panels) {
    gp << "set origin 0,0\nset size 1,1\n";
    gp << "set title '" << p.title << "'\n"
       << "set xlabel '" << to_string(p.var) << "'\nset ylabel 'efficiency'\n"
       << "set key right top\n"
       << "plot 2.0/3.0 title 'classical limit' dt 4 lc rgb 'red'";
    for (std::size_t c = 0; c < p.curves.size(); ++c) {
      const std::string& label = p.curves[c].label;
      const std::string sel = "(strcol(2) eq '" + label + "' ? $4 : 1/0)";
      gp << ", \\\n  '" << p.prefix << "_det.csv' every ::1 using 3:" << sel
         << " with lines lw 2 lc " << c + 1 << " title '" << label << " det'";
      gp << ", \\\n  '" << p.prefix << "_prob.csv' every ::1 using 3:" << sel
         << " with lines dt 2 lw 2 lc " << c + 1 << " title '" << label << " prob'";
    }
    gp << "\n";
    if (p.var == SweepVar::KT) {
      gp << "set origin 0.45,0.35\nset size 0.45,0.4\nset title ''\nset ylabel 'success rate'\n"
         << "unset key\nplot ";
      for (std::size_t c = 0; c < p.curves.size(); ++c) {
        const std::string& label = p.curves[c].label;
        if (c) gp << ", ";
        gp << "'" << p.prefix << "_success.csv' every ::1 using 3:(strcol(2) eq '" << label
           << "' ? $4 : 1/0) with lines lc " << c + 1;
      }
      gp << "\n";
    }
  }
  gp << "unset multiplot\n";
  return gp.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string());
  os << text;
}

}  // namespace

FigureId figure_from_string(std::string_view s) {
  for (FigureId f : {FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5,
                     FigureId::Fig6, FigureId::Fig7})
    if (to_string(f) == s) return f;
  throw Error("unknown figure: " + std::string(s));
}

std::string_view to_string(FigureId f) {
  switch (f) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
    case FigureId::Fig6: return "fig6";
    case FigureId::Fig7: return "fig7";
  }
  return "?";
}

FigureOutput reproduce_figure(FigureId id, const std::filesystem::path& outdir, Engine engine) {
  std::filesystem::create_directories(outdir);
  const std::string fig(to_string(id));
  const std::vector<Panel> panels = panels_for(id);

  FigureOutput out;
  std::vector<SweepRecord> all;
  nlohmann::json meta_panels = nlohmann::json::array();
  for (const Panel& p : panels) {
    std::ostringstream det, prob, success;
    const std::string head = "schema,curve,x,y,branch,set";
    det << head << '\n';
    prob << head << '\n';
    success << head << ",pair\n";
    nlohmann::json curves = nlohmann::json::array();
    for (const Curve& c : p.curves) {
      SweepSpec spec{c.model, c.kT, p.var, p.from, p.to, p.steps, engine};
      const std::vector<SweepRecord> recs = run_sweep(spec);
      for (const SweepRecord& r : recs) {
        const std::string x = format_double(x_of(r, p.var));
        auto row = [&](std::ostream& os, double y, BellLabel set) {
          os << kFigureSchema << ',' << c.label << ',' << x << ',' << format_double(y) << ','
             << family_name(set) << ',' << to_string(set);
        };
        row(det, r.det_value, r.det_set);
        det << '\n';
        row(prob, r.prob_value, r.prob_set);
        prob << '\n';
        row(success, r.success_rate, r.prob_set);
        success << ',' << to_string(r.prob_pair) << '\n';
      }
      all.insert(all.end(), recs.begin(), recs.end());
      nlohmann::json cj = model_json(c.model);
      cj["label"] = c.label;
      if (p.var != SweepVar::KT) cj["kT"] = c.kT;
      cj["implementer_chosen"] = c.implementer_chosen;
      curves.push_back(cj);
    }
    for (auto& [suffix, text] :
         {std::pair{"_det.csv", det.str()}, {"_prob.csv", prob.str()}, {"_success.csv", success.str()}}) {
      const auto path = outdir / (p.prefix + suffix);
      write_text(path, text);
      out.files.push_back(path);
    }
    meta_panels.push_back({{"prefix", p.prefix},
                           {"title", p.title},
                           {"variable", to_string(p.var)},
                           {"from", p.from},
                           {"to", p.to},
                           {"steps", p.steps},
                           {"grid_chosen_by_implementer", true},
                           {"curves", curves}});
  }

  const auto records = outdir / (fig + "_records.csv");
  write_csv(records, all);
  out.files.push_back(records);
  const auto script = outdir / (fig + ".gp");
  write_text(script, gnuplot_script(fig, panels));
  out.files.push_back(script);

  const ReconciliationReport& rec = process_reconciliation();
  out.metadata = {{"schema", "ttp.figure-metadata/1"},
                  {"figure", fig},
                  {"tool_version", std::string(kVersion)},
                  {"engine", to_string(engine)},
                  {"csv_schema", kFigureSchema},
                  {"records_schema", kSweepSchema},
                  {"mapping", rec.resolved() ? rec.mapping->name() : "unresolved"},
                  {"panels", meta_panels}};
  const auto meta = outdir / (fig + ".json");
  write_text(meta, out.metadata.dump(2) + "\n");
  out.files.push_back(meta);
  return out;
}

}  // namespace ttp
