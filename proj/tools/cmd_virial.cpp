#include <cmath>
#include <memory>
#include <optional>

#include "cli.hpp"
#include "virialkit/errors.hpp"
#include "virialkit/series_json.hpp"
#include "virialkit/virial.hpp"
#include "virialkit/weight_source.hpp"

namespace vkcli {

using nlohmann::json;
using namespace virialkit;

namespace {

struct VirialFlags {
  std::string model;
  int degree = 0;   // 0: from the series model, else 4
  int species = 0;  // 0: from the model
  std::string method = "recursive";
  std::string field = "auto";
  int target = 1;
  McFlags mc;
};

template <class F>
struct Inputs {
  std::shared_ptr<const WeightSource<F>> source;  // null for an explicit series
  std::optional<PressureSeries<F>> pressure;
  Truncation t;

  PressureSeries<F> pressure_series() const { return pressure ? *pressure : pressure_from_weights(*source, t); }
};

struct Loaded {
  std::string description;
  std::string field;
  std::optional<Inputs<Rational>> exact;
  std::optional<Inputs<double>> approx;
  std::shared_ptr<McWeights> mc;
  std::optional<McParams> params;
};

int model_species(const Model& m) {
  int s = 1;
  if (m.synthetic) {
    for (const auto& [key, w] : m.synthetic->entries()) {
      for (Species c : key.colours) s = std::max(s, c);
    }
  }
  if (m.potential) {
    for (Species c : m.potential->species()) s = std::max(s, c);
  }
  return s;
}

template <class F>
Series<F> retruncated(const Series<F>& s, Truncation t) {
  const Truncation& have = s.truncation();
  if (t.degree > have.degree || t.species > have.species) {
    throw UsageError("requested truncation exceeds the series truncation (degree " + std::to_string(have.degree) +
                     ", species " + std::to_string(have.species) + ")");
  }
  Series<F> out(t);
  for (const auto& [n, c] : s.terms()) out.accumulate(n, c);
  return out;
}

Loaded load(const VirialFlags& f, std::uint64_t seed) {
  const Model m = load_model(f.model);
  if (f.field != "auto" && f.field != "rational" && f.field != "float") {
    throw UsageError("--field must be auto, rational or float");
  }
  Loaded out;
  if (m.kind == Model::Kind::series) {
    std::visit(
        [&](const auto& s) {
          using F = typename std::decay_t<decltype(s)>::Field;
          Truncation t = s.truncation();
          if (f.degree > 0) t.degree = f.degree;
          if (f.species > 0) t.species = f.species;
          const PressureSeries<F> p = make_pressure(retruncated(s, t));
          if constexpr (std::is_same_v<F, Rational>) {
            out.exact = Inputs<Rational>{nullptr, p, t};
            if (f.field == "float") out.approx = Inputs<double>{nullptr, make_pressure(to_float(p.series)), t};
          } else {
            if (f.field == "rational") throw UsageError("the series has float coefficients; use --field float");
            out.approx = Inputs<double>{nullptr, p, t};
          }
        },
        *m.series);
    out.description = "explicit pressure series";
  } else {
    const Truncation t{f.degree > 0 ? f.degree : 4, f.species > 0 ? f.species : model_species(m)};
    validate(t);
    if (m.kind == Model::Kind::synthetic) {
      auto exact = std::make_shared<SyntheticWeights>(m.synthetic);
      out.description = exact->describe();
      if (f.field == "float") {
        out.approx = Inputs<double>{std::make_shared<FloatWeights>(exact), std::nullopt, t};
      } else {
        out.exact = Inputs<Rational>{exact, std::nullopt, t};
      }
    } else {
      if (f.field == "rational") throw UsageError("Monte Carlo weights are floats; use --field float");
      out.params = f.mc.params(seed);
      out.mc = std::make_shared<McWeights>(m.potential, *out.params);
      out.description = out.mc->describe();
      out.approx = Inputs<double>{out.mc, std::nullopt, t};
    }
  }
  out.field = out.approx ? "float" : "rational";
  return out;
}

template <class F>
Series<F> virial_by(InversionMethod m, const Inputs<F>& in) {
  switch (m) {
    case InversionMethod::recursive:
      return invert_recursive(in.pressure_series()).series;
    case InversionMethod::lagrange_good:
      return virial_lagrange_good(in.pressure_series()).series;
    case InversionMethod::two_connected:
      if (!in.source) {
        throw UsageError(
            "the two-connected route sums weights over two-connected graphs; an explicit pressure series has none");
      }
      if (!in.source->block_factorizing()) {
        throw UsageError("the two-connected route requires weights that factor over blocks; " +
                         in.source->describe() + " does not");
      }
      return virial_from_two_connected(*in.source, in.t).series;
  }
  throw InvariantError("unknown inversion method");
}

json base_doc(const std::string& command, const Loaded& l, Truncation t, std::uint64_t seed) {
  json d = {{"command", command},
            {"model", l.description},
            {"field", l.field},
            {"truncation", {{"degree", t.degree}, {"species", t.species}}},
            {"seed", seed}};
  if (l.params) {
    d["samples"] = l.params->sample_count;
    d["scheme"] = to_string(l.params->scheme);
  }
  return d;
}

// One row per admissible index of degree >= min_degree.
template <class F>
void emit_series(Report& r, const Series<F>& s, const std::map<MultiIndex, double>* errors, int min_degree,
                 const char* key) {
  const Truncation& t = s.truncation();
  r.columns = {"n", key};
  if (errors) r.columns.push_back("std_error");
  json rows = json::array();
  for (const MultiIndex& n : indices_up_to(t.degree, t.species)) {
    if (n.degree() < min_degree) continue;
    const json c = coefficient_to_json(s.coefficient(n));
    json row = {{"n", multi_index_to_json(n)}, {"label", dense_label(n, t.species)}, {key, c}};
    std::vector<std::string> cells{dense_label(n, t.species), cell(c)};
    if (errors) {
      auto it = errors->find(n);
      const double e = it == errors->end() ? 0.0 : it->second;
      row["std_error"] = e;
      cells.push_back(cell(json(e)));
    }
    rows.push_back(row);
    r.rows.push_back(cells);
  }
  r.doc["coefficients"] = rows;
}

Report invert(const VirialFlags& f, const GlobalOptions& g) {
  const InversionMethod m = parse_inversion_method(f.method);
  const Loaded l = load(f, g.seed);
  Report r;
  if (l.mc) {
    const Inputs<double>& in = *l.approx;
    const PropagatedSeries p = propagate_std_error(*l.mc, [&](const WeightSource<double>& s) {
      return virial_by(m, Inputs<double>{std::shared_ptr<const WeightSource<double>>(&s, [](auto*) {}), std::nullopt, in.t});
    });
    r.doc = base_doc("virial invert", l, in.t, g.seed);
    r.doc["method"] = to_string(m);
    emit_series(r, p.value, &p.std_error, 1, "c");
  } else if (l.approx) {
    r.doc = base_doc("virial invert", l, l.approx->t, g.seed);
    r.doc["method"] = to_string(m);
    emit_series(r, virial_by(m, *l.approx), nullptr, 1, "c");
  } else {
    r.doc = base_doc("virial invert", l, l.exact->t, g.seed);
    r.doc["method"] = to_string(m);
    emit_series(r, virial_by(m, *l.exact), nullptr, 1, "c");
  }
  return r;
}

template <class F>
Report compare_impl(const Loaded& l, const Inputs<F>& in, const GlobalOptions& g) {
  std::vector<std::pair<InversionMethod, Series<F>>> results;
  json skipped = json::array();
  for (InversionMethod m : {InversionMethod::recursive, InversionMethod::lagrange_good, InversionMethod::two_connected}) {
    try {
      results.emplace_back(m, virial_by(m, in));
    } catch (const UsageError& e) {
      skipped.push_back({{"method", to_string(m)}, {"reason", e.what()}});
    }
  }
  Report r;
  r.doc = base_doc("virial compare", l, in.t, g.seed);
  r.columns = {"n"};
  for (const auto& [m, s] : results) r.columns.push_back(to_string(m));
  r.columns.push_back("agree");
  json rows = json::array();
  bool identical = true;
  bool agree = true;
  double worst = 0.0;
  for (const MultiIndex& n : indices_up_to(in.t.degree, in.t.species)) {
    if (n.degree() == 0) continue;
    json row = {{"n", multi_index_to_json(n)}, {"label", dense_label(n, in.t.species)}};
    std::vector<std::string> cells{dense_label(n, in.t.species)};
    const F ref = results.front().second.coefficient(n);
    bool same = true;
    for (const auto& [m, s] : results) {
      const F v = s.coefficient(n);
      row[to_string(m)] = coefficient_to_json(v);
      cells.push_back(cell(coefficient_to_json(v)));
      if (v != ref) {
        identical = same = false;
        const double diff = std::fabs(to_double(v) - to_double(ref)) / std::max(1.0, std::fabs(to_double(ref)));
        worst = std::max(worst, diff);
        if (!(diff <= 1e-9) || std::is_same_v<F, Rational>) agree = false;
      }
    }
    row["agree"] = same;
    cells.push_back(same ? "true" : "false");
    rows.push_back(row);
    r.rows.push_back(cells);
  }
  const std::string verdict = identical ? "identical" : agree ? "agree within 1e-9" : "differ";
  json methods = json::array();
  for (const auto& [m, s] : results) methods.push_back(to_string(m));
  r.doc["methods"] = methods;
  r.doc["skipped"] = skipped;
  r.doc["coefficients"] = rows;
  r.doc["max_relative_difference"] = worst;
  r.doc["verdict"] = verdict;
  r.ok = verdict != "differ";
  return r;
}

Report compare(const VirialFlags& f, const GlobalOptions& g) {
  const Loaded l = load(f, g.seed);
  return l.approx ? compare_impl(l, *l.approx, g) : compare_impl(l, *l.exact, g);
}

Report mu(const VirialFlags& f, const GlobalOptions& g) {
  Loaded l = load(f, g.seed);
  if (l.exact) l.exact->t.species = std::max(l.exact->t.species, f.target);
  if (l.approx) l.approx->t.species = std::max(l.approx->t.species, f.target);
  Report r;
  auto run = [&](const auto& in) {
    if (!in.source) throw UsageError("the chemical-potential correction needs graph weights, not an explicit series");
    r.doc = base_doc("virial mu", l, in.t, g.seed);
    r.doc["species"] = f.target;
    if (l.mc) {
      const PropagatedSeries p = propagate_std_error(
          *l.mc, [&](const WeightSource<double>& s) { return chemical_potential(s, in.t, f.target); });
      emit_series(r, p.value, &p.std_error, 1, "correction");
    } else {
      emit_series(r, chemical_potential(*in.source, in.t, f.target), nullptr, 1, "correction");
    }
  };
  if (l.approx) {
    run(*l.approx);
  } else {
    run(*l.exact);
  }
  return r;
}

void common(CLI::App* c, VirialFlags& f) {
  c->add_option("--model", f.model, "Model JSON file")->required();
  c->add_option("--degree", f.degree, "Truncation degree D (default 4, or the series degree)");
  f.mc.add_to(c);
  c->add_option("--field", f.field, "auto, rational or float")->capture_default_str();
}

}  // namespace

void add_virial_commands(CLI::App& app, const GlobalOptions& g, Registry& r) {
  CLI::App* virial = app.add_subcommand("virial", "Virial coefficients from a model");
  virial->require_subcommand(1);

  auto inv = std::make_shared<VirialFlags>();
  CLI::App* i = virial->add_subcommand("invert", "Virial coefficients c(n) by one method");
  common(i, *inv);
  i->add_option("--species", inv->species, "Number of species S (default from the model)");
  i->add_option("--method", inv->method, "recursive, lagrange-good or two-connected")->capture_default_str();
  r.add(i, [inv, &g] { return invert(*inv, g); });

  auto cmp = std::make_shared<VirialFlags>();
  CLI::App* c = virial->add_subcommand("compare", "Run every applicable method and compare coefficients");
  common(c, *cmp);
  c->add_option("--species", cmp->species, "Number of species S (default from the model)");
  r.add(c, [cmp, &g] { return compare(*cmp, g); });

  auto m = std::make_shared<VirialFlags>();
  CLI::App* u = virial->add_subcommand("mu", "Chemical-potential correction log z_k - log rho_k as a series in rho");
  common(u, *m);
  u->add_option("--species", m->target, "Species k")->required();
  u->add_option("--species-cap", m->species, "Number of species S in the truncation (default max(k, model))");
  r.add(u, [m, &g] { return mu(*m, g); });
}

}  // namespace vkcli
