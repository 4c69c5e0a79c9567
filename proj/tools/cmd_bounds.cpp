#include <memory>

#include "cli.hpp"
#include "virialkit/bounds.hpp"
#include "virialkit/errors.hpp"
#include "virialkit/series_json.hpp"
#include "virialkit/virial.hpp"
#include "virialkit/weight_source.hpp"

namespace vkcli {

using nlohmann::json;
using namespace virialkit;

namespace {

struct BoundsFlags {
  std::string spec;
  std::string model;
  int degree = 0;
  std::uint64_t hypothesis_samples = 4000;
  McFlags mc;
};

struct FloatPipeline {
  Series<double> p{Truncation{1, 1}};
  Series<double> c{Truncation{1, 1}};
  std::string description;
};

// Pressure and virial coefficients in floats; exact models are inverted exactly first.
FloatPipeline model_pipeline(const BoundsFlags& f, const DomainSpec& spec, std::uint64_t seed) {
  const Model m = load_model(f.model);
  const int S = spec.species.rbegin()->first;
  const Truncation t{f.degree > 0 ? f.degree : 6, S};
  FloatPipeline out;
  if (m.kind == Model::Kind::series) {
    out.description = "explicit pressure series";
    std::visit(
        [&](const auto& s) {
          using F = typename std::decay_t<decltype(s)>::Field;
          const Truncation have = s.truncation();
          if (f.degree > have.degree) throw UsageError("--degree exceeds the series degree");
          const Truncation use{f.degree > 0 ? f.degree : have.degree, have.species};
          Series<F> cut(use);
          for (const auto& [n, c] : s.terms()) cut.accumulate(n, c);
          const PressureSeries<F> p = make_pressure(cut);
          const Series<F> c = invert_recursive(p).series;
          if constexpr (std::is_same_v<F, Rational>) {
            out.p = to_float(p.series);
            out.c = to_float(c);
          } else {
            out.p = p.series;
            out.c = c;
          }
        },
        *m.series);
  } else if (m.kind == Model::Kind::synthetic) {
    SyntheticWeights w(m.synthetic);
    const PressureSeries<Rational> p = pressure_from_weights(w, t);
    out.p = to_float(p.series);
    out.c = to_float(invert_recursive(p).series);
    out.description = w.describe();
  } else {
    McWeights w(m.potential, f.mc.params(seed));
    const PressureSeries<double> p = pressure_from_weights(w, t);
    out.p = p.series;
    out.c = invert_recursive(p).series;
    out.description = w.describe();
  }
  return out;
}

Report compute(const BoundsFlags& f, const GlobalOptions& g) {
  const DomainSpec spec = domain_spec_from_json(read_json_file(f.spec));
  const double C = det_bound_constant(spec);
  Report r;
  r.doc = {{"command", "bounds compute"}, {"spec", domain_spec_to_json(spec)}, {"constant", C}, {"seed", g.seed}};
  if (const auto e = det_bound_exponent_exact(spec)) r.doc["constant_exponent_exact"] = format_rational(*e);

  const DensityDomain dd = density_domain(spec);
  json radii = json::object();
  for (const auto& [i, v] : dd.radii) radii[std::to_string(i)] = v;
  r.doc["density_domain_radii"] = radii;

  std::optional<FloatPipeline> model;
  double sup_p = 1.0;
  if (!f.model.empty()) {
    model = model_pipeline(f, spec, g.seed);
    r.doc["model"] = model->description;
  }

  const int S = spec.species.rbegin()->first;
  const int D = model ? model->p.truncation().degree : (f.degree > 0 ? f.degree : 4);
  if (model) {
    const HypothesisReport h = hypothesis_check(model->p, spec, f.hypothesis_samples, g.seed);
    json logs = json::array();
    for (const LogDerivativeCheck& c : h.log_derivatives) {
      logs.push_back({{"species", c.i},
                      {"max_abs_log", c.max_abs_log},
                      {"a", c.a},
                      {"zero_found", c.zero_found},
                      {"passed", c.passed}});
    }
    r.doc["hypothesis"] = {{"sup_p_truncation_order_upper_bound", h.abs_coefficient_sum},
                           {"log_derivatives", logs},
                           {"sqrt_ratio_sum", h.sqrt_ratio_sum},
                           {"weighted_a_sum", h.weighted_a_sum},
                           {"sample_points", h.sample_points},
                           {"passed", h.passed()}};

    const AuditReport a = check_coefficient_bounds(model->p, spec, model->c);
    sup_p = a.sup_p;
    json rows = json::array();
    for (const AuditRow& row : a.rows) {
      rows.push_back({{"n", multi_index_to_json(row.n)},
                      {"label", dense_label(row.n, S)},
                      {"c", row.c},
                      {"bound", row.bound},
                      {"within", row.within}});
    }
    r.doc["audit"] = {{"sup_p", a.sup_p}, {"violations", a.violations()}, {"rows", rows}};
    r.ok = h.passed() && a.violations() == 0;
  }

  // Per-index bounds; without a model they are per unit sup_p.
  r.doc["sup_p"] = sup_p;
  r.doc["sup_p_source"] = model ? "truncation-order upper bound sum |b(n)| R^n" : "unit (bounds scale with sup_p)";
  r.columns = {"n", "virial_bound", "z_of_rho_coefficient_bound"};
  if (model) r.columns.insert(r.columns.begin() + 1, "c");
  json bounds = json::array();
  for (const MultiIndex& n : indices_up_to(D, S)) {
    if (n.degree() == 0) continue;
    const double vb = virial_bound(spec, sup_p, n);
    // Coefficient bound for z_k / rho_k, taking k = e_1.
    const double ib = inverse_bound(spec, n, MultiIndex::unit(1));
    bounds.push_back({{"n", multi_index_to_json(n)}, {"label", dense_label(n, S)}, {"virial_bound", vb}, {"inverse_bound", ib}});
    std::vector<std::string> row{dense_label(n, S), cell(json(vb)), cell(json(ib))};
    if (model) row.insert(row.begin() + 1, cell(json(model->c.coefficient(n))));
    r.rows.push_back(row);
  }
  r.doc["bounds"] = bounds;
  r.doc["passed"] = r.ok;
  return r;
}

}  // namespace

void add_bounds_commands(CLI::App& app, const GlobalOptions& g, Registry& r) {
  CLI::App* bounds = app.add_subcommand("bounds", "Explicit coefficient bounds on a polydisk");
  bounds->require_subcommand(1);
  auto f = std::make_shared<BoundsFlags>();
  CLI::App* c = bounds->add_subcommand("compute", "Constant C, per-index bounds, hypothesis report and audit");
  c->add_option("--spec", f->spec, "Domain spec JSON file")->required();
  c->add_option("--model", f->model, "Model JSON file; enables the hypothesis report and audit");
  c->add_option("--degree", f->degree, "Truncation degree (default 6 with a model, else 4)");
  c->add_option("--hypothesis-samples", f->hypothesis_samples, "Sample points for the hypothesis check")
      ->capture_default_str();
  f->mc.add_to(c);
  r.add(c, [f, &g] { return compute(*f, g); });
}

}  // namespace vkcli
