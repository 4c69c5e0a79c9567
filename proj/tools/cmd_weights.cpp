#include <cmath>
#include <memory>

#include "cli.hpp"
#include "virialkit/assumptions.hpp"
#include "virialkit/errors.hpp"
#include "virialkit/series_json.hpp"
#include "virialkit/synthetic.hpp"

namespace vkcli {

using nlohmann::json;
using namespace virialkit;

namespace {

struct WeightFlags {
  std::string graph;
  std::string model;
  std::string spec;
  double b = 0.0;
  std::uint64_t trials = 20000;
  int max_n = 6;
  std::vector<Species> species;
  McFlags mc;
};

const PairPotential& potential_of(const Model& m, const char* command) {
  if (m.kind != Model::Kind::potential) {
    throw UsageError(std::string(command) + " needs a pair-potential model");
  }
  return *m.potential;
}

Report estimate(const WeightFlags& f, const GlobalOptions& g) {
  const ColouredGraph graph = graph_from_json(read_json_file(f.graph));
  const Model m = load_model(f.model);
  Report r;
  r.doc = {{"command", "weights estimate"}, {"graph", graph_to_json(graph)}, {"seed", g.seed}};
  if (m.kind == Model::Kind::synthetic) {
    const json w = coefficient_to_json(synthetic_weight(graph, *m.synthetic));
    r.doc["model"] = "synthetic";
    r.doc["weight"] = w;
    r.columns = {"weight"};
    r.rows.push_back({cell(w)});
    return r;
  }
  const PairPotential& u = potential_of(m, "weights estimate");
  const McParams p = f.mc.params(g.seed);
  const McEstimate e = weight_mc(graph, u, p);
  r.doc["model"] = u.name();
  r.doc["estimate"] = e.estimate;
  r.doc["std_error"] = e.std_error;
  r.doc["samples"] = e.sample_count;
  r.doc["scheme"] = to_string(p.scheme);
  r.columns = {"estimate", "std_error", "samples", "seed"};
  r.rows.push_back({cell(json(e.estimate)), cell(json(e.std_error)), std::to_string(e.sample_count), std::to_string(g.seed)});
  return r;
}

Report kp(const WeightFlags& f, const GlobalOptions& g) {
  const Model m = load_model(f.model);
  const PairPotential& u = potential_of(m, "weights kp-check");
  int species_cap = 1;
  const KpSpec spec = kp_spec_from_json(read_json_file(f.spec), species_cap);
  const KpReport rep = kp_check(u, spec, species_cap, f.mc.params(g.seed));
  Report r;
  r.columns = {"k", "lhs", "rhs", "pass"};
  json rows = json::array();
  for (const KpRow& row : rep.rows) {
    rows.push_back({{"k", row.k}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"pass", row.passed}});
    r.rows.push_back({std::to_string(row.k), cell(json(row.lhs)), cell(json(row.rhs)), row.passed ? "true" : "false"});
  }
  r.ok = rep.passed();
  r.doc = {{"command", "weights kp-check"},
           {"model", u.name()},
           {"a", spec.a},
           {"b", spec.b},
           {"species", species_cap},
           {"integral_method", rep.integral_method},
           {"summability_partial_sum", rep.summability_partial_sum},
           {"seed", g.seed},
           {"rows", rows},
           {"passed", r.ok}};
  return r;
}

Report stability(const WeightFlags& f, const GlobalOptions& g) {
  const Model m = load_model(f.model);
  const PairPotential& u = potential_of(m, "weights stability");
  const McParams trials{f.trials, g.seed, SamplingScheme::pseudo_random};
  const StabilityReport rep = stability_check(u, f.b, trials, f.max_n, f.species);
  Report r;
  r.ok = rep.passed();
  auto excess = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  r.doc = {{"command", "weights stability"},
           {"model", u.name()},
           {"b", f.b},
           {"max_n", f.max_n},
           {"seed", g.seed},
           {"configurations", rep.configurations},
           {"pairs", rep.pairs},
           {"many_body_violations", rep.many_body_violations},
           {"pair_violations", rep.pair_violations},
           {"worst_many_body_log_excess", excess(rep.worst_many_body_excess)},
           {"worst_pair_log_excess", excess(rep.worst_pair_excess)},
           {"passed", r.ok}};
  r.columns = {"configurations", "pairs", "many_body_violations", "pair_violations", "passed"};
  r.rows.push_back({std::to_string(rep.configurations), std::to_string(rep.pairs),
                    std::to_string(rep.many_body_violations), std::to_string(rep.pair_violations),
                    r.ok ? "true" : "false"});
  return r;
}

}  // namespace

void add_weights_commands(CLI::App& app, const GlobalOptions& g, Registry& r) {
  CLI::App* weights = app.add_subcommand("weights", "Graph weights of pair potentials and their hypotheses");
  weights->require_subcommand(1);

  auto est = std::make_shared<WeightFlags>();
  CLI::App* e = weights->add_subcommand("estimate", "Weight of one coloured graph");
  e->add_option("--graph", est->graph, "Graph JSON file")->required();
  e->add_option("--model", est->model, "Model JSON file")->required();
  est->mc.add_to(e);
  r.add(e, [est, &g] { return estimate(*est, g); });

  auto k = std::make_shared<WeightFlags>();
  CLI::App* c = weights->add_subcommand("kp-check", "Kotecky-Preiss type summability condition");
  c->add_option("--model", k->model, "Pair-potential model JSON file")->required();
  c->add_option("--spec", k->spec, "Radii and a, b as JSON")->required();
  k->mc.samples = 20000;
  k->mc.add_to(c);
  r.add(c, [k, &g] { return kp(*k, g); });

  auto s = std::make_shared<WeightFlags>();
  CLI::App* st = weights->add_subcommand("stability", "Sampled check of the stability bounds");
  st->add_option("--model", s->model, "Pair-potential model JSON file")->required();
  st->add_option("--b", s->b, "Stability constant b >= 0")->required();
  st->add_option("--trials", s->trials, "Sampled configurations")->capture_default_str();
  st->add_option("--max-n", s->max_n, "Largest cluster size (2..8)")->capture_default_str();
  st->add_option("--species", s->species, "Species to draw from (default: the model's)");
  r.add(st, [s, &g] { return stability(*s, g); });
}

}  // namespace vkcli
