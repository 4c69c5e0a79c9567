#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "virialkit/errors.hpp"

namespace vkcli {

std::string dense_label(const virialkit::MultiIndex& n, int species) {
  std::string s = "(";
  for (int i = 1; i <= species; ++i) {
    if (i > 1) s += ',';
    s += std::to_string(n.exponent(i));
  }
  return s + ")";
}

std::string cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_report(const Report& r, const GlobalOptions& g) {
  std::ostringstream os;
  if (g.format == "csv") {
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << '\n';
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
  } else {
    os << r.doc.dump(2) << '\n';
  }
  if (g.output.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw virialkit::UsageError("cannot write " + g.output);
  out << os.str();
}

virialkit::Model load_model(const std::string& path) { return virialkit::model_from_json(virialkit::read_json_file(path)); }

void McFlags::add_to(CLI::App* app) {
  app->add_option("--samples", samples, "Monte Carlo samples per estimate")->capture_default_str();
  app->add_option("--scheme", scheme, "pseudo-random or low-discrepancy")->capture_default_str();
}

virialkit::McParams McFlags::params(std::uint64_t seed) const {
  virialkit::McParams p{samples, seed, virialkit::parse_sampling_scheme(scheme)};
  virialkit::validate(p);
  return p;
}

}  // namespace vkcli

int main(int argc, char** argv) {
  using namespace vkcli;
  CLI::App app{"virialkit: virial expansions, graph sums and convergence bounds for multi-species gases"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--threads", g.threads, "Cap on worker threads (0: runtime default)");
  app.add_option("--seed", g.seed, "64-bit seed for every random choice")->capture_default_str();
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--output,-o", g.output, "Write the report here instead of standard output");

  Registry registry;
  add_graphs_commands(app, g, registry);
  add_virial_commands(app, g, registry);
  add_weights_commands(app, g, registry);
  add_bounds_commands(app, g, registry);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (g.threads < 0) throw virialkit::UsageError("--threads must be nonnegative");
    if (g.threads > 0) omp_set_num_threads(g.threads);
    for (const auto& [sub, handler] : registry.commands) {
      if (!sub->parsed()) continue;
      const Report r = handler();
      write_report(r, g);
      return r.ok ? 0 : 1;
    }
    std::cerr << "error: no command selected\n" << app.help();
    return 2;
  } catch (const virialkit::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const virialkit::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const virialkit::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
