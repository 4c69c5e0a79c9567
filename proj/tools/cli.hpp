#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "virialkit/config.hpp"
#include "virialkit/monte_carlo.hpp"
#include "virialkit/multi_index.hpp"

namespace vkcli {

struct GlobalOptions {
  int threads = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

// A command's result: the JSON document, its CSV projection, and whether every
// requested check passed.
struct Report {
  nlohmann::json doc;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
};

using Handler = std::function<Report()>;

// Leaf subcommands and what to run when one of them is selected.
struct Registry {
  std::vector<std::pair<CLI::App*, Handler>> commands;
  void add(CLI::App* app, Handler h) { commands.emplace_back(app, std::move(h)); }
};

void add_graphs_commands(CLI::App& app, const GlobalOptions& g, Registry& r);
void add_virial_commands(CLI::App& app, const GlobalOptions& g, Registry& r);
void add_weights_commands(CLI::App& app, const GlobalOptions& g, Registry& r);
void add_bounds_commands(CLI::App& app, const GlobalOptions& g, Registry& r);

void write_report(const Report& r, const GlobalOptions& g);

// "(2,0,1)" over species 1..S.
std::string dense_label(const virialkit::MultiIndex& n, int species);
// CSV cell for a JSON scalar.
std::string cell(const nlohmann::json& v);

virialkit::Model load_model(const std::string& path);

// Shared Monte Carlo flags.
struct McFlags {
  std::uint64_t samples = 100000;
  std::string scheme = "pseudo-random";
  void add_to(CLI::App* app);
  virialkit::McParams params(std::uint64_t seed) const;
};

}  // namespace vkcli
