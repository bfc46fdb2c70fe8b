// Copyright 2026 The hypercollapse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypercollapse/beta.hpp"
#include "hypercollapse/chain.hpp"
#include "hypercollapse/collapse.hpp"
#include "hypercollapse/fluid.hpp"
#include "hypercollapse/harness.hpp"
#include "hypercollapse/hypergraph.hpp"

namespace hypercollapse::cli {

namespace {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string beta;
  std::string preset;
  std::int64_t n = 1000;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
  std::string engine = "chain";
  std::string out;
  std::string format;
  unsigned workers = 1;
  std::size_t points = 201;
  double t_max = 1.0 - 1e-6;
  double tolerance = 0.005;
  double step = 1e-4;
};

// Output of one subcommand: a CSV body, the same data as JSON, and a summary
// that goes into the manifest.
struct Result {
  std::string csv;
  json data;
  json summary;
};

BetaSeries parse_preset(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream list(text.substr(colon + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      try {
        std::size_t used = 0;
        args.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError("preset argument '" + item + "' is not a number");
      }
    }
  }
  if (name == "example21" && args.size() == 2) {
    if (!(args[0] >= 0.0 && args[0] < 1.0)) throw ConfigError("example21: need 0 <= p < 1");
    return example21(args[0], args[1]);
  }
  if (name == "example22" && args.size() == 1) return example22(args[0]);
  throw ConfigError("unknown preset '" + text + "' (expected example21:p,alpha or example22:alpha)");
}

BetaSeries resolve_series(const Options& o) {
  if (o.beta.empty() == o.preset.empty()) {
    throw ConfigError("exactly one of --beta and --preset is required");
  }
  try {
    if (!o.preset.empty()) return parse_preset(o.preset);
    if (o.beta.find('[') != std::string::npos) return BetaSeries::parse_json(o.beta);
    std::ifstream in(o.beta);
    if (!in) throw ConfigError("cannot read series file '" + o.beta + "'");
    std::stringstream text;
    text << in.rdbuf();
    return BetaSeries::parse_json(text.str());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid series: ") + e.what());
  }
}

json config_json(const Options& o, const BetaSeries& series) {
  json c = {{"command", o.command},
            {"beta", series.coeffs()},
            {"N", o.n},
            {"trials", o.trials},
            {"seed", o.seed},
            {"engine", o.engine},
            {"format", o.format},
            {"workers", o.workers}};
  if (!o.preset.empty()) c["preset"] = o.preset;
  if (o.command == "fluid") {
    c["points"] = o.points;
    c["t_max"] = o.t_max;
  }
  if (o.command == "experiment") c["tolerance"] = o.tolerance;
  return c;
}

json zeros_json(const ThresholdReport& r) {
  json zeros = json::array();
  for (const auto& z : r.zeros) {
    zeros.push_back(
        {{"t", z.t}, {"f", z.f_value}, {"curvature", z.curvature}, {"degenerate", z.degenerate}});
  }
  return zeros;
}

Result cmd_threshold(const Options&, const BetaSeries& series) {
  const auto r = analyze(series);
  const auto lim = fluid::limits(series, r);
  Result res;
  res.summary = {{"z_star", r.z_star},
                 {"zeros", zeros_json(r)},
                 {"classification", r.critical() ? "CRITICAL" : "NONCRITICAL"},
                 {"degenerate", r.degenerate},
                 {"pure_debris", series.pure_debris()},
                 {"v_limit", lim.v_limit},
                 {"edge_limit", lim.edge_limit}};
  res.data = res.summary;
  std::ostringstream csv;
  csv.precision(17);
  csv << "kind,t,f,curvature\n" << "z_star," << r.z_star << ",,\n";
  for (const auto& z : r.zeros) csv << "zero," << z.t << ',' << z.f_value << ',' << z.curvature << '\n';
  res.csv = csv.str();
  return res;
}

Result cmd_fluid(const Options& o, const BetaSeries& series) {
  const auto r = analyze(series);
  if (o.points < 1) throw ConfigError("--points must be at least 1");
  const auto grid = fluid::default_grid(r, o.points, o.t_max);
  const auto p = fluid::path(series, grid, r);
  const auto lim = fluid::limits(series, r);
  Result res;
  res.summary = {{"z_star", r.z_star},
                 {"zeros", zeros_json(r)},
                 {"v_limit", lim.v_limit},
                 {"edge_limit", lim.edge_limit},
                 {"max_residual", p.max_residual}};
  json points = json::array();
  for (const auto& pt : p.points) {
    points.push_back({{"t", pt.t}, {"x1", pt.x[0]}, {"x2", pt.x[1]}, {"x3", pt.x[2]},
                      {"sigma_sq", pt.sigma_sq}});
  }
  res.data = {{"points", points}};
  std::ostringstream csv;
  fluid::write_path_csv(csv, p);
  res.csv = csv.str();
  return res;
}

Result cmd_sample(const Options& o, const BetaSeries& series) {
  Result res;
  std::ostringstream csv;
  csv << "trial,edge,size,vertices\n";
  json graphs = json::array();
  std::int64_t total = 0;
  for (std::int64_t trial = 0; trial < o.trials; ++trial) {
    Rng rng(o.seed, static_cast<std::uint64_t>(trial));
    Hypergraph h;
    try {
      h = sample_poisson(series, static_cast<std::size_t>(o.n), rng);
    } catch (const std::exception& e) {
      throw TrialError(trial, e.what());
    }
    json edges = json::array();
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
      const auto vs = h.edge(e);
      csv << trial << ',' << e << ',' << vs.size() << ',';
      for (std::size_t i = 0; i < vs.size(); ++i) csv << (i ? " " : "") << vs[i];
      csv << '\n';
      edges.push_back(std::vector<VertexId>(vs.begin(), vs.end()));
    }
    total += static_cast<std::int64_t>(h.edge_count());
    graphs.push_back({{"trial", trial}, {"n_vertices", o.n}, {"edges", edges}});
  }
  res.summary = {{"edges_total", total}, {"expected_edges_per_trial", o.n * eval(series, 1.0)}};
  res.data = {{"hypergraphs", graphs}};
  res.csv = csv.str();
  return res;
}

// Prefixes every data row of a CSV body (not the header) with "<trial>,".
void append_with_trial(std::ostringstream& out, const std::string& body, std::int64_t trial,
                       bool with_header) {
  std::istringstream lines(body);
  std::string line;
  bool header = true;
  while (std::getline(lines, line)) {
    if (header) {
      if (with_header) out << "trial," << line << '\n';
      header = false;
      continue;
    }
    out << trial << ',' << line << '\n';
  }
}

Result cmd_collapse(const Options& o, const BetaSeries& series) {
  Result res;
  std::ostringstream csv;
  json runs = json::array();
  for (std::int64_t trial = 0; trial < o.trials; ++trial) {
    CollapseTrace trace;
    try {
      Rng rng(o.seed, static_cast<std::uint64_t>(trial));
      Hypergraph h = sample_poisson(series, static_cast<std::size_t>(o.n), rng);
      trace = collapse(h, Randomized{&rng}, {.check_invariants = true});
      if (trace.terminal_debris != trace.identifiable_edge_count) {
        throw std::logic_error("terminal debris differs from identifiable edge count");
      }
    } catch (const std::exception& e) {
      throw TrialError(trial, e.what());
    }
    std::ostringstream body;
    write_trace_csv(body, trace);
    append_with_trial(csv, body.str(), trial, trial == 0);
    json run = run_summary_json(o.n, static_cast<std::int64_t>(trace.steps.size()),
                                trace.identifiable_edge_count, trace.terminal_debris, o.seed);
    run["trial"] = trial;
    runs.push_back(run);
  }
  res.summary = {{"runs", runs}};
  res.data = res.summary;
  res.csv = csv.str();
  return res;
}

ExperimentConfig experiment_config(const Options& o, const BetaSeries& series) {
  ExperimentConfig c;
  c.series = series;
  c.N = o.n;
  c.trials = o.trials;
  c.master_seed = o.seed;
  try {
    c.engine = parse_engine(o.engine);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.workers = o.workers;
  return c;
}

Result cmd_chain(const Options& o, const BetaSeries& series) {
  auto c = experiment_config(o, series);
  c.engine = Engine::kChain;
  c.record = Record::kTrajectories;
  const auto r = run_experiment(c);
  Result res;
  std::ostringstream csv;
  json runs = json::array();
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    std::ostringstream body;
    write_trajectory_csv(body, r.trajectories[i]);
    append_with_trial(csv, body.str(), static_cast<std::int64_t>(i), i == 0);
    const auto& t = r.trials[i];
    json run = run_summary_json(o.n, t.steps, t.edge_count, r.trajectories[i].back().Z, o.seed);
    run["trial"] = t.trial_index;
    runs.push_back(run);
  }
  res.summary = {{"runs", runs}};
  res.data = res.summary;
  res.csv = csv.str();
  return res;
}

Result cmd_experiment(const Options& o, const BetaSeries& series) {
  const auto c = experiment_config(o, series);
  const auto r = run_experiment(c);
  const auto manifest = experiment_manifest(c, r, o.tolerance);
  Result res;
  for (const auto& key : {"analytic", "empirical", "tests", "notes"}) {
    if (manifest.contains(key)) res.summary[key] = manifest[key];
  }
  json trials = json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"trial", t.trial_index}, {"seed", t.seed}, {"v_frac", t.v_frac},
                      {"edge_frac", t.edge_frac}, {"steps", t.steps}});
  }
  res.data = {{"trials", trials}};
  std::ostringstream csv;
  csv.precision(17);
  write_trials_csv(csv, r.trials);
  res.csv = csv.str();
  return res;
}

Result cmd_zlaw(const Options& o, const BetaSeries& series) {
  const auto r = analyze(series);
  Rng rng(o.seed, 0);
  std::vector<std::int64_t> counts(r.zeros.size() + 1, 0);
  std::ostringstream csv;
  csv.precision(17);
  csv << "sample,value,zero_index\n";
  for (std::int64_t i = 0; i < o.trials; ++i) {
    const auto z = fluid::sample_Z(r, rng);
    csv << i << ',' << z.value << ',';
    if (z.hit_zero_index) csv << *z.hit_zero_index;
    csv << '\n';
    ++counts[z.hit_zero_index ? *z.hit_zero_index : r.zeros.size()];
  }
  json candidates = json::array();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    candidates.push_back(
        {{"value", k < r.zeros.size() ? r.zeros[k].t : r.z_star},
         {"kind", k < r.zeros.size() ? "zero" : "z_star"},
         {"count", counts[k]},
         {"mass", static_cast<double>(counts[k]) / static_cast<double>(o.trials)}});
  }
  Result res;
  res.summary = {{"z_star", r.z_star}, {"zeros", zeros_json(r)}, {"candidates", candidates}};
  res.data = res.summary;
  res.csv = csv.str();
  return res;
}

// Writes `content` to `path` through a temporary file in the same directory
// and an atomic rename.
void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    f << content;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to '" + tmp + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename to '" + path + "': " + ec.message());
  }
}

void emit(const Options& o, const BetaSeries& series, const Result& r, std::ostream& out,
          std::ostream& err) {
  json manifest = {{"config", config_json(o, series)}, {"summary", r.summary}};
  if (o.format == "json") {
    json doc = manifest;
    doc["data"] = r.data;
    const std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      write_atomic(o.out, text);
    }
    return;
  }
  if (o.out.empty()) {
    out << r.csv;
    err << manifest.dump(2) << '\n';
    return;
  }
  write_atomic(o.out + ".manifest.json", manifest.dump(2) + "\n");
  write_atomic(o.out, r.csv);
}

void add_common(CLI::App* sub, Options& o, bool needs_n, bool needs_trials) {
  sub->add_option("--beta", o.beta, "Series as a JSON array [b0, b1, ...] or a file holding one");
  sub->add_option("--preset", o.preset, "example21:p,alpha or example22:alpha");
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers", o.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (needs_n) {
    sub->add_option("--n", o.n, "Number of vertices")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  if (needs_trials) {
    sub->add_option("--trials", o.trials, "Number of trials (samples for zlaw)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hypergraph collapse simulator and fluid-limit calculator", "hcollapse"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with option values (flags override it)");

  struct Command {
    const char* name;
    const char* help;
    const char* default_format;
    bool needs_n;
    bool needs_trials;
    Result (*body)(const Options&, const BetaSeries&);
  };
  const Command commands[] = {
      {"threshold", "Locate z* and the tangential zeros of f", "json", false, false, cmd_threshold},
      {"fluid", "Evaluate the fluid path and variance clock on a grid", "csv", false, false,
       cmd_fluid},
      {"sample", "Sample Poisson(beta) hypergraphs", "csv", true, true, cmd_sample},
      {"collapse", "Run the full collapse engine", "csv", true, true, cmd_collapse},
      {"chain", "Run the (Y, Z) Markov chain", "csv", true, true, cmd_chain},
      {"experiment", "Monte Carlo experiment with analytic comparison", "csv", true, true,
       cmd_experiment},
      {"zlaw", "Sample the limiting law of the terminal fraction", "csv", false, true, cmd_zlaw},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o, c.needs_n, c.needs_trials);
    subs.emplace_back(sub, &c);
  }
  subs[1].first->add_option("--points", o.points, "Grid points on [0, min(z*, t-max)]")
      ->capture_default_str();
  subs[1].first->add_option("--t-max", o.t_max, "Upper end of the grid")->capture_default_str();
  subs[5].first->add_option("--engine", o.engine, "full or chain")
      ->check(CLI::IsMember({"full", "chain"}))
      ->capture_default_str();
  subs[5].first->add_option("--tolerance", o.tolerance, "Absolute tolerance for the limit check")
      ->capture_default_str();

  std::vector<const char*> argv = {"hcollapse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out, msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code == 0 ? kOk : kConfigError;
  }

  const Command* chosen = nullptr;
  for (const auto& [sub, c] : subs) {
    if (sub->parsed()) chosen = c;
  }
  o.command = chosen->name;
  if (o.format.empty()) o.format = chosen->default_format;
  if (o.command != "experiment") o.engine = o.command == "collapse" ? "full" : "chain";

  try {
    const BetaSeries series = resolve_series(o);
    const Result r = chosen->body(o, series);
    emit(o, series, r, out, err);
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const TrialError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace hypercollapse::cli
