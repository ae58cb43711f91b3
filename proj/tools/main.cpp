// smartroute: run scenarios, generate Waxman topologies, aggregate results.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smartroute/engine.hpp"
#include "smartroute/graph.hpp"
#include "smartroute/report.hpp"

namespace fs = std::filesystem;
using namespace smartroute;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Files are written next to their destination and renamed only after all
// of them were written, so a failed command leaves no partial output.
class StagedWrites {
 public:
  void add(fs::path dest, const std::string& content) {
    fs::path tmp = dest;
    tmp += ".tmp." + std::to_string(::getpid());
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
    staged_.emplace_back(std::move(tmp), std::move(dest));
  }

  void commit() {
    for (const auto& [tmp, dest] : staged_) fs::rename(tmp, dest);
    staged_.clear();
  }

  ~StagedWrites() {
    std::error_code ec;
    for (const auto& [tmp, dest] : staged_) fs::remove(tmp, ec);
  }

 private:
  std::vector<std::pair<fs::path, fs::path>> staged_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t parse_seed(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') throw UsageError(std::string(what) + ": not a seed: '" + s + "'");
  return v;
}

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string out{"results"};
  bool trace{false};
};

int cmd_run(const RunArgs& a) {
  if (!fs::exists(a.config)) throw UsageError("config file not found: " + a.config);
  Scenario s;
  try {
    s = load_scenario(a.config);
  } catch (const ScenarioError& e) {
    throw UsageError(e.what());
  }
  if (a.seed) {
    s.seed = *a.seed;
  } else if (const char* env = std::getenv("SMARTROUTE_SEED"); env && *env) {
    s.seed = parse_seed(env, "SMARTROUTE_SEED");
  }
  if (!a.mode.empty()) s.mode = parse_mode(a.mode);

  const RunResult r = run(s);
  fs::create_directories(a.out);
  const fs::path base = fs::path(a.out) / r.report.run_id;
  StagedWrites files;
  files.add(fs::path(base.string() + ".summary.csv"), summary_header() + "\n" + summary_row(r.report) + "\n");
  if (a.trace) {
    files.add(fs::path(base.string() + ".events.jsonl"), events_jsonl(r.traces.events));
    files.add(fs::path(base.string() + ".alarms.jsonl"), alarms_jsonl(r.traces.alarms));
    files.add(fs::path(base.string() + ".routes.jsonl"), routes_jsonl(r.traces.routes));
    files.add(fs::path(base.string() + ".summary.json"), summary_json(s, r));
  }
  files.commit();

  const RunReport& rep = r.report;
  std::printf("%s events=%llu flows=%llu availability=%.6f flaps=%llu useless=%llu tp=%llu fp=%llu fn=%llu "
              "recall=%.6f precision=%.6f\n",
              rep.run_id.c_str(), static_cast<unsigned long long>(rep.events),
              static_cast<unsigned long long>(rep.flows), rep.availability,
              static_cast<unsigned long long>(rep.flaps_total), static_cast<unsigned long long>(rep.flaps_useless),
              static_cast<unsigned long long>(rep.tp), static_cast<unsigned long long>(rep.fp),
              static_cast<unsigned long long>(rep.fn), rep.recall, rep.precision);
  return kOk;
}

int cmd_gen_topo(WaxmanParams p, const std::string& out) {
  Topology t = [&] {
    try {
      return generate_waxman(p);
    } catch (const TopologyError& e) {
      throw UsageError(e.what());
    }
  }();
  if (const fs::path parent = fs::path(out).parent_path(); !parent.empty()) fs::create_directories(parent);
  StagedWrites files;
  files.add(out, serialize_topology(t));
  files.commit();
  std::printf("%s: %zu nodes, %zu links, length %.1f..%.1f km\n", out.c_str(), t.node_count(), t.link_count(),
              t.min_length_km(), t.max_length_km());
  return kOk;
}

int cmd_report(const std::string& pattern, const std::string& out) {
  const auto paths = expand_glob(pattern);
  if (paths.empty()) throw UsageError("no files match '" + pattern + "'");
  std::vector<RunReport> rows;
  for (const auto& p : paths) {
    try {
      auto part = parse_summary_csv(read_file(p), p.string());
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (rows.empty()) throw UsageError("no summary rows in '" + pattern + "'");

  fs::path out_path(out);
  if (const fs::path parent = out_path.parent_path(); !parent.empty()) fs::create_directories(parent);
  fs::path scatter = out_path;
  scatter.replace_extension(".scatter.csv");
  StagedWrites files;
  files.add(out_path, aggregate_csv(aggregate(rows)));
  files.add(scatter, scatter_csv(rows));
  files.commit();
  std::printf("%zu runs from %zu files -> %s, %s\n", rows.size(), paths.size(), out_path.c_str(), scatter.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for SDN link-failure recovery with and without failure prediction"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::string seed_text;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  run_cmd->add_option("--config", run_args.config, "Scenario JSON file")->required();
  run_cmd->add_option("--seed", seed_text, "Root seed (overrides the scenario and SMARTROUTE_SEED)");
  run_cmd->add_option("--mode", run_args.mode, "Routing mode")->check(CLI::IsMember({"sdn", "sr"}));
  run_cmd->add_option("--out", run_args.out, "Output directory")->capture_default_str();
  run_cmd->add_flag("--trace", run_args.trace, "Also write event, alarm and route traces");

  WaxmanParams wax;
  std::string wax_out;
  std::string wax_seed;
  auto* gen_cmd = app.add_subcommand("gen-topo", "Generate a topology");
  auto* waxman_cmd = gen_cmd->add_subcommand("waxman", "Waxman random geometric graph");
  gen_cmd->require_subcommand(1);
  waxman_cmd->add_option("--nodes", wax.nodes, "Node count")->required();
  waxman_cmd->add_option("--alpha", wax.alpha, "Waxman alpha in (0, 1]")->required();
  waxman_cmd->add_option("--beta", wax.beta, "Waxman beta in (0, 1]")->required();
  waxman_cmd->add_option("--seed", wax_seed, "Placement seed")->required();
  waxman_cmd->add_option("--plane", wax.plane_km, "Side of the square plane in km")->capture_default_str();
  waxman_cmd->add_option("--name", wax.name, "Topology name")->capture_default_str();
  waxman_cmd->add_option("--out", wax_out, "Output JSON path")->required();

  std::string report_in;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Aggregate summary CSVs");
  report_cmd->add_option("--in", report_in, "Glob of *.summary.csv files")->required();
  report_cmd->add_option("--out", report_out, "Aggregate CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) {
      if (!seed_text.empty()) run_args.seed = parse_seed(seed_text, "--seed");
      return cmd_run(run_args);
    }
    if (*gen_cmd) {
      wax.seed = parse_seed(wax_seed, "--seed");
      return cmd_gen_topo(wax, wax_out);
    }
    if (*report_cmd) return cmd_report(report_in, report_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
