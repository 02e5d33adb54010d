// Benchmark driver for the redundant-assignment library. Talks to the core
// exclusively through the C API in redundant_assign.h.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "redundant_assign.h"

namespace {

struct RunOptions {
  int nodes = 200;
  double radius = 0.13;
  int hubs = 10;
  std::string graph_model = "geometric";
  double er_prob = 0.05;
  int robots = 25;
  int goals = 5;
  int deploy = 20;
  int k_paths = 4;
  int samples = 200;
  int runs = 500;
  double corr = 0.5;
  std::string strategies =
      "hungarian,random,repeated-hungarian,greedy,best-aposteriori";
  std::uint64_t seed = 42;
  std::string sweep;
  std::string out_csv;
  std::string out_json;
  std::string profile;
  bool timing = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "deploy=5:20:3" (start:stop:step, inclusive) or "k=1,2,4,8".
nlohmann::json parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw CLI::ValidationError("--sweep", "expected axis=values");
  }
  const std::string axis = text.substr(0, eq);
  const std::string values = text.substr(eq + 1);
  if (axis != "deploy" && axis != "k") {
    throw CLI::ValidationError("--sweep", "axis must be 'deploy' or 'k'");
  }
  std::vector<int> parsed;
  if (values.find(':') != std::string::npos) {
    const auto parts = split(values, ':');
    if (parts.size() != 3) {
      throw CLI::ValidationError("--sweep", "range form is start:stop:step");
    }
    const int start = std::stoi(parts[0]);
    const int stop = std::stoi(parts[1]);
    const int step = std::stoi(parts[2]);
    if (step <= 0 || stop < start) {
      throw CLI::ValidationError("--sweep", "need stop >= start and step > 0");
    }
    for (int v = start; v <= stop; v += step) parsed.push_back(v);
  } else {
    for (const std::string& v : split(values, ',')) parsed.push_back(std::stoi(v));
  }
  if (parsed.empty()) {
    throw CLI::ValidationError("--sweep", "no sweep values given");
  }
  return nlohmann::json{{"axis", axis}, {"values", parsed}};
}

std::string build_config_json(const RunOptions& opt) {
  nlohmann::json cfg;
  cfg["graph"] = {{"nodes", opt.nodes},
                  {"radius", opt.radius},
                  {"hubs", opt.hubs},
                  {"model", opt.graph_model},
                  {"er_edge_prob", opt.er_prob}};
  cfg["robots"] = opt.robots;
  cfg["goals"] = opt.goals;
  cfg["deploy"] = opt.deploy;
  cfg["k_paths"] = opt.k_paths;
  cfg["samples"] = opt.samples;
  cfg["runs"] = opt.runs;
  cfg["corr"] = opt.corr;
  cfg["seed"] = opt.seed;
  cfg["timing"] = opt.timing;
  cfg["strategies"] = split(opt.strategies, ',');
  if (!opt.sweep.empty()) cfg["sweep"] = parse_sweep(opt.sweep);
  return cfg.dump();
}

int fail(rra_status status, const std::string& context) {
  std::cerr << "bench: " << context << ": " << rra_last_error() << "\n";
  switch (status) {
    case RRA_ERR_PARSE:
    case RRA_ERR_INVALID_ARGUMENT:
      return 2;
    default:
      return 3;
  }
}

bool write_file(const std::string& path, const char* body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << body;
  return static_cast<bool>(out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_summary(const char* results_json) {
  const nlohmann::json doc = nlohmann::json::parse(results_json);
  std::cout << "point            strategy            n     norm_wait   ci95\n";
  for (const auto& agg : doc.at("aggregates")) {
    char line[160];
    std::snprintf(line, sizeof(line), "Nd=%-3d K=%-3d %20s %5d   %9.4f  %7.4f",
                  agg.at("n_deploy").get<int>(), agg.at("k_paths").get<int>(),
                  agg.at("strategy").get<std::string>().c_str(),
                  agg.at("runs").get<int>(),
                  agg.at("normalized_waiting").at("mean").get<double>(),
                  agg.at("normalized_waiting").at("ci95").get<double>());
    std::cout << line << "\n";
  }
}

int run_command(const RunOptions& opt) {
  std::string config;
  try {
    config = build_config_json(opt);
  } catch (const std::exception& e) {
    std::cerr << "bench: bad flags: " << e.what() << "\n";
    return 2;
  }

  rra_results* results = nullptr;
  rra_status status = rra_experiment_run(config.c_str(), &results);
  if (status != RRA_OK) return fail(status, "run");

  int exit_code = 0;
  char* csv = nullptr;
  status = rra_results_to_csv(results, &csv);
  if (status != RRA_OK) {
    exit_code = fail(status, "render csv");
  } else if (!opt.out_csv.empty()) {
    if (!write_file(opt.out_csv, csv)) {
      std::cerr << "bench: cannot write " << opt.out_csv << "\n";
      exit_code = 3;
    } else {
      std::cout << "wrote " << opt.out_csv << "\n";
    }
  } else {
    std::cout << csv;
  }
  rra_string_free(csv);

  char* json = nullptr;
  if (exit_code == 0) {
    status = rra_results_to_json(results, &json);
    if (status != RRA_OK) {
      exit_code = fail(status, "render json");
    } else {
      if (!opt.out_json.empty()) {
        if (!write_file(opt.out_json, json)) {
          std::cerr << "bench: cannot write " << opt.out_json << "\n";
          exit_code = 3;
        } else {
          std::cout << "wrote " << opt.out_json << "\n";
        }
      }
      if (!opt.out_csv.empty()) print_summary(json);
    }
    rra_string_free(json);
  }

  rra_results_free(results);
  return exit_code;
}

struct ReplayOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  int deploy = -1;   // -1: keep the config's value
  int k_paths = -1;
};

int replay_command(const ReplayOptions& opt) {
  std::string config;
  try {
    config = read_file(opt.config_path);
    // Sweep rows vary deploy/k per point; overrides reproduce those exactly.
    if (opt.deploy >= 0 || opt.k_paths >= 0) {
      nlohmann::json doc = nlohmann::json::parse(config);
      nlohmann::json& cfg = doc.contains("config") ? doc.at("config") : doc;
      if (opt.deploy >= 0) cfg["deploy"] = opt.deploy;
      if (opt.k_paths >= 0) cfg["k_paths"] = opt.k_paths;
      config = cfg.dump();
    }
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 3;
  }
  char* solution = nullptr;
  const rra_status status = rra_replay_run(config.c_str(), opt.seed, &solution);
  if (status != RRA_OK) return fail(status, "replay");
  std::cout << solution << "\n";
  rra_string_free(solution);
  return 0;
}

void apply_profile(RunOptions& opt, const std::string& profile) {
  if (profile == "desk") {
    opt.nodes = 50;
    opt.radius = 0.25;
    opt.runs = 100;
  } else if (profile == "paper") {
    opt.nodes = 200;
    opt.radius = 0.13;
    opt.runs = 500;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Redundant robot-to-goal assignment benchmark"};
  app.require_subcommand(1);

  RunOptions opt;
  CLI::App* run = app.add_subcommand("run", "run a benchmark experiment");
  run->add_option("--profile", opt.profile,
                  "preset: desk (50 nodes, 100 runs) or paper (200 nodes, 500 runs)")
      ->check(CLI::IsMember({"desk", "paper"}));
  run->add_option("--nodes", opt.nodes, "graph size");
  run->add_option("--radius", opt.radius, "geometric connection radius");
  run->add_option("--hubs", opt.hubs, "number of robot hubs");
  run->add_option("--graph-model", opt.graph_model, "geometric|erdos-renyi")
      ->check(CLI::IsMember({"geometric", "erdos-renyi"}));
  run->add_option("--er-prob", opt.er_prob, "Erdos-Renyi edge probability");
  run->add_option("--robots", opt.robots, "available robots N");
  run->add_option("--goals", opt.goals, "goals M");
  run->add_option("--deploy", opt.deploy, "deployment size Nd");
  run->add_option("--k-paths", opt.k_paths, "path options per robot-goal pair");
  run->add_option("--samples", opt.samples, "cost samples per edge");
  run->add_option("--runs", opt.runs, "instances per data point");
  run->add_option("--corr", opt.corr, "edge-cost correlation strength in [0,1]");
  run->add_option("--strategies", opt.strategies, "comma-separated strategy list");
  run->add_option("--seed", opt.seed, "master seed");
  run->add_option("--sweep", opt.sweep, "axis sweep, e.g. deploy=5:20:3 or k=1,2,4,8");
  run->add_option("--out", opt.out_csv, "CSV output path (stdout if omitted)");
  run->add_option("--json", opt.out_json, "JSON output path");
  run->add_flag("--timing", opt.timing,
                "record wall times (makes outputs non-reproducible)");

  ReplayOptions replay_opt;
  CLI::App* replay = app.add_subcommand("replay", "re-execute one run by seed");
  replay->add_option("--config", replay_opt.config_path,
                     "experiment config JSON file (results JSON also works)")
      ->required();
  replay->add_option("--seed", replay_opt.seed,
                     "run seed from the CSV 'seed' column")
      ->required();
  replay->add_option("--deploy", replay_opt.deploy,
                     "override the config's deployment size (sweep rows)");
  replay->add_option("--k-paths", replay_opt.k_paths,
                     "override the config's path options (sweep rows)");

  // Profile presets apply before explicit flags so flags win.
  app.callback([&] {
    if (run->parsed() && !opt.profile.empty()) {
      RunOptions defaults;
      apply_profile(defaults, opt.profile);
      if (run->count("--nodes") == 0) opt.nodes = defaults.nodes;
      if (run->count("--radius") == 0) opt.radius = defaults.radius;
      if (run->count("--runs") == 0) opt.runs = defaults.runs;
    }
  });

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(opt);
  return replay_command(replay_opt);
}
