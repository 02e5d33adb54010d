#include "redundant_assign.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "rra/bench.hpp"
#include "rra/errors.hpp"
#include "rra/transport_graph.hpp"

struct rra_graph {
  rra::TransportGraph graph;
};

struct rra_results {
  rra::ExperimentResults results;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
rra_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RRA_OK;
  } catch (const rra::ParseError& e) {
    g_last_error = e.what();
    return RRA_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return RRA_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RRA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RRA_ERR_INTERNAL;
  }
}

rra_status fail_invalid(const char* message) {
  g_last_error = message;
  return RRA_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* rra_version(void) { return "0.1.0"; }

const char* rra_last_error(void) { return g_last_error.c_str(); }

void rra_string_free(char* s) { std::free(s); }

void rra_graph_gen_config_defaults(rra_graph_gen_config* config) {
  if (!config) return;
  const rra::GraphGenConfig d;
  config->node_count = d.node_count;
  config->connectivity_radius = d.connectivity_radius;
  config->hub_count = d.hub_count;
  config->seed = d.seed;
  config->erdos_renyi = 0;
  config->er_edge_prob = d.er_edge_prob;
}

rra_status rra_graph_generate(const rra_graph_gen_config* config,
                              rra_graph** out) {
  if (!config || !out) return fail_invalid("null argument");
  return guarded([&] {
    rra::GraphGenConfig cfg;
    cfg.node_count = config->node_count;
    cfg.connectivity_radius = config->connectivity_radius;
    cfg.hub_count = config->hub_count;
    cfg.seed = config->seed;
    cfg.model = config->erdos_renyi ? rra::GraphModel::kErdosRenyi
                                    : rra::GraphModel::kGeometric;
    cfg.er_edge_prob = config->er_edge_prob;
    *out = new rra_graph{rra::generate_random_graph(cfg)};
  });
}

rra_status rra_graph_from_json(const char* document, rra_graph** out) {
  if (!document || !out) return fail_invalid("null argument");
  return guarded(
      [&] { *out = new rra_graph{rra::TransportGraph::from_json(document)}; });
}

rra_status rra_graph_to_json(const rra_graph* graph, char** out_document) {
  if (!graph || !out_document) return fail_invalid("null argument");
  return guarded([&] { *out_document = dup_string(graph->graph.to_json()); });
}

int32_t rra_graph_node_count(const rra_graph* graph) {
  return graph ? graph->graph.node_count() : -1;
}

int32_t rra_graph_edge_count(const rra_graph* graph) {
  return graph ? graph->graph.edge_count() : -1;
}

int32_t rra_graph_is_connected(const rra_graph* graph) {
  return graph ? (graph->graph.is_connected() ? 1 : 0) : -1;
}

void rra_graph_free(rra_graph* graph) { delete graph; }

rra_status rra_experiment_run(const char* config_json, rra_results** out) {
  if (!config_json || !out) return fail_invalid("null argument");
  return guarded([&] {
    const rra::ExperimentConfig cfg =
        rra::ExperimentConfig::from_json(config_json);
    cfg.validate();
    *out = new rra_results{rra::run_experiment(cfg)};
  });
}

rra_status rra_results_to_csv(const rra_results* results, char** out_csv) {
  if (!results || !out_csv) return fail_invalid("null argument");
  return guarded(
      [&] { *out_csv = dup_string(rra::results_to_csv(results->results)); });
}

rra_status rra_results_to_json(const rra_results* results, char** out_json) {
  if (!results || !out_json) return fail_invalid("null argument");
  return guarded(
      [&] { *out_json = dup_string(rra::results_to_json(results->results)); });
}

void rra_results_free(rra_results* results) { delete results; }

rra_status rra_config_normalize(const char* config_json,
                                char** out_normalized) {
  if (!config_json || !out_normalized) return fail_invalid("null argument");
  return guarded([&] {
    const rra::ExperimentConfig cfg =
        rra::ExperimentConfig::from_json(config_json);
    cfg.validate();
    *out_normalized = dup_string(cfg.to_json());
  });
}

uint64_t rra_run_seed(uint64_t master_seed, int32_t run_id) {
  return rra::run_seed_for(master_seed, run_id);
}

rra_status rra_replay_run(const char* config_json, uint64_t run_seed,
                          char** out_solution) {
  if (!config_json || !out_solution) return fail_invalid("null argument");
  return guarded([&] {
    const rra::ExperimentConfig cfg =
        rra::ExperimentConfig::from_json(config_json);
    *out_solution = dup_string(rra::replay_run(cfg, run_seed));
  });
}

}  // extern "C"
