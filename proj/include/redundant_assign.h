/* C interface to the redundant-assignment library.
 *
 * All functions returning rra_status leave a thread-local message readable
 * via rra_last_error() on failure. Strings returned through out-parameters
 * are heap-allocated and must be released with rra_string_free().
 */
#ifndef REDUNDANT_ASSIGN_H
#define REDUNDANT_ASSIGN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rra_status {
  RRA_OK = 0,
  RRA_ERR_INVALID_ARGUMENT = 1,
  RRA_ERR_PARSE = 2,
  RRA_ERR_INTERNAL = 3,
} rra_status;

typedef struct rra_graph rra_graph;
typedef struct rra_results rra_results;

const char* rra_version(void);

/* Message describing the most recent failure on this thread. */
const char* rra_last_error(void);

void rra_string_free(char* s);

/* ---- Transport graphs ---- */

typedef struct rra_graph_gen_config {
  int32_t node_count;
  double connectivity_radius;
  int32_t hub_count;
  uint64_t seed;
  int32_t erdos_renyi; /* 0: random geometric graph, 1: Erdos-Renyi */
  double er_edge_prob;
} rra_graph_gen_config;

void rra_graph_gen_config_defaults(rra_graph_gen_config* config);

rra_status rra_graph_generate(const rra_graph_gen_config* config,
                              rra_graph** out);
rra_status rra_graph_from_json(const char* document, rra_graph** out);
rra_status rra_graph_to_json(const rra_graph* graph, char** out_document);
int32_t rra_graph_node_count(const rra_graph* graph);
int32_t rra_graph_edge_count(const rra_graph* graph);
int32_t rra_graph_is_connected(const rra_graph* graph);
void rra_graph_free(rra_graph* graph);

/* ---- Experiments ----
 *
 * Configs are JSON documents (schema documented in the project README).
 * A results JSON document embedding a "config" block is also accepted.
 */

rra_status rra_experiment_run(const char* config_json, rra_results** out);
rra_status rra_results_to_csv(const rra_results* results, char** out_csv);
rra_status rra_results_to_json(const rra_results* results, char** out_json);
void rra_results_free(rra_results* results);

/* Parses and validates a config, returning its normalized JSON form. */
rra_status rra_config_normalize(const char* config_json, char** out_normalized);

/* Seed of run `run_id` under a master seed, as written to the CSV. */
uint64_t rra_run_seed(uint64_t master_seed, int32_t run_id);

/* Re-executes a single run and returns the solution document as JSON. */
rra_status rra_replay_run(const char* config_json, uint64_t run_seed,
                          char** out_solution);

#ifdef __cplusplus
}
#endif

#endif /* REDUNDANT_ASSIGN_H */
