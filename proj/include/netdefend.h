/* C API for the netdefend library.
 *
 * All functions return an nd_status; results are written through out
 * parameters. Strings returned through `char**` are heap-allocated and must
 * be released with nd_string_free. Handles are opaque and must be released
 * with their matching destroy function. On error, nd_last_error() returns a
 * thread-local description of the most recent failure.
 */
#ifndef NETDEFEND_H
#define NETDEFEND_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nd_status {
  ND_OK = 0,
  ND_ERR_INVALID_ARGUMENT = 1,
  ND_ERR_DOMAIN = 2,
  ND_ERR_UNSUPPORTED = 3,
  ND_ERR_LIMIT = 4,
  ND_ERR_PARSE = 5,
  ND_ERR_CHECK_FAILED = 6,
  ND_ERR_INTERNAL = 7
} nd_status;

typedef struct nd_value_function nd_value_function;
typedef struct nd_network nd_network;

const char* nd_last_error(void);
void nd_string_free(char* s);

/* --- value functions ----------------------------------------------------- */

/* spec: {"family":"power","a":2} | {"family":"exp"} |
 *       {"family":"table","values":[0,1,4,...]} */
nd_status nd_vf_create(const char* json_spec, nd_value_function** out);
void nd_vf_destroy(nd_value_function* vf);

/* Writes the validation report as JSON; *all_pass is 1 iff every assumption
 * holds on [0, x_max]. */
nd_status nd_validate_value_function(const nd_value_function* vf, int x_max,
                                     int* all_pass, char** report_json);

/* --- networks ------------------------------------------------------------ */

/* {"n": int, "edges": [[u,v],...]} with u < v, sorted lexicographically. */
nd_status nd_network_from_json(const char* json, nd_network** out);
nd_status nd_network_to_json(const nd_network* g, char** json);
nd_status nd_network_build_star(int n, int k, nd_network** out);
void nd_network_destroy(nd_network* g);

/* --- game plays ---------------------------------------------------------- */

/* delta/byzantine/attack are JSON arrays of node ids; cost is an exact
 * rational or decimal string. Writes the PlayOutcome JSON. */
nd_status nd_play(const nd_network* g, const char* delta_json,
                  const char* byzantine_json, const char* attack_json,
                  int n_byzantine, int n_attacked, const char* cost,
                  const nd_value_function* vf, char** outcome_json);

/* --- centralized defense ------------------------------------------------- */

nd_status nd_optimal_design(int n, const char* cost, const nd_value_function* vf,
                            int n_byzantine, int n_attacked, char** json);

/* Writes the threshold table twice: exact JSON and the CLI-facing CSV
 * (either pointer may be NULL to skip). config_line is echoed into the CSV
 * header. */
nd_status nd_threshold_table(int n, const nd_value_function* vf,
                             const char* config_line, char** json, char** csv);

/* Compares the computed table for n against the embedded reference tables
 * (n in {12, 30, 50}, f = x^2). *match is 1 on an exact match. */
nd_status nd_threshold_table_expect_reference(int n, const nd_value_function* vf,
                                              int* match, char** detail);

/* mode: "all-graphs" | "structured". */
nd_status nd_brute_force_optimal(int n, const char* cost, int n_byzantine,
                                 int n_attacked, const nd_value_function* vf,
                                 const char* mode, char** json);

/* --- decentralized analysis ---------------------------------------------- */

/* mode: "pessimistic" | "expected". */
nd_status nd_node_game_equilibria(const nd_network* g, const char* cost,
                                  int n_byzantine, int n_attacked,
                                  const nd_value_function* vf, const char* mode,
                                  char** json);

nd_status nd_verify_star_characterization(int n, int k, int n_byzantine,
                                          int n_attacked,
                                          const nd_value_function* vf,
                                          int* all_pass, char** json);

nd_status nd_verify_byzantine_core_attack(int n, int k, int n_byzantine,
                                          int n_attacked,
                                          const nd_value_function* vf,
                                          int trials, uint64_t seed,
                                          int* pass, char** json);

nd_status nd_price_of_anarchy(int n, const char* cost, int n_byzantine,
                              int n_attacked, const nd_value_function* vf,
                              char** json);

/* ns is a JSON array of increasing sizes, e.g. "[12,24,36]". svg may be NULL
 * to skip chart emission. */
nd_status nd_poa_trend(const char* cost, const char* ns, int n_byzantine,
                       int n_attacked, const nd_value_function* vf,
                       char** json, char** svg);

#ifdef __cplusplus
}
#endif

#endif /* NETDEFEND_H */
