/* sgc: spectral clustering of signed graphs.
 *
 * C API of the shared library. All functions return sgc_status; on failure
 * sgc_last_error() describes what went wrong (thread-local). Objects are
 * opaque handles released with the matching _free call. Strings returned
 * through char** are heap-allocated; release them with sgc_string_free.
 */
#ifndef SGC_H
#define SGC_H

#include <stdint.h>

#if defined(_WIN32)
#define SGC_API __declspec(dllexport)
#else
#define SGC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgc_status {
  SGC_OK = 0,
  SGC_ERROR_INVALID_ARGUMENT = 1,
  SGC_ERROR_ISOLATED_NODE = 2,
  SGC_ERROR_INDEFINITE_PENCIL = 3,
  SGC_ERROR_GUARD_EXCEEDED = 4,
  SGC_ERROR_IO = 5,
  SGC_ERROR_INTERNAL = 6
} sgc_status;

typedef struct sgc_graph_s sgc_graph;
typedef struct sgc_partition_s sgc_partition;

SGC_API const char* sgc_version(void);
SGC_API const char* sgc_last_error(void);
SGC_API void sgc_string_free(char* s);

/* ---- graphs ------------------------------------------------------------ */

/* Builds an undirected signed graph from m edge triples (u[i], v[i], w[i]).
 * Self loops, duplicate pairs, zero weights and out-of-range ids fail. */
SGC_API sgc_status sgc_graph_create(int64_t n, const int64_t* u, const int64_t* v,
                                    const double* w, int64_t m, sgc_graph** out);

/* Edge-list text file: `u v w` per line, 0-based, '#'/'%' comments. */
SGC_API sgc_status sgc_graph_read(const char* path, sgc_graph** out);
SGC_API sgc_status sgc_graph_write(const sgc_graph* g, const char* path);

SGC_API int64_t sgc_graph_nodes(const sgc_graph* g);
SGC_API int64_t sgc_graph_edges(const sgc_graph* g);

/* Largest connected component of the unsigned support. index_map (length n
 * of the input graph, may be NULL) receives new ids, -1 outside. */
SGC_API sgc_status sgc_graph_largest_component(const sgc_graph* g, sgc_graph** out,
                                               int64_t* index_map);
SGC_API void sgc_graph_free(sgc_graph* g);

/* ---- partitions --------------------------------------------------------- */

SGC_API sgc_status sgc_partition_create(const int32_t* labels, int64_t n, int32_t k,
                                        sgc_partition** out);
SGC_API int64_t sgc_partition_nodes(const sgc_partition* p);
SGC_API int32_t sgc_partition_k(const sgc_partition* p);
SGC_API sgc_status sgc_partition_labels(const sgc_partition* p, int32_t* out);

/* Labels file: `node,label` header plus one dense row per node. */
SGC_API sgc_status sgc_partition_read(const char* path, sgc_partition** out);
SGC_API sgc_status sgc_partition_write(const sgc_partition* p, const char* path);
SGC_API void sgc_partition_free(sgc_partition* p);

/* ---- signed stochastic block model -------------------------------------- */

/* params_json: {"n":..,"k":..,"p":..,"eta":..,"sizes":[..]|"rho":..,"seed":..}.
 * seed overrides the "seed" field when nonzero. truth may be NULL. */
SGC_API sgc_status sgc_ssbm_sample(const char* params_json, uint64_t seed,
                                   sgc_graph** graph, sgc_partition** truth);

/* ---- clustering pipeline ------------------------------------------------ */

/* config_json keys: method ("A","Lbar","Lbar_sym","SPONGE","SPONGE_sym",
 * "BRC","BNC","Lbar_sym_reg","SPONGE_sym_reg"), k, tau_plus, tau_minus,
 * gamma_plus, gamma_minus, eig {tol, max_iter}, kmeans {restarts, max_iter,
 * tol, row_normalize}, seed.
 *
 * Clusters the largest component; labels come back over the ORIGINAL node
 * ids with -1 for nodes outside the component (via index_map; the partition
 * handle covers component nodes only). record_json (optional) receives the
 * trial record. truth (optional) enables ARI / misclustering fields. */
SGC_API sgc_status sgc_cluster_graph(const sgc_graph* g, const sgc_partition* truth,
                                     const char* config_json, sgc_partition** out,
                                     int64_t* index_map, char** record_json);

/* ---- metrics ------------------------------------------------------------ */

SGC_API sgc_status sgc_ari(const sgc_partition* a, const sgc_partition* b, double* out);

/* permutation (length k, optional) receives the best label matching. */
SGC_API sgc_status sgc_misclustering(const sgc_partition* pred, const sgc_partition* truth,
                                     double* rate, int32_t* permutation);

/* ---- experiments --------------------------------------------------------- */

/* kind: "grid-tau" | "grid-gamma" | "rho-curve" | "compare".
 * config_json documents per-experiment settings (see README); out_csv /
 * out_json / out_svg paths inside the config select emitted files.
 * report_json receives the full experiment report. */
SGC_API sgc_status sgc_experiment(const char* kind, const char* config_json,
                                  char** report_json);

/* Closed-form vs dense-oracle battery. config_json: {seed, draws, n_max},
 * all optional. */
SGC_API sgc_status sgc_theory_check(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* SGC_H */
