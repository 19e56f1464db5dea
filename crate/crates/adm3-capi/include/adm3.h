/* C interface for the adm3 library (3-admissibility of sparse graphs).
 *
 * Checked-in header matching the exports of the adm3-capi crate; it can be
 * regenerated with `cbindgen --crate adm3-capi`.
 */

#ifndef ADM3_H
#define ADM3_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/* Status codes returned by every fallible entry point. */
typedef enum Adm3Status {
  ADM3_OK = 0,
  ADM3_ERR_IO = 1,
  ADM3_ERR_PARSE = 2,
  ADM3_ERR_INVALID_ARGUMENT = 3,
  ADM3_ERR_INTERNAL = 4,
} Adm3Status;

/* Opaque graph handle: the normalized graph plus its original labels. */
typedef struct Adm3Graph Adm3Graph;

#ifdef __cplusplus
extern "C" {
#endif

/* Message describing the most recent failure on this thread. Borrowed;
 * valid until the next failing call. */
const char *adm3_last_error_message(void);

/* Loads an edge-list file (plain text or gzip) into a new graph handle. */
Adm3Status adm3_graph_load_path(const char *path, Adm3Graph **out);

/* Parses an in-memory edge list (plain text or gzip) into a new handle. */
Adm3Status adm3_graph_from_edge_list(const uint8_t *data, size_t len, Adm3Graph **out);

/* Releases a graph handle. NULL is ignored. */
void adm3_graph_free(Adm3Graph *g);

uint64_t adm3_graph_vertex_count(const Adm3Graph *g);

uint64_t adm3_graph_edge_count(const Adm3Graph *g);

/* Original label of vertex v, or NULL if out of range. Borrowed; valid
 * while the handle lives. */
const char *adm3_graph_label(const Adm3Graph *g, uint32_t v);

/* Degeneracy (1-admissibility) of the graph. */
Adm3Status adm3_degeneracy(const Adm3Graph *g, uint64_t *out);

/* Decides whether the 3-admissibility of the graph is at most p;
 * *out_is_at_most is set to 1 (yes) or 0 (no). */
Adm3Status adm3_decide(const Adm3Graph *g, uint64_t p, int *out_is_at_most);

/* Computes the exact 3-admissibility. When ordering_out is non-NULL it must
 * hold adm3_graph_vertex_count(g) entries and receives a witness ordering
 * (vertex ids, first position first). */
Adm3Status adm3_compute_value(const Adm3Graph *g, uint64_t *out_value, uint32_t *ordering_out);

/* Evaluates a caller-supplied ordering (vertex ids, a permutation) for
 * radius r in {1,2,3}; writes the maximum prefix packing number. */
Adm3Status adm3_verify_ordering(const Adm3Graph *g,
                                const uint32_t *ordering,
                                uint32_t r,
                                uint64_t *out_value);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* ADM3_H */
