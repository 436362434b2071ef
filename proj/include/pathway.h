#ifndef PATHWAY_H
#define PATHWAY_H

/* C interface to the pathway assembly library.  Every function that can fail
 * returns a pa_status; the corresponding message is kept per thread and can
 * be read with pa_last_error() until the next call on that thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pa_status {
  PA_OK = 0,
  PA_ERR_PARSE = 1,
  PA_ERR_BUDGET = 2,
  PA_ERR_MALFORMED_STREAM = 3,
  PA_ERR_IO = 4,
  PA_ERR_INVALID_ARGUMENT = 5,
  PA_ERR_INTERNAL = 6
} pa_status;

const char* pa_status_name(pa_status s);
const char* pa_last_error(void);

typedef struct pa_search_options {
  const char* algorithm; /* "exhaustive", "tree" or "sampled" */
  uint64_t max_index;    /* 0 means no cap */
  int dedup;
  uint64_t seed;
  uint64_t sample_count;
  uint64_t node_budget;
  int allow_reversal; /* strings only */
} pa_search_options;

/* Fills in the defaults; pass NULL options anywhere to mean exactly these. */
void pa_search_options_init(pa_search_options* opts);

/* Outcome of an index computation.  On PA_ERR_BUDGET the handle is still
 * produced when bounds were established; index/exact are then meaningless and
 * the JSON carries an "error" field instead of a witness. */
typedef struct pa_result pa_result;

uint64_t pa_result_index(const pa_result* r);
uint64_t pa_result_lower_bound(const pa_result* r);
int pa_result_has_upper_bound(const pa_result* r);
uint64_t pa_result_upper_bound(const pa_result* r);
int pa_result_exact(const pa_result* r);
/* Borrowed pointer, valid until pa_result_free. */
const char* pa_result_json(const pa_result* r);
void pa_result_free(pa_result* r);

pa_status pa_index_number(uint64_t n, const pa_search_options* opts,
                          pa_result** out);
pa_status pa_index_string(const char* text, const pa_search_options* opts,
                          pa_result** out);
/* Graph text format: "palette: c0 c1 ...", "nodes: c c c ...", "edge: a b". */
pa_status pa_index_graph(const char* graph_text, const pa_search_options* opts,
                         pa_result** out);
/* Image text format: P1 or P2 header, then pixel rows. */
pa_status pa_index_image(const char* image_text, int orientation_locked,
                         const pa_search_options* opts, pa_result** out);
/* Group JSON: {"table": [[...]] or "permutations": [[...]],
 *              "generators": [...]}. */
pa_status pa_index_group_element(const char* group_json, uint32_t element,
                                 const pa_search_options* opts, pa_result** out);

pa_status pa_coindex_numbers(const uint64_t* xs, size_t count,
                             const pa_search_options* opts, pa_result** out);
pa_status pa_coindex_strings(const char* const* texts, size_t count,
                             const pa_search_options* opts, pa_result** out);
pa_status pa_coindex_graphs(const char* const* graph_texts, size_t count,
                            const pa_search_options* opts, pa_result** out);
/* Shortest single pathway containing every element of the group. */
pa_status pa_coindex_group(const char* group_json, const pa_search_options* opts,
                           pa_result** out);

/* Addition chains. */
pa_status pa_chain_length(uint64_t n, uint64_t* out_length);
/* JSON {"n":..,"l":..,"witness":[..],"schonhage":..}; free with pa_string_free. */
pa_status pa_chain_json(uint64_t n, char** out_json);
pa_status pa_schonhage(uint64_t n, uint64_t* out_bound);
pa_status pa_scholz_brauer(uint32_t n, uint64_t* out_mersenne_length,
                           uint64_t* out_conjectured);
void pa_string_free(char* s);

/* Byte buffers returned by the codecs; free with pa_buffer_free. */
typedef struct pa_buffer {
  uint8_t* data;
  size_t size;
} pa_buffer;

void pa_buffer_free(pa_buffer* b);

/* Serialized streams including the magic ("PA01" / "LZ16"). */
pa_status pa_compress_bytes(const uint8_t* data, size_t size,
                            const pa_search_options* opts, pa_buffer* out);
pa_status pa_decompress_bytes(const uint8_t* data, size_t size, pa_buffer* out);
pa_status pa_lzw_compress_bytes(const uint8_t* data, size_t size,
                                pa_buffer* out);
pa_status pa_lzw_decompress_bytes(const uint8_t* data, size_t size,
                                  pa_buffer* out);

typedef struct pa_compression_stats {
  uint64_t input_bytes;
  uint64_t pa_output_bytes;
  uint64_t lzw_output_bytes;
  uint64_t pathway_length_used;
} pa_compression_stats;

pa_status pa_compare_compression(const uint8_t* data, size_t size,
                                 const pa_search_options* opts,
                                 pa_compression_stats* out);

/* 16 hex digits plus terminator. */
void pa_input_digest(const uint8_t* data, size_t size, char out_hex[17]);

#ifdef __cplusplus
}
#endif

#endif /* PATHWAY_H */
