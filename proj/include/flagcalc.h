/*
 * flagcalc — C interface to the flag-manifold calculator.
 *
 * The library is driven through an opaque context handle holding validated
 * Cartan data and the caches derived from it.  Every function returns an
 * fc_status; FC_OK means success.  On failure fc_last_error() describes the
 * problem (the message is thread-local and valid until the next failing call
 * on the same thread).  Strings returned through char** are heap-allocated
 * and must be released with fc_string_free().
 *
 * Words are sequences of 1-based node indices.  Degree vectors list the
 * pairings of a divisor class with the curve classes, one per node.
 * Structured results are UTF-8 JSON documents.
 */
#ifndef FLAGCALC_H
#define FLAGCALC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fc_context fc_context;

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_INVALID_ARGUMENT = 1,
  FC_ERR_BAD_DIAGONAL = 2,
  FC_ERR_BAD_PAIR = 3,
  FC_ERR_ASYMMETRIC_ZERO = 4,
  FC_ERR_NOT_SYMMETRIZABLE = 5,
  FC_ERR_UNCLASSIFIABLE = 6,
  FC_ERR_UNSUPPORTED_TYPE = 7,
  FC_ERR_INDEX_RANGE = 8,
  FC_ERR_NON_INTEGRAL = 9,
  FC_ERR_NON_TERMINATING = 10,
  FC_ERR_NOT_REDUCED = 11,
  FC_ERR_NOT_FOUND = 12,
  FC_ERR_CAPACITY = 13,
  FC_ERR_BUDGET = 14,
  FC_ERR_INCONSISTENT = 15,
  FC_ERR_CHECKPOINT_CORRUPT = 16,
  FC_ERR_IO = 17,
  FC_ERR_PARSE = 18,
  FC_ERR_INTERNAL = 19,
  FC_INTERRUPTED = 20
} fc_status;

const char* fc_status_name(fc_status s);
const char* fc_last_error(void);
void fc_string_free(char* s);

/* Context construction.  `type` is a label like "F4" or "A" (rank given
 * separately); `json_text` is {"rank": n, "matrix": [[...]]}. */
fc_status fc_context_new_builtin(const char* type, int rank, fc_context** out);
fc_status fc_context_new_from_json(const char* json_text, fc_context** out);
void fc_context_free(fc_context* ctx);

/* Cartan data, Dynkin classification and the symmetrizer. */
fc_status fc_cartan_json(const fc_context* ctx, char** out);
fc_status fc_classify_json(const fc_context* ctx, char** out);
fc_status fc_symmetrizer_json(const fc_context* ctx, char** out);

/* Root system and Weyl group. */
fc_status fc_roots_json(const fc_context* ctx, int include_list, char** out);
fc_status fc_weyl_order(const fc_context* ctx, char** decimal_out);
fc_status fc_longest_json(const fc_context* ctx, char** out);
fc_status fc_is_reduced(const fc_context* ctx, const int* word, int len, int* out_flag);

/* Reduced words of the element given by `word`; len < 0 means the longest
 * element.  The visitor receives 1-based letters; returning nonzero aborts
 * the stream cleanly (the call still reports FC_OK). */
fc_status fc_reduced_count(const fc_context* ctx, const int* word, int len, char** decimal_out);
typedef int (*fc_word_visitor)(const int* letters, int len, void* user);
fc_status fc_reduced_words(const fc_context* ctx, const int* word, int len, fc_word_visitor visit,
                           void* user);

/* Cohomology of line bundles on the flag manifold, and the Euler
 * characteristic on the tower of a word. */
fc_status fc_cohomology_json(const fc_context* ctx, const long long* degrees, int n, char** out);
fc_status fc_euler_bs(const fc_context* ctx, const int* word, int len, const long long* degrees,
                      int n, char** decimal_out);
fc_status fc_index_of_contraction(const fc_context* ctx, int node, int degree, int* k_out);

/* Numerical intersection model of the tower over a word. */
fc_status fc_bs_model_json(const fc_context* ctx, const int* word, int len, char** out);

/* Uniqueness certification of a reduced word; node_budget <= 0 uses the
 * default derivation budget. */
fc_status fc_certify_json(const fc_context* ctx, const int* word, int len, long long node_budget,
                          char** out);

/* Certification scan over all reduced words of the longest element.
 * options_json: {"mode": "full"|"sample"|"range", "k": n, "seed": n,
 * "lo": n, "hi": n, "checkpoint": "path", "workers": n, "budget": n,
 * "flush_every": n} — all fields optional except mode-specific ones.
 * stop_flag may be null; set *stop_flag nonzero to request a clean stop
 * (the call then returns FC_INTERRUPTED and the report is still written). */
fc_status fc_scan_json(const fc_context* ctx, const char* options_json,
                       const volatile int* stop_flag, char** report_out);

/* Named reproduction bundle; independent of any context. */
fc_status fc_repro_json(const char* suite, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FLAGCALC_H */
