/* C interface to the super vector field library.
 *
 * Every function returns an svf_status. On failure the message is available
 * from svf_last_error() on the calling thread until the next call. Strings
 * returned through char** outputs are JSON documents owned by the caller and
 * released with svf_string_free.
 */
#ifndef SVF_SVF_H
#define SVF_SVF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SVF_API __declspec(dllexport)
#else
#define SVF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svf_status {
  SVF_OK = 0,
  SVF_ERR_INPUT = 1,        /* malformed JSON or out-of-range field */
  SVF_ERR_PRECONDITION = 2, /* operation called outside its domain */
  SVF_ERR_UNSUPPORTED = 3,  /* model outside the supported range */
  SVF_ERR_RESOURCE = 4,     /* dimension cap exceeded */
  SVF_ERR_CONSISTENCY = 5,  /* input claims a structure it does not have */
  SVF_ERR_INTERNAL = 6
} svf_status;

typedef struct svf_model svf_model;

SVF_API const char* svf_last_error(void);
SVF_API const char* svf_status_name(svf_status status);
SVF_API void svf_string_free(char* s);

/* spec_json: {"base_dim": s, "truncation_order": d, "odd_rank": r}.
 * The dimension cap is 2000 unless SVF_DIM_CAP is set in the environment. */
SVF_API svf_status svf_model_create(const char* spec_json, svf_model** out);
SVF_API svf_status svf_model_create_with_cap(const char* spec_json, size_t dim_cap,
                                             svf_model** out);
SVF_API void svf_model_free(svf_model* model);
SVF_API size_t svf_model_dimension(const svf_model* model);

/* Basis descriptors and structure constants [i, j, k, "p/q"]. */
SVF_API svf_status svf_model_export(const svf_model* model, char** json_out);
/* ad(eps) eigenspaces. */
SVF_API svf_status svf_grading(const svf_model* model, char** json_out);
/* Canonical ideal, plus the brute-force nilpotent-ideal analysis on point models. */
SVF_API svf_status svf_ideal(const svf_model* model, char** json_out);
/* Filtration levels and, under the hypothesis, the graded quotient check. */
SVF_API svf_status svf_filtration(const svf_model* model, char** json_out);

/* Matrices are {"dim": n, "entries": [["p/q", ...], ...]}. *pass is 1 or 0. */
SVF_API svf_status svf_check_automorphism(const svf_model* model, const char* matrix_json,
                                          char** json_out, int* pass);
SVF_API svf_status svf_factor_automorphism(const svf_model* model, const char* matrix_json,
                                           char** json_out);
/* iso_json is a 2x2 matrix; the model must be (0,0,2). */
SVF_API svf_status svf_exceptional_swap(const svf_model* model, const char* iso_json,
                                        char** json_out);

/* Bracket of two fields given as {"spec", "even_coeffs", "odd_coeffs"}. */
SVF_API svf_status svf_field_bracket(const char* x_json, const char* y_json, char** json_out);

/* suite: algebra | ideals | filtration | automorphisms | exceptional | all.
 * *any_fail is 1 when some check reports FAIL. */
SVF_API svf_status svf_verify(const svf_model* model, const char* suite, uint64_t seed,
                              char** json_out, int* any_fail);
SVF_API uint64_t svf_default_seed(void);

#ifdef __cplusplus
}
#endif

#endif /* SVF_SVF_H */
