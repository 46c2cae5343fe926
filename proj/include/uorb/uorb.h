/* uorb - coadjoint orbit parametrization and counting for maximal unipotent
 * subgroups of simple algebraic groups, with an exact finite-field oracle.
 *
 * C API: opaque context handle, integer status codes, JSON string results.
 * Every string returned through an out-parameter is heap-allocated and must
 * be released with uorb_string_free().
 */
#ifndef UORB_H
#define UORB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct uorb_ctx uorb_ctx;

/* status codes; nonzero values double as CLI exit codes */
enum {
  UORB_OK = 0,
  UORB_EINVAL = 2,   /* invalid type, rank, prime, vector, or request */
  UORB_ELIMIT = 3,   /* state-space or branch budget exceeded */
  UORB_ECERT = 4,    /* certification or cross-check failure */
  UORB_EINTERNAL = 5 /* internal invariant violation (a bug) */
};

const char* uorb_version(void);

/* Create a context for a simple type, e.g. "A2", "B3", "G2".
 * Returns UORB_OK and writes the handle, or an error code (handle NULL).
 * When creation fails, uorb_last_error(NULL) carries the message. */
int uorb_ctx_new(const char* type, uorb_ctx** out);
void uorb_ctx_free(uorb_ctx* ctx);

/* Most recent error message for the context (or the most recent creation
 * failure when ctx is NULL).  The pointer stays valid until the next call
 * on the same context. */
const char* uorb_last_error(const uorb_ctx* ctx);

/* configuration */
int uorb_set_state_budget(uorb_ctx* ctx, uint64_t states);
int uorb_set_branch_budget(uorb_ctx* ctx, uint64_t branches);
int uorb_set_jobs(uorb_ctx* ctx, int jobs);
int uorb_set_cache_dir(uorb_ctx* ctx, const char* dir); /* NULL disables caching */
int uorb_set_numeric_guidance(uorb_ctx* ctx, int enabled);

/* results: JSON documents */
int uorb_root_system_json(uorb_ctx* ctx, char** out_json);
int uorb_families_json(uorb_ctx* ctx, char** out_json);
int uorb_kpoly_json(uorb_ctx* ctx, char** out_json);
int uorb_distribution_json(uorb_ctx* ctx, char** out_json);
int uorb_modality_json(uorb_ctx* ctx, char** out_json);

/* brute-force oracle over F_q */
int uorb_count(uorb_ctx* ctx, uint64_t q, uint64_t* out_k);
/* action is "coadjoint", "adjoint", or "conjugacy" */
int uorb_orbits_json(uorb_ctx* ctx, uint64_t q, const char* action, char** out_json);
int uorb_minrep_json(uorb_ctx* ctx, uint64_t q, const uint32_t* coeffs, size_t len,
                     char** out_json);
int uorb_verify_json(uorb_ctx* ctx, const uint64_t* qs, size_t nq, char** out_json);
/* Kirillov character table census (type A, rank <= 3, p >= rank+1) */
int uorb_chars_json(uorb_ctx* ctx, uint64_t q, char** out_json);

/* modality arithmetic from an externally supplied polynomial degree */
int uorb_modality_from_degree(int degree, int rank, int64_t* out_mod_u, int64_t* out_mod_b);
/* same, but returns the JSON report */
int uorb_modality_degree_json(int degree, int rank, char** out_json);

void uorb_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UORB_H */
