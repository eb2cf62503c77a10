/* C interface to the canonical-pair library.
 *
 * All documents are JSON strings.  A pair document is
 *   {"n": int, "H": [[[re,im],...],...], "C": [[[re,im],...],...]}
 * with row-major matrices; a form document mirrors the canonical-form
 * record (flavor, blocks, transition, residuals).
 *
 * Every function returning cp_status writes its result through an out
 * parameter on success.  Returned strings must be released with
 * cp_string_free.  On failure, cp_last_error() describes the problem
 * (thread-local storage).
 */

#ifndef CANONPAIR_H
#define CANONPAIR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cp_status {
  CP_OK = 0,
  CP_EVALIDATION = 1, /* input is not a valid (form, operator) pair       */
  CP_ENUMERIC = 2,    /* a numerical step failed or lost too much accuracy */
  CP_EPARSE = 3       /* malformed document or argument                    */
} cp_status;

typedef struct cp_tolerances {
  double rank_tol;    /* rank decisions, relative singular-value cutoff */
  double verify_tol;  /* residual acceptance threshold                  */
  double cluster_tol; /* eigenvalue clustering radius                   */
} cp_tolerances;

/* Fills the library defaults (1e-9, 1e-6, 1e-7). */
void cp_default_tolerances(cp_tolerances* out);

/* Opaque parsed pair. */
typedef struct cp_pair cp_pair;

/* Parses a pair document; shape errors give CP_EPARSE. */
cp_status cp_pair_parse(const char* pair_json, cp_pair** out);
void cp_pair_free(cp_pair* p);

/* Validation report: {"valid": bool, "violation": "...", ...residual fields}.
 * Returns CP_EVALIDATION (with a report) when a condition fails. */
cp_status cp_pair_validate(const cp_pair* p, const cp_tolerances* tol,
                           char** report_json);

/* form is one of "standard", "alt", "operator", "glr". */
cp_status cp_pair_canonicalize(const cp_pair* p, const char* form,
                               const cp_tolerances* tol, char** form_json);

/* Residuals of a claimed form document against the pair:
 * {"h_residual": ..., "c_residual": ..., "pass": bool}. */
cp_status cp_pair_verify(const cp_pair* p, const char* form_json,
                         const cp_tolerances* tol, char** report_json);

/* Rewrites a standard-flavor form document as alternative or back;
 * target is "standard" or "alt". */
cp_status cp_convert(const char* form_json, const char* target,
                     const cp_tolerances* tol, char** form_json_out);

/* Deterministic random pair built from canonical blocks and a bounded-
 * condition conjugation.  spec may be NULL or "" for random blocks, or
 * "family:re:im:k:eps[;...]" with family in
 * positive-real | zero | negative | nonreal. */
cp_status cp_generate(int size, uint64_t seed, const char* spec,
                      const cp_tolerances* tol, char** pair_json_out);

/* Runs the built-in acceptance suite.  report is a JSON array of
 * {"id", "name", "pass", "detail"}; *all_pass is 1 when every entry
 * passes.  Returns CP_OK even when criteria fail. */
cp_status cp_selftest(const cp_tolerances* tol, char** report_json,
                      int* all_pass);

/* Message for the most recent failure on this thread. */
const char* cp_last_error(void);

void cp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CANONPAIR_H */
