#ifndef FPT_H
#define FPT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FptStatus {
  FPT_STATUS_OK = 0,
  FPT_STATUS_NULL_POINTER = 1,
  FPT_STATUS_INVALID_UTF8 = 2,
  FPT_STATUS_PARSE = 3,
  FPT_STATUS_INVALID_INPUT = 4,
  FPT_STATUS_NOT_PRIME = 5,
  FPT_STATUS_INTEGRALITY = 6,
  FPT_STATUS_BUDGET_EXHAUSTED = 7,
  FPT_STATUS_NOT_APPLICABLE = 8,
  FPT_STATUS_SUPPORT_MISMATCH = 9,
  FPT_STATUS_PANIC = 10,
} FptStatus;

typedef enum FptVerdict {
  FPT_VERDICT_EXACT = 0,
  FPT_VERDICT_LOWER_BOUND = 1,
} FptVerdict;

/**
 * Opaque monomial set.
 */
typedef struct FptMonomialSet FptMonomialSet;

/**
 * Opaque polynomial over `F_p`.
 */
typedef struct FptPoly FptPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *fpt_version(void);

/**
 * Message for the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *fpt_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string produced by this library, not yet freed.
 */
void fpt_string_free(char *s);

/**
 * Parses a monomial list such as `"x^2, y^3"`; `num_vars = 0` infers the count.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FptStatus fpt_monomial_set_parse(const char *text,
                                      size_t num_vars,
                                      struct FptMonomialSet **out);

/**
 * # Safety
 * `ms` must be NULL or a handle from [`fpt_monomial_set_parse`], not yet freed.
 */
void fpt_monomial_set_free(struct FptMonomialSet *ms);

/**
 * # Safety
 * `ms` must be a live handle.
 */
size_t fpt_monomial_set_len(const struct FptMonomialSet *ms);

/**
 * # Safety
 * `ms` must be a live handle.
 */
size_t fpt_monomial_set_num_vars(const struct FptMonomialSet *ms);

/**
 * Maximal coordinate sum of the splitting polytope.
 *
 * # Safety
 * `ms` must be a live handle and `out` a valid pointer.
 */
enum FptStatus fpt_alpha(const struct FptMonomialSet *ms, char **out);

/**
 * Log canonical threshold of the monomial ideal.
 *
 * # Safety
 * `ms` must be a live handle and `out` a valid pointer.
 */
enum FptStatus fpt_lct(const struct FptMonomialSet *ms, char **out);

/**
 * Main-theorem verdict at `p`: the exact threshold or a proved lower bound.
 *
 * # Safety
 * `ms` must be a live handle; `kind` and `value` valid pointers.
 */
enum FptStatus fpt_main_theorem(const struct FptMonomialSet *ms,
                                uint64_t p,
                                enum FptVerdict *kind,
                                char **value);

/**
 * Parses a polynomial with rational coefficients and reduces it modulo `p`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FptStatus fpt_poly_parse(const char *text, size_t num_vars, uint64_t p, struct FptPoly **out);

/**
 * # Safety
 * `f` must be NULL or a handle from [`fpt_poly_parse`], not yet freed.
 */
void fpt_poly_free(struct FptPoly *f);

/**
 * `nu_f(e)`. A `budget` of 0 selects the default term budget.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum FptStatus fpt_nu(const struct FptPoly *f, uint32_t e, uint64_t budget_limit, uint64_t *out);

/**
 * Decides `fpt(f) >= lambda`; `lambda` is `"a/b"` with `(p^e - 1) lambda` integral.
 *
 * # Safety
 * `f` must be a live handle, `lambda` a NUL-terminated string, `out` valid.
 */
enum FptStatus fpt_certify_lower(const struct FptPoly *f,
                                 const char *lambda,
                                 uint32_t e,
                                 uint64_t budget_limit,
                                 bool *out);

/**
 * Brackets `fpt(f)` in `(low, high]` from the `nu` table up to `e_max`.
 * `complete` is false when the budget stopped the table early.
 *
 * # Safety
 * `f` must be a live handle; all out-pointers valid.
 */
enum FptStatus fpt_bracket(const struct FptPoly *f,
                           uint32_t e_max,
                           uint64_t budget_limit,
                           char **low,
                           char **high,
                           bool *complete);

/**
 * `(sum parts)! / prod(parts!) mod p`.
 *
 * # Safety
 * `parts` must point to `len` values (or be NULL with `len = 0`); `out` valid.
 */
enum FptStatus fpt_multinomial_mod_p(const uint64_t *parts, size_t len, uint64_t p, uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FPT_H */
