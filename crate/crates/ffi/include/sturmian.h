#ifndef STURMIAN_H
#define STURMIAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  ST_STATUS_PARSE = 3,
  ST_STATUS_DOMAIN = 4,
  ST_STATUS_BUDGET = 5,
  ST_STATUS_BUFFER_TOO_SMALL = 6,
  ST_STATUS_PANIC = 7,
} StStatus;

// Opaque word family.
typedef struct StFamily StFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, or NULL. Valid until the next failing call.
const char *st_last_error(void);

// Creates a family from a directive such as `"fib"` or `"2,(1,3)"`.
// `budget` caps the materialized prefix; 0 selects the default.
//
// # Safety
// `directive` must be a NUL-terminated string and `out` a writable pointer.
enum StStatus st_family_new(const char *directive, uint64_t budget, struct StFamily **out);

// # Safety
// `f` must come from `st_family_new` and not be used afterwards. NULL is ignored.
void st_family_free(struct StFamily *f);

// Length `q_n` of the standard word `s_n`.
//
// # Safety
// `f` must be a live handle and `out` writable.
enum StStatus st_q(struct StFamily *f, size_t n, uint64_t *out);

// Copies `w(0..len]` into `buf`. With a short buffer nothing is copied,
// `*written` receives the required size and `BUFFER_TOO_SMALL` is returned.
//
// # Safety
// `buf` must hold `cap` bytes (it may be NULL when `cap` is 0); `written` must be writable.
enum StStatus st_prefix(struct StFamily *f,
                        uint64_t len,
                        uint8_t *buf,
                        size_t cap,
                        size_t *written);

// Ostrowski representation of `n` as `{"digits_msf": [...], "value": n}`.
//
// # Safety
// `f` must be a live handle and `out` writable.
enum StStatus st_ostrowski_json(struct StFamily *f, uint64_t n, char **out);

// Value of a digit string (most significant first, dot-separated if any digit exceeds 9).
//
// # Safety
// `f` must be a live handle, `digits_msf` a NUL-terminated string and `out` writable.
enum StStatus st_value(struct StFamily *f, const char *digits_msf, uint64_t *out);

// # Safety
// As for `st_value`.
enum StStatus st_is_valid(struct StFamily *f, const char *digits_msf, bool *out);

// Normalization trace `{"start", "steps": [{"kind", "m"}], "end"}` of a valid representation.
//
// # Safety
// As for `st_value`, with `out` receiving an owned string.
enum StStatus st_normalize_json(struct StFamily *f, const char *digits_msf, char **out);

// Maximal extension and representation pair of the palindrome `w(p1..p2]`.
//
// # Safety
// `f` must be a live handle and `out` writable.
enum StStatus st_palindrome_json(struct StFamily *f, size_t p1, size_t p2, char **out);

// Palindromic length of `w(0..len]`.
//
// # Safety
// `f` must be a live handle and `out` writable.
enum StStatus st_pal_length(struct StFamily *f, uint64_t len, size_t *out);

// Builds and verifies the witness for `q`; the report is returned as JSON.
//
// # Safety
// `f` must be a live handle and `out` writable.
enum StStatus st_witness_json(struct StFamily *f, uint64_t q, char **out);

// # Safety
// `s` must be a string returned by this library, or NULL.
void st_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STURMIAN_H */
