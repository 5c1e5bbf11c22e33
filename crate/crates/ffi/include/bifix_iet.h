#ifndef BIFIX_IET_H
#define BIFIX_IET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every function.
typedef enum BifixStatus {
  BIFIX_STATUS_OK = 0,
  BIFIX_STATUS_NULL_ARGUMENT = 1,
  BIFIX_STATUS_INVALID_UTF8 = 2,
  // Malformed number, word, file or code.
  BIFIX_STATUS_PARSE = 3,
  // Well-formed input outside the operation's domain.
  BIFIX_STATUS_DOMAIN = 4,
  // A connection was found where regularity is required.
  BIFIX_STATUS_NOT_REGULAR = 5,
  // A truncated language is too short for the request.
  BIFIX_STATUS_TRUNCATION = 6,
  BIFIX_STATUS_IO = 7,
  // A bug inside the library; the message says where.
  BIFIX_STATUS_PANIC = 8,
} BifixStatus;

// A coding morphism together with the alphabet its images are written in.
typedef struct BifixCode BifixCode;

typedef struct BifixIet BifixIet;

typedef struct BifixLanguage BifixLanguage;

// Outcome of a connection search: `found` is 0 or 1 and, when 1,
// `T^k(mu_i) = mu_j` with indices from 1.
typedef struct BifixConnection {
  uint8_t found;
  uintptr_t i;
  uintptr_t j;
  uintptr_t k;
} BifixConnection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread; do not free it.
const char *bifix_last_error(void);

// Library version as a static string.
const char *bifix_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library, freed once.
void bifix_string_free(char *s);

// Parses an exchange from its JSON file form.
//
// # Safety
// `json` must be a valid string and `out` a valid pointer.
enum BifixStatus bifix_iet_from_json(const char *json, struct BifixIet **out);

// Serializes an exchange to its JSON file form.
//
// # Safety
// `iet` must be a live handle and `out` a valid pointer.
enum BifixStatus bifix_iet_to_json(const struct BifixIet *iet, char **out);

// # Safety
// `iet` must be null or a handle not yet freed.
void bifix_iet_free(struct BifixIet *iet);

// Number of letters.
//
// # Safety
// `iet` must be null or a live handle; null gives 0.
uintptr_t bifix_iet_letter_count(const struct BifixIet *iet);

// `T(z)` for `z` in the text form, e.g. `3/2-1/2*sqrt(5)`.
//
// # Safety
// `iet` must be a live handle, `z` a valid string, `out` a valid pointer.
enum BifixStatus bifix_iet_apply(const struct BifixIet *iet, const char *z, char **out);

// Bounded connection search to `depth` steps.
//
// # Safety
// `iet` must be a live handle and `out` a valid pointer.
enum BifixStatus bifix_iet_check_regular(const struct BifixIet *iet,
                                         uintptr_t depth,
                                         struct BifixConnection *out);

// `T^n` as a new exchange.
//
// # Safety
// `iet` must be a live handle and `out` a valid pointer.
enum BifixStatus bifix_iet_power(const struct BifixIet *iet, uintptr_t n, struct BifixIet **out);

// Exact measure of the cylinder of `word`, in the text form.
//
// # Safety
// `iet` must be a live handle, `word` a valid string, `out` a valid pointer.
enum BifixStatus bifix_iet_measure(const struct BifixIet *iet, const char *word, char **out);

// Factors of length at most `max_len`; fails with `NotRegular` on a
// connection within `max_len` steps.
//
// # Safety
// `iet` must be a live handle and `out` a valid pointer.
enum BifixStatus bifix_language_from_iet(const struct BifixIet *iet,
                                         uintptr_t max_len,
                                         struct BifixLanguage **out);

// Parses the plain-text language file form.
//
// # Safety
// `text` must be a valid string and `out` a valid pointer.
enum BifixStatus bifix_language_from_text(const char *text, struct BifixLanguage **out);

// # Safety
// `lang` must be a live handle and `out` a valid pointer.
enum BifixStatus bifix_language_to_text(const struct BifixLanguage *lang, char **out);

// Number of words of length `n`; 0 for a null handle.
//
// # Safety
// `lang` must be null or a live handle.
uintptr_t bifix_language_count(const struct BifixLanguage *lang, uintptr_t n);

// Writes 1 to `out` if `word` belongs to the language, else 0.
//
// # Safety
// `lang` must be a live handle, `word` a valid string, `out` a valid pointer.
enum BifixStatus bifix_language_contains(const struct BifixLanguage *lang,
                                         const char *word,
                                         uint8_t *out);

// # Safety
// `lang` must be null or a handle not yet freed.
void bifix_language_free(struct BifixLanguage *lang);

// Maximal bifix codes of S-degree `degree` with words of length at most
// `max_word_len`, as a JSON array of arrays of words.
//
// # Safety
// `lang` must be a live handle and `out` a valid pointer.
enum BifixStatus bifix_enumerate(const struct BifixLanguage *lang,
                                 uintptr_t degree,
                                 uintptr_t max_word_len,
                                 char **out);

// A coding morphism for the words in `words` (comma or space separated)
// over the alphabet of `iet`; source letters are named `u, v, w, ...`
// in lexicographic order of the words.
//
// # Safety
// `iet` must be a live handle, `words` a valid string, `out` a valid pointer.
enum BifixStatus bifix_code_new(const struct BifixIet *iet,
                                const char *words,
                                struct BifixCode **out);

// # Safety
// `code` must be null or a handle not yet freed.
void bifix_code_free(struct BifixCode *code);

// Greedy decoding of `word`; writes the decoded symbols and the
// undecoded remainder (possibly empty).
//
// # Safety
// `code` must be a live handle, `word` a valid string, and both outputs
// valid pointers.
enum BifixStatus bifix_decode_word(const struct BifixCode *code,
                                   const char *word,
                                   char **out_symbols,
                                   char **out_remainder);

// The decoded exchange `T_f` for a maximal bifix code of the language
// of `iet`.
//
// # Safety
// `iet` and `code` must be live handles and `out` a valid pointer.
enum BifixStatus bifix_build_tf(const struct BifixIet *iet,
                                const struct BifixCode *code,
                                struct BifixIet **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIFIX_IET_H */
