#ifndef FWA_FWA_H
#define FWA_FWA_H

/*
 * C interface to the fuzzy automaton library.
 *
 * Every function returns an fwa_status. On failure the out-parameters are
 * left untouched and fwa_last_error() describes the problem. Strings
 * returned through char** are owned by the caller and released with
 * fwa_string_free(); automata with fwa_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FWA_BUILDING)
#    define FWA_API __declspec(dllexport)
#  else
#    define FWA_API __declspec(dllimport)
#  endif
#else
#  define FWA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fwa_automaton fwa_automaton;

typedef enum fwa_status {
  FWA_OK = 0,
  FWA_ERR_INVALID_ARGUMENT = 1,
  FWA_ERR_PARSE = 2,
  FWA_ERR_SCHEMA = 3,
  FWA_ERR_GRADE_RANGE = 4,
  FWA_ERR_UNKNOWN_ID = 5,
  FWA_ERR_UNIVERSE_MISMATCH = 6,
  FWA_ERR_ALPHABET_MISMATCH = 7,
  FWA_ERR_NOT_HOMOMORPHISM = 8,
  FWA_ERR_BUDGET_EXCEEDED = 9,
  FWA_ERR_IO = 10,
  FWA_ERR_INTERNAL = 11
} fwa_status;

typedef enum fwa_kind {
  FWA_KIND_FACV = 1, /* crisp input symbols */
  FWA_KIND_FACW = 2  /* named words over an underlying alphabet */
} fwa_kind;

FWA_API const char* fwa_version(void);
FWA_API const char* fwa_status_string(fwa_status status);
/* Message of the last failed call on this thread; "" if none. */
FWA_API const char* fwa_last_error(void);
FWA_API void fwa_string_free(char* s);

FWA_API fwa_status fwa_load_file(const char* path, fwa_automaton** out);
FWA_API fwa_status fwa_load_string(const char* json, fwa_automaton** out);
FWA_API void fwa_free(fwa_automaton* m);

/* Canonical JSON document. */
FWA_API fwa_status fwa_dump(const fwa_automaton* m, char** out_json);
FWA_API fwa_status fwa_kind_of(const fwa_automaton* m, fwa_kind* out);

/*
 * Acceptance degree of a whitespace-separated token string: symbols for a
 * FACV, word names for a FACW. "" is the empty string.
 */
FWA_API fwa_status fwa_accept(const fwa_automaton* m, const char* tokens, double* out);

/*
 * Acceptance degree of a string of arbitrary fuzzy words, evaluated through
 * the extension (generalized for a FACW, Zadeh for a FACV). Each entry of
 * `words` is either a word document (JSON text starting with '{') or the
 * name of an element of the input alphabet: a word of a FACW, or a symbol
 * a of a FACV, standing for 1/a.
 */
FWA_API fwa_status fwa_accept_words(const fwa_automaton* m, const char* const* words, size_t count, double* out);

/* FACW -> FACV. */
FWA_API fwa_status fwa_retract(const fwa_automaton* m, fwa_automaton** out);
/* FACV -> FACW over singleton words. */
FWA_API fwa_status fwa_lift(const fwa_automaton* m, fwa_automaton** out);

/*
 * One extended transition from `state` on the word document `word_json`,
 * written as a compact JSON object state -> grade.
 */
FWA_API fwa_status fwa_extend_eval(const fwa_automaton* m, const char* state, const char* word_json,
                                   char** out_json);

FWA_API fwa_status fwa_product(const fwa_automaton* m1, const fwa_automaton* m2, fwa_automaton** out);

/*
 * Checks the state map document `map_json` from m1's states to m2's.
 * *violated is 0 when it is a homomorphism, else the failed condition
 * (1 initial state, 2 transitions, 3 final grades). `detail` may be NULL.
 */
FWA_API fwa_status fwa_hom_check(const fwa_automaton* m1, const fwa_automaton* m2, const char* map_json,
                                 int* holds, int* violated, char** detail);
FWA_API fwa_status fwa_hom_image(const fwa_automaton* m1, const fwa_automaton* m2, const char* map_json,
                                 fwa_automaton** out);
FWA_API fwa_status fwa_is_subautomaton(const fwa_automaton* m1, const fwa_automaton* m2, int* out);

/*
 * Bounded search for the largest deviation between the word language of a
 * FACW and that of its extension, as a JSON object with fields bound,
 * witness, max_len, strings, consistent and definitive.
 */
FWA_API fwa_status fwa_independence(const fwa_automaton* m, size_t max_len, uint64_t budget, char** out_json);

FWA_API fwa_status fwa_is_complete(const fwa_automaton* m, int* out);

/* Delta preservation by direct evaluation and by the syntactic conditions. */
FWA_API fwa_status fwa_delta_preserving(const fwa_automaton* m, int* direct, int* syntactic);

/*
 * Runs the randomized property suites. `config_json` may be NULL or an
 * object with any of: suites (array of names, or "all"), trials, seed,
 * max_q, max_sigma, max_words, max_len, max_fuzzy_len, fuzzy_tokens,
 * budget, timing. Either output string pointer may be NULL.
 */
FWA_API fwa_status fwa_check(const char* config_json, int* passed, char** report_json, char** table);

/* Names of the property suites, one per line. */
FWA_API fwa_status fwa_check_suites(char** out);

/*
 * Renders a grade: shortest round-trip decimal when digits < 0, else
 * rounded to `digits` decimals with trailing zeros removed.
 */
FWA_API fwa_status fwa_format_grade(double grade, int digits, char** out);

#ifdef __cplusplus
}
#endif

#endif
