#ifndef GGT_H
#define GGT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum GgtStatus {
  GgtStatusOk = 0,
  GgtStatusNullPointer = 1,
  GgtStatusParseError = 2,
  GgtStatusInvalidArgument = 3,
  GgtStatusUtf8Error = 4,
} GgtStatus;

/**
 * Opaque folded subgroup automaton handle.
 */
typedef struct GgtAutomaton GgtAutomaton;

/**
 * Opaque freely reduced word handle.
 */
typedef struct GgtWord GgtWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a word in the `x<k>`/`X<k>` token syntax (optionally with
 * `^<int>` powers); the empty string is the identity.
 */
enum GgtStatus ggt_word_parse(const char *text, struct GgtWord **out);

/**
 * Releases a word handle; null is a no-op.
 */
void ggt_word_free(struct GgtWord *word);

/**
 * Canonical text form; release with `ggt_string_free`. Null on null
 * input.
 */
char *ggt_word_print(const struct GgtWord *word);

/**
 * Releases a string returned by this library; null is a no-op.
 */
void ggt_string_free(char *text);

/**
 * `out = left · right`, freely reduced.
 */
enum GgtStatus ggt_word_multiply(const struct GgtWord *left,
                                 const struct GgtWord *right,
                                 struct GgtWord **out);

/**
 * `out = word⁻¹`.
 */
enum GgtStatus ggt_word_invert(const struct GgtWord *word, struct GgtWord **out);

/**
 * `out = word^exponent` (negative exponents invert).
 */
enum GgtStatus ggt_word_power(const struct GgtWord *word, int64_t exponent, struct GgtWord **out);

/**
 * Reduced length in letters.
 */
enum GgtStatus ggt_word_length(const struct GgtWord *word, uint64_t *out);

/**
 * Membership in the level-`level` derived subgroup of the ambient free
 * group.
 */
enum GgtStatus ggt_derived_member(const struct GgtWord *word, uint32_t level, bool *out);

/**
 * Derived-series depth capped at `max`: writes the depth and whether
 * it is exact (false means "at least `max`").
 */
enum GgtStatus ggt_derived_depth(const struct GgtWord *word,
                                 uint32_t max,
                                 uint32_t *out_depth,
                                 bool *out_exact);

/**
 * Folds the subgroup generated by `count` generator words (parsed from
 * C strings) into a membership automaton.
 */
enum GgtStatus ggt_automaton_fold(const char *const *generators,
                                  uintptr_t count,
                                  struct GgtAutomaton **out);

/**
 * Releases an automaton handle; null is a no-op.
 */
void ggt_automaton_free(struct GgtAutomaton *automaton);

/**
 * Subgroup membership of a word.
 */
enum GgtStatus ggt_automaton_contains(const struct GgtAutomaton *automaton,
                                      const struct GgtWord *word,
                                      bool *out);

/**
 * Shortlex-minimal representative of the right coset of `word`.
 */
enum GgtStatus ggt_automaton_coset_rep(const struct GgtAutomaton *automaton,
                                       const struct GgtWord *word,
                                       struct GgtWord **out);

/**
 * Rank of the subgroup (free by Nielsen–Schreier).
 */
enum GgtStatus ggt_automaton_rank(const struct GgtAutomaton *automaton, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GGT_H */
