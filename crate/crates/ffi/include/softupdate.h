#ifndef SOFTUPDATE_H
#define SOFTUPDATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SuStatus {
  SU_STATUS_OK = 0,
  SU_STATUS_NULL_ARGUMENT = 1,
  SU_STATUS_INVALID_UTF8 = 2,
  SU_STATUS_IO = 3,
  SU_STATUS_PARSE = 4,
  SU_STATUS_UNKNOWN_NAME = 5,
  SU_STATUS_EVALUATION = 6,
  SU_STATUS_WRONG_KIND = 7,
  SU_STATUS_OUT_OF_RANGE = 8,
  SU_STATUS_PANIC = 9,
} SuStatus;

/**
 * Kind of an evaluated value.
 */
typedef enum SuValueKind {
  SU_VALUE_KIND_STATE = 0,
  SU_VALUE_KIND_PREDICATE = 1,
  SU_VALUE_KIND_CHANNEL = 2,
  SU_VALUE_KIND_SCALAR = 3,
} SuValueKind;

/**
 * A parsed and checked netspec model.
 */
typedef struct SuNetwork SuNetwork;

/**
 * The result of evaluating a name in a network.
 */
typedef struct SuValue SuValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *su_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *su_version(void);

/**
 * Parses and checks netspec `source`.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SuStatus su_network_parse(const char *source, struct SuNetwork **out);

/**
 * Reads and parses a netspec file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SuStatus su_network_load(const char *path, struct SuNetwork **out);

/**
 * Releases a network. Null is ignored.
 *
 * # Safety
 * `network` must come from this library and not be used afterwards.
 */
void su_network_free(struct SuNetwork *network);

/**
 * Number of queries declared in the network.
 *
 * # Safety
 * `network` must be a valid handle or null (which yields 0).
 */
size_t su_network_query_count(const struct SuNetwork *network);

/**
 * Name of the query at `index`, in declaration order.
 *
 * # Safety
 * `network` must be a valid handle and `out` a valid pointer.
 */
enum SuStatus su_network_query_name(const struct SuNetwork *network, size_t index, char **out);

/**
 * Evaluates a declared value or query into a value handle.
 *
 * # Safety
 * `network` must be a valid handle, `name` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum SuStatus su_network_evaluate(const struct SuNetwork *network,
                                  const char *name,
                                  struct SuValue **out);

/**
 * Evaluates and renders in one step. A negative `decimals` gives exact
 * fractions, otherwise decimals with that many digits.
 *
 * # Safety
 * As for [`su_network_evaluate`]; `out` receives a string to release with
 * [`su_string_free`].
 */
enum SuStatus su_network_eval_string(const struct SuNetwork *network,
                                     const char *name,
                                     int32_t decimals,
                                     char **out);

/**
 * Step-by-step report for a query whose outermost operation is an update
 * rule. Other names fail with `WrongKind`.
 *
 * # Safety
 * As for [`su_network_eval_string`].
 */
enum SuStatus su_network_explain(const struct SuNetwork *network, const char *name, char **out);

/**
 * CSV `r,jeffrey,pearl` for `steps + 1` evenly spaced evidence strengths.
 * A negative `decimals` gives exact fractions.
 *
 * # Safety
 * `network` must be a valid handle, the names NUL-terminated strings and
 * `out` a valid pointer.
 */
enum SuStatus su_network_sweep(const struct SuNetwork *network,
                               const char *channel,
                               const char *prior,
                               const char *target,
                               uint32_t steps,
                               int32_t decimals,
                               char **out);

/**
 * Releases a value. Null is ignored.
 *
 * # Safety
 * `value` must come from this library and not be used afterwards.
 */
void su_value_free(struct SuValue *value);

/**
 * Kind of a value; scalars are reported for null.
 *
 * # Safety
 * `value` must be a valid handle or null.
 */
enum SuValueKind su_value_kind(const struct SuValue *value);

/**
 * Number of entries: elements for states and predicates, `rows × columns`
 * for channels (row-major), 1 for scalars, 0 for null.
 *
 * # Safety
 * `value` must be a valid handle or null.
 */
size_t su_value_len(const struct SuValue *value);

/**
 * Label of entry `index`: an element name, `x -> y` for channels, empty for
 * scalars.
 *
 * # Safety
 * `value` must be a valid handle and `out` a valid pointer.
 */
enum SuStatus su_value_label(const struct SuValue *value, size_t index, char **out);

/**
 * Exact weight of entry `index` as `n/d` text.
 *
 * # Safety
 * `value` must be a valid handle and `out` a valid pointer.
 */
enum SuStatus su_value_fraction(const struct SuValue *value, size_t index, char **out);

/**
 * Weight of entry `index` rounded to the nearest double.
 *
 * # Safety
 * `value` must be a valid handle and `out` a valid pointer.
 */
enum SuStatus su_value_double(const struct SuValue *value, size_t index, double *out);

/**
 * Text form of a value, as printed by the command line tool.
 *
 * # Safety
 * `value` must be a valid handle and `out` a valid pointer.
 */
enum SuStatus su_value_render(const struct SuValue *value,
                              int32_t decimals,
                              bool show_zeros,
                              char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void su_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOFTUPDATE_H */
