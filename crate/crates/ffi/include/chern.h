#ifndef CHERN_H
#define CHERN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The numeric values of the error codes match the exit codes
// of the command line tool where both exist.
typedef enum ChernStatus {
  CHERN_STATUS_OK = 0,
  // Null pointer, invalid UTF-8 or an out-of-range argument.
  CHERN_STATUS_INVALID_ARGUMENT = 1,
  // Malformed manifest, unknown family or any other input error.
  CHERN_STATUS_INPUT = 2,
  // Transition functions violate the cocycle condition.
  CHERN_STATUS_COCYCLE_CONDITION = 3,
  // The result was computed but fails its own check, e.g. a cocycle that is
  // not closed. The report is still returned.
  CHERN_STATUS_CONTRACT = 4,
  // Internal failure; the library caught a panic.
  CHERN_STATUS_INTERNAL = 5,
} ChernStatus;

typedef enum ChernVariant {
  CHERN_VARIANT_STANDARD = 0,
  CHERN_VARIANT_ARROW = 1,
} ChernVariant;

// A validated cover model together with the manifest it came from.
typedef struct ChernModel ChernModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Owned by the
// library and valid until the next call.
const char *chern_last_error(void);

// Library version, a static string.
const char *chern_version(void);

// Parses and validates a manifest.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum ChernStatus chern_model_from_json(const char *json, struct ChernModel **out);

// Releases a model; null is ignored.
//
// # Safety
// `model` must come from [`chern_model_from_json`] and not be used afterwards.
void chern_model_free(struct ChernModel *model);

// Number of charts, or 0 for a null model.
//
// # Safety
// `model` must be null or a live handle.
size_t chern_model_charts(const struct ChernModel *model);

// Largest Čech degree with a nonempty intersection, or 0 for a null model.
//
// # Safety
// `model` must be null or a live handle.
size_t chern_model_max_degree(const struct ChernModel *model);

// Cocycle report as JSON, the same document `chern cocycle` prints.
// A negative `depth` uses the manifest options. Returns
// [`ChernStatus::Contract`] with the report set when the cocycle is not closed.
//
// # Safety
// `model` must be a live handle, `family` a NUL-terminated string and `out` a
// valid pointer.
enum ChernStatus chern_cocycle_json(const struct ChernModel *model,
                                    const char *family,
                                    enum ChernVariant variant,
                                    int32_t depth,
                                    char **out);

// Transgression report between two families as JSON, the document
// `chern compare` prints. Returns [`ChernStatus::Contract`] with the report
// set when the primitive does not verify.
//
// # Safety
// `model` must be a live handle, the names NUL-terminated strings and `out`
// a valid pointer.
enum ChernStatus chern_compare_json(const struct ChernModel *model,
                                    const char *family_a,
                                    const char *family_b,
                                    char **out);

// Runs the randomized identity suite and returns its report as JSON.
// Returns [`ChernStatus::Contract`] with the report set when a check fails.
//
// # Safety
// `out` must be a valid pointer.
enum ChernStatus chern_verify_json(uint64_t seed,
                                   size_t rank,
                                   size_t charts,
                                   size_t depth,
                                   char **out);

// Releases a string returned by the library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void chern_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHERN_H */
