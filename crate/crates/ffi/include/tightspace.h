#ifndef TIGHTSPACE_H
#define TIGHTSPACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or a document that does not describe a graph.
   */
  TS_STATUS_INVALID_DOCUMENT = 3,
  /**
   * The family lacks a structural property the operation needs.
   */
  TS_STATUS_UNSUPPORTED_SPACE = 4,
  TS_STATUS_INVALID_ARGUMENT = 5,
  TS_STATUS_UNKNOWN_COMMAND = 6,
  TS_STATUS_PANIC = 7,
} TsStatus;

/**
 * A JSON report produced by a command.
 */
typedef struct TsReport TsReport;

/**
 * A labelled graph with its family of vertex sets.
 */
typedef struct TsSpace TsSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread. Valid until the next call on
 * the same thread.
 */
const char *ts_last_error(void);

/**
 * Parses a graph document. On success `*out` owns a new space.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TsStatus ts_space_from_json(const char *json, struct TsSpace **out);

/**
 * # Safety
 * `space` must come from `ts_space_from_json` and not be freed twice.
 */
void ts_space_free(struct TsSpace *space);

/**
 * # Safety
 * `space` must be a live handle or null.
 */
size_t ts_space_vertex_count(const struct TsSpace *space);

/**
 * # Safety
 * `space` must be a live handle or null.
 */
size_t ts_space_family_size(const struct TsSpace *space);

/**
 * Counts the tight filters within the bounds. `*exhaustive` is set when the
 * counted filters are the whole spectrum.
 *
 * # Safety
 * `space` must be a live handle; the output pointers must be valid.
 */
enum TsStatus ts_tight_count(const struct TsSpace *space,
                             size_t word_bound,
                             size_t lasso_bound,
                             size_t *finite_out,
                             size_t *lasso_out,
                             bool *exhaustive_out);

/**
 * Runs a command (`check`, `tight`, `semigroup`, `boundary`, `surgery`,
 * `diagonal`, `represent`, `discriminate`) on a graph document with the
 * document's own options. A report is produced even for invalid documents;
 * its exit status is then 2.
 *
 * # Safety
 * `command` and `json` must be NUL-terminated strings and `out` a valid
 * pointer.
 */
enum TsStatus ts_run(const char *command, const char *json, struct TsReport **out);

/**
 * The report as JSON, owned by the report.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
const char *ts_report_json(const struct TsReport *report);

/**
 * 0 when every property held, 1 on a violation, 2 on invalid input; -1 for
 * a null handle.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
int32_t ts_report_exit_status(const struct TsReport *report);

/**
 * # Safety
 * `report` must come from `ts_run` and not be freed twice.
 */
void ts_report_free(struct TsReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIGHTSPACE_H */
