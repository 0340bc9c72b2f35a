#ifndef SOFIC_H
#define SOFIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SoficStatus {
  SOFIC_STATUS_OK = 0,
  SOFIC_STATUS_INVALID_GRAPH = 1,
  SOFIC_STATUS_EMPTY_SHIFT = 2,
  SOFIC_STATUS_NOT_ESSENTIAL = 3,
  SOFIC_STATUS_WORD_NOT_IN_LANGUAGE = 4,
  SOFIC_STATUS_CLOSURE_BUDGET_EXCEEDED = 5,
  SOFIC_STATUS_NOT_YET_PERIODIC = 6,
  SOFIC_STATUS_WORD_TOO_SHORT = 7,
  SOFIC_STATUS_INVALID_SPEC = 8,
  SOFIC_STATUS_HYPOTHESIS_VIOLATED = 9,
  SOFIC_STATUS_UNCERTIFIED_INPUT = 10,
  SOFIC_STATUS_BUDGET_EXCEEDED = 11,
  SOFIC_STATUS_NO_SUCH_LENGTH = 12,
  SOFIC_STATUS_IO = 13,
  SOFIC_STATUS_NULL_ARGUMENT = 14,
  SOFIC_STATUS_INVALID_UTF8 = 15,
  SOFIC_STATUS_PANIC = 16,
} SoficStatus;

typedef enum SoficQuantity {
  SOFIC_QUANTITY_FOLLOWER = 0,
  SOFIC_QUANTITY_EXTENDER = 1,
} SoficQuantity;

// A count sequence with its periodicity data.
typedef struct SoficReport SoficReport;

// A presented shift.
typedef struct SoficShift SoficShift;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success. The pointer
// stays valid until the next call on the same thread.
const char *sofic_last_error(void);

// Static name of a status code, matching the library's error names.
const char *sofic_status_name(enum SoficStatus status);

// Parses a graph file, trimming it to its essential part.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum SoficStatus sofic_shift_from_json(const char *json, struct SoficShift **out);

// Builds `G_{n,S}`. A negative `istar` selects `min(S)`.
//
// # Safety
// `s` must point to `s_len` readable values (or be null with `s_len == 0`), and `out`
// must be a valid pointer.
enum SoficStatus sofic_shift_build_gns(size_t n,
                                       const size_t *s,
                                       size_t s_len,
                                       int64_t istar,
                                       struct SoficShift **out);

// Joins two shifts through their synchronizing loops.
//
// # Safety
// `first` and `second` must be live handles and `out` a valid pointer.
enum SoficStatus sofic_shift_join(const struct SoficShift *first,
                                  const struct SoficShift *second,
                                  struct SoficShift **out);

// Canonical JSON of a shift; release with `sofic_string_free`.
//
// # Safety
// `shift` must be a live handle and `out` a valid pointer.
enum SoficStatus sofic_shift_to_json(const struct SoficShift *shift, char **out);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `shift` must be null or a live handle.
size_t sofic_shift_vertex_count(const struct SoficShift *shift);

// Count sequence for lengths `1..=lmax`.
//
// # Safety
// `shift` must be a live handle and `out` a valid pointer.
enum SoficStatus sofic_shift_sequence(const struct SoficShift *shift,
                                      enum SoficQuantity quantity,
                                      size_t lmax,
                                      struct SoficReport **out);

// Number of computed lengths, or 0 for a null handle.
//
// # Safety
// `report` must be null or a live handle.
size_t sofic_report_len(const struct SoficReport *report);

// Count at length `l ≥ 1`, extended periodically past the computed range when
// certified; 0 when unavailable.
//
// # Safety
// `report` must be null or a live handle.
size_t sofic_report_count(const struct SoficReport *report, size_t l);

// # Safety
// `report` must be null or a live handle.
bool sofic_report_certified(const struct SoficReport *report);

// # Safety
// `report` must be null or a live handle.
size_t sofic_report_preperiod(const struct SoficReport *report);

// # Safety
// `report` must be null or a live handle.
size_t sofic_report_period(const struct SoficReport *report);

// # Safety
// `report` must be null or a live handle.
size_t sofic_report_liminf(const struct SoficReport *report);

// # Safety
// `report` must be null or a live handle.
size_t sofic_report_limsup(const struct SoficReport *report);

// Report as JSON; release with `sofic_string_free`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum SoficStatus sofic_report_to_json(const struct SoficReport *report, char **out);

// # Safety
// `shift` must be null or a handle not yet freed.
void sofic_shift_free(struct SoficShift *shift);

// # Safety
// `report` must be null or a handle not yet freed.
void sofic_report_free(struct SoficReport *report);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void sofic_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOFIC_H */
