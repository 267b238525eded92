#ifndef VCWB_H
#define VCWB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `kind` argument of [`vcwb_validate`].
 */
typedef enum {
  VCWB_KIND_BASE = 0,
  VCWB_KIND_VCAT = 1,
  VCWB_KIND_VMONOIDAL = 2,
  VCWB_KIND_TENSORING = 3,
} VcwbKind;

/**
 * Result of every call. Law failures are not errors: they come back as a
 * report with a failing verdict and status `VCWB_OK`.
 */
typedef enum {
  VCWB_STATUS_OK = 0,
  VCWB_STATUS_NULL_ARGUMENT = 1,
  VCWB_STATUS_INVALID_UTF8 = 2,
  VCWB_STATUS_PARSE = 3,
  VCWB_STATUS_SHAPE_MISMATCH = 4,
  VCWB_STATUS_UNKNOWN_OBJECT = 5,
  VCWB_STATUS_SCALAR = 6,
  VCWB_STATUS_COVERAGE_GAP = 7,
  VCWB_STATUS_REPRESENTABILITY = 8,
  VCWB_STATUS_TRIANGLE = 9,
  VCWB_STATUS_CLOSEDNESS_MISSING = 10,
  VCWB_STATUS_ADJOINT_MISMATCH = 11,
  VCWB_STATUS_NOT_INVERTIBLE = 12,
  VCWB_STATUS_PANIC = 13,
} VcwbStatus;

/**
 * Overall verdict of a report.
 */
typedef enum {
  VCWB_VERDICT_PASS = 0,
  VCWB_VERDICT_FAIL = 1,
  VCWB_VERDICT_UNDETERMINED = 2,
} VcwbVerdict;

/**
 * A materialized V-category.
 */
typedef struct VcwbCategory VcwbCategory;

/**
 * The report of a command and, for producing commands, its output document.
 */
typedef struct VcwbReport VcwbReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL if none.
 * Free with [`vcwb_string_free`].
 */
char *vcwb_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void vcwb_string_free(char *s);

/**
 * Parses a V-category from its JSON document.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is a writable pointer.
 */
VcwbStatus vcwb_category_from_json(const char *json, VcwbCategory **out);

/**
 * Number of objects in the category, or 0 for NULL.
 *
 * # Safety
 * `cat` is NULL or a live handle.
 */
size_t vcwb_category_object_count(const VcwbCategory *cat);

/**
 * Checks associativity and both unit laws.
 *
 * # Safety
 * `cat` is a live handle; `out` is a writable pointer.
 */
VcwbStatus vcwb_category_verify(const VcwbCategory *cat, VcwbReport **out);

/**
 * # Safety
 * `cat` is NULL or a handle from this library, not yet freed.
 */
void vcwb_category_free(VcwbCategory *cat);

/**
 * `vcwb validate`. `category` is required for `VCWB_KIND_TENSORING` and may be NULL otherwise.
 *
 * # Safety
 * String arguments are NULL or NUL-terminated; `out` is a writable pointer.
 */
VcwbStatus vcwb_validate(VcwbKind kind, const char *source, const char *category, VcwbReport **out);

/**
 * `vcwb complete`. A `dim_cap` of 0 selects the default cap.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is a writable pointer.
 */
VcwbStatus vcwb_complete(const char *category,
                         const char *window,
                         bool monoidal,
                         size_t dim_cap,
                         VcwbReport **out);

/**
 * `vcwb check-tensored`.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is a writable pointer.
 */
VcwbStatus vcwb_check_tensored(const char *category,
                               const char *tensoring,
                               bool monoidal,
                               VcwbReport **out);

/**
 * `vcwb classify`.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is a writable pointer.
 */
VcwbStatus vcwb_classify(const char *vmonoidal, const char *tensoring, VcwbReport **out);

/**
 * # Safety
 * `report` is NULL or a live handle.
 */
VcwbVerdict vcwb_report_verdict(const VcwbReport *report);

/**
 * The CLI exit code for this report: 0 pass, 1 otherwise.
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
int32_t vcwb_report_exit_code(const VcwbReport *report);

/**
 * The report as JSON. Free with [`vcwb_string_free`].
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
char *vcwb_report_json(const VcwbReport *report);

/**
 * The output document, or NULL for commands that produce none. Free with [`vcwb_string_free`].
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
char *vcwb_report_output(const VcwbReport *report);

/**
 * # Safety
 * `report` is NULL or a handle from this library, not yet freed.
 */
void vcwb_report_free(VcwbReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCWB_H */
