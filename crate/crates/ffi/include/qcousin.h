#ifndef QCOUSIN_H
#define QCOUSIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcStatus {
  QC_STATUS_OK = 0,
  /**
   * A verification finding failed; the report is still produced.
   */
  QC_STATUS_VERIFICATION_FAILED = 1,
  /**
   * Malformed or inconsistent input.
   */
  QC_STATUS_INPUT_ERROR = 2,
  QC_STATUS_NULL_POINTER = 3,
  QC_STATUS_INVALID_UTF8 = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  QC_STATUS_INTERNAL = 5,
} QcStatus;

typedef struct QcManifest QcManifest;

typedef struct QcModule QcModule;

typedef struct QcReport QcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library on the same thread.
 */
const char *qc_last_error(void);

/**
 * Parses and validates a manifest.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum QcStatus qc_manifest_parse(const char *text, struct QcManifest **out);

/**
 * Canonical text of a manifest; free with `qc_string_free`.
 *
 * # Safety
 * `m` must come from `qc_manifest_parse`.
 */
char *qc_manifest_serialize(const struct QcManifest *m);

/**
 * # Safety
 * `m` must come from `qc_manifest_parse` and not be used afterwards.
 */
void qc_manifest_free(struct QcManifest *m);

/**
 * Runs the manifest's command. Returns `QC_STATUS_VERIFICATION_FAILED`
 * with a valid report when a finding failed.
 *
 * # Safety
 * `m` must come from `qc_manifest_parse`; `out` must be writable.
 */
enum QcStatus qc_run(const struct QcManifest *m, struct QcReport **out);

/**
 * The JSON report, byte-identical to the command line output; free with
 * `qc_string_free`.
 *
 * # Safety
 * `r` must come from `qc_run`.
 */
char *qc_report_json(const struct QcReport *r);

/**
 * 0 or 1 as the command line would exit; -1 for NULL.
 *
 * # Safety
 * `r` must come from `qc_run`.
 */
int32_t qc_report_exit_code(const struct QcReport *r);

/**
 * # Safety
 * `r` must come from `qc_run` and not be used afterwards.
 */
void qc_report_free(struct QcReport *r);

/**
 * Builds a presented module from generator degrees and relation lines in
 * manifest syntax (`"deg | entry ; entry"`).
 *
 * # Safety
 * `field` is NUL-terminated; `degrees` has `ngens` entries; `relations`
 * has `nrels` NUL-terminated strings; `out` must be writable.
 */
enum QcStatus qc_module_new(const char *field,
                            uint32_t n,
                            const int64_t *degrees,
                            size_t ngens,
                            const char *const *relations,
                            size_t nrels,
                            struct QcModule **out);

/**
 * Writes `dim M_d` for `d = lo..=hi` into `out[0..hi-lo+1]`.
 *
 * # Safety
 * `m` must come from `qc_module_new`; `out` must have room for `out_len` values.
 */
enum QcStatus qc_module_hilbert(const struct QcModule *m,
                                int64_t lo,
                                int64_t hi,
                                size_t *out,
                                size_t out_len);

/**
 * # Safety
 * `m` must come from `qc_module_new` and not be used afterwards.
 */
void qc_module_free(struct QcModule *m);

/**
 * # Safety
 * `s` must be a string returned by this library, or NULL.
 */
void qc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCOUSIN_H */
