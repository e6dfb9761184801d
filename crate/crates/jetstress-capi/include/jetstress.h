/* C interface for the jetstress verification kernel. */

#ifndef JETSTRESS_H
#define JETSTRESS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum JetstressStatus {
  JETSTRESS_STATUS_OK = 0,
  JETSTRESS_STATUS_NULL_POINTER = 1,
  JETSTRESS_STATUS_INVALID_UTF8 = 2,
  JETSTRESS_STATUS_PARSE_ERROR = 3,
  JETSTRESS_STATUS_DOMAIN_ERROR = 4,
  JETSTRESS_STATUS_IDENTITY_VIOLATION = 5,
  JETSTRESS_STATUS_PANICKED = 6,
} JetstressStatus;

// A parsed section field (opaque).
typedef struct JetstressSection JetstressSection;

// A parsed stress density, simple or non-holonomic (opaque).
typedef struct JetstressStress JetstressStress;

// The two sides of the balance equation and their difference, as doubles.
typedef struct JetstressBalanceReport {
  double lhs;
  double body_term;
  double boundary_term;
  double residual;
  // True when the rational residual is exactly zero.
  bool residual_exactly_zero;
} JetstressBalanceReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the linked kernel, a static string.
const char *jetstress_version(void);

// Copies the last error message into `buf` (truncated to `cap` bytes
// including the nul) and returns the full message length in bytes,
// or 0 when no error is pending. `buf` may be null to query the length.
//
// # Safety
// `buf`, when non-null, must point to at least `cap` writable bytes.
size_t jetstress_last_error_message(char *buf, size_t cap);

// Frees a string allocated by this library.
//
// # Safety
// `s` must have been returned by a `*_text` or `*_report` function of
// this library and not freed before.
void jetstress_string_free(char *s);

// Parses a section config; null on error (see
// [`jetstress_last_error_message`]).
//
// # Safety
// `text` must be a valid nul-terminated string.
struct JetstressSection *jetstress_section_parse(const char *text);

// # Safety
// `handle` must come from [`jetstress_section_parse`] and not be freed twice.
void jetstress_section_free(struct JetstressSection *handle);

// Parses a stress config (simple or non-holonomic); null on error.
//
// # Safety
// `text` must be a valid nul-terminated string.
struct JetstressStress *jetstress_stress_parse(const char *text);

// # Safety
// `handle` must come from [`jetstress_stress_parse`] and not be freed twice.
void jetstress_stress_free(struct JetstressStress *handle);

// True for a simple (symmetric-slot) stress, false for non-holonomic.
//
// # Safety
// `handle` must be a live stress handle.
bool jetstress_stress_is_simple(const struct JetstressStress *handle);

// The stress order `r`, or -1 for a null handle.
//
// # Safety
// `handle` must be a live stress handle or null.
int32_t jetstress_stress_order(const struct JetstressStress *handle);

// The virtual-work force represented by the stress for a section.
//
// # Safety
// `stress` and `section` must be live handles; `out` must be writable.
enum JetstressStatus jetstress_force(const struct JetstressStress *stress,
                                     const struct JetstressSection *section,
                                     double *out);

// Balance report of a simple stress; a non-holonomic stress of order
// `r >= 2` is reduced one step first and balanced against the iterated
// prolongation of the section.
//
// # Safety
// `stress` and `section` must be live handles; `out` must be writable.
enum JetstressStatus jetstress_balance(const struct JetstressStress *stress,
                                       const struct JetstressSection *section,
                                       struct JetstressBalanceReport *out);

// The generalized divergence of a simple stress as a text listing, one
// `div[alpha] = polynomial` line per component. Free with
// [`jetstress_string_free`]; null on error.
//
// # Safety
// `stress` must be a live stress handle.
char *jetstress_divergence_text(const struct JetstressStress *stress);

// The traction density of a simple stress as a text listing, one
// `s[alpha](i_hat) = polynomial` line per slot. Free with
// [`jetstress_string_free`]; null on error.
//
// # Safety
// `stress` must be a live stress handle.
char *jetstress_traction_text(const struct JetstressStress *stress);

// The grid `C^r` norm of a section.
//
// # Safety
// `section` must be a live handle; `out` must be writable.
enum JetstressStatus jetstress_cr_norm(const struct JetstressSection *section,
                                       uint32_t order,
                                       uint32_t grid_points,
                                       double *out);

// Runs one identity suite (`exterior`, `jets`, `currents`, `stress`, or
// `all`) with exact rational arithmetic. Returns `Ok` when every
// identity holds, `IdentityViolation` otherwise. `dim` of 0 selects the
// suite's maximum. When `report_out` is non-null it receives the
// rendered report (free with [`jetstress_string_free`]).
//
// # Safety
// `suite` must be a valid nul-terminated string; `report_out`, when
// non-null, must be writable.
enum JetstressStatus jetstress_check_suite(const char *suite,
                                           uint32_t trials,
                                           uint64_t seed,
                                           uint32_t dim,
                                           char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETSTRESS_H */
