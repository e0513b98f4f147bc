#ifndef SPECTRALAB_H
#define SPECTRALAB_H

/* Generated by cbindgen from spectralab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit codes.
 */
typedef enum {
  SPECTRALAB_STATUS_OK = 0,
  SPECTRALAB_STATUS_ASSERTION_FAILED = 1,
  SPECTRALAB_STATUS_INVALID_INPUT = 2,
  SPECTRALAB_STATUS_SOLVER_FAILURE = 3,
  SPECTRALAB_STATUS_NULL_POINTER = 4,
  SPECTRALAB_STATUS_PANIC = 5,
} SpectralabStatus;

/**
 * Opaque curve handle.
 */
typedef struct SpectralabCurve SpectralabCurve;

/**
 * Opaque mesh handle bundling the mesh with its conformal density.
 */
typedef struct SpectralabMesh SpectralabMesh;

/**
 * Opaque spectrum handle.
 */
typedef struct SpectralabSpectrum SpectralabSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Crate version as a static C string.
 */
const char *spectralab_version(void);

/**
 * Copies the last error message into `buf` (truncated to `len` - 1 bytes);
 * returns the untruncated length.
 *
 * # Safety
 * `buf` must point to at least `len` writable bytes, or be null.
 */
uintptr_t spectralab_last_error(char *buf, uintptr_t len);

/**
 * Parses a curve from its JSON spec; null on failure.
 *
 * # Safety
 * `json` must be a valid NUL-terminated UTF-8 string.
 */
SpectralabCurve *spectralab_curve_from_json(const char *json);

/**
 * # Safety
 * `curve` must come from `spectralab_curve_from_json` and not be freed.
 */
int64_t spectralab_curve_genus(const SpectralabCurve *curve);

/**
 * Riemann-Roch report for a divisor JSON: fills lhs, rhs and ok.
 *
 * # Safety
 * Pointers must be valid; `divisor_json` NUL-terminated UTF-8.
 */
SpectralabStatus spectralab_riemann_roch(const SpectralabCurve *curve,
                                         const char *divisor_json,
                                         int64_t *lhs,
                                         int64_t *rhs,
                                         bool *ok);

/**
 * h^0 of a divisor given as JSON entries.
 *
 * # Safety
 * Pointers must be valid; `divisor_json` NUL-terminated UTF-8.
 */
SpectralabStatus spectralab_h0(const SpectralabCurve *curve,
                               const char *divisor_json,
                               int64_t *out);

/**
 * # Safety
 * `curve` must come from this library; double frees are undefined.
 */
void spectralab_curve_free(SpectralabCurve *curve);

/**
 * Builds a named mesh ("sphere:5", "torus:64:0:1", "cover-octahedral:4",
 * "cover-cube:4", "power:5:2", ...) with the density spec ("auto",
 * "uniform", "pullback", "random:SEED:AMP"); null on failure.
 *
 * # Safety
 * `spec` must be NUL-terminated UTF-8; `density` may be null for "auto".
 */
SpectralabMesh *spectralab_mesh_builtin(const char *spec, const char *density);

/**
 * # Safety
 * `mesh` must come from `spectralab_mesh_builtin` and not be freed.
 */
int64_t spectralab_mesh_euler_characteristic(const SpectralabMesh *mesh);

/**
 * # Safety
 * `mesh` must come from `spectralab_mesh_builtin` and not be freed.
 */
uintptr_t spectralab_mesh_vertex_count(const SpectralabMesh *mesh);

/**
 * Solves for the k+1 smallest eigenvalues; null on failure.
 *
 * # Safety
 * `mesh` must come from `spectralab_mesh_builtin` and not be freed.
 */
SpectralabSpectrum *spectralab_spectrum_compute(const SpectralabMesh *mesh,
                                                uintptr_t k,
                                                double tol);

/**
 * # Safety
 * `spectrum` must come from `spectralab_spectrum_compute`.
 */
uintptr_t spectralab_spectrum_len(const SpectralabSpectrum *spectrum);

/**
 * # Safety
 * `spectrum` must come from `spectralab_spectrum_compute`.
 */
double spectralab_spectrum_eigenvalue(const SpectralabSpectrum *spectrum, uintptr_t i);

/**
 * Normalized eigenvalue (eigenvalue times total area).
 *
 * # Safety
 * `spectrum` must come from `spectralab_spectrum_compute`.
 */
double spectralab_spectrum_normalized(const SpectralabSpectrum *spectrum, uintptr_t i);

/**
 * # Safety
 * `spectrum` must come from `spectralab_spectrum_compute`.
 */
double spectralab_spectrum_area(const SpectralabSpectrum *spectrum);

/**
 * # Safety
 * `spectrum` must come from this library; double frees are undefined.
 */
void spectralab_spectrum_free(SpectralabSpectrum *spectrum);

/**
 * # Safety
 * `mesh` must come from this library; double frees are undefined.
 */
void spectralab_mesh_free(SpectralabMesh *mesh);

/**
 * Genus bound check on the first normalized eigenvalue: fills the bound and
 * margin; OK when the margin is above -tolerance.
 *
 * # Safety
 * `bound` and `margin` must be writable or null.
 */
SpectralabStatus spectralab_yang_yau(int64_t genus,
                                     double lambda1_bar,
                                     double tolerance,
                                     double *bound,
                                     double *margin);

/**
 * Index and nullity of the recorded sphere-valued map around eigenvalue 2.
 *
 * # Safety
 * `mesh` must come from `spectralab_mesh_builtin` and not be freed.
 */
SpectralabStatus spectralab_index_of_map(const SpectralabMesh *mesh,
                                         double band,
                                         int64_t *index,
                                         int64_t *nullity);

/**
 * Audits harmonic-map records given as a JSON array; sets `all_pass`.
 *
 * # Safety
 * `records_json` must be a NUL-terminated UTF-8 string.
 */
SpectralabStatus spectralab_ledger_audit_json(const char *records_json, bool *all_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRALAB_H */
