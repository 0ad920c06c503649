#ifndef CONELAB_H
#define CONELAB_H

/* C interface to the conelab shared library.
 *
 * Every function that can fail returns a conelab_status; CONELAB_OK means the
 * out-parameters are valid. On any other status the out-parameters are left
 * untouched and conelab_last_error() carries a message describing the failure
 * (thread-local, valid until the next conelab call on the same thread).
 *
 * All returned strings are heap-allocated, NUL-terminated, and must be
 * released with conelab_string_free.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum conelab_status {
    CONELAB_OK = 0,
    CONELAB_ERROR_DOMAIN = 1,    /* invalid argument or out-of-range input */
    CONELAB_ERROR_PARSE = 2,     /* malformed or schema-violating document */
    CONELAB_ERROR_NUMERIC = 3,   /* iteration failed to converge */
    CONELAB_ERROR_ASSERTION = 4, /* a certified bound was violated at runtime */
    CONELAB_ERROR_INTERNAL = 5   /* construction invariant broken (a bug) */
} conelab_status;

/* Library version, static storage. */
const char* conelab_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* conelab_last_error(void);

/* Release a string returned through any char** out-parameter. */
void conelab_string_free(char* s);

/* ---- cross-section spectra ------------------------------------------- */

/* Opaque handle to a parsed cross-section spectrum. */
typedef struct conelab_spectrum conelab_spectrum;

/* Parse and structurally validate a spectrum document. The document must be
 * a JSON object with exactly the fields n (integer), tt_einstein,
 * coclosed_oneforms, laplace (arrays of numbers) and label (string).
 * Schema violations give CONELAB_ERROR_PARSE, structural violations
 * (unsorted lists, nonpositive one-form eigenvalues, missing zero mode)
 * give CONELAB_ERROR_DOMAIN. */
conelab_status conelab_spectrum_parse(const char* json, conelab_spectrum** out);

void conelab_spectrum_free(conelab_spectrum* spectrum);

conelab_status conelab_spectrum_dimension(const conelab_spectrum* spectrum, int* out_n);

/* Non-fatal validation warnings, one per line (empty string if none). */
conelab_status conelab_spectrum_warnings(const conelab_spectrum* spectrum, char** out);

/* Tangential stability verdict as a JSON document. out_diagnostics, if
 * non-NULL, receives the per-block diagnostic notes one per line. */
conelab_status conelab_spectrum_verdict_json(const conelab_spectrum* spectrum,
                                             char** out_json, char** out_diagnostics);

/* ---- classification tables ------------------------------------------- */

/* Recompute table 1 or 2 at `samples` parameter assignments per family and
 * render the comparison CSV. out_all_match, if non-NULL, receives 1 when
 * every sampled row reproduces its printed label. */
conelab_status conelab_catalog_csv(int table, int samples, char** out_csv,
                                   int* out_all_match);

/* ---- quadratic-form blocks ------------------------------------------- */

/* Inspection document with the three tangential blocks at a common
 * eigenvalue argument (the scalar block uses an interpolation weight
 * epsilon in [0, 2)). */
conelab_status conelab_blocks_json(int n, double value, double epsilon, char** out_json);

/* ---- radial models ----------------------------------------------------- */

/* Model-cone spectrum TSV for a parsed cross-section: the lowest `modes`
 * tangential eigenvalues, `per_mode` radial eigenvalues each, merged. */
conelab_status conelab_radial_tsv(const conelab_spectrum* spectrum, int modes,
                                  int per_mode, int segments, double gamma,
                                  char** out_tsv);

/* Same TSV for a single indicial root nu; the tangential-eigenvalue column
 * is reported on the two-dimensional convention lambda = nu^2 - 1/4. */
conelab_status conelab_radial_nu_tsv(double nu, int per_mode, int segments,
                                     double gamma, char** out_tsv);

/* Semigroup decay table for the radial model at indicial root nu, evaluated
 * at the given times. out_pass receives 1 when the time-stepping cross-check
 * agrees with the spectral decay; on 0, out_failure (if non-NULL) carries
 * the reason. */
conelab_status conelab_heat_tsv(double nu, const double* times, size_t n_times,
                                int segments, double gamma, int steps,
                                char** out_tsv, int* out_pass, char** out_failure);

/* ---- flow surrogate ---------------------------------------------------- */

/* Run the restarted-flow surrogate and render the per-leg trace TSV.
 * tier is 'A' (exact constants, requires c = 1) or 'B' (sampled-and-inflated
 * certificates against the declared constant c = 1.2). */
conelab_status conelab_flow_tsv(char tier, int gain_n, double c, double c_tilde,
                                double alpha, double big_r,
                                unsigned long long seed, int time_steps,
                                char** out_tsv);

/* ---- invariant suite --------------------------------------------------- */

/* Run the cross-module invariant suite. Tolerances scale with
 * tolerance_scale; flip_scalar_corner != 0 negates the bottom-right entry of
 * the rescaled scalar matrix inside the determinant check (a self-test of
 * the suite's sensitivity). out_all_pass receives 1 when every check
 * passed. */
conelab_status conelab_check_report(double tolerance_scale, int flip_scalar_corner,
                                    unsigned long long seed, char** out_report,
                                    int* out_all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CONELAB_H */
