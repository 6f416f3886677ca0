/*
 * pintoc - parallel-in-time solver for linear-quadratic optimal control of
 * the 1D heat and wave equations.
 *
 * C interface to the shared library.  Every entry point takes a flat JSON
 * configuration document (NULL or "" selects the defaults of the problem
 * family) and, on success, hands back an opaque run handle.  Accessor
 * strings stay valid until pintoc_run_free is called on the handle.
 */
#ifndef PINTOC_H
#define PINTOC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pintoc_status {
    PINTOC_OK = 0,
    PINTOC_INVALID_CONFIG = 1,   /* bad JSON, bad values, unknown table id, cap hit */
    PINTOC_NOT_CONVERGED = 2,    /* run finished but missed the tolerance; handle valid */
    PINTOC_INTERNAL_ERROR = 3
} pintoc_status;

typedef struct pintoc_run pintoc_run;

const char* pintoc_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* pintoc_last_error(void);

/* Solve the interface system, reconstruct the trajectory, evaluate the
 * objective.  On PINTOC_NOT_CONVERGED the handle is still produced and the
 * record describes the best iterate. */
pintoc_status pintoc_solve(const char* config_json, pintoc_run** out);

/* Materialize the (preconditioned) interface operator and estimate its
 * extreme eigenvalues / singular values. */
pintoc_status pintoc_spectrum(const char* config_json, pintoc_run** out);

/* Eigenvalue-bound sweep over N = 100, 200, ..., 1000 (heat, Implicit Euler). */
pintoc_status pintoc_bound(const char* config_json, pintoc_run** out);

/* Reproduce one of the published tables: "t1", "t2", "t3", "t4", "t5", "t10".
 * Returns PINTOC_NOT_CONVERGED when a sub-run failed; the CSV then carries
 * error markers for the affected rows. */
pintoc_status pintoc_table(const char* table_id, const char* config_json,
                           pintoc_run** out);

/* JSON result record (config echo, iterations, residual, spectrum, timing). */
const char* pintoc_run_record(const pintoc_run* run);

/* CSV payload for table/bound runs; NULL when the command emits none. */
const char* pintoc_run_csv(const pintoc_run* run);

/* Diff report against the embedded published values; table runs only. */
const char* pintoc_run_diff(const pintoc_run* run);

/* Fine-trajectory CSV; solve runs with "trajectory": true only. */
const char* pintoc_run_trajectory(const pintoc_run* run);

/* 1 when the run met its tolerance (or had none), 0 otherwise. */
int pintoc_run_converged(const pintoc_run* run);

void pintoc_run_free(pintoc_run* run);

#ifdef __cplusplus
}
#endif

#endif /* PINTOC_H */
