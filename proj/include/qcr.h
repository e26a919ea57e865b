/*
 * qcr.h -- public C API of the qcr solver library.
 *
 * qcr analyzes M/G/1-type and quasi birth-death Markov chains: it
 * computes the minimal G matrix by (optionally shifted) cyclic
 * reduction, unrolls the stationary distribution with queueing metrics,
 * and emulates a circulant Fourier-space variant of the reduction sweep
 * with fidelity and resource accounting.
 *
 * All functions return 0 (QCR_OK) on success or a negative-free error
 * code from qcr_errc; qcr_last_error() describes the most recent failure
 * of the calling thread.  Objects are opaque handles released with the
 * matching *_free function.  The library is thread-compatible: distinct
 * handles may be used from distinct threads concurrently.
 */

#ifndef QCR_H
#define QCR_H

#include <stddef.h>

#ifdef _WIN32
#define QCR_API __declspec(dllexport)
#else
#define QCR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qcr_model qcr_model;   /* a validated chain model */
typedef struct qcr_report qcr_report; /* the result of a run */

typedef enum qcr_errc {
    QCR_OK = 0,
    QCR_ERR_PARSE = 1,
    QCR_ERR_VALIDATION = 2,
    QCR_ERR_INVALID_ARGUMENT = 3,
    QCR_ERR_SINGULAR_MATRIX = 4,
    QCR_ERR_NO_CONVERGENCE = 5,
    QCR_ERR_NUMERICAL_BREAKDOWN = 6,
    QCR_ERR_PRECONDITION = 7,
    QCR_ERR_DEGENERATE_BOUNDARY = 8,
    QCR_ERR_SINGULAR_SYMBOL = 9,
    QCR_ERR_IO = 10,
    QCR_ERR_INTERNAL = 11
} qcr_errc;

/* Report sections; combine with bitwise or. */
enum {
    QCR_SEC_DRIFT = 1u << 0,
    QCR_SEC_SOLVER = 1u << 1,
    QCR_SEC_STATIONARY = 1u << 2,
    QCR_SEC_METRICS = 1u << 3,
    QCR_SEC_DIAGNOSTICS = 1u << 4,
    QCR_SEC_EMULATION = 1u << 5,
    QCR_SEC_ESTIMATE = 1u << 6
};

typedef enum qcr_format { QCR_FORMAT_JSON = 0, QCR_FORMAT_CSV = 1, QCR_FORMAT_TEXT = 2 } qcr_format;

typedef struct qcr_options {
    double eps;            /* solver tolerance, default 1e-10 */
    int max_iter;          /* reduction sweep cap, default 64 */
    int use_shift;         /* nonzero: shifted cyclic reduction */
    const double* u;       /* shift direction of length m, NULL = uniform */
    double tail_tol;       /* stationary tail stop, default 1e-12 */
    long k_max;            /* stationary level cap, default 1000 */
    long n_samples;        /* pipeline grid, 0 = automatic */
    unsigned sections;     /* QCR_SEC_* bits */
} qcr_options;

/* Fill opts with the documented defaults (sections: drift+solver+diagnostics). */
QCR_API void qcr_options_default(qcr_options* opts);

/* Parse a JSON model description (text need not be NUL-terminated). */
QCR_API int qcr_model_parse(const char* text, size_t len, qcr_model** out);

/* Convenience: read and parse a model file. */
QCR_API int qcr_model_load(const char* path, qcr_model** out);

/* Serialize a model back to its canonical JSON form; free with qcr_string_free. */
QCR_API int qcr_model_serialize(const qcr_model* model, char** out);

/* Block order m of a parsed model (0 for NULL). */
QCR_API int qcr_model_order(const qcr_model* model);

/* Run the analysis selected by opts->sections (NULL opts = defaults). */
QCR_API int qcr_run(const qcr_model* model, const qcr_options* opts, qcr_report** out);

/* Render a report; with_timestamp = 0 yields byte-stable output.
 * The string is NUL-terminated; free with qcr_string_free. */
QCR_API int qcr_report_render(const qcr_report* report, qcr_format format, int with_timestamp,
                              char** out);

QCR_API void qcr_model_free(qcr_model* model);
QCR_API void qcr_report_free(qcr_report* report);
QCR_API void qcr_string_free(char* s);

/* Message of the last failure on the calling thread ("" when none). */
QCR_API const char* qcr_last_error(void);

/* Map an error code to the process exit code the CLI uses:
 * 2 bad input, 3 no convergence, 4 numerical failure, 5 precondition,
 * 1 anything else, 0 for QCR_OK. */
QCR_API int qcr_exit_code(int errc);

/* Library version as "major.minor.patch". */
QCR_API const char* qcr_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QCR_H */
