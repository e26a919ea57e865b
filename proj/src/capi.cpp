// capi.cpp -- the extern "C" boundary of the shared library.
//
// Exceptions from the C++ core are translated here into error codes and
// a thread-local message retrievable via qcr_last_error().

#include "qcr.h"

#include <cstring>
#include <new>
#include <string>

#include "model_io.hpp"
#include "runner.hpp"

using namespace qcr;

struct qcr_model {
    MG1Model impl;
};
struct qcr_report {
    Report impl;
};

namespace {

thread_local std::string g_last_error;

int to_c_errc(Errc c) {
    switch (c) {
        case Errc::parse_error: return QCR_ERR_PARSE;
        case Errc::validation_error: return QCR_ERR_VALIDATION;
        case Errc::invalid_argument: return QCR_ERR_INVALID_ARGUMENT;
        case Errc::singular_matrix: return QCR_ERR_SINGULAR_MATRIX;
        case Errc::no_convergence: return QCR_ERR_NO_CONVERGENCE;
        case Errc::numerical_breakdown: return QCR_ERR_NUMERICAL_BREAKDOWN;
        case Errc::precondition_violation: return QCR_ERR_PRECONDITION;
        case Errc::degenerate_boundary: return QCR_ERR_DEGENERATE_BOUNDARY;
        case Errc::singular_symbol: return QCR_ERR_SINGULAR_SYMBOL;
        case Errc::io_error: return QCR_ERR_IO;
        case Errc::internal_error: return QCR_ERR_INTERNAL;
    }
    return QCR_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QCR_OK;
    } catch (const SolverError& e) {
        g_last_error = e.what();
        return to_c_errc(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "internal-error: out of memory";
        return QCR_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = std::string("internal-error: ") + e.what();
        return QCR_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

QCR_API void qcr_options_default(qcr_options* opts) {
    if (!opts) return;
    opts->eps = 1e-10;
    opts->max_iter = 64;
    opts->use_shift = 0;
    opts->u = nullptr;
    opts->tail_tol = 1e-12;
    opts->k_max = 1000;
    opts->n_samples = 0;
    opts->sections = QCR_SEC_DRIFT | QCR_SEC_SOLVER | QCR_SEC_DIAGNOSTICS;
}

QCR_API int qcr_model_parse(const char* text, size_t len, qcr_model** out) {
    if (!text || !out) {
        g_last_error = "invalid-argument: NULL pointer";
        return QCR_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto* handle = new qcr_model{parse_model(std::string(text, len))};
        *out = handle;
    });
}

QCR_API int qcr_model_load(const char* path, qcr_model** out) {
    if (!path || !out) {
        g_last_error = "invalid-argument: NULL pointer";
        return QCR_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] { *out = new qcr_model{load_model_file(path)}; });
}

QCR_API int qcr_model_serialize(const qcr_model* model, char** out) {
    if (!model || !out) {
        g_last_error = "invalid-argument: NULL pointer";
        return QCR_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] { *out = dup_string(serialize_model(model->impl)); });
}

QCR_API int qcr_model_order(const qcr_model* model) { return model ? model->impl.m : 0; }

QCR_API int qcr_run(const qcr_model* model, const qcr_options* opts, qcr_report** out) {
    if (!model || !out) {
        g_last_error = "invalid-argument: NULL pointer";
        return QCR_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        RunOptions ro;
        if (opts) {
            ro.eps = opts->eps;
            ro.max_iter = opts->max_iter;
            ro.use_shift = opts->use_shift != 0;
            if (opts->u) ro.u = std::vector<double>(opts->u, opts->u + model->impl.m);
            ro.tail_tol = opts->tail_tol;
            ro.k_max = opts->k_max;
            ro.n_samples = opts->n_samples;
            ro.sections = opts->sections;
        }
        *out = new qcr_report{run_analysis(model->impl, ro)};
    });
}

QCR_API int qcr_report_render(const qcr_report* report, qcr_format format, int with_timestamp,
                              char** out) {
    if (!report || !out) {
        g_last_error = "invalid-argument: NULL pointer";
        return QCR_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        if (format != QCR_FORMAT_JSON && format != QCR_FORMAT_CSV && format != QCR_FORMAT_TEXT)
            fail(Errc::invalid_argument, "unknown report format");
        *out = dup_string(
            render_report(report->impl, static_cast<ReportFormat>(format), with_timestamp != 0));
    });
}

QCR_API void qcr_model_free(qcr_model* model) { delete model; }
QCR_API void qcr_report_free(qcr_report* report) { delete report; }
QCR_API void qcr_string_free(char* s) { delete[] s; }

QCR_API const char* qcr_last_error(void) { return g_last_error.c_str(); }

QCR_API int qcr_exit_code(int errc) {
    switch (errc) {
        case QCR_OK: return 0;
        case QCR_ERR_PARSE:
        case QCR_ERR_VALIDATION:
        case QCR_ERR_INVALID_ARGUMENT: return 2;
        case QCR_ERR_NO_CONVERGENCE: return 3;
        case QCR_ERR_SINGULAR_MATRIX:
        case QCR_ERR_NUMERICAL_BREAKDOWN:
        case QCR_ERR_DEGENERATE_BOUNDARY:
        case QCR_ERR_SINGULAR_SYMBOL: return 4;
        case QCR_ERR_PRECONDITION: return 5;
        default: return 1;
    }
}

QCR_API const char* qcr_version(void) { return "0.1.0"; }

}  // extern "C"
