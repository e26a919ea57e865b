// qcr_main.cpp -- command line front end.
//
// Thin shell over the public C API: parse arguments, load the model,
// run the sections implied by the subcommand, print the rendered report
// to stdout.  Errors go to stderr as a single line and map onto stable
// exit codes (2 bad input, 3 no convergence, 4 numerical failure,
// 5 precondition violation, 1 everything else).

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcr.h"

namespace {

struct CommonArgs {
    std::string file;
    double eps = 1e-10;
    int max_iter = 64;
    bool shift = false;
    std::string u = "uniform";
    double tail_tol = 1e-12;
    long levels = 1000;
    long samples = 0;
    std::string format = "text";
    bool no_timestamp = false;
};

void add_model_arg(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("model", args.file, "model file (JSON)")->required();
    cmd->add_option("--format", args.format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_flag("--no-timestamp", args.no_timestamp, "omit the timestamp for byte-stable output");
}

void add_solver_args(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--eps", args.eps, "solver tolerance")->capture_default_str();
    cmd->add_option("--max-iter", args.max_iter, "reduction sweep cap")->capture_default_str();
    cmd->add_flag("--shift", args.shift, "use shifted cyclic reduction");
    cmd->add_option("--u", args.u, "shift direction: 'uniform' or comma-separated weights")
        ->capture_default_str();
}

void add_stationary_args(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--levels", args.levels, "maximum number of stationary levels")
        ->capture_default_str();
    cmd->add_option("--tail-tol", args.tail_tol, "stationary tail stopping tolerance")
        ->capture_default_str();
}

void add_samples_arg(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--samples", args.samples, "Fourier grid size (power of two, 0 = auto)")
        ->capture_default_str();
}

int fail_with(int rc) {
    std::fprintf(stderr, "error: %s\n", qcr_last_error());
    return qcr_exit_code(rc);
}

int run_command(const CommonArgs& args, unsigned sections) {
    qcr_model* model = nullptr;
    int rc = qcr_model_load(args.file.c_str(), &model);
    if (rc != QCR_OK) return fail_with(rc);

    qcr_options opts;
    qcr_options_default(&opts);
    opts.eps = args.eps;
    opts.max_iter = args.max_iter;
    opts.use_shift = args.shift ? 1 : 0;
    opts.tail_tol = args.tail_tol;
    opts.k_max = args.levels;
    opts.n_samples = args.samples;
    opts.sections = sections;

    std::vector<double> u_vec;
    if (args.u != "uniform") {
        std::stringstream ss(args.u);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t used = 0;
                const double v = std::stod(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                u_vec.push_back(v);
            } catch (const std::exception&) {
                std::fprintf(stderr, "error: invalid-argument: cannot parse --u entry '%s'\n",
                             item.c_str());
                qcr_model_free(model);
                return 2;
            }
        }
        if (static_cast<int>(u_vec.size()) != qcr_model_order(model)) {
            std::fprintf(stderr, "error: invalid-argument: --u needs %d entries, got %zu\n",
                         qcr_model_order(model), u_vec.size());
            qcr_model_free(model);
            return 2;
        }
        opts.u = u_vec.data();
    }

    qcr_report* report = nullptr;
    rc = qcr_run(model, &opts, &report);
    if (rc != QCR_OK) {
        qcr_model_free(model);
        return fail_with(rc);
    }

    qcr_format fmt = QCR_FORMAT_TEXT;
    if (args.format == "json") fmt = QCR_FORMAT_JSON;
    else if (args.format == "csv") fmt = QCR_FORMAT_CSV;
    char* text = nullptr;
    rc = qcr_report_render(report, fmt, args.no_timestamp ? 0 : 1, &text);
    if (rc != QCR_OK) {
        qcr_report_free(report);
        qcr_model_free(model);
        return fail_with(rc);
    }
    std::fputs(text, stdout);
    qcr_string_free(text);
    qcr_report_free(report);
    qcr_model_free(model);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("qcr ") + qcr_version() +
                 " -- cyclic-reduction solver for M/G/1-type and QBD Markov chains"};
    app.require_subcommand(1);

    CommonArgs solve_args, stat_args, metrics_args, ergo_args, emu_args, est_args;

    CLI::App* solve = app.add_subcommand("solve", "compute the minimal G matrix");
    add_model_arg(solve, solve_args);
    add_solver_args(solve, solve_args);

    CLI::App* stationary = app.add_subcommand("stationary", "G plus the stationary distribution");
    add_model_arg(stationary, stat_args);
    add_solver_args(stationary, stat_args);
    add_stationary_args(stationary, stat_args);

    CLI::App* metrics = app.add_subcommand("metrics", "stationary distribution plus queue metrics");
    add_model_arg(metrics, metrics_args);
    add_solver_args(metrics, metrics_args);
    add_stationary_args(metrics, metrics_args);

    CLI::App* ergodicity = app.add_subcommand("ergodicity", "mean-drift ergodicity check only");
    add_model_arg(ergodicity, ergo_args);

    CLI::App* emulate =
        app.add_subcommand("emulate", "emulate one reduction sweep through the circulant pipeline");
    add_model_arg(emulate, emu_args);
    add_samples_arg(emulate, emu_args);

    CLI::App* estimate = app.add_subcommand("estimate", "resource estimate for the pipeline");
    add_model_arg(estimate, est_args);
    add_samples_arg(estimate, est_args);

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed())
        return run_command(solve_args, QCR_SEC_DRIFT | QCR_SEC_SOLVER | QCR_SEC_DIAGNOSTICS);
    if (stationary->parsed())
        return run_command(stat_args, QCR_SEC_DRIFT | QCR_SEC_SOLVER | QCR_SEC_DIAGNOSTICS |
                                          QCR_SEC_STATIONARY);
    if (metrics->parsed())
        return run_command(metrics_args, QCR_SEC_DRIFT | QCR_SEC_SOLVER | QCR_SEC_DIAGNOSTICS |
                                             QCR_SEC_STATIONARY | QCR_SEC_METRICS);
    if (ergodicity->parsed()) return run_command(ergo_args, QCR_SEC_DRIFT);
    if (emulate->parsed()) return run_command(emu_args, QCR_SEC_EMULATION);
    if (estimate->parsed()) return run_command(est_args, QCR_SEC_ESTIMATE);
    return 1;
}
