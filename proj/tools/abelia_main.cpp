// Command line front end; talks to the library through the C API only.

#include <CLI11.hpp>
#include <cstdio>

#include "abelia/abelia.h"

namespace {

struct CommonArgs {
    std::string path;
    bool json = false;
    int hbar_order = 0;
    int degree = -1;
    int samples = 30;
    int dump_pages = 0;
    long seed = 0;
    bool has_seed = false;
    bool selftest_patch_formula = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_degree, bool with_samples,
                bool with_pages) {
    cmd->add_option("input", args.path, "input description (JSON)")->required();
    cmd->add_flag("--json", args.json, "emit the machine-readable report");
    cmd->add_option("--hbar-order", args.hbar_order, "truncation order for hbar (default t0 + 3)");
    if (with_degree) cmd->add_option("--degree", args.degree, "restrict to a single degree");
    if (with_samples) cmd->add_option("--samples", args.samples, "sampled tuples per check");
    if (with_pages) cmd->add_option("--dump-pages", args.dump_pages, "dump pages up to this index");
    auto* seed = cmd->add_option("--seed", args.seed, "run seed (also: ABELIA_SEED, input file)");
    seed->each([&args](const std::string&) { args.has_seed = true; });
}

using Runner = abelia_status (*)(const abelia_input*, const abelia_options*, abelia_report**,
                                 char**);

int execute(const CommonArgs& args, Runner runner) {
    abelia_input* input = nullptr;
    char* err = nullptr;
    abelia_status st = abelia_input_parse_file(args.path.c_str(), &input, &err);
    if (st != ABELIA_OK) {
        std::fprintf(stderr, "error: %s\n", err ? err : "parse failure");
        abelia_string_free(err);
        return st;
    }
    abelia_options opts;
    abelia_options_init(&opts);
    opts.hbar_order = args.hbar_order;
    opts.degree = args.degree;
    opts.samples = args.samples;
    opts.dump_pages = args.dump_pages;
    opts.seed = args.seed;
    opts.has_seed = args.has_seed ? 1 : 0;
    opts.selftest_patch_formula = args.selftest_patch_formula ? 1 : 0;

    abelia_report* report = nullptr;
    st = runner(input, &opts, &report, &err);
    if (report) {
        std::fputs(args.json ? abelia_report_json(report) : abelia_report_text(report), stdout);
    } else if (err) {
        std::fprintf(stderr, "error: %s\n", err);
    }
    abelia_string_free(err);
    abelia_report_free(report);
    abelia_input_free(input);
    return st;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohomology of line bundles on Moyal quantizations of complex tori"};
    app.set_version_flag("--version", abelia_version());
    app.require_subcommand(1);

    CommonArgs va, ca, oa, ka, sa;
    CLI::App* validate = app.add_subcommand("validate", "check the input invariants");
    add_common(validate, va, false, false, false);
    CLI::App* cohomology =
        app.add_subcommand("cohomology", "closed-form cohomology modules per degree");
    add_common(cohomology, ca, true, false, false);
    CLI::App* oracle =
        app.add_subcommand("oracle", "three-way agreement: formula, Smith oracle, spectral oracle");
    add_common(oracle, oa, false, false, false);
    oracle
        ->add_flag("--selftest-patch-formula", oa.selftest_patch_formula,
                   "perturb the formula side to exercise the disagreement path")
        ->group("");  // hidden
    CLI::App* cocycles = app.add_subcommand("cocycles", "explicit basis cocycles and residuals");
    add_common(cocycles, ka, true, true, false);
    CLI::App* spectral = app.add_subcommand("spectral", "spectral sequence page dump");
    add_common(spectral, sa, false, false, true);

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return execute(va, abelia_run_validate);
    if (cohomology->parsed()) return execute(ca, abelia_run_cohomology);
    if (oracle->parsed()) return execute(oa, abelia_run_oracle);
    if (cocycles->parsed()) return execute(ka, abelia_run_cocycles);
    if (spectral->parsed()) return execute(sa, abelia_run_spectral);
    return 1;
}
