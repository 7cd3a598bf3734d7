#include "abelia/abelia.h"

#include <cstdlib>
#include <cstring>

#include "abelia/io.hpp"

using namespace abelia;

struct abelia_input {
    InputDescription desc;
};

struct abelia_report {
    std::string json;
    std::string text;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

abelia_status status_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Parse: return ABELIA_ERR_PARSE;
        case ErrorKind::Validation: return ABELIA_ERR_VALIDATION;
        case ErrorKind::Disagreement: return ABELIA_ERR_DISAGREEMENT;
        default: return ABELIA_ERR_INTERNAL;
    }
}

RunOptions convert(const abelia_options* opts, const abelia_input* input) {
    RunOptions r;
    if (opts) {
        if (opts->hbar_order > 0) r.hbar_order = static_cast<unsigned>(opts->hbar_order);
        if (opts->degree >= 0) r.degree = opts->degree;
        if (opts->samples > 0) r.samples = static_cast<unsigned>(opts->samples);
        if (opts->dump_pages > 0) r.dump_pages = static_cast<unsigned>(opts->dump_pages);
        if (opts->has_seed) r.seed = opts->seed;
        r.selftest_patch_formula = opts->selftest_patch_formula != 0;
    }
    if (!r.seed) {
        if (const char* env = std::getenv("ABELIA_SEED")) {
            try {
                r.seed = std::stol(env);
            } catch (...) {
                throw Error(ErrorKind::Parse, "ABELIA_SEED is not an integer");
            }
        }
    }
    (void)input;
    return r;
}

template <typename F>
abelia_status run_command(F&& fn, const abelia_input* input, const abelia_options* opts,
                          abelia_report** out, char** errmsg) {
    if (out) *out = nullptr;
    if (errmsg) *errmsg = nullptr;
    if (!input) {
        if (errmsg) *errmsg = dup_string("null input");
        return ABELIA_ERR_INTERNAL;
    }
    try {
        RunOptions ropts = convert(opts, input);
        RunResult res = fn(input->desc, ropts);
        if (out) *out = new abelia_report{res.json(), res.text};
        return static_cast<abelia_status>(res.status);
    } catch (const Error& e) {
        if (errmsg) *errmsg = dup_string(e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        if (errmsg) *errmsg = dup_string(e.what());
        return ABELIA_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

void abelia_options_init(abelia_options* opts) {
    if (!opts) return;
    opts->hbar_order = 0;
    opts->degree = -1;
    opts->samples = 30;
    opts->dump_pages = 0;
    opts->seed = 0;
    opts->has_seed = 0;
    opts->selftest_patch_formula = 0;
}

const char* abelia_version(void) { return kVersion; }

abelia_status abelia_input_parse(const char* json_text, abelia_input** out, char** errmsg) {
    if (out) *out = nullptr;
    if (errmsg) *errmsg = nullptr;
    if (!json_text) {
        if (errmsg) *errmsg = dup_string("null input text");
        return ABELIA_ERR_PARSE;
    }
    try {
        auto desc = parse_input(json_text);
        if (out) *out = new abelia_input{std::move(desc)};
        return ABELIA_OK;
    } catch (const Error& e) {
        if (errmsg) *errmsg = dup_string(e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        if (errmsg) *errmsg = dup_string(e.what());
        return ABELIA_ERR_INTERNAL;
    }
}

abelia_status abelia_input_parse_file(const char* path, abelia_input** out, char** errmsg) {
    if (out) *out = nullptr;
    if (errmsg) *errmsg = nullptr;
    if (!path) {
        if (errmsg) *errmsg = dup_string("null path");
        return ABELIA_ERR_PARSE;
    }
    try {
        auto desc = parse_input_file(path);
        if (out) *out = new abelia_input{std::move(desc)};
        return ABELIA_OK;
    } catch (const Error& e) {
        if (errmsg) *errmsg = dup_string(e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        if (errmsg) *errmsg = dup_string(e.what());
        return ABELIA_ERR_INTERNAL;
    }
}

void abelia_input_free(abelia_input* input) { delete input; }

abelia_status abelia_run_validate(const abelia_input* input, const abelia_options* opts,
                                  abelia_report** out, char** errmsg) {
    return run_command(run_validate, input, opts, out, errmsg);
}

abelia_status abelia_run_cohomology(const abelia_input* input, const abelia_options* opts,
                                    abelia_report** out, char** errmsg) {
    return run_command(run_cohomology, input, opts, out, errmsg);
}

abelia_status abelia_run_oracle(const abelia_input* input, const abelia_options* opts,
                                abelia_report** out, char** errmsg) {
    return run_command(run_oracle, input, opts, out, errmsg);
}

abelia_status abelia_run_cocycles(const abelia_input* input, const abelia_options* opts,
                                  abelia_report** out, char** errmsg) {
    return run_command(run_cocycles, input, opts, out, errmsg);
}

abelia_status abelia_run_spectral(const abelia_input* input, const abelia_options* opts,
                                  abelia_report** out, char** errmsg) {
    return run_command(run_spectral, input, opts, out, errmsg);
}

const char* abelia_report_json(const abelia_report* report) {
    return report ? report->json.c_str() : nullptr;
}

const char* abelia_report_text(const abelia_report* report) {
    return report ? report->text.c_str() : nullptr;
}

void abelia_report_free(abelia_report* report) { delete report; }

void abelia_string_free(char* s) { std::free(s); }

}  // extern "C"
