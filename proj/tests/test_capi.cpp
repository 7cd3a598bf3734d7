// Exercises the shared-library surface exactly the way an external client
// would: opaque handles, status codes, and report strings.

#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "abelia/abelia.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            std::fprintf(stderr, "FAILED %s at line %d\n", #cond, __LINE__); \
            return 1;                                                   \
        }                                                               \
    } while (0)

namespace {

const char* kInput = R"({
  "g": 2,
  "lattice": [[1, 0], [0, 1], [[0, 1], 0], [0, [0, 1]]],
  "H": [[0, 0], [0, 0]],
  "chi": [0, 0, 0, 0],
  "poisson": [[0, 1], [-1, 0]],
  "l_series": {"1": [1, 0]}
})";

}  // namespace

int main() {
    CHECK(std::strcmp(abelia_version(), "1.0.0") == 0);

    abelia_options opts;
    abelia_options_init(&opts);
    CHECK(opts.degree == -1);

    // parse failure surfaces status 3 and a message
    abelia_input* input = nullptr;
    char* err = nullptr;
    abelia_status st = abelia_input_parse("{", &input, &err);
    CHECK(st == ABELIA_ERR_PARSE);
    CHECK(input == nullptr);
    CHECK(err != nullptr);
    abelia_string_free(err);
    err = nullptr;

    st = abelia_input_parse(kInput, &input, &err);
    CHECK(st == ABELIA_OK);
    CHECK(input != nullptr);

    abelia_report* report = nullptr;
    st = abelia_run_validate(input, &opts, &report, &err);
    CHECK(st == ABELIA_OK);
    CHECK(report != nullptr);
    CHECK(std::strstr(abelia_report_text(report), "valid") != nullptr);
    abelia_report_free(report);
    report = nullptr;

    st = abelia_run_cohomology(input, &opts, &report, &err);
    CHECK(st == ABELIA_OK);
    std::string json = abelia_report_json(report);
    CHECK(json.find("\"structure\": \"C[h]/h\"") != std::string::npos);
    abelia_report_free(report);
    report = nullptr;

    st = abelia_run_oracle(input, &opts, &report, &err);
    CHECK(st == ABELIA_OK);
    CHECK(std::strstr(abelia_report_text(report), "all routes agree") != nullptr);
    abelia_report_free(report);
    report = nullptr;

    opts.selftest_patch_formula = 1;
    st = abelia_run_oracle(input, &opts, &report, &err);
    CHECK(st == ABELIA_ERR_DISAGREEMENT);
    CHECK(report != nullptr);  // the disagreement still produces a report
    abelia_report_free(report);
    report = nullptr;
    opts.selftest_patch_formula = 0;

    opts.degree = 1;
    opts.samples = 10;
    st = abelia_run_cocycles(input, &opts, &report, &err);
    CHECK(st == ABELIA_OK);
    CHECK(std::strstr(abelia_report_json(report), "\"all_residuals_zero\": true") != nullptr);
    abelia_report_free(report);
    report = nullptr;

    st = abelia_run_spectral(input, &opts, &report, &err);
    CHECK(st == ABELIA_OK);
    CHECK(std::strstr(abelia_report_text(report), "degeneration page: 2") != nullptr);
    abelia_report_free(report);
    abelia_input_free(input);

    // validation failure: same shape, incompatible bivector
    const char* bad = R"({
      "g": 2,
      "lattice": [[1, 0], [0, 1], [[0, 1], 0], [0, [0, 1]]],
      "H": [[1, 0], [0, 1]],
      "chi": [0, 0, 0, 0],
      "poisson": [[0, 1], [-1, 0]]
    })";
    st = abelia_input_parse(bad, &input, &err);
    CHECK(st == ABELIA_OK);
    st = abelia_run_validate(input, &opts, &report, &err);
    CHECK(st == ABELIA_ERR_VALIDATION);
    CHECK(report != nullptr);
    abelia_report_free(report);
    abelia_input_free(input);

    std::puts("c api: all checks passed");
    return 0;
}
