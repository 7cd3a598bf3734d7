#pragma once

// Input parsing and report construction.  One JSON schema in, one JSON
// report schema out; exact rationals travel as strings so no value ever
// touches floating point.  Reports are deterministic: identical input and
// seed give byte-identical documents.

#include <json.hpp>

#include "abelia/theorems.hpp"

namespace abelia {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchema = 1;

struct InputDescription {
    QuantumAHData data;
    std::optional<unsigned> hbar_order;
    std::optional<long> seed;
};

InputDescription parse_input(const std::string& text);
InputDescription parse_input_file(const std::string& path);

struct RunOptions {
    std::optional<unsigned> hbar_order;
    std::optional<int> degree;
    unsigned samples = 30;
    unsigned dump_pages = 0;
    std::optional<long> seed;
    bool selftest_patch_formula = false;
};

struct RunResult {
    int status = 0;  // 0 ok, 2 validation failure, 4 oracle disagreement
    nlohmann::ordered_json doc;
    std::string text;

    std::string json() const;
};

RunResult run_validate(const InputDescription& input, const RunOptions& opts);
RunResult run_cohomology(const InputDescription& input, const RunOptions& opts);
RunResult run_oracle(const InputDescription& input, const RunOptions& opts);
RunResult run_cocycles(const InputDescription& input, const RunOptions& opts);
RunResult run_spectral(const InputDescription& input, const RunOptions& opts);

// default truncation order: t0 + 3 when finite, else t + 3, else 3
unsigned default_order(const TheoremContext& ctx);

long resolve_seed(const RunOptions& opts, const InputDescription& input);

}  // namespace abelia
