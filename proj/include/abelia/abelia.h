#ifndef ABELIA_H
#define ABELIA_H

/* C interface to the abelia library: cohomology of line bundles on Moyal
 * quantizations of complex tori from quantum Appell-Humbert data.
 *
 * All objects are opaque; every entry point returns a status code.  Status
 * values double as the CLI exit-code contract:
 *   0 success, 1 internal fault, 2 validation failure, 3 parse failure,
 *   4 oracle disagreement.
 * On failure *errmsg (when non-NULL) receives a heap string the caller
 * frees with abelia_string_free.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum abelia_status {
    ABELIA_OK = 0,
    ABELIA_ERR_INTERNAL = 1,
    ABELIA_ERR_VALIDATION = 2,
    ABELIA_ERR_PARSE = 3,
    ABELIA_ERR_DISAGREEMENT = 4
} abelia_status;

typedef struct abelia_input abelia_input;
typedef struct abelia_report abelia_report;

typedef struct abelia_options {
    /* truncation order for hbar; 0 picks the default t0 + 3 */
    int hbar_order;
    /* restrict table output to one degree; -1 means all degrees */
    int degree;
    /* sampled tuples per identity check */
    int samples;
    /* page dump limit for the spectral command; 0 dumps to stability */
    int dump_pages;
    /* run seed; effective when has_seed is nonzero.  The ABELIA_SEED
     * environment variable, when set, takes precedence over the input
     * file's seed but not over an explicit option. */
    long seed;
    int has_seed;
    /* deliberately perturb the closed-form side of the oracle command so
     * the disagreement path can be exercised */
    int selftest_patch_formula;
} abelia_options;

void abelia_options_init(abelia_options* opts);

const char* abelia_version(void);

/* Parse a JSON input description. */
abelia_status abelia_input_parse(const char* json_text, abelia_input** out, char** errmsg);
abelia_status abelia_input_parse_file(const char* path, abelia_input** out, char** errmsg);
void abelia_input_free(abelia_input* input);

/* Commands.  Each produces a report even for validation failures (status 2)
 * and oracle disagreements (status 4); *out is NULL only on parse or
 * internal errors. */
abelia_status abelia_run_validate(const abelia_input* input, const abelia_options* opts,
                                  abelia_report** out, char** errmsg);
abelia_status abelia_run_cohomology(const abelia_input* input, const abelia_options* opts,
                                    abelia_report** out, char** errmsg);
abelia_status abelia_run_oracle(const abelia_input* input, const abelia_options* opts,
                                abelia_report** out, char** errmsg);
abelia_status abelia_run_cocycles(const abelia_input* input, const abelia_options* opts,
                                  abelia_report** out, char** errmsg);
abelia_status abelia_run_spectral(const abelia_input* input, const abelia_options* opts,
                                  abelia_report** out, char** errmsg);

/* Report accessors; returned pointers live as long as the report. */
const char* abelia_report_json(const abelia_report* report);
const char* abelia_report_text(const abelia_report* report);
void abelia_report_free(abelia_report* report);

void abelia_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ABELIA_H */
