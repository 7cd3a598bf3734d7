#pragma once

// The closed-form cohomology of line bundles on the quantized torus, with
// the two independent oracle routes (Smith normal form over the hbar
// polynomial ring, and the spectral sequence of the hbar filtration) and
// the three-way agreement report.

#include "abelia/exterior.hpp"
#include "abelia/groupcoh.hpp"
#include "abelia/spectral.hpp"

namespace abelia {

enum class CaseTag {
    Vanishing,  // chi nontrivial on the kernel subtorus
    Free,       // l(hbar)^0 = 0: constant-deformation-like, free modules
    Torsion,    // the generic case: pure hbar^{t0} torsion
};

std::string case_tag_name(CaseTag tag);

// Everything derived from the input that the theorems consume.
struct TheoremContext {
    QuantumAHData data;
    DegeneracyData deg;
    ClassicalAnalysis cls;
    std::optional<unsigned> t;
    std::optional<unsigned> t0;
    std::map<unsigned, QVector> l0_series;  // nonzero restrictions to the kernel directions
    bool constant_deformation = false;      // l(hbar) = 0 entirely

    CaseTag tag() const;
    unsigned g() const { return data.lattice.g; }
};

TheoremContext make_context(const QuantumAHData& data, bool alt_complement = false);

std::optional<unsigned> compute_t(const QuantumAHData& data);
std::optional<unsigned> compute_t0(const QuantumAHData& data);

// H^j as a module over power series in hbar, by the closed formulas.
CohomologyModule cohomology(const TheoremContext& ctx, unsigned degree);

// H^j of the reduction modulo hbar^s (s defaults to t0): a free module of
// rank h^j over the truncated ring, encoded as torsion {(s, h^j)} when
// viewed over power series.  Requires finite t0.
CohomologyModule truncated_cohomology(const TheoremContext& ctx, unsigned degree, unsigned s = 0);

struct DegreeReport {
    CohomologyModule formula;
    CohomologyModule smith;
    CohomologyModule spectral;
    bool agree = false;
};

struct CohomologyReport {
    CaseTag tag = CaseTag::Free;
    bool constant_deformation = false;
    std::optional<unsigned> t, t0;
    unsigned g0 = 0;
    unsigned k = 0;
    mpz_class hbar_mult = 1;
    unsigned order = 0;
    unsigned degeneration_page = 1;
    std::vector<DegreeReport> degrees;  // indexed by j = 0..g
    bool all_agree = false;
    std::vector<std::string> notes;
};

// The model complex the oracles run on: the exterior algebra of the kernel
// directions tensored with the classical multiplicity, shifted by the index.
struct ModelComplex {
    unsigned g0 = 0;
    unsigned k = 0;
    unsigned mult = 1;
    std::map<unsigned, QVector> series;
    FilteredComplex filtered(unsigned order) const;
    HbarPolyMatrix poly_differential(unsigned j) const;  // degree j of the ambient grading
};

ModelComplex model_complex(const TheoremContext& ctx);

// Run formula, Smith oracle and spectral oracle, reconstruct modules and
// compare.  Discrepancies are reported, never resolved silently.  With
// patch_formula_for_selftest the formula side is deliberately perturbed so
// the disagreement path can be exercised end to end.
CohomologyReport cross_check(const TheoremContext& ctx, unsigned order,
                             bool patch_formula_for_selftest = false);

// Module reconstruction from graded E_infinity dimensions, peeling the
// truncation echo of each degree's torsion out of the degree below.
// graded[j] maps filtration level p -> dimension.  Returns one module per
// degree and appends a note per anomaly.
std::vector<CohomologyModule> reconstruct_from_graded(
    const std::vector<std::map<int, std::size_t>>& graded, unsigned order,
    std::vector<std::string>& notes);

}  // namespace abelia
