#include "abelia/theorems.hpp"

namespace abelia {

std::string case_tag_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::Vanishing: return "vanishing (chi|Lambda0 != 1)";
        case CaseTag::Free: return "free (l(h)^0 = 0)";
        case CaseTag::Torsion: return "torsion";
    }
    return "?";
}

CaseTag TheoremContext::tag() const {
    if (!cls.chi_trivial_on_sub) return CaseTag::Vanishing;
    if (!t0) return CaseTag::Free;
    return CaseTag::Torsion;
}

TheoremContext make_context(const QuantumAHData& data, bool alt_complement) {
    TheoremContext ctx;
    ctx.data = data;
    if (!data.poisson.is_antisymmetric())
        throw Error(ErrorKind::Validation, "poisson bivector is not antisymmetric");
    if (!compatibility(data.ah.h, data.poisson))
        throw Error(ErrorKind::Validation, "quantum data violates the compatibility contraction");
    ctx.deg = degeneracy_subtorus(data.ah.h, data.lattice, alt_complement);
    ctx.cls = classical_analysis(data.ah, data.lattice, ctx.deg);
    ctx.constant_deformation = true;
    for (const auto& [m, l] : data.l_series) {
        bool zero = true;
        for (const auto& c : l) zero = zero && c.is_zero();
        if (zero) continue;
        ctx.constant_deformation = false;
        if (!ctx.t) ctx.t = m;
        QVector rest = restrict_covector(l, ctx.deg);
        bool rzero = true;
        for (const auto& c : rest) rzero = rzero && c.is_zero();
        if (!rzero) {
            if (!ctx.t0) ctx.t0 = m;
            ctx.l0_series[m] = rest;
        }
    }
    return ctx;
}

std::optional<unsigned> compute_t(const QuantumAHData& data) { return make_context(data).t; }
std::optional<unsigned> compute_t0(const QuantumAHData& data) { return make_context(data).t0; }

namespace {

CohomologyModule scaled_module(CohomologyModule m, const mpz_class& mult) {
    if (mult == 0) return CohomologyModule();
    if (!mult.fits_uint_p()) throw Error(ErrorKind::Internal, "multiplicity overflow");
    unsigned c = static_cast<unsigned>(mult.get_ui());
    CohomologyModule out;
    out.free_rank = m.free_rank * c;
    for (const auto& [a, k] : m.torsion) out.torsion[a] = k * c;
    return out;
}

}  // namespace

CohomologyModule cohomology(const TheoremContext& ctx, unsigned degree) {
    if (degree > ctx.g()) return CohomologyModule();
    switch (ctx.tag()) {
        case CaseTag::Vanishing:
            return CohomologyModule();
        case CaseTag::Free: {
            if (!ctx.cls.dims[degree].fits_uint_p())
                throw Error(ErrorKind::Internal, "classical dimension overflow");
            return CohomologyModule::free(static_cast<unsigned>(ctx.cls.dims[degree].get_ui()));
        }
        case CaseTag::Torsion: {
            unsigned t0 = *ctx.t0;
            long i = static_cast<long>(degree) - static_cast<long>(ctx.cls.k) - 1;
            unsigned g0 = ctx.deg.g0;
            if (i < 0 || i > static_cast<long>(g0) - 1) return CohomologyModule();
            // multiplicity by the wedge-rank route, then checked against the binomial
            const QVector& lt0 = ctx.l0_series.at(t0);
            QMatrix w = wedge_matrix(lt0, static_cast<unsigned>(i));
            std::size_t r = rank(w);
            if (r != binomial(g0 - 1, i))
                throw Error(ErrorKind::Internal,
                            "wedge rank disagrees with the binomial multiplicity formula");
            mpz_class mult = mpz_class(static_cast<unsigned long>(r)) * ctx.cls.hbar_mult;
            if (!mult.fits_uint_p()) throw Error(ErrorKind::Internal, "multiplicity overflow");
            return CohomologyModule::pure_torsion(t0, static_cast<unsigned>(mult.get_ui()));
        }
    }
    return CohomologyModule();
}

CohomologyModule truncated_cohomology(const TheoremContext& ctx, unsigned degree, unsigned s) {
    if (!ctx.t0)
        throw Error(ErrorKind::Validation,
                    "truncated cohomology requires a finite t0 (nonzero restricted series)");
    if (s == 0) s = *ctx.t0;
    if (degree > ctx.g()) return CohomologyModule();
    const mpz_class& h = ctx.cls.dims[degree];
    if (!h.fits_uint_p()) throw Error(ErrorKind::Internal, "classical dimension overflow");
    return CohomologyModule::pure_torsion(s, static_cast<unsigned>(h.get_ui()));
}

HbarPolyMatrix ModelComplex::poly_differential(unsigned j) const {
    long jj = static_cast<long>(j) - static_cast<long>(k);
    std::size_t rows = binomial(g0, jj + 1) * mult;
    std::size_t cols = binomial(g0, jj) * mult;
    HbarPolyMatrix d(rows, cols);
    if (jj < 0 || jj >= static_cast<long>(g0)) return d;
    std::size_t br = binomial(g0, jj + 1);
    std::size_t bc = binomial(g0, jj);
    for (const auto& [m, l] : series) {
        QMatrix w = wedge_matrix(l, static_cast<unsigned>(jj));
        for (std::size_t r = 0; r < br; ++r)
            for (std::size_t c = 0; c < bc; ++c) {
                if (w(r, c).is_zero()) continue;
                for (unsigned u = 0; u < mult; ++u)
                    d(u * br + r, u * bc + c) += HbarPoly::hbar_power(m, w(r, c));
            }
    }
    return d;
}

FilteredComplex ModelComplex::filtered(unsigned order) const {
    FilteredComplex c;
    unsigned top = k + g0;
    c.levels.resize(top + 1);
    for (unsigned j = 0; j <= top; ++j) {
        if (j < k) continue;
        std::size_t base = binomial(g0, static_cast<long>(j - k)) * mult;
        for (std::size_t b = 0; b < base; ++b)
            for (unsigned p = 0; p < order; ++p) c.levels[j].push_back(static_cast<int>(p));
    }
    for (unsigned j = 0; j < top; ++j) {
        std::size_t rows = c.levels[j + 1].size();
        std::size_t cols = c.levels[j].size();
        QMatrix d(rows, cols);
        if (j >= k) {
            std::size_t br = binomial(g0, static_cast<long>(j - k) + 1) * mult;
            std::size_t bc = binomial(g0, static_cast<long>(j - k)) * mult;
            HbarPolyMatrix pd = poly_differential(j);
            for (std::size_t r = 0; r < br; ++r)
                for (std::size_t cc = 0; cc < bc; ++cc) {
                    const HbarPoly& e = pd(r, cc);
                    for (int dg = 0; dg <= e.degree(); ++dg) {
                        GQ coeff = e.coeff(dg);
                        if (coeff.is_zero()) continue;
                        for (unsigned p = 0; p + dg < order; ++p)
                            d(r * order + p + dg, cc * order + p) = coeff;
                    }
                }
        }
        c.d.push_back(std::move(d));
    }
    return c;
}

ModelComplex model_complex(const TheoremContext& ctx) {
    ModelComplex m;
    m.g0 = ctx.deg.g0;
    m.k = ctx.cls.k;
    if (!ctx.cls.chi_trivial_on_sub) {
        m.mult = 0;
        return m;
    }
    if (!ctx.cls.hbar_mult.fits_uint_p()) throw Error(ErrorKind::Internal, "multiplicity overflow");
    m.mult = static_cast<unsigned>(ctx.cls.hbar_mult.get_ui());
    m.series = ctx.l0_series;
    return m;
}

std::vector<CohomologyModule> reconstruct_from_graded(
    const std::vector<std::map<int, std::size_t>>& graded, unsigned order,
    std::vector<std::string>& notes) {
    std::vector<CohomologyModule> out(graded.size());
    for (std::size_t jj = graded.size(); jj-- > 0;) {
        std::vector<long> dims(order, 0);
        for (const auto& [p, dim] : graded[jj]) {
            if (p < 0 || p >= static_cast<int>(order)) {
                notes.push_back("degree " + std::to_string(jj) + ": level outside the hbar range");
                continue;
            }
            dims[p] = static_cast<long>(dim);
        }
        // peel the truncation echo of the torsion one degree up
        if (jj + 1 < graded.size()) {
            for (const auto& [a, m] : out[jj + 1].torsion)
                for (unsigned p = order - a; p < order; ++p) dims[p] -= static_cast<long>(m);
        }
        CohomologyModule mod;
        bool bad = false;
        for (unsigned p = 0; p < order; ++p)
            if (dims[p] < 0) bad = true;
        for (unsigned p = 0; p + 1 < order; ++p)
            if (dims[p] < dims[p + 1]) bad = true;
        if (bad) {
            notes.push_back("degree " + std::to_string(jj) +
                            ": graded profile is not a module profile after truncation peeling");
            out[jj] = mod;
            continue;
        }
        mod.free_rank = static_cast<unsigned>(dims[order - 1]);
        for (unsigned a = 1; a + 1 <= order; ++a) {
            long m = dims[a - 1] - dims[a];
            if (m <= 0) continue;
            if (a + 1 == order) {
                notes.push_back("degree " + std::to_string(jj) +
                                ": torsion at the truncation boundary; raise the hbar order");
                continue;
            }
            mod.torsion[a] = static_cast<unsigned>(m);
        }
        out[jj] = mod;
    }
    return out;
}

CohomologyReport cross_check(const TheoremContext& ctx, unsigned order, bool patch_formula_for_selftest) {
    if (ctx.t0 && order < *ctx.t0 + 2)
        throw Error(ErrorKind::Validation, "truncation too small: need hbar order at least t0 + 2 = " +
                                               std::to_string(*ctx.t0 + 2));
    CohomologyReport rep;
    rep.tag = ctx.tag();
    rep.constant_deformation = ctx.constant_deformation;
    rep.t = ctx.t;
    rep.t0 = ctx.t0;
    rep.g0 = ctx.deg.g0;
    rep.k = ctx.cls.k;
    rep.hbar_mult = ctx.cls.hbar_mult;
    rep.order = order;

    unsigned g = ctx.g();
    ModelComplex model = model_complex(ctx);

    // Smith route on the polynomial model
    std::vector<CohomologyModule> smith(g + 1);
    if (model.mult > 0) {
        KoszulHbarComplex kz(model.g0, model.series, order);
        for (unsigned j = 0; j <= g; ++j) {
            long jj = static_cast<long>(j) - static_cast<long>(model.k);
            if (jj < 0 || jj > static_cast<long>(model.g0)) continue;
            smith[j] = scaled_module(kz.cohomology(static_cast<unsigned>(jj)), model.mult);
        }
    }

    // spectral route on the filtered model
    std::vector<CohomologyModule> spectral(g + 1);
    rep.degeneration_page = 1;
    if (model.mult > 0) {
        SpectralEngine engine(model.filtered(order));
        rep.degeneration_page = engine.degeneration_page();
        auto einf = engine.einf_dims();
        std::vector<std::map<int, std::size_t>> graded(g + 1);
        for (const auto& [pq, dim] : einf) {
            int n = pq.first + pq.second;
            if (n >= 0 && n <= static_cast<int>(g)) graded[n][pq.first] = dim;
        }
        spectral = reconstruct_from_graded(graded, order, rep.notes);
    }

    rep.degrees.resize(g + 1);
    rep.all_agree = true;
    for (unsigned j = 0; j <= g; ++j) {
        DegreeReport& dr = rep.degrees[j];
        dr.formula = cohomology(ctx, j);
        if (patch_formula_for_selftest && !dr.formula.is_zero()) dr.formula.free_rank += 1;
        if (patch_formula_for_selftest && dr.formula.is_zero() && j == std::min(g, ctx.cls.k + 1))
            dr.formula.free_rank += 1;
        dr.smith = smith[j];
        dr.spectral = spectral[j];
        dr.agree = (dr.formula == dr.smith) && (dr.formula == dr.spectral);
        if (!dr.agree) {
            rep.all_agree = false;
            rep.notes.push_back("degree " + std::to_string(j) + ": formula=" + dr.formula.str() +
                                " smith=" + dr.smith.str() + " spectral=" + dr.spectral.str());
        }
    }

    // the nonzero range promised by the theorems, asserted after the fact
    if (rep.tag == CaseTag::Torsion && !patch_formula_for_selftest) {
        for (unsigned j = 0; j <= g; ++j) {
            bool in_range = j >= ctx.cls.k + 1 && j <= ctx.cls.k + ctx.deg.g0;
            if (!rep.degrees[j].formula.is_zero() && !in_range) {
                rep.all_agree = false;
                rep.notes.push_back("degree " + std::to_string(j) + ": nonzero outside the predicted range");
            }
        }
    }
    return rep;
}

}  // namespace abelia
