#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abelia/theorems.hpp"

using namespace abelia;

namespace {

GQ gq(long re, long im = 0) { return GQ(Rational(re), Rational(im)); }

PeriodLattice standard_lattice(unsigned g) {
    PeriodLattice lat;
    lat.g = g;
    for (unsigned k = 0; k < g; ++k) {
        QVector v(g);
        v[k] = gq(1);
        lat.generators.push_back(v);
    }
    for (unsigned k = 0; k < g; ++k) {
        QVector v(g);
        v[k] = gq(0, 1);
        lat.generators.push_back(v);
    }
    return lat;
}

QuantumAHData make_data(unsigned g, std::vector<long> hdiag, std::map<unsigned, QVector> l_series) {
    QuantumAHData d;
    d.lattice = standard_lattice(g);
    d.ah.h.m = QMatrix(g, g);
    for (unsigned k = 0; k < g; ++k) d.ah.h.m(k, k) = gq(hdiag[k]);
    d.ah.chi.phases.assign(2 * g, Rational(0));
    d.l_series = std::move(l_series);
    d.poisson.m = QMatrix(g, g);
    return d;
}

}  // namespace

TEST_CASE("t and t0") {
    SUBCASE("empty series") {
        auto d = make_data(2, {0, 0}, {});
        CHECK(!compute_t(d));
        CHECK(!compute_t0(d));
        CHECK(make_context(d).constant_deformation);
    }
    SUBCASE("single order-2 term") {
        auto d = make_data(2, {0, 0}, {{2, {gq(1), gq(0)}}});
        CHECK(compute_t(d) == 2u);
        CHECK(compute_t0(d) == 2u);
    }
    SUBCASE("mixed orders with a vanishing restriction") {
        auto d = make_data(2, {1, 0}, {{1, {gq(1), gq(0)}}, {2, {gq(0), gq(1)}}});
        CHECK(compute_t(d) == 1u);
        CHECK(compute_t0(d) == 2u);
    }
}

TEST_CASE("closed-form cohomology") {
    SUBCASE("g=2 trivial bundle, t=1") {
        auto ctx = make_context(make_data(2, {0, 0}, {{1, {gq(1), gq(0)}}}));
        CHECK(ctx.tag() == CaseTag::Torsion);
        CHECK(cohomology(ctx, 0).is_zero());
        CHECK(cohomology(ctx, 1) == CohomologyModule::pure_torsion(1, 1));
        CHECK(cohomology(ctx, 2) == CohomologyModule::pure_torsion(1, 1));
    }
    SUBCASE("g=3 trivial bundle, t=3") {
        auto ctx = make_context(make_data(3, {0, 0, 0}, {{3, {gq(0), gq(0), gq(2)}}}));
        CHECK(cohomology(ctx, 0).is_zero());
        CHECK(cohomology(ctx, 1) == CohomologyModule::pure_torsion(3, 1));
        CHECK(cohomology(ctx, 2) == CohomologyModule::pure_torsion(3, 2));
        CHECK(cohomology(ctx, 3) == CohomologyModule::pure_torsion(3, 1));
        mpz_class dims[4] = {0, 3, 6, 3};
        for (unsigned j = 0; j <= 3; ++j) {
            auto m = cohomology(ctx, j);
            CHECK((m.is_zero() ? mpz_class(0) : m.dim_c()) == dims[j]);
        }
    }
    SUBCASE("g=2 semidefinite with t0=2") {
        auto ctx = make_context(make_data(2, {1, 0}, {{1, {gq(1), gq(0)}}, {2, {gq(0), gq(1)}}}));
        CHECK(ctx.tag() == CaseTag::Torsion);
        CHECK(cohomology(ctx, 0).is_zero());
        CHECK(cohomology(ctx, 1) == CohomologyModule::pure_torsion(2, 1));
        CHECK(cohomology(ctx, 2).is_zero());
    }
    SUBCASE("same form but vanishing restricted series: free case") {
        auto ctx = make_context(make_data(2, {1, 0}, {{1, {gq(1), gq(0)}}}));
        CHECK(ctx.tag() == CaseTag::Free);
        CHECK(cohomology(ctx, 0) == CohomologyModule::free(1));
        CHECK(cohomology(ctx, 1) == CohomologyModule::free(1));
        CHECK(cohomology(ctx, 2).is_zero());
    }
    SUBCASE("nontrivial character: everything vanishes") {
        auto d = make_data(2, {1, 0}, {{1, {gq(1), gq(1)}}});
        d.ah.chi.phases[1] = Rational(1);  // lambda_2 = e2 spans the subtorus directions
        auto ctx = make_context(d);
        CHECK(ctx.tag() == CaseTag::Vanishing);
        for (unsigned j = 0; j <= 2; ++j) CHECK(cohomology(ctx, j).is_zero());
    }
}

TEST_CASE("truncated module contrast") {
    // g=2 trivial bundle with t0 = 1: truncation sees free rank h^j over
    // C[h]/h, the quantum answer is strictly smaller in degree 1
    auto ctx = make_context(make_data(2, {0, 0}, {{1, {gq(1), gq(0)}}}));
    CHECK(truncated_cohomology(ctx, 1) == CohomologyModule::pure_torsion(1, 2));
    CHECK(cohomology(ctx, 1) == CohomologyModule::pure_torsion(1, 1));
    CHECK(truncated_cohomology(ctx, 0) == CohomologyModule::pure_torsion(1, 1));
    CHECK(cohomology(ctx, 0).is_zero());

    // t0 = 2 variant: dim_C 4 versus 2 in degree 1
    auto ctx2 = make_context(make_data(2, {0, 0}, {{2, {gq(1), gq(1)}}}));
    auto trunc = truncated_cohomology(ctx2, 1);
    CHECK(trunc == CohomologyModule::pure_torsion(2, 2));
    CHECK(trunc.dim_c() == 4);
    CHECK(cohomology(ctx2, 1).dim_c() == 2);

    auto free_ctx = make_context(make_data(2, {0, 0}, {}));
    CHECK_THROWS_AS(truncated_cohomology(free_ctx, 1), Error);
}

TEST_CASE("graded reconstruction peels the truncation echo") {
    std::vector<std::string> notes;
    // degree 1 holds torsion h^2 of multiplicity 1 (visible at p=0,1),
    // degree 0 sees its echo at the top two levels
    std::vector<std::map<int, std::size_t>> graded(2);
    graded[1] = {{0, 1}, {1, 1}};
    graded[0] = {{3, 1}, {4, 1}};
    auto mods = reconstruct_from_graded(graded, 5, notes);
    CHECK(notes.empty());
    CHECK(mods[1] == CohomologyModule::pure_torsion(2, 1));
    CHECK(mods[0].is_zero());

    // a free module shows a full column
    std::vector<std::map<int, std::size_t>> g2(1);
    for (int p = 0; p < 5; ++p) g2[0][p] = 3;
    auto m2 = reconstruct_from_graded(g2, 5, notes);
    CHECK(m2[0] == CohomologyModule::free(3));
    CHECK(notes.empty());

    // overlap: N = 5, torsion exponent 3 in degree 1 echoes into [2, 5)
    std::vector<std::map<int, std::size_t>> g3(2);
    g3[1] = {{0, 2}, {1, 2}, {2, 2}};
    g3[0] = {{0, 1}, {1, 1}, {2, 3}, {3, 2}, {4, 2}};  // true (1,1,1,0,0) + echo (0,0,2,2,2)
    auto m3 = reconstruct_from_graded(g3, 5, notes);
    CHECK(notes.empty());
    CHECK(m3[1] == CohomologyModule::pure_torsion(3, 2));
    CHECK(m3[0] == CohomologyModule::pure_torsion(3, 1));

    // the same exponent at N = 4 sits on the truncation boundary and is
    // flagged rather than read
    std::vector<std::map<int, std::size_t>> gb(1);
    gb[0] = {{0, 2}, {1, 2}, {2, 2}};
    reconstruct_from_graded(gb, 4, notes);
    CHECK(!notes.empty());
    notes.clear();

    // non-module profile is flagged
    std::vector<std::map<int, std::size_t>> g4(1);
    g4[0] = {{0, 1}, {2, 2}};
    reconstruct_from_graded(g4, 3, notes);
    CHECK(!notes.empty());
}

TEST_CASE("cross check: three routes agree on the frozen examples") {
    SUBCASE("g=2 trivial, t=1") {
        auto ctx = make_context(make_data(2, {0, 0}, {{1, {gq(1), gq(0)}}}));
        auto rep = cross_check(ctx, 4);
        CHECK(rep.all_agree);
        CHECK(rep.degeneration_page == 2);
        CHECK(rep.degrees[1].smith == CohomologyModule::pure_torsion(1, 1));
        CHECK(rep.degrees[1].spectral == CohomologyModule::pure_torsion(1, 1));
    }
    SUBCASE("g=2 semidefinite, t0=2, mixed orders") {
        auto ctx = make_context(make_data(2, {1, 0}, {{1, {gq(1), gq(0)}}, {2, {gq(0), gq(1)}}}));
        auto rep = cross_check(ctx, 5);
        CHECK(rep.all_agree);
        CHECK(rep.degeneration_page == 3);  // t0 + 1
        CHECK(rep.degrees[1].formula == CohomologyModule::pure_torsion(2, 1));
    }
    SUBCASE("free case degenerates on the first page") {
        auto ctx = make_context(make_data(2, {1, 0}, {{1, {gq(1), gq(0)}}}));
        auto rep = cross_check(ctx, 4);
        CHECK(rep.all_agree);
        CHECK(rep.degeneration_page == 1);
        CHECK(rep.degrees[0].formula == CohomologyModule::free(1));
        CHECK(rep.degrees[1].formula == CohomologyModule::free(1));
    }
    SUBCASE("vanishing case") {
        auto d = make_data(2, {1, 0}, {{1, {gq(0), gq(1)}}});
        d.ah.chi.phases[1] = Rational(1);
        auto rep = cross_check(make_context(d), 4);
        CHECK(rep.all_agree);
        for (const auto& dr : rep.degrees) {
            CHECK(dr.formula.is_zero());
            CHECK(dr.smith.is_zero());
            CHECK(dr.spectral.is_zero());
        }
    }
    SUBCASE("degree-2 bundle with a kernel direction") {
        // g=2, H = diag(2,0): hbar multiplicity 2, k = 0, g0 = 1
        auto ctx = make_context(make_data(2, {2, 0}, {{1, {gq(0), gq(1)}}}));
        CHECK(ctx.cls.hbar_mult == 2);
        auto rep = cross_check(ctx, 4);
        CHECK(rep.all_agree);
        CHECK(rep.degrees[1].formula == CohomologyModule::pure_torsion(1, 2));
        CHECK(rep.degrees[0].formula.is_zero());
    }
    SUBCASE("negative-definite direction shifts the index") {
        auto ctx = make_context(make_data(2, {-1, 0}, {{1, {gq(0), gq(1)}}}));
        CHECK(ctx.cls.k == 1);
        auto rep = cross_check(ctx, 4);
        CHECK(rep.all_agree);
        CHECK(rep.degrees[1].formula.is_zero());
        CHECK(rep.degrees[2].formula == CohomologyModule::pure_torsion(1, 1));
    }
    SUBCASE("guard on the truncation order") {
        auto ctx = make_context(make_data(2, {0, 0}, {{2, {gq(1), gq(0)}}}));
        CHECK_THROWS_AS(cross_check(ctx, 3), Error);
    }
    SUBCASE("patched formula surfaces a disagreement") {
        auto ctx = make_context(make_data(2, {0, 0}, {{1, {gq(1), gq(0)}}}));
        auto rep = cross_check(ctx, 4, true);
        CHECK(!rep.all_agree);
        CHECK(!rep.notes.empty());
    }
}

TEST_CASE("robustness invariants") {
    std::mt19937_64 rng(161803);
    std::uniform_int_distribution<long> sc(-2, 2);

    SUBCASE("splitting independence") {
        for (int trial = 0; trial < 10; ++trial) {
            auto d = make_data(3, {sc(rng) >= 0 ? 1 : -1, 0, 0},
                               {{1, {gq(sc(rng)), gq(1), gq(sc(rng))}}});
            auto a = make_context(d, false);
            auto b = make_context(d, true);
            for (unsigned j = 0; j <= 3; ++j) CHECK(cohomology(a, j) == cohomology(b, j));
        }
    }
    SUBCASE("higher series terms never matter") {
        for (int trial = 0; trial < 10; ++trial) {
            std::map<unsigned, QVector> base{{1, {gq(1), gq(sc(rng))}}};
            auto d1 = make_data(2, {0, 0}, base);
            auto noisy = base;
            noisy[2] = {gq(sc(rng)), gq(sc(rng))};
            noisy[4] = {gq(sc(rng)), gq(sc(rng))};
            auto d2 = make_data(2, {0, 0}, noisy);
            auto c1 = make_context(d1);
            auto c2 = make_context(d2);
            auto r1 = cross_check(c1, 4);
            auto r2 = cross_check(c2, 4);
            CHECK(r1.all_agree);
            CHECK(r2.all_agree);
            for (unsigned j = 0; j <= 2; ++j) {
                CHECK(cohomology(c1, j) == cohomology(c2, j));
                CHECK(r1.degrees[j].smith == r2.degrees[j].smith);
            }
        }
    }
    SUBCASE("truncation stability") {
        auto ctx = make_context(make_data(2, {0, 0}, {{2, {gq(1), gq(-1)}}}));
        auto base = cross_check(ctx, 4);
        for (unsigned order = 5; order <= 7; ++order) {
            auto rep = cross_check(ctx, order);
            CHECK(rep.all_agree);
            for (unsigned j = 0; j <= 2; ++j) {
                CHECK(rep.degrees[j].formula == base.degrees[j].formula);
                CHECK(rep.degrees[j].spectral == base.degrees[j].spectral);
            }
        }
    }
    SUBCASE("randomized fuzz: zero discrepancies") {
        int done = 0;
        for (int trial = 0; trial < 60 && done < 25; ++trial) {
            unsigned g = 2 + static_cast<unsigned>(rng() % 2);
            std::vector<long> hd(g, 0);
            for (auto& x : hd) x = sc(rng);
            std::map<unsigned, QVector> series;
            for (unsigned m = 1; m <= 2; ++m) {
                QVector l(g);
                bool nz = false;
                for (auto& x : l) {
                    x = gq(sc(rng), sc(rng));
                    nz = nz || !x.is_zero();
                }
                if (nz) series[m] = l;
            }
            QuantumAHData d = make_data(g, hd, series);
            // random admissible chi phases (integers keep chi|sub trivial or not)
            for (auto& p : d.ah.chi.phases) p = Rational(sc(rng));
            TheoremContext ctx;
            try {
                ctx = make_context(d);
            } catch (const Error&) {
                continue;
            }
            unsigned order = ctx.t0 ? *ctx.t0 + 2 : 3;
            auto rep = cross_check(ctx, order);
            CHECK(rep.all_agree);
            ++done;
        }
        CHECK(done >= 25);
    }
}
