#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abelia/torus.hpp"

using namespace abelia;

namespace {

GQ gq(long re, long im = 0) { return GQ(Rational(re), Rational(im)); }

// standard lattice Z^g + i Z^g: generators e_1..e_g, i e_1..i e_g
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

HermitianForm diag_form(std::vector<long> d) {
    HermitianForm h;
    h.m = QMatrix(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) h.m(k, k) = gq(d[k]);
    return h;
}

Semicharacter trivial_chi(unsigned g) {
    Semicharacter chi;
    chi.phases.assign(2 * g, Rational(0));
    return chi;
}

}  // namespace

TEST_CASE("validation of standard data") {
    PeriodLattice lat = standard_lattice(2);
    ClassicalAHData ah{diag_form({1, 0}), trivial_chi(2)};
    CHECK(validate(ah, lat).ok());

    SUBCASE("half-integral form is flagged") {
        ClassicalAHData bad = ah;
        bad.h.m(0, 0) = GQ(Rational(1, 2));
        auto rep = validate(bad, lat);
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].code == "integrality");
    }
    SUBCASE("non-hermitian matrix is flagged") {
        ClassicalAHData bad = ah;
        bad.h.m(0, 1) = gq(1);
        auto rep = validate(bad, lat);
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].code == "hermitian");
    }
    SUBCASE("degenerate lattice is flagged") {
        PeriodLattice bad = lat;
        bad.generators[2] = bad.generators[0];
        auto rep = validate(ah, bad);
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].code == "lattice");
    }
}

TEST_CASE("semicharacter extension rule is a twisted homomorphism") {
    PeriodLattice lat = standard_lattice(2);
    HermitianForm h = diag_form({2, 1});
    ZMatrix e = integral_alternating_form(h, lat);
    Semicharacter chi;
    chi.phases = {Rational(1, 2), Rational(0), Rational(1), Rational(1, 3)};

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        LatticePoint a(4), b(4);
        for (auto& x : a) x = d(rng);
        for (auto& x : b) x = d(rng);
        // chi(a+b) = chi(a) chi(b) exp(i pi E(a,b)) as phases mod 2
        Rational lhs = chi.phase(lat.add(a, b), e);
        Rational ebil(0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) ebil += Rational(e(i, j).value()) * a[i] * b[j];
        Rational rhs = chi.phase(a, e) + chi.phase(b, e) + ebil;
        Rational diff = lhs - rhs;
        CHECK(diff.get_den() == 1);
        CHECK(mpz_class(diff.get_num() % 2) == 0);
    }
}

TEST_CASE("degeneracy subtorus") {
    SUBCASE("H = 0 gives the whole torus") {
        PeriodLattice lat = standard_lattice(2);
        auto d = degeneracy_subtorus(diag_form({0, 0}), lat);
        CHECK(d.g0 == 2);
        CHECK(d.lambda0_basis.cols() == 4);
        CHECK(d.complement_basis.cols() == 0);
    }
    SUBCASE("H = diag(1,0) on the standard lattice") {
        PeriodLattice lat = standard_lattice(2);
        auto d = degeneracy_subtorus(diag_form({1, 0}), lat);
        REQUIRE(d.g0 == 1);
        // kernel = span{e2}
        CHECK(d.v0_basis(0, 0) == gq(0));
        CHECK(d.v0_basis(1, 0) == gq(1));
        CHECK(d.lambda0_basis.cols() == 2);
        // the sublattice is spanned by e2 and i e2: generator coords 2 and 4
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(d.lambda0_basis(0, c).is_zero());
            CHECK(d.lambda0_basis(2, c).is_zero());
        }
    }
    SUBCASE("nondegenerate H has a point subtorus") {
        PeriodLattice lat = standard_lattice(2);
        auto d = degeneracy_subtorus(diag_form({1, -1}), lat);
        CHECK(d.g0 == 0);
        CHECK(d.lambda0_basis.cols() == 0);
        CHECK(d.lambda_completion.cols() == 4);
    }
}

TEST_CASE("restrict covector to the kernel directions") {
    PeriodLattice lat = standard_lattice(2);
    auto d = degeneracy_subtorus(diag_form({1, 0}), lat);
    SUBCASE("H = 0 restriction is the identity") {
        auto d0 = degeneracy_subtorus(diag_form({0, 0}), lat);
        QVector l{gq(2, 1), gq(-1)};
        QVector r = restrict_covector(l, d0);
        CHECK(r == l);
    }
    SUBCASE("covector vanishing on e2") {
        QVector l{gq(1), gq(0)};
        QVector r = restrict_covector(l, d);
        REQUIRE(r.size() == 1);
        CHECK(r[0].is_zero());
    }
    SUBCASE("covector dual to e2") {
        QVector l{gq(0), gq(1)};
        QVector r = restrict_covector(l, d);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == gq(1));
    }
}

TEST_CASE("index of the descended form") {
    PeriodLattice lat2 = standard_lattice(2);
    SUBCASE("positive semidefinite") {
        auto d = degeneracy_subtorus(diag_form({1, 0}), lat2);
        CHECK(index_k(diag_form({1, 0}), d) == 0);
    }
    SUBCASE("signature (1,1)") {
        auto d = degeneracy_subtorus(diag_form({1, -1}), lat2);
        CHECK(index_k(diag_form({1, -1}), d) == 1);
    }
    SUBCASE("zero form on a point quotient") {
        auto d = degeneracy_subtorus(diag_form({0, 0}), lat2);
        CHECK(index_k(diag_form({0, 0}), d) == 0);
    }
    SUBCASE("index plus positive inertia fills the quotient dimension") {
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<long> c(-2, 2);
        for (int trial = 0; trial < 20; ++trial) {
            unsigned g = 3;
            HermitianForm h;
            h.m = QMatrix(g, g);
            for (unsigned r = 0; r < g; ++r) {
                h.m(r, r) = gq(c(rng));
                for (unsigned cc = r + 1; cc < g; ++cc) {
                    GQ v = gq(c(rng), c(rng));
                    h.m(r, cc) = v;
                    h.m(cc, r) = v.conj();
                }
            }
            PeriodLattice lat = standard_lattice(g);
            ZMatrix e;
            try {
                e = integral_alternating_form(h, lat);
            } catch (const Error&) {
                continue;  // only integral forms are admissible inputs
            }
            auto d = degeneracy_subtorus(h, lat);
            unsigned k = index_k(h, d);
            // recompute positive inertia by negating the form
            HermitianForm neg;
            neg.m = QMatrix(g, g);
            for (unsigned r = 0; r < g; ++r)
                for (unsigned cc = 0; cc < g; ++cc) neg.m(r, cc) = -h.m(r, cc);
            unsigned pos = index_k(neg, d);
            CHECK(k + pos == g - d.g0);
        }
    }
}

TEST_CASE("classical dimensions") {
    SUBCASE("trivial bundle") {
        PeriodLattice lat = standard_lattice(3);
        ClassicalAHData ah{diag_form({0, 0, 0}), trivial_chi(3)};
        auto dims = classical_dims(ah, lat);
        REQUIRE(dims.size() == 4);
        for (unsigned j = 0; j <= 3; ++j) CHECK(dims[j] == binomial(3, j));
    }
    SUBCASE("g=1 principal polarization squared") {
        // H = [2] on Z + iZ: E(l1, l2) = -2, divisors {2}, h^0 = 2
        PeriodLattice lat = standard_lattice(1);
        ClassicalAHData ah{diag_form({2}), trivial_chi(1)};
        auto d = degeneracy_subtorus(ah.h, lat);
        auto an = classical_analysis(ah, lat, d);
        CHECK(an.k == 0);
        CHECK(an.hbar_mult == 2);
        REQUIRE(an.dims.size() == 2);
        CHECK(an.dims[0] == 2);
        CHECK(an.dims[1] == 0);
    }
    SUBCASE("g=2 semidefinite diag(1,0)") {
        PeriodLattice lat = standard_lattice(2);
        ClassicalAHData ah{diag_form({1, 0}), trivial_chi(2)};
        auto d = degeneracy_subtorus(ah.h, lat);
        auto an = classical_analysis(ah, lat, d);
        CHECK(an.k == 0);
        CHECK(an.g0 == 1);
        CHECK(an.hbar_mult == 1);
        CHECK(an.dims == std::vector<mpz_class>{1, 1, 0});
    }
    SUBCASE("nontrivial character on the subtorus kills everything") {
        PeriodLattice lat = standard_lattice(2);
        Semicharacter chi;
        chi.phases = {Rational(0), Rational(1, 3), Rational(0), Rational(0)};
        ClassicalAHData ah{diag_form({1, 0}), chi};
        auto dims = classical_dims(ah, lat);
        for (const auto& v : dims) CHECK(v == 0);
    }
    SUBCASE("H = 0 has nonzero dims exactly for trivial chi") {
        PeriodLattice lat = standard_lattice(2);
        Semicharacter chi = trivial_chi(2);
        chi.phases[1] = Rational(2);  // still trivial mod 2
        ClassicalAHData ah{diag_form({0, 0}), chi};
        auto dims = classical_dims(ah, lat);
        CHECK(dims[0] == 1);
        chi.phases[1] = Rational(1);
        ClassicalAHData ah2{diag_form({0, 0}), chi};
        auto dims2 = classical_dims(ah2, lat);
        for (const auto& v : dims2) CHECK(v == 0);
    }
}

TEST_CASE("classical dims euler characteristic and lattice-basis invariance") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<long> pick(-1, 2);
    std::uniform_int_distribution<long> shear(-2, 2);
    for (int trial = 0; trial < 15; ++trial) {
        unsigned g = 2;
        PeriodLattice lat = standard_lattice(g);
        ClassicalAHData ah{diag_form({pick(rng), pick(rng)}), trivial_chi(g)};
        auto d = degeneracy_subtorus(ah.h, lat);
        auto an = classical_analysis(ah, lat, d);

        // alternating binomial sum vanishes when g0 >= 1 and dims are nonzero
        if (an.g0 >= 1 && an.chi_trivial_on_sub) {
            mpz_class euler = 0;
            for (unsigned j = 0; j < an.dims.size(); ++j)
                euler += (j % 2 == 0 ? an.dims[j] : -an.dims[j]);
            CHECK(euler == 0);
        }

        // random unimodular change of generators leaves the dims alone
        PeriodLattice moved = lat;
        Semicharacter moved_chi = ah.chi;
        for (int ops = 0; ops < 5; ++ops) {
            std::size_t i = rng() % (2 * g), j = rng() % (2 * g);
            if (i == j) continue;
            long f = shear(rng);
            // lambda_i += f * lambda_j, and chi transforms by the extension rule
            LatticePoint n(2 * g, 0);
            n[i] = 1;
            n[j] = f;
            moved_chi.phases[i] = moved_chi.phase(n, integral_alternating_form(ah.h, moved));
            for (unsigned c = 0; c < g; ++c)
                moved.generators[i][c] += moved.generators[j][c] * GQ(f);
        }
        ClassicalAHData moved_ah{ah.h, moved_chi};
        CHECK(classical_dims(moved_ah, moved) == an.dims);
    }
}
