#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abelia/exterior.hpp"

using namespace abelia;

namespace {

GQ gq(long re, long im = 0) { return GQ(Rational(re), Rational(im)); }

QVector random_covector(std::mt19937_64& rng, unsigned g, bool nonzero = true) {
    std::uniform_int_distribution<long> d(-3, 3);
    for (;;) {
        QVector l(g);
        bool any = false;
        for (auto& c : l) {
            c = gq(d(rng), d(rng));
            any = any || !c.is_zero();
        }
        if (any || !nonzero) return l;
    }
}

}  // namespace

TEST_CASE("wedge on basis elements") {
    MultiVector e1 = MultiVector::basis_element(3, {1});
    MultiVector e2 = MultiVector::basis_element(3, {2});
    MultiVector w = wedge(e1, e2);
    CHECK(w.coeff({1, 2}) == gq(1));
    CHECK(wedge(e1, e1).is_zero());

    // (e1+e2) /\ (e1-e2) = -2 e1/\e2
    MultiVector a = e1 + e2;
    MultiVector b = e1 + e2.scaled(gq(-1));
    CHECK(wedge(a, b).coeff({1, 2}) == gq(-2));
}

TEST_CASE("wedge is bilinear associative and graded anticommutative") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-2, 2);
    const unsigned g = 4;
    auto random_mv = [&](unsigned degree) {
        MultiVector v(g, degree);
        for (const auto& idx : exterior_basis(g, degree)) v.add_term(idx, gq(d(rng), d(rng)));
        return v;
    };
    for (int trial = 0; trial < 30; ++trial) {
        unsigned da = rng() % 3, db = rng() % 3, dc = rng() % 2;
        MultiVector a = random_mv(da), b = random_mv(db), c = random_mv(dc);
        // graded sign
        MultiVector ab = wedge(a, b);
        MultiVector ba = wedge(b, a);
        int sign = (da * db) % 2 == 0 ? 1 : -1;
        CHECK(ab == ba.scaled(gq(sign)));
        // associativity
        if (da + db + dc <= g) CHECK(wedge(ab, c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("degree overflow clamps to zero") {
    MultiVector top = MultiVector::basis_element(2, {1, 2});
    MultiVector e1 = MultiVector::basis_element(2, {1});
    CHECK(wedge(top, e1).is_zero());
}

TEST_CASE("koszul kernel dimensions") {
    SUBCASE("g=2 j=1 kernel is the line through l") {
        QVector l{gq(1), gq(0)};
        CHECK(koszul_kernel_dim(l, 1, 2) == 1);
    }
    SUBCASE("g=3 j=2") {
        QVector l{gq(1), gq(2), gq(-1)};
        CHECK(koszul_kernel_dim(l, 2, 3) == 2);
    }
    SUBCASE("j=0 kernel is trivial") {
        QVector l{gq(2), gq(1)};
        CHECK(koszul_kernel_dim(l, 0, 2) == 0);
    }
    SUBCASE("zero covector rejected") {
        QVector l{gq(0), gq(0)};
        CHECK_THROWS_AS(koszul_kernel_dim(l, 1, 2), Error);
    }
}

TEST_CASE("koszul kernel matches binomial and the sequence is exact") {
    std::mt19937_64 rng(22);
    for (unsigned g = 1; g <= 5; ++g) {
        for (int trial = 0; trial < 4; ++trial) {
            QVector l = random_covector(rng, g);
            for (unsigned j = 0; j <= g; ++j) {
                unsigned k = koszul_kernel_dim(l, j, g);
                CHECK(k == binomial(g - 1, static_cast<long>(j) - 1));
                // exactness: ker at /\^j equals im from /\^{j-1}
                if (j >= 1) {
                    QMatrix prev = wedge_matrix(l, j - 1);
                    CHECK(rank(prev) == k);
                }
            }
        }
    }
}

TEST_CASE("hbar koszul oracle on frozen examples") {
    SUBCASE("g=2, l(h)=h*e1, j=1") {
        std::map<unsigned, QVector> series{{1, {gq(1), gq(0)}}};
        KoszulHbarComplex k(2, series, 4);
        CHECK(k.cohomology(1) == CohomologyModule::pure_torsion(1, 1));
        CHECK(k.cohomology(0).is_zero());
        CHECK(k.cohomology(2) == CohomologyModule::pure_torsion(1, 1));
    }
    SUBCASE("zero series gives free modules of binomial rank") {
        KoszulHbarComplex k(3, {}, 3);
        for (unsigned j = 0; j <= 3; ++j) {
            auto m = k.cohomology(j);
            CHECK(m.free_rank == binomial(3, j));
            CHECK(m.torsion.empty());
        }
    }
}

TEST_CASE("single term series gives pure torsion of binomial multiplicity") {
    // the library's central cross-check
    std::mt19937_64 rng(33);
    for (unsigned g = 1; g <= 5; ++g)
        for (unsigned t = 1; t <= 3; ++t) {
            QVector l = random_covector(rng, g);
            KoszulHbarComplex k(g, {{t, l}}, t + 3);
            for (unsigned j = 0; j <= g; ++j) {
                auto m = k.cohomology(j);
                CHECK(m.free_rank == 0);
                unsigned mult = binomial(g - 1, static_cast<long>(j) - 1);
                if (mult == 0)
                    CHECK(m.torsion.empty());
                else
                    CHECK(m == CohomologyModule::pure_torsion(t, mult));
            }
        }
}

TEST_CASE("oracle invariant under change of basis applied to the series") {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<long> d(-2, 2);
    const unsigned g = 3;
    for (int trial = 0; trial < 10; ++trial) {
        std::map<unsigned, QVector> series{{1, random_covector(rng, g)}, {2, random_covector(rng, g)}};
        // random invertible change of basis
        QMatrix chg(g, g);
        do {
            for (unsigned r = 0; r < g; ++r)
                for (unsigned c = 0; c < g; ++c) chg(r, c) = gq(d(rng), d(rng));
        } while (rank(chg) != g);
        // covectors transform by the transpose action
        std::map<unsigned, QVector> moved;
        for (const auto& [m, l] : series) {
            QVector nl(g);
            for (unsigned r = 0; r < g; ++r)
                for (unsigned c = 0; c < g; ++c) nl[r] += chg(c, r) * l[c];
            moved[m] = nl;
        }
        KoszulHbarComplex k1(g, series, 4), k2(g, moved, 4);
        for (unsigned j = 0; j <= g; ++j) CHECK(k1.cohomology(j) == k2.cohomology(j));
    }
}

TEST_CASE("higher series terms beyond the first nonzero do not change cohomology") {
    std::mt19937_64 rng(55);
    const unsigned g = 3;
    for (int trial = 0; trial < 8; ++trial) {
        QVector l = random_covector(rng, g);
        KoszulHbarComplex base(g, {{2, l}}, 5);
        KoszulHbarComplex noisy(g, {{2, l}, {3, random_covector(rng, g, false)}, {4, random_covector(rng, g, false)}}, 5);
        for (unsigned j = 0; j <= g; ++j) CHECK(base.cohomology(j) == noisy.cohomology(j));
    }
}
