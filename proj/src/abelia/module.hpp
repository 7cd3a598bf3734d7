#pragma once

// Isomorphism classes of finitely generated modules over the formal power
// series ring in hbar: a free rank plus a multiset of hbar-power torsion
// exponents.  By the structure theorem this normal form is a complete
// invariant, so module comparison is plain equality here.

#include <map>

#include "abelia/euclid.hpp"
#include "abelia/linalg.hpp"

namespace abelia {

struct CohomologyModule {
    unsigned free_rank = 0;
    // exponent a >= 1  ->  multiplicity >= 1
    std::map<unsigned, unsigned> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }

    unsigned torsion_count() const {
        unsigned n = 0;
        for (const auto& [a, m] : torsion) n += m;
        return n;
    }

    // dim over C of the reduction modulo hbar^N, N at least every exponent.
    mpz_class dim_at_order(unsigned order) const {
        mpz_class d = mpz_class(free_rank) * order;
        for (const auto& [a, m] : torsion) {
            if (a > order)
                throw Error(ErrorKind::Internal, "dim_at_order below a torsion exponent");
            d += mpz_class(a) * m;
        }
        return d;
    }

    // dim over C when pure torsion; the free part makes it infinite.
    bool finite_dimensional() const { return free_rank == 0; }
    mpz_class dim_c() const {
        if (!finite_dimensional())
            throw Error(ErrorKind::Internal, "dim_c of a module with free part");
        mpz_class d = 0;
        for (const auto& [a, m] : torsion) d += mpz_class(a) * m;
        return d;
    }

    friend bool operator==(const CohomologyModule& x, const CohomologyModule& y) {
        return x.free_rank == y.free_rank && x.torsion == y.torsion;
    }
    friend bool operator!=(const CohomologyModule& x, const CohomologyModule& y) { return !(x == y); }

    static CohomologyModule free(unsigned rank) {
        CohomologyModule m;
        m.free_rank = rank;
        return m;
    }
    static CohomologyModule pure_torsion(unsigned exponent, unsigned mult) {
        CohomologyModule m;
        if (mult > 0) m.torsion[exponent] = mult;
        return m;
    }

    std::string str() const;
};

using HbarPolyMatrix = Matrix<HbarPoly>;

// ker(d_next) / im(d_prev) over the hbar-polynomial ring, localized at the
// ideal (hbar): elementary divisors are reported through their hbar-adic
// valuation only, since prime-to-hbar factors become units over power
// series.  d_prev maps into the middle term, d_next maps out of it; their
// composite must vanish.
CohomologyModule complex_cohomology_over_pid(const HbarPolyMatrix& d_prev, const HbarPolyMatrix& d_next);

}  // namespace abelia
