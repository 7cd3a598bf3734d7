#pragma once

// Complex torus data: period lattice, Hermitian form with integral
// imaginary part, semicharacter, the degeneracy subtorus of the form, and
// the classical cohomology dimensions of the associated line bundle.

#include <optional>

#include "abelia/linalg.hpp"
#include "abelia/zlattice.hpp"

namespace abelia {

// Integer coordinates of a lattice element in the generator basis.
using LatticePoint = std::vector<long>;

struct PeriodLattice {
    unsigned g = 0;
    std::vector<QVector> generators;  // 2g vectors with g coordinates each

    // V-coordinates of sum n_i lambda_i.
    QVector coords(const LatticePoint& n) const;
    LatticePoint add(const LatticePoint& a, const LatticePoint& b) const;

    bool full_rank() const;
};

struct HermitianForm {
    QMatrix m;  // g x g, conjugate-symmetric

    // H(x, y), linear in x and conjugate-linear in y.
    GQ value(const QVector& x, const QVector& y) const;

    bool is_hermitian() const;
};

// E(lambda_i, lambda_j) = Im H(lambda_i, lambda_j) on the generators;
// throws a validation error unless every entry is an integer.
ZMatrix integral_alternating_form(const HermitianForm& h, const PeriodLattice& lat);

struct Semicharacter {
    std::vector<Rational> phases;  // chi(lambda_i) = exp(i pi phases[i])

    // Phase of chi at an arbitrary lattice point, extended by
    // chi(sum n_i l_i) = prod chi(l_i)^{n_i} * exp(i pi sum_{i<j} n_i n_j E_ij).
    Rational phase(const LatticePoint& n, const ZMatrix& e) const;
};

struct ClassicalAHData {
    HermitianForm h;
    Semicharacter chi;
};

struct DegeneracyData {
    unsigned g = 0;
    unsigned g0 = 0;
    QMatrix v0_basis;          // g x g0, kernel of the form
    QMatrix complement_basis;  // g x (g-g0)
    QMatrix s_matrix;          // g0 x g, coordinates of the splitting s
    ZMatrix lambda0_basis;     // 2g x 2g0, generator coordinates of the sublattice
    ZMatrix lambda_completion; // 2g x 2(g-g0), completes lambda0 to a lattice basis
};

// Kernel subtorus data; deterministic echelon choices throughout.  With
// alt_complement an alternative (still deterministic) complement is chosen,
// used by the splitting-independence checks.
DegeneracyData degeneracy_subtorus(const HermitianForm& h, const PeriodLattice& lat,
                                   bool alt_complement = false);

// Pullback of a covector along the inclusion of the kernel subspace; the
// pairing is <l, v> = sum l_i conj(v_i).
QVector restrict_covector(const QVector& l, const DegeneracyData& d);

// Negative inertia count of the descended nondegenerate Hermitian form.
unsigned index_k(const HermitianForm& h, const DegeneracyData& d);

struct ClassicalAnalysis {
    unsigned g0 = 0;
    unsigned k = 0;
    bool chi_trivial_on_sub = true;
    std::vector<mpz_class> quotient_divisors;
    mpz_class hbar_mult = 1;  // product of the divisors: h^k of the descended bundle
    std::vector<mpz_class> dims;  // h^0 .. h^g
};

ClassicalAnalysis classical_analysis(const ClassicalAHData& ah, const PeriodLattice& lat,
                                     const DegeneracyData& d);

std::vector<mpz_class> classical_dims(const ClassicalAHData& ah, const PeriodLattice& lat);

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate(const ClassicalAHData& ah, const PeriodLattice& lat);

QMatrix qmatrix_inverse(const QMatrix& m);

}  // namespace abelia
