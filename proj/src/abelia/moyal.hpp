#pragma once

// Symbolic holomorphic functions of the form
//     sum_t  P_t(v) * exp( pi * (<A_t, v> + c_t) )
// with P_t a polynomial in v_1..v_g over truncated hbar-series, A_t a Q(i)
// covector and c_t a Q(i) constant.  The class is closed under addition,
// multiplication, translation and the Moyal star product to a fixed hbar
// order.  Normal form: terms are keyed by (A, c) with the imaginary part of
// c reduced modulo 2 and half-integer phases folded into the coefficient as
// powers of i; equality of normal forms is the equality test used by every
// identity check in the project.
//
// Moyal corrections exp(hbar pi^2 Pi(A,B)) are expanded into the series
// coefficients, so exponents never carry hbar.  Exponent data stays within
// pi-degree 1; series coefficients may pick up higher pi powers, at most
// two per hbar order.

#include <map>

#include "abelia/scalar.hpp"
#include "abelia/torus.hpp"

namespace abelia {

struct PoissonBivector {
    QMatrix m;  // g x g antisymmetric

    bool is_antisymmetric() const;
    // Pi(a, b) = sum Pi^{uv} a_u b_v
    GQ pair(const QVector& a, const QVector& b) const;
};

// Contraction H^T Pi H = 0: the classification constraint for quantum
// Appell-Humbert data.
bool compatibility(const HermitianForm& h, const PoissonBivector& pi);

using Monomial = std::vector<unsigned>;

// Polynomial in n variables with hbar-series coefficients.
class VPoly {
  public:
    VPoly(unsigned nvars, unsigned order) : nvars_(nvars), order_(order) {}

    static VPoly constant(unsigned nvars, HbarSeries s);
    static VPoly variable(unsigned nvars, unsigned order, unsigned index);

    unsigned nvars() const { return nvars_; }
    unsigned order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, HbarSeries>& terms() const { return terms_; }

    void add_term(const Monomial& mon, const HbarSeries& c);

    VPoly operator+(const VPoly& o) const;
    VPoly operator-() const;
    VPoly operator*(const VPoly& o) const;
    VPoly scaled(const HbarSeries& s) const;
    VPoly scaled(const PiScalar& s) const;

    VPoly derivative(unsigned var) const;
    // substitute v -> v + shift
    VPoly translated(const QVector& shift) const;
    VPoly reduced(unsigned new_order) const;
    VPoly shifted_down(unsigned k) const;

    friend bool operator==(const VPoly& a, const VPoly& b) {
        return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

  private:
    unsigned nvars_;
    unsigned order_;
    std::map<Monomial, HbarSeries> terms_;
};

struct ExpKey {
    QVector lin;  // covector A
    GQ phase;     // constant c, canonicalized

    friend bool operator<(const ExpKey& a, const ExpKey& b) {
        if (a.lin != b.lin)
            return std::lexicographical_compare(a.lin.begin(), a.lin.end(), b.lin.begin(), b.lin.end());
        return a.phase < b.phase;
    }
    friend bool operator==(const ExpKey& a, const ExpKey& b) { return a.lin == b.lin && a.phase == b.phase; }
};

class ExpAffine {
  public:
    ExpAffine(unsigned g, unsigned order) : g_(g), order_(order) {}

    static ExpAffine zero(unsigned g, unsigned order) { return ExpAffine(g, order); }
    static ExpAffine one(unsigned g, unsigned order);
    static ExpAffine constant(unsigned g, HbarSeries s);
    static ExpAffine constant(unsigned g, unsigned order, GQ c);
    static ExpAffine variable(unsigned g, unsigned order, unsigned index);
    // coeff * exp(pi (<lin, v> + phase)), with coeff a series constant
    static ExpAffine exponential(unsigned g, const HbarSeries& coeff, const QVector& lin, const GQ& phase);

    unsigned g() const { return g_; }
    unsigned order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<ExpKey, VPoly>& terms() const { return terms_; }

    ExpAffine operator+(const ExpAffine& o) const;
    ExpAffine operator-(const ExpAffine& o) const;
    ExpAffine operator-() const;
    // commutative (hbar^0-classical) product
    ExpAffine operator*(const ExpAffine& o) const;
    ExpAffine scaled(const PiScalar& s) const;
    ExpAffine scaled_series(const HbarSeries& s) const;

    ExpAffine translated(const QVector& shift) const;
    ExpAffine reduced(unsigned new_order) const;
    // exact division by hbar^k; drops the truncation order by k
    ExpAffine shifted_down(unsigned k) const;

    friend bool operator==(const ExpAffine& a, const ExpAffine& b) {
        return a.g_ == b.g_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const ExpAffine& a, const ExpAffine& b) { return !(a == b); }

    std::string str() const;

    void add_term(QVector lin, GQ phase, VPoly poly);

  private:
    unsigned g_;
    unsigned order_;
    std::map<ExpKey, VPoly> terms_;
};

// Moyal product truncated at hbar^N; both factors must carry truncation
// order at least N.
ExpAffine star(const ExpAffine& f, const ExpAffine& g, const PoissonBivector& pi, unsigned order);

// {f, g} = sum Pi^{ab} d_a f d_b g (the hbar-linear commutator coefficient
// is 2 {f,g})
ExpAffine poisson_bracket(const ExpAffine& f, const ExpAffine& g, const PoissonBivector& pi);

// Quantum Appell-Humbert data: ((H, chi); l(hbar)) plus the bivector.
struct QuantumAHData {
    PeriodLattice lattice;
    ClassicalAHData ah;
    std::map<unsigned, QVector> l_series;  // m >= 1 -> covector, finitely supported
    PoissonBivector poisson;

    // <l, lambda> = sum l_i conj(lambda_i)
    GQ pair_covector(const QVector& l, const QVector& v) const;
};

// The deformed factor of automorphy and its reductions.  All evaluations
// are ExpAffine values at the stored truncation order.
class AutomorphyFactor {
  public:
    AutomorphyFactor(QuantumAHData data, unsigned order);

    const QuantumAHData& data() const { return data_; }
    unsigned order() const { return order_; }
    const ZMatrix& e_matrix() const { return e_; }

    // Phi_lambda as a single exponential term times a unit series.
    ExpAffine phi(const LatticePoint& n) const;
    // Exact star inverse of phi (the pointwise reciprocal).
    ExpAffine phi_inverse(const LatticePoint& n) const;

    // Canonical lift of Phi mod hbar^s: the series part keeps only l_m with
    // m < s; at s = 1 this is the classical factor of automorphy.
    ExpAffine phi_lift(const LatticePoint& n, unsigned below) const;
    ExpAffine phi_lift_inverse(const LatticePoint& n, unsigned below) const;

    // Phi_{l2} * (Phi_{l1} o T_{l2}) = Phi_{l1+l2} at the stored order.
    bool check_cocycle(const LatticePoint& n1, const LatticePoint& n2) const;

  private:
    ExpAffine build(const LatticePoint& n, bool invert, std::optional<unsigned> below) const;

    QuantumAHData data_;
    unsigned order_;
    ZMatrix e_;
};

// Phi_lambda(v) for one lattice element; the standalone entry point.
ExpAffine build_phi(const QuantumAHData& data, const LatticePoint& n, unsigned order);

}  // namespace abelia
