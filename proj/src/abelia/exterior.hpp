#pragma once

// Exterior algebra of a based Q(i) vector space, wedge matrices, and the
// hbar-deformed Koszul complex used as the Smith-oracle model for line
// bundle cohomology.

#include <map>

#include "abelia/linalg.hpp"
#include "abelia/module.hpp"

namespace abelia {

using IndexTuple = std::vector<unsigned>;  // strictly increasing, 1-based

// Homogeneous element of /\^j W, stored on the strictly increasing basis.
class MultiVector {
  public:
    MultiVector(unsigned dim, unsigned degree) : dim_(dim), degree_(degree) {}

    static MultiVector basis_element(unsigned dim, IndexTuple idx, GQ c = GQ(1));
    // Degree-1 vector from coordinates.
    static MultiVector from_covector(const QVector& l);

    unsigned dim() const { return dim_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add_term(const IndexTuple& idx, const GQ& c);
    GQ coeff(const IndexTuple& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? GQ() : it->second;
    }
    const std::map<IndexTuple, GQ>& terms() const { return coeffs_; }

    MultiVector operator+(const MultiVector& o) const;
    MultiVector operator-() const;
    MultiVector scaled(const GQ& c) const;

    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

  private:
    unsigned dim_;
    unsigned degree_;
    std::map<IndexTuple, GQ> coeffs_;
};

// Graded-anticommutative product.  Degree overflow past dim W yields the
// zero multivector of the clamped degree; it is not an error.
MultiVector wedge(const MultiVector& a, const MultiVector& b);

// All strictly increasing j-tuples on 1..g in lexicographic order; this is
// the basis ordering every matrix below uses.
std::vector<IndexTuple> exterior_basis(unsigned g, unsigned degree);

// Matrix of (l /\ .) : /\^j -> /\^{j+1} in the bases above.
QMatrix wedge_matrix(const QVector& l, unsigned degree);

// dim ker(. /\ l : /\^j -> /\^{j+1}) computed by elimination (not by the
// binomial identity it satisfies).  l must be nonzero.
unsigned koszul_kernel_dim(const QVector& l, unsigned degree, unsigned g);

// Koszul complex of /\* W tensored with hbar-polynomials, differential
// omega |-> sum_m hbar^m l_m /\ omega.
class KoszulHbarComplex {
  public:
    KoszulHbarComplex(unsigned g, std::map<unsigned, QVector> l_series, unsigned order);

    unsigned g() const { return g_; }
    unsigned order() const { return order_; }
    const std::map<unsigned, QVector>& l_series() const { return l_series_; }

    // d_j : /\^j -> /\^{j+1} as a polynomial matrix; degree g maps to zero.
    HbarPolyMatrix differential(unsigned degree) const;

    // H^j as a module over power series in hbar, via the Smith route.
    CohomologyModule cohomology(unsigned degree) const;

  private:
    unsigned g_;
    std::map<unsigned, QVector> l_series_;
    unsigned order_;
};

}  // namespace abelia
