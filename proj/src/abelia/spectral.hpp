#pragma once

// Spectral sequence of a decreasing filtration on a finite based cochain
// complex over Q(i).  Pages, differentials and limit terms are computed by
// exact elimination from the cycle spaces
//     A_p^r = { c in F_p C : d(c) in F_{p+r} C },
//     E_p^r = A_p^r / ( d(A_{p-r+1}^{r-1}) + A_{p+1}^{r-1} ),
// with d_r induced by d through lift-apply-project.  Spot indexing is
// (p, q) with total degree n = p + q.

#include <map>

#include "abelia/linalg.hpp"

namespace abelia {

struct FilteredComplex {
    // levels[n][i] = filtration level of basis vector i in degree n
    std::vector<std::vector<int>> levels;
    // d[n] : C^n -> C^{n+1}; size levels.size() - 1
    std::vector<QMatrix> d;

    std::size_t degrees() const { return levels.size(); }
    std::size_t dim(std::size_t n) const { return n < levels.size() ? levels[n].size() : 0; }
    int min_level() const;
    int max_level() const;

    // d o d = 0, shapes line up, and d(F_p) stays inside F_p columnwise.
    void validate() const;

    // tensor with a trivial multiplicity space
    FilteredComplex tensored(unsigned mult) const;
    // shift filtration by a and degree by b (levels[n] -> levels[n+b] + a)
    FilteredComplex shifted(int a, int b) const;
};

struct SpectralSpot {
    std::size_t dim = 0;
    QMatrix reps;      // representative columns inside A_p^r
    QMatrix divisors;  // basis of d(A_{p-r+1}^{r-1}) + A_{p+1}^{r-1}
};

class SpectralEngine {
  public:
    explicit SpectralEngine(FilteredComplex c);

    const FilteredComplex& complex() const { return c_; }

    // dimension table of page r: (p, q) -> dim E_p^r at n = p + q
    std::map<std::pair<int, int>, std::size_t> page_dims(unsigned r);

    // matrix of d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} in the representative bases
    QMatrix d_r_map(unsigned r, int p, int n);

    // first page index at which every later differential vanishes
    unsigned degeneration_page();

    // E_infinity dims per (p, n), computed at the stable page
    std::map<std::pair<int, int>, std::size_t> einf_dims();

    // spots with p >= max_level + 1 - junk_width are truncation-affected
    // when the filtration comes from a truncated hbar power; this drops them
    bool truncation_affected(int p, unsigned junk_width) const {
        return p >= maxl_ + 1 - static_cast<int>(junk_width);
    }
    std::map<std::pair<int, int>, std::size_t> einf_dims_quarantined(unsigned junk_width);

    // dim H^n of the total complex by direct elimination
    std::size_t total_cohomology_dim(std::size_t n) const;

    int min_level() const { return minl_; }
    int max_level() const { return maxl_; }
    unsigned width() const { return static_cast<unsigned>(maxl_ - minl_ + 1); }

  private:
    const QMatrix& a_basis(int p, unsigned r, std::size_t n);
    const SpectralSpot& spot(unsigned r, int p, std::size_t n);
    QMatrix f_inclusion(std::size_t n, int p) const;
    bool page_has_nonzero_d(unsigned r);

    FilteredComplex c_;
    int minl_, maxl_;
    std::map<std::tuple<int, unsigned, std::size_t>, QMatrix> a_cache_;
    std::map<std::tuple<unsigned, int, std::size_t>, SpectralSpot> spot_cache_;
};

}  // namespace abelia
