#include "abelia/exterior.hpp"

#include <algorithm>
#include <functional>

namespace abelia {

MultiVector MultiVector::basis_element(unsigned dim, IndexTuple idx, GQ c) {
    MultiVector v(dim, static_cast<unsigned>(idx.size()));
    v.add_term(idx, c);
    return v;
}

MultiVector MultiVector::from_covector(const QVector& l) {
    MultiVector v(static_cast<unsigned>(l.size()), 1);
    for (unsigned k = 0; k < l.size(); ++k) v.add_term({k + 1}, l[k]);
    return v;
}

void MultiVector::add_term(const IndexTuple& idx, const GQ& c) {
    if (idx.size() != degree_) throw Error(ErrorKind::Internal, "multivector degree mismatch");
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 1 || idx[k] > dim_) throw Error(ErrorKind::Internal, "multivector index out of range");
        if (k > 0 && idx[k] <= idx[k - 1])
            throw Error(ErrorKind::Internal, "multivector index tuple not strictly increasing");
    }
    if (c.is_zero()) return;
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end())
        coeffs_[idx] = c;
    else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

MultiVector MultiVector::operator+(const MultiVector& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
        throw Error(ErrorKind::Internal, "multivector sum shape mismatch");
    MultiVector v = *this;
    for (const auto& [idx, c] : o.coeffs_) v.add_term(idx, c);
    return v;
}

MultiVector MultiVector::operator-() const { return scaled(GQ(-1)); }

MultiVector MultiVector::scaled(const GQ& c) const {
    MultiVector v(dim_, degree_);
    if (c.is_zero()) return v;
    for (const auto& [idx, x] : coeffs_) v.coeffs_[idx] = x * c;
    return v;
}

// Merge two increasing tuples; returns false on a repeated index, otherwise
// the sign of the shuffle permutation.
static bool merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out, int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return true;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::Internal, "wedge over different spaces");
    unsigned deg = std::min(a.degree() + b.degree(), a.dim() + 1);
    if (a.degree() + b.degree() > a.dim()) return MultiVector(a.dim(), deg);
    MultiVector v(a.dim(), a.degree() + b.degree());
    IndexTuple merged;
    int sign;
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms()) {
            if (!merge_tuples(ia, ib, merged, sign)) continue;
            v.add_term(merged, ca * cb * GQ(sign));
        }
    return v;
}

std::vector<IndexTuple> exterior_basis(unsigned g, unsigned degree) {
    std::vector<IndexTuple> out;
    if (degree > g) return out;
    IndexTuple cur(degree);
    // lexicographic enumeration of increasing tuples
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned next) {
        if (pos == degree) {
            out.push_back(cur);
            return;
        }
        for (unsigned v = next; v <= g - (degree - pos - 1); ++v) {
            cur[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 1);
    return out;
}

QMatrix wedge_matrix(const QVector& l, unsigned degree) {
    unsigned g = static_cast<unsigned>(l.size());
    auto dom = exterior_basis(g, degree);
    auto cod = exterior_basis(g, degree + 1);
    std::map<IndexTuple, std::size_t> cod_index;
    for (std::size_t k = 0; k < cod.size(); ++k) cod_index[cod[k]] = k;

    QMatrix m(cod.size(), dom.size());
    MultiVector lv = MultiVector::from_covector(l);
    for (std::size_t c = 0; c < dom.size(); ++c) {
        MultiVector w = wedge(lv, MultiVector::basis_element(g, dom[c]));
        for (const auto& [idx, coeff] : w.terms()) m(cod_index.at(idx), c) = coeff;
    }
    return m;
}

unsigned koszul_kernel_dim(const QVector& l, unsigned degree, unsigned g) {
    bool zero = true;
    for (const auto& c : l) zero = zero && c.is_zero();
    if (zero) throw Error(ErrorKind::Validation, "koszul kernel: zero covector");
    if (l.size() != g) throw Error(ErrorKind::Internal, "koszul kernel: covector size mismatch");
    if (degree > g) return 0;
    QMatrix m = wedge_matrix(l, degree);
    return static_cast<unsigned>(m.cols() - rank(m));
}

KoszulHbarComplex::KoszulHbarComplex(unsigned g, std::map<unsigned, QVector> l_series, unsigned order)
    : g_(g), l_series_(std::move(l_series)), order_(order) {
    for (const auto& [m, l] : l_series_) {
        if (m < 1) throw Error(ErrorKind::Validation, "koszul complex: series index must be positive");
        if (l.size() != g_) throw Error(ErrorKind::Validation, "koszul complex: covector size mismatch");
    }
    // d o d = 0 as polynomial matrices, checked once on construction
    for (unsigned j = 0; j + 1 <= g_; ++j) {
        HbarPolyMatrix comp = differential(j + 1) * differential(j);
        if (!comp.is_zero()) throw Error(ErrorKind::Internal, "koszul complex: differential does not square to zero");
    }
}

HbarPolyMatrix KoszulHbarComplex::differential(unsigned degree) const {
    std::size_t rows = binomial(g_, static_cast<long>(degree) + 1);
    std::size_t cols = binomial(g_, static_cast<long>(degree));
    HbarPolyMatrix d(rows, cols);
    if (degree >= g_) return d;
    for (const auto& [m, l] : l_series_) {
        QMatrix wm = wedge_matrix(l, degree);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (!wm(r, c).is_zero()) d(r, c) += HbarPoly::hbar_power(m, wm(r, c));
    }
    return d;
}

CohomologyModule KoszulHbarComplex::cohomology(unsigned degree) const {
    if (degree > g_) return CohomologyModule();
    HbarPolyMatrix d_prev =
        degree == 0 ? HbarPolyMatrix(binomial(g_, 0), 0) : differential(degree - 1);
    HbarPolyMatrix d_next = differential(degree);
    return complex_cohomology_over_pid(d_prev, d_next);
}

}  // namespace abelia
