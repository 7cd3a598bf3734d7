#include "abelia/linalg.hpp"

namespace abelia {

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(piv, c));
        GQ inv = m(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            GQ f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

QMatrix kernel_basis(const QMatrix& m) {
    QMatrix r = m;
    std::vector<std::size_t> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<std::vector<GQ>> cols;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<GQ> v(m.cols());
        v[free] = GQ(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
        // scale so the first nonzero coordinate is 1
        for (auto& x : v)
            if (!x.is_zero()) {
                GQ inv = x.inverse();
                for (auto& y : v) y *= inv;
                break;
            }
        cols.push_back(std::move(v));
    }
    return QMatrix::from_columns(m.cols(), cols);
}

QMatrix image_basis(const QMatrix& m) {
    QMatrix r = m;
    std::vector<std::size_t> pivots = rref(r);
    std::vector<std::vector<GQ>> cols;
    for (std::size_t p : pivots) cols.push_back(m.column(p));
    return QMatrix::from_columns(m.rows(), cols);
}

std::size_t subspace_quotient_dim(const QMatrix& amb, const QMatrix& sub) {
    if (sub.cols() > 0 && sub.rows() != amb.rows())
        throw Error(ErrorKind::Internal, "subspace quotient: ambient/sub dimension mismatch");
    std::size_t ra = rank(amb);
    std::size_t rs = rank(sub);
    if (rank(amb.columns_concat(sub)) != ra)
        throw Error(ErrorKind::Internal, "subspace quotient: sub not contained in ambient");
    return ra - rs;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
    if (b.size() != m.rows()) throw Error(ErrorKind::Internal, "solve: rhs dimension mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    QVector x(m.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
    return x;
}

bool in_span(const QMatrix& m, const QVector& v) { return solve(m, v).has_value(); }

GQ dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::Internal, "dot: dimension mismatch");
    GQ s;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

QVector matvec(const QMatrix& m, const QVector& v) {
    if (v.size() != m.cols()) throw Error(ErrorKind::Internal, "matvec: dimension mismatch");
    QVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero() && !v[c].is_zero()) out[r] += m(r, c) * v[c];
    return out;
}

}  // namespace abelia
