#pragma once

// Smith normal form over a Euclidean domain, with the transforms tracked on
// both sides: U * D * W = M, U and W of unit determinant, D diagonal with a
// divisibility chain.  Inverses of U and W are accumulated alongside, which
// is what the module computations actually consume.

#include "abelia/euclid.hpp"
#include "abelia/linalg.hpp"

namespace abelia {

template <typename R>
struct SmithDecomposition {
    Matrix<R> U, D, W;
    Matrix<R> Uinv, Winv;
    R det_u = R(1);
    R det_w = R(1);

    std::vector<R> diagonal() const {
        std::vector<R> d;
        for (std::size_t k = 0; k < std::min(D.rows(), D.cols()); ++k)
            if (!D(k, k).is_zero()) d.push_back(D(k, k));
        return d;
    }
};

template <typename R>
SmithDecomposition<R> smith_normal_form(const Matrix<R>& m) {
    SmithDecomposition<R> s;
    s.D = m;
    s.U = Matrix<R>::identity(m.rows());
    s.Uinv = Matrix<R>::identity(m.rows());
    s.W = Matrix<R>::identity(m.cols());
    s.Winv = Matrix<R>::identity(m.cols());
    Matrix<R>& D = s.D;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
        for (std::size_t r = 0; r < s.U.rows(); ++r) std::swap(s.U(r, i), s.U(r, j));
        for (std::size_t c = 0; c < s.Uinv.cols(); ++c) std::swap(s.Uinv(i, c), s.Uinv(j, c));
        s.det_u = -s.det_u;
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
        for (std::size_t c = 0; c < s.W.cols(); ++c) std::swap(s.W(i, c), s.W(j, c));
        for (std::size_t r = 0; r < s.Winv.rows(); ++r) std::swap(s.Winv(r, i), s.Winv(r, j));
        s.det_w = -s.det_w;
    };
    // row_i += f * row_j on D
    auto row_axpy = [&](std::size_t i, const R& f, std::size_t j) {
        for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) += f * D(j, c);
        for (std::size_t r = 0; r < s.U.rows(); ++r) s.U(r, j) -= f * s.U(r, i);
        for (std::size_t c = 0; c < s.Uinv.cols(); ++c) s.Uinv(i, c) += f * s.Uinv(j, c);
    };
    // col_i += f * col_j on D
    auto col_axpy = [&](std::size_t i, const R& f, std::size_t j) {
        for (std::size_t r = 0; r < D.rows(); ++r) D(r, i) += f * D(r, j);
        for (std::size_t r = 0; r < s.W.rows(); ++r) s.W(j, r) -= f * s.W(i, r);
        for (std::size_t r = 0; r < s.Winv.rows(); ++r) s.Winv(r, i) += f * s.Winv(r, j);
    };
    // D row i is multiplied by f; U and det_u pick up f_inv.
    auto scale_row = [&](std::size_t i, const R& f, const R& f_inv) {
        for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = f * D(i, c);
        for (std::size_t r = 0; r < s.U.rows(); ++r) s.U(r, i) = s.U(r, i) * f_inv;
        for (std::size_t c = 0; c < s.Uinv.cols(); ++c) s.Uinv(i, c) = f * s.Uinv(i, c);
        s.det_u = s.det_u * f_inv;
    };

    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // deterministic pivot: smallest Euclidean size, then row, then column
            bool found = false;
            std::size_t pi = t, pj = t;
            mpz_class best;
            for (std::size_t i = t; i < D.rows(); ++i)
                for (std::size_t j = t; j < D.cols(); ++j) {
                    if (D(i, j).is_zero()) continue;
                    mpz_class sz = euclid_size(D(i, j));
                    if (!found || sz < best) {
                        best = sz;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) {
                for (std::size_t k = 0; k < n; ++k) {
                    R u = canonical_unit(D(k, k));
                    if (!(u == R(1))) {
                        R uinv = exact_div(R(1), u);
                        scale_row(k, uinv, u);
                    }
                }
                return s;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (std::size_t r = t + 1; r < D.rows(); ++r) {
                if (D(r, t).is_zero()) continue;
                R q, rem;
                divmod(D(r, t), D(t, t), q, rem);
                row_axpy(r, -q, t);
                if (!rem.is_zero()) clean = false;
            }
            for (std::size_t c = t + 1; c < D.cols(); ++c) {
                if (D(t, c).is_zero()) continue;
                R q, rem;
                divmod(D(t, c), D(t, t), q, rem);
                col_axpy(c, -q, t);
                if (!rem.is_zero()) clean = false;
            }
            if (!clean) continue;

            bool divides_all = true;
            for (std::size_t r = t + 1; r < D.rows() && divides_all; ++r)
                for (std::size_t c = t + 1; c < D.cols(); ++c) {
                    if (D(r, c).is_zero()) continue;
                    R q, rem;
                    divmod(D(r, c), D(t, t), q, rem);
                    if (!rem.is_zero()) {
                        row_axpy(t, R(1), r);
                        divides_all = false;
                        break;
                    }
                }
            if (divides_all) break;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        R u = canonical_unit(D(k, k));
        if (!(u == R(1))) {
            R uinv = exact_div(R(1), u);
            scale_row(k, uinv, u);
        }
    }
    return s;
}

}  // namespace abelia
