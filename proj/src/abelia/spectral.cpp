#include "abelia/spectral.hpp"

#include <algorithm>

namespace abelia {

int FilteredComplex::min_level() const {
    int m = 0;
    bool seen = false;
    for (const auto& lev : levels)
        for (int l : lev) {
            if (!seen || l < m) m = l;
            seen = true;
        }
    return m;
}

int FilteredComplex::max_level() const {
    int m = 0;
    bool seen = false;
    for (const auto& lev : levels)
        for (int l : lev) {
            if (!seen || l > m) m = l;
            seen = true;
        }
    return m;
}

void FilteredComplex::validate() const {
    if (d.size() + 1 != levels.size())
        throw Error(ErrorKind::Validation, "filtered complex: differential count mismatch");
    for (std::size_t n = 0; n < d.size(); ++n) {
        if (d[n].rows() != dim(n + 1) || d[n].cols() != dim(n))
            throw Error(ErrorKind::Validation, "filtered complex: differential shape mismatch");
        for (std::size_t j = 0; j < dim(n); ++j)
            for (std::size_t i = 0; i < dim(n + 1); ++i)
                if (!d[n](i, j).is_zero() && levels[n + 1][i] < levels[n][j])
                    throw Error(ErrorKind::Validation,
                                "filtered complex: differential does not respect the filtration");
    }
    for (std::size_t n = 0; n + 1 < d.size(); ++n)
        if (!(d[n + 1] * d[n]).is_zero())
            throw Error(ErrorKind::Validation, "filtered complex: d o d is nonzero");
}

FilteredComplex FilteredComplex::tensored(unsigned mult) const {
    FilteredComplex out;
    out.levels.resize(levels.size());
    for (std::size_t n = 0; n < levels.size(); ++n)
        for (unsigned u = 0; u < mult; ++u)
            out.levels[n].insert(out.levels[n].end(), levels[n].begin(), levels[n].end());
    for (std::size_t n = 0; n < d.size(); ++n) {
        QMatrix big(dim(n + 1) * mult, dim(n) * mult);
        for (unsigned u = 0; u < mult; ++u)
            for (std::size_t i = 0; i < d[n].rows(); ++i)
                for (std::size_t j = 0; j < d[n].cols(); ++j)
                    big(u * d[n].rows() + i, u * d[n].cols() + j) = d[n](i, j);
        out.d.push_back(std::move(big));
    }
    return out;
}

FilteredComplex FilteredComplex::shifted(int a, int b) const {
    if (b < 0) throw Error(ErrorKind::Internal, "filtered complex: negative degree shift");
    FilteredComplex out;
    out.levels.assign(b, {});
    for (const auto& lev : levels) {
        std::vector<int> moved = lev;
        for (int& l : moved) l += a;
        out.levels.push_back(std::move(moved));
    }
    for (int k = 0; k < b; ++k) out.d.push_back(QMatrix(k + 1 == b ? dim(0) : 0, 0));
    for (const auto& m : d) out.d.push_back(m);
    return out;
}

SpectralEngine::SpectralEngine(FilteredComplex c) : c_(std::move(c)) {
    c_.validate();
    minl_ = c_.min_level();
    maxl_ = c_.max_level();
}

QMatrix SpectralEngine::f_inclusion(std::size_t n, int p) const {
    std::vector<std::vector<GQ>> cols;
    if (n < c_.degrees())
        for (std::size_t i = 0; i < c_.dim(n); ++i)
            if (c_.levels[n][i] >= p) {
                std::vector<GQ> e(c_.dim(n));
                e[i] = GQ(1);
                cols.push_back(std::move(e));
            }
    return QMatrix::from_columns(c_.dim(n), cols);
}

const QMatrix& SpectralEngine::a_basis(int p, unsigned r, std::size_t n) {
    auto key = std::make_tuple(p, r, n);
    auto it = a_cache_.find(key);
    if (it != a_cache_.end()) return it->second;

    QMatrix incl = f_inclusion(n, p);
    QMatrix result;
    if (n + 1 >= c_.degrees() || incl.cols() == 0) {
        result = incl;  // no outgoing differential: every filtered chain is a cycle mod anything
    } else {
        const QMatrix& dn = c_.d[n];
        // rows of d x that must vanish: target levels below p + r
        std::vector<std::size_t> strict;
        for (std::size_t i = 0; i < c_.dim(n + 1); ++i)
            if (c_.levels[n + 1][i] < p + static_cast<int>(r)) strict.push_back(i);
        if (strict.empty()) {
            result = incl;
        } else {
            QMatrix constr(strict.size(), incl.cols());
            for (std::size_t ci = 0; ci < incl.cols(); ++ci) {
                QVector dx = matvec(dn, incl.column(ci));
                for (std::size_t si = 0; si < strict.size(); ++si) constr(si, ci) = dx[strict[si]];
            }
            QMatrix ker = kernel_basis(constr);
            std::vector<std::vector<GQ>> cols;
            for (std::size_t kc = 0; kc < ker.cols(); ++kc) {
                QVector full(c_.dim(n));
                for (std::size_t ic = 0; ic < incl.cols(); ++ic) {
                    if (ker(ic, kc).is_zero()) continue;
                    QVector inc = incl.column(ic);
                    for (std::size_t row = 0; row < full.size(); ++row)
                        full[row] += inc[row] * ker(ic, kc);
                }
                cols.push_back(std::move(full));
            }
            result = QMatrix::from_columns(c_.dim(n), cols);
        }
    }
    return a_cache_.emplace(key, std::move(result)).first->second;
}

const SpectralSpot& SpectralEngine::spot(unsigned r, int p, std::size_t n) {
    auto key = std::make_tuple(r, p, n);
    auto it = spot_cache_.find(key);
    if (it != spot_cache_.end()) return it->second;

    SpectralSpot s;
    QMatrix a = a_basis(p, r, n);
    // divisors: d(A_{p-r+1}^{r-1}) from degree n-1, plus A_{p+1}^{r-1}
    std::vector<std::vector<GQ>> div_cols;
    if (r >= 1 && n >= 1) {
        QMatrix prev = a_basis(p - static_cast<int>(r) + 1, r - 1, n - 1);
        for (std::size_t c = 0; c < prev.cols(); ++c)
            div_cols.push_back(matvec(c_.d[n - 1], prev.column(c)));
    }
    if (r >= 1) {
        QMatrix deeper = a_basis(p + 1, r - 1, n);
        for (std::size_t c = 0; c < deeper.cols(); ++c) div_cols.push_back(deeper.column(c));
    } else {
        QMatrix deeper = f_inclusion(n, p + 1);
        for (std::size_t c = 0; c < deeper.cols(); ++c) div_cols.push_back(deeper.column(c));
    }
    QMatrix div = QMatrix::from_columns(c_.dim(n), div_cols);
    s.divisors = image_basis(div);

    // representatives: columns of A extending span(divisors), greedily
    QMatrix span = s.divisors;
    std::size_t base_rank = rank(span);
    std::vector<std::vector<GQ>> reps;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        QMatrix trial = span.columns_concat(QMatrix::from_columns(c_.dim(n), {a.column(c)}));
        if (rank(trial) > base_rank) {
            reps.push_back(a.column(c));
            span = trial;
            ++base_rank;
        }
    }
    s.reps = QMatrix::from_columns(c_.dim(n), reps);
    s.dim = s.reps.cols();
    return spot_cache_.emplace(key, std::move(s)).first->second;
}

std::map<std::pair<int, int>, std::size_t> SpectralEngine::page_dims(unsigned r) {
    std::map<std::pair<int, int>, std::size_t> out;
    for (std::size_t n = 0; n < c_.degrees(); ++n)
        for (int p = minl_; p <= maxl_; ++p) {
            const SpectralSpot& s = spot(r, p, n);
            if (s.dim > 0) out[{p, static_cast<int>(n) - p}] = s.dim;
        }
    return out;
}

QMatrix SpectralEngine::d_r_map(unsigned r, int p, int n) {
    const SpectralSpot& src = spot(r, p, static_cast<std::size_t>(n));
    if (static_cast<std::size_t>(n) + 1 >= c_.degrees())
        return QMatrix(0, src.dim);
    const SpectralSpot& dst = spot(r, p + static_cast<int>(r), static_cast<std::size_t>(n) + 1);
    QMatrix out(dst.dim, src.dim);
    if (src.dim == 0 || dst.dim == 0) return out;

    QMatrix solve_basis = dst.reps.columns_concat(dst.divisors);
    auto project = [&](const QVector& y) {
        auto sol = solve(solve_basis, y);
        if (!sol) throw Error(ErrorKind::Internal, "spectral: image escapes the target spot");
        QVector coef(dst.dim);
        for (std::size_t i = 0; i < dst.dim; ++i) coef[i] = (*sol)[i];
        return coef;
    };

    for (std::size_t c = 0; c < src.dim; ++c) {
        QVector y = matvec(c_.d[n], src.reps.column(c));
        QVector coef = project(y);
        for (std::size_t i = 0; i < dst.dim; ++i) out(i, c) = coef[i];
        if (src.divisors.cols() > 0) {
            // well-definedness: a second lift of the same class maps equally
            QVector x2 = src.reps.column(c);
            QVector shift = src.divisors.column(0);
            for (std::size_t kk = 0; kk < x2.size(); ++kk) x2[kk] += shift[kk];
            QVector coef2 = project(matvec(c_.d[n], x2));
            // the shift may leave A_p^r only through the divisor subspace,
            // whose image lies in the divisors of the target spot
            for (std::size_t i = 0; i < dst.dim; ++i)
                if (coef2[i] != coef[i])
                    throw Error(ErrorKind::Internal, "spectral: d_r depends on the lift");
        }
    }
    return out;
}

bool SpectralEngine::page_has_nonzero_d(unsigned r) {
    for (std::size_t n = 0; n + 1 < c_.degrees(); ++n)
        for (int p = minl_; p <= maxl_; ++p) {
            if (spot(r, p, n).dim == 0) continue;
            if (!d_r_map(r, p, static_cast<int>(n)).is_zero()) return true;
        }
    return false;
}

unsigned SpectralEngine::degeneration_page() {
    unsigned last_nonzero = 0;
    for (unsigned r = 1; r <= width(); ++r)
        if (page_has_nonzero_d(r)) last_nonzero = r;
    return last_nonzero + 1;
}

std::map<std::pair<int, int>, std::size_t> SpectralEngine::einf_dims() {
    return page_dims(width() + 1);
}

std::map<std::pair<int, int>, std::size_t> SpectralEngine::einf_dims_quarantined(unsigned junk_width) {
    auto dims = einf_dims();
    for (auto it = dims.begin(); it != dims.end();)
        it = truncation_affected(it->first.first, junk_width) ? dims.erase(it) : std::next(it);
    return dims;
}

std::size_t SpectralEngine::total_cohomology_dim(std::size_t n) const {
    std::size_t dim_n = c_.dim(n);
    if (dim_n == 0) return 0;
    std::size_t ker = (n + 1 < c_.degrees()) ? dim_n - rank(c_.d[n]) : dim_n;
    std::size_t im = (n >= 1) ? rank(c_.d[n - 1]) : 0;
    return ker - im;
}

}  // namespace abelia
