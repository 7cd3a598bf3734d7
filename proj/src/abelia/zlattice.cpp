#include "abelia/zlattice.hpp"

#include "abelia/smith.hpp"

namespace abelia {

std::size_t zrank(const ZMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return smith_normal_form(a).diagonal().size();
}

ZMatrix integer_kernel_basis(const ZMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) {
        return ZMatrix::identity(a.cols());
    }
    auto s = smith_normal_form(a);
    std::size_t r = s.diagonal().size();
    std::size_t n = a.cols();
    ZMatrix k(n, n - r);
    for (std::size_t c = 0; c + r < n; ++c)
        for (std::size_t row = 0; row < n; ++row) k(row, c) = s.Winv(row, r + c);
    return k;
}

ZMatrix unimodular_completion(const ZMatrix& b) {
    std::size_t n = b.rows();
    std::size_t r = b.cols();
    if (r > n) throw Error(ErrorKind::Internal, "completion: more columns than ambient rank");
    if (r == 0) return ZMatrix::identity(n);
    auto s = smith_normal_form(b);
    auto divs = s.diagonal();
    if (divs.size() != r)
        throw Error(ErrorKind::Internal, "completion: input columns are dependent");
    for (const auto& d : divs)
        if (!d.is_unit())
            throw Error(ErrorKind::Internal, "completion: input sublattice is not primitive");
    // U*D*W = B with D = [I;0], so [B | U(:,r..)] is unimodular.
    ZMatrix c(n, n - r);
    for (std::size_t col = 0; col + r < n; ++col)
        for (std::size_t row = 0; row < n; ++row) c(row, col) = s.U(row, r + col);
    return c;
}

std::vector<mpz_class> integer_alternating_divisors(const ZMatrix& e) {
    std::size_t n = e.rows();
    if (e.cols() != n) throw Error(ErrorKind::Validation, "alternating divisors: matrix not square");
    if (n % 2 != 0) throw Error(ErrorKind::Validation, "alternating divisors: odd size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (e(i, j) != -e(j, i))
                throw Error(ErrorKind::Validation, "alternating divisors: matrix is not alternating");
    if (n == 0) return {};
    if (zrank(e) != n) throw Error(ErrorKind::Validation, "alternating divisors: degenerate form");

    ZMatrix a = e;
    // congruence ops: every row operation is mirrored on columns
    auto cswap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    };
    auto caxpy = [&](std::size_t i, const ZZ& f, std::size_t j) {  // row/col i += f * row/col j
        for (std::size_t c = 0; c < n; ++c) a(i, c) += f * a(j, c);
        for (std::size_t r = 0; r < n; ++r) a(r, i) += f * a(r, j);
    };

    std::vector<mpz_class> divisors;
    for (std::size_t s = 0; s < n; s += 2) {
        for (;;) {
            bool found = false;
            std::size_t pi = s, pj = s + 1;
            mpz_class best;
            for (std::size_t i = s; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (a(i, j).is_zero()) continue;
                    mpz_class sz = abs(a(i, j).value());
                    if (!found || sz < best) {
                        best = sz;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) throw Error(ErrorKind::Internal, "alternating divisors: unexpected degeneracy");
            cswap(s, pi);
            cswap(s + 1, pj);  // pj > pi >= s, so the first swap cannot move it

            bool clean = true;
            for (std::size_t c = s + 2; c < n; ++c) {
                if (!a(s, c).is_zero()) {
                    ZZ q, rem;
                    divmod(a(s, c), a(s, s + 1), q, rem);
                    caxpy(c, -q, s + 1);
                    if (!rem.is_zero()) clean = false;
                }
                if (!a(s + 1, c).is_zero()) {
                    ZZ q, rem;
                    divmod(a(s + 1, c), a(s + 1, s), q, rem);
                    caxpy(c, -q, s);
                    if (!rem.is_zero()) clean = false;
                }
            }
            if (!clean) continue;

            bool divides_all = true;
            for (std::size_t i = s + 2; i < n && divides_all; ++i)
                for (std::size_t j = s + 2; j < n; ++j) {
                    if (a(i, j).is_zero()) continue;
                    ZZ q, rem;
                    divmod(a(i, j), a(s, s + 1), q, rem);
                    if (!rem.is_zero()) {
                        caxpy(s, ZZ(1), i);
                        divides_all = false;
                        break;
                    }
                }
            if (divides_all) break;
        }
        if (a(s, s + 1).value() < 0) cswap(s, s + 1);
        divisors.push_back(a(s, s + 1).value());
    }
    for (std::size_t k = 0; k + 1 < divisors.size(); ++k)
        if (divisors[k + 1] % divisors[k] != 0)
            throw Error(ErrorKind::Internal, "alternating divisors: divisibility chain violated");
    return divisors;
}

}  // namespace abelia
