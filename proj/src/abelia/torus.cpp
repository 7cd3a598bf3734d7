#include "abelia/torus.hpp"

namespace abelia {

QVector PeriodLattice::coords(const LatticePoint& n) const {
    if (n.size() != generators.size())
        throw Error(ErrorKind::Internal, "lattice point has wrong coordinate count");
    QVector v(g);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 0) continue;
        for (unsigned c = 0; c < g; ++c) v[c] += generators[i][c] * GQ(n[i]);
    }
    return v;
}

LatticePoint PeriodLattice::add(const LatticePoint& a, const LatticePoint& b) const {
    LatticePoint out(2 * g);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

bool PeriodLattice::full_rank() const {
    if (generators.size() != 2 * g) return false;
    QMatrix real(2 * g, 2 * g);
    for (std::size_t i = 0; i < 2 * g; ++i)
        for (unsigned c = 0; c < g; ++c) {
            real(2 * c, i) = GQ(generators[i][c].re());
            real(2 * c + 1, i) = GQ(generators[i][c].im());
        }
    return rank(real) == 2 * g;
}

GQ HermitianForm::value(const QVector& x, const QVector& y) const {
    GQ acc;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (x[r].is_zero()) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += x[r] * m(r, c) * y[c].conj();
    }
    return acc;
}

bool HermitianForm::is_hermitian() const {
    if (m.rows() != m.cols()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != m(c, r).conj()) return false;
    return true;
}

ZMatrix integral_alternating_form(const HermitianForm& h, const PeriodLattice& lat) {
    std::size_t n = lat.generators.size();
    ZMatrix e(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            GQ v = h.value(lat.generators[i], lat.generators[j]);
            const Rational& im = v.im();
            if (im.get_den() != 1)
                throw Error(ErrorKind::Validation, "Im H is not integral on generators (" +
                                                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            e(i, j) = ZZ(im.get_num());
        }
    return e;
}

Rational Semicharacter::phase(const LatticePoint& n, const ZMatrix& e) const {
    if (n.size() != phases.size())
        throw Error(ErrorKind::Internal, "semicharacter: coordinate count mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 0) continue;
        acc += phases[i] * n[i];
    }
    for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = i + 1; j < n.size(); ++j) {
            if (n[i] == 0 || n[j] == 0) continue;
            acc += Rational(e(i, j).value()) * n[i] * n[j];
        }
    return acc;
}

QMatrix qmatrix_inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "inverse of non-square matrix");
    std::size_t n = m.rows();
    QMatrix aug = m.columns_concat(QMatrix::identity(n));
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw Error(ErrorKind::Internal, "matrix is singular");
    QMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

DegeneracyData degeneracy_subtorus(const HermitianForm& h, const PeriodLattice& lat, bool alt_complement) {
    unsigned g = lat.g;
    DegeneracyData d;
    d.g = g;

    // V_0 = kernel of conj(M): the directions annihilated by H on both sides
    QMatrix mbar(g, g);
    for (unsigned r = 0; r < g; ++r)
        for (unsigned c = 0; c < g; ++c) mbar(r, c) = h.m(r, c).conj();
    d.v0_basis = kernel_basis(mbar);
    d.g0 = static_cast<unsigned>(d.v0_basis.cols());

    // complement through echelon pivots of the kernel rows
    QMatrix v0t = d.v0_basis.transposed();
    auto pivots = rref(v0t);
    std::vector<bool> pivot_col(g, false);
    for (auto p : pivots) pivot_col[p] = true;
    std::vector<std::vector<GQ>> comp;
    for (unsigned j = 0; j < g; ++j) {
        if (pivot_col[j]) continue;
        std::vector<GQ> e(g);
        e[j] = GQ(1);
        comp.push_back(std::move(e));
    }
    d.complement_basis = QMatrix::from_columns(g, comp);
    if (alt_complement && d.g0 > 0) {
        // shear each complement vector by a kernel vector: still a complement
        for (std::size_t c = 0; c < d.complement_basis.cols(); ++c)
            for (unsigned r = 0; r < g; ++r)
                d.complement_basis(r, c) += d.v0_basis(r, c % d.g0);
    }

    // splitting s: the V0-coordinate block of the inverse change of basis
    if (d.g0 > 0) {
        QMatrix full = d.v0_basis.columns_concat(d.complement_basis);
        QMatrix inv = qmatrix_inverse(full);
        d.s_matrix = QMatrix(d.g0, g);
        for (unsigned r = 0; r < d.g0; ++r)
            for (unsigned c = 0; c < g; ++c) d.s_matrix(r, c) = inv(r, c);
        QMatrix check = d.s_matrix * d.v0_basis;
        if (check != QMatrix::identity(d.g0))
            throw Error(ErrorKind::Internal, "splitting does not restrict to the identity");
    } else {
        d.s_matrix = QMatrix(0, g);
    }

    // integer points of V0: solutions of conj(M) * (sum n_i lambda_i) = 0
    QMatrix sys(g, 2 * g);
    for (unsigned i = 0; i < 2 * g; ++i) {
        QVector col = matvec(mbar, lat.generators[i]);
        for (unsigned r = 0; r < g; ++r) sys(r, i) = col[r];
    }
    // stack real and imaginary parts and clear denominators row by row
    ZMatrix zsys(2 * g, 2 * g);
    for (unsigned r = 0; r < g; ++r) {
        mpz_class den_re(1), den_im(1);
        for (unsigned c = 0; c < 2 * g; ++c) {
            den_re = lcm(den_re, sys(r, c).re().get_den());
            den_im = lcm(den_im, sys(r, c).im().get_den());
        }
        for (unsigned c = 0; c < 2 * g; ++c) {
            zsys(2 * r, c) = ZZ(mpz_class(sys(r, c).re().get_num() * (den_re / sys(r, c).re().get_den())));
            zsys(2 * r + 1, c) = ZZ(mpz_class(sys(r, c).im().get_num() * (den_im / sys(r, c).im().get_den())));
        }
    }
    d.lambda0_basis = integer_kernel_basis(zsys);
    if (d.lambda0_basis.cols() != 2 * static_cast<std::size_t>(d.g0))
        throw Error(ErrorKind::Validation, "degeneracy locus is not a subtorus: lattice rank " +
                                               std::to_string(d.lambda0_basis.cols()) + " != " +
                                               std::to_string(2 * d.g0));
    d.lambda_completion = unimodular_completion(d.lambda0_basis);
    return d;
}

QVector restrict_covector(const QVector& l, const DegeneracyData& d) {
    QVector out(d.g0);
    for (unsigned u = 0; u < d.g0; ++u) {
        GQ acc;
        for (unsigned i = 0; i < d.g; ++i) acc += l[i] * d.v0_basis(i, u).conj();
        out[u] = acc;
    }
    return out;
}

namespace {

// Exact inertia of a nondegenerate Hermitian matrix by recursive pivoting.
void hermitian_inertia(QMatrix b, unsigned& pos, unsigned& neg) {
    pos = neg = 0;
    std::vector<std::size_t> live(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) live[i] = i;
    while (!live.empty()) {
        // prefer a nonzero diagonal pivot
        std::size_t pivot = live.size();
        for (std::size_t u = 0; u < live.size(); ++u)
            if (!b(live[u], live[u]).is_zero()) {
                pivot = u;
                break;
            }
        if (pivot < live.size()) {
            std::size_t p = live[pivot];
            GQ d = b(p, p);
            if (!d.is_real()) throw Error(ErrorKind::Internal, "hermitian diagonal must be real");
            if (d.re() > 0)
                ++pos;
            else
                ++neg;
            live.erase(live.begin() + pivot);
            for (std::size_t x : live)
                for (std::size_t y : live) {
                    GQ adj = b(x, p) * b(p, y) / d;
                    b(x, y) -= adj;
                }
        } else {
            // all diagonal entries vanish; take a hyperbolic pair
            std::size_t ui = live.size(), vi = live.size();
            for (std::size_t x = 0; x < live.size() && ui == live.size(); ++x)
                for (std::size_t y = x + 1; y < live.size(); ++y)
                    if (!b(live[x], live[y]).is_zero()) {
                        ui = x;
                        vi = y;
                        break;
                    }
            if (ui == live.size())
                throw Error(ErrorKind::Internal, "hermitian inertia: degenerate block");
            std::size_t u = live[ui], v = live[vi];
            ++pos;
            ++neg;
            GQ buv = b(u, v);
            GQ bvu = b(v, u);
            live.erase(live.begin() + vi);
            live.erase(live.begin() + ui);
            for (std::size_t x : live)
                for (std::size_t y : live) {
                    // project to the orthogonal complement of the pair
                    GQ adj = b(x, v) * b(u, y) / buv + b(x, u) * b(v, y) / bvu;
                    b(x, y) -= adj;
                }
        }
    }
}

}  // namespace

unsigned index_k(const HermitianForm& h, const DegeneracyData& d) {
    std::size_t n = d.complement_basis.cols();
    if (n == 0) return 0;
    QMatrix b(n, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            b(u, v) = h.value(d.complement_basis.column(u), d.complement_basis.column(v));
    unsigned pos = 0, neg = 0;
    hermitian_inertia(b, pos, neg);
    if (pos + neg != n) throw Error(ErrorKind::Internal, "descended form is degenerate");
    return neg;
}

ClassicalAnalysis classical_analysis(const ClassicalAHData& ah, const PeriodLattice& lat,
                                     const DegeneracyData& d) {
    ClassicalAnalysis out;
    out.g0 = d.g0;
    ZMatrix e = integral_alternating_form(ah.h, lat);

    for (std::size_t c = 0; c < d.lambda0_basis.cols(); ++c) {
        LatticePoint n(2 * lat.g);
        for (std::size_t r = 0; r < 2 * lat.g; ++r) {
            if (!d.lambda0_basis(r, c).value().fits_slong_p())
                throw Error(ErrorKind::Internal, "sublattice coordinate overflow");
            n[r] = d.lambda0_basis(r, c).value().get_si();
        }
        Rational ph = ah.chi.phase(n, e);
        Rational mod2 = ph - 2 * Rational(mpz_class(ph.get_num() / (2 * ph.get_den())));
        if (mod2 != 0) out.chi_trivial_on_sub = false;
    }

    out.k = index_k(ah.h, d);

    std::size_t q = d.lambda_completion.cols();
    if (q > 0) {
        ZMatrix ebar(q, q);
        for (std::size_t u = 0; u < q; ++u)
            for (std::size_t v = 0; v < q; ++v) {
                ZZ acc;
                for (std::size_t r = 0; r < 2 * lat.g; ++r)
                    for (std::size_t c = 0; c < 2 * lat.g; ++c)
                        acc += d.lambda_completion(r, u) * e(r, c) * d.lambda_completion(c, v);
                ebar(u, v) = acc;
            }
        out.quotient_divisors = integer_alternating_divisors(ebar);
        for (const auto& dv : out.quotient_divisors) out.hbar_mult *= dv;
    }

    out.dims.assign(lat.g + 1, 0);
    if (out.chi_trivial_on_sub) {
        for (unsigned i = 0; i <= out.g0; ++i) {
            unsigned j = out.k + i;
            if (j <= lat.g) out.dims[j] = out.hbar_mult * binomial(out.g0, i);
        }
    }
    return out;
}

std::vector<mpz_class> classical_dims(const ClassicalAHData& ah, const PeriodLattice& lat) {
    DegeneracyData d = degeneracy_subtorus(ah.h, lat);
    return classical_analysis(ah, lat, d).dims;
}

ValidationReport validate(const ClassicalAHData& ah, const PeriodLattice& lat) {
    ValidationReport rep;
    if (lat.g == 0) {
        rep.issues.push_back({"lattice", "torus dimension must be positive"});
        return rep;
    }
    if (lat.generators.size() != 2 * lat.g) {
        rep.issues.push_back({"lattice", "expected " + std::to_string(2 * lat.g) + " generators"});
        return rep;
    }
    for (const auto& gen : lat.generators)
        if (gen.size() != lat.g) {
            rep.issues.push_back({"lattice", "generator coordinate count mismatch"});
            return rep;
        }
    if (!lat.full_rank())
        rep.issues.push_back({"lattice", "generators are not R-linearly independent; V/Lambda is not a torus"});

    if (ah.h.m.rows() != lat.g || ah.h.m.cols() != lat.g)
        rep.issues.push_back({"hermitian", "H must be g x g"});
    else if (!ah.h.is_hermitian())
        rep.issues.push_back({"hermitian", "H is not conjugate-symmetric"});
    else {
        for (std::size_t i = 0; i < 2 * lat.g; ++i)
            for (std::size_t j = i + 1; j < 2 * lat.g; ++j) {
                GQ v = ah.h.value(lat.generators[i], lat.generators[j]);
                if (v.im().get_den() != 1) {
                    rep.issues.push_back({"integrality",
                                          "Im H(lambda_" + std::to_string(i + 1) + ", lambda_" +
                                              std::to_string(j + 1) + ") = " + v.im().get_str() +
                                              " is not an integer"});
                }
            }
    }
    if (ah.chi.phases.size() != 2 * lat.g)
        rep.issues.push_back({"semicharacter", "expected one phase per generator"});
    return rep;
}

}  // namespace abelia
