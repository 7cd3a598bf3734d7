#include "abelia/moyal.hpp"

namespace abelia {

bool PoissonBivector::is_antisymmetric() const {
    if (m.rows() != m.cols()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != -m(c, r)) return false;
    return true;
}

GQ PoissonBivector::pair(const QVector& a, const QVector& b) const {
    GQ acc;
    for (std::size_t u = 0; u < m.rows(); ++u) {
        if (a[u].is_zero()) continue;
        for (std::size_t v = 0; v < m.cols(); ++v) {
            if (m(u, v).is_zero() || b[v].is_zero()) continue;
            acc += a[u] * m(u, v) * b[v];
        }
    }
    return acc;
}

bool compatibility(const HermitianForm& h, const PoissonBivector& pi) {
    QMatrix c = h.m.transposed() * pi.m * h.m;
    return c.is_zero();
}

// ---------------------------------------------------------------- VPoly --

VPoly VPoly::constant(unsigned nvars, HbarSeries s) {
    VPoly p(nvars, s.order());
    p.add_term(Monomial(nvars, 0), s);
    return p;
}

VPoly VPoly::variable(unsigned nvars, unsigned order, unsigned index) {
    VPoly p(nvars, order);
    Monomial m(nvars, 0);
    m.at(index) += 1;
    p.add_term(m, HbarSeries::one(order));
    return p;
}

void VPoly::add_term(const Monomial& mon, const HbarSeries& c) {
    if (mon.size() != nvars_) throw Error(ErrorKind::Internal, "vpoly: monomial arity mismatch");
    if (c.order() != order_) throw Error(ErrorKind::Internal, "vpoly: coefficient order mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(mon);
    if (it == terms_.end())
        terms_.emplace(mon, c);
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

VPoly VPoly::operator+(const VPoly& o) const {
    if (nvars_ != o.nvars_ || order_ != o.order_)
        throw Error(ErrorKind::Internal, "vpoly: shape mismatch in sum");
    VPoly p = *this;
    for (const auto& [m, c] : o.terms_) p.add_term(m, c);
    return p;
}

VPoly VPoly::operator-() const {
    VPoly p(nvars_, order_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

VPoly VPoly::operator*(const VPoly& o) const {
    if (nvars_ != o.nvars_ || order_ != o.order_)
        throw Error(ErrorKind::Internal, "vpoly: shape mismatch in product");
    VPoly p(nvars_, order_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            HbarSeries c = ca * cb;
            if (c.is_zero()) continue;
            Monomial m(nvars_);
            for (unsigned k = 0; k < nvars_; ++k) m[k] = ma[k] + mb[k];
            p.add_term(m, c);
        }
    return p;
}

VPoly VPoly::scaled(const HbarSeries& s) const {
    VPoly p(nvars_, order_);
    for (const auto& [m, c] : terms_) p.add_term(m, c * s);
    return p;
}

VPoly VPoly::scaled(const PiScalar& s) const {
    VPoly p(nvars_, order_);
    for (const auto& [m, c] : terms_) p.add_term(m, c.scaled(s));
    return p;
}

VPoly VPoly::derivative(unsigned var) const {
    VPoly p(nvars_, order_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        p.add_term(d, c.scaled(PiScalar(GQ(static_cast<long>(m[var])))));
    }
    return p;
}

VPoly VPoly::translated(const QVector& shift) const {
    if (shift.size() != nvars_) throw Error(ErrorKind::Internal, "vpoly: shift arity mismatch");
    VPoly p(nvars_, order_);
    for (const auto& [m, c] : terms_) {
        // expand prod (v_k + shift_k)^{m_k}
        std::vector<std::pair<Monomial, GQ>> expansion{{Monomial(nvars_, 0), GQ(1)}};
        for (unsigned k = 0; k < nvars_; ++k) {
            if (m[k] == 0) continue;
            std::vector<std::pair<Monomial, GQ>> next;
            for (unsigned b = 0; b <= m[k]; ++b) {
                GQ binom(static_cast<long>(binomial(m[k], b)));
                GQ pw(1);
                for (unsigned t = b; t < m[k]; ++t) pw *= shift[k];
                GQ factor = binom * pw;
                if (factor.is_zero()) continue;
                for (const auto& [mon, coef] : expansion) {
                    Monomial mm = mon;
                    mm[k] += b;
                    next.emplace_back(mm, coef * factor);
                }
            }
            expansion = std::move(next);
        }
        for (const auto& [mon, coef] : expansion) p.add_term(mon, c.scaled(PiScalar(coef)));
    }
    return p;
}

VPoly VPoly::reduced(unsigned new_order) const {
    VPoly p(nvars_, new_order);
    for (const auto& [m, c] : terms_) p.add_term(m, c.reduced(new_order));
    return p;
}

VPoly VPoly::shifted_down(unsigned k) const {
    VPoly p(nvars_, order_ - k);
    for (const auto& [m, c] : terms_) p.add_term(m, c.shifted_down(k));
    return p;
}

// ------------------------------------------------------------- ExpAffine --

ExpAffine ExpAffine::one(unsigned g, unsigned order) { return constant(g, HbarSeries::one(order)); }

ExpAffine ExpAffine::constant(unsigned g, HbarSeries s) {
    ExpAffine e(g, s.order());
    e.add_term(QVector(g), GQ(), VPoly::constant(g, s));
    return e;
}

ExpAffine ExpAffine::constant(unsigned g, unsigned order, GQ c) {
    return constant(g, HbarSeries(order, PiScalar(std::move(c))));
}

ExpAffine ExpAffine::variable(unsigned g, unsigned order, unsigned index) {
    ExpAffine e(g, order);
    e.add_term(QVector(g), GQ(), VPoly::variable(g, order, index));
    return e;
}

ExpAffine ExpAffine::exponential(unsigned g, const HbarSeries& coeff, const QVector& lin, const GQ& phase) {
    ExpAffine e(g, coeff.order());
    e.add_term(lin, phase, VPoly::constant(g, coeff));
    return e;
}

void ExpAffine::add_term(QVector lin, GQ phase, VPoly poly) {
    if (lin.size() != g_) throw Error(ErrorKind::Internal, "expaffine: covector arity mismatch");
    if (poly.order() != order_) throw Error(ErrorKind::Internal, "expaffine: term order mismatch");
    if (poly.is_zero()) return;

    // canonicalize the phase: split Im c = k/2 + s with s in [0, 1/2) and
    // fold exp(i pi k/2) = i^k into the coefficient; the split is additive,
    // so the normal form is stable under products of exponentials
    {
        Rational two_im = phase.im() * 2;
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), two_im.get_num().get_mpz_t(), two_im.get_den().get_mpz_t());
        Rational rem = (two_im - Rational(k)) / 2;
        mpz_class km = k % 4;
        if (km < 0) km += 4;
        GQ unit(1);
        switch (km.get_ui()) {
            case 1: unit = GQ::i(); break;
            case 2: unit = GQ(-1); break;
            case 3: unit = -GQ::i(); break;
            default: break;
        }
        if (unit != GQ(1)) poly = poly.scaled(PiScalar(unit));
        phase = GQ(phase.re(), rem);
    }

    ExpKey key{std::move(lin), std::move(phase)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(poly));
    } else {
        VPoly sum = it->second + poly;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = std::move(sum);
    }
}

ExpAffine ExpAffine::operator+(const ExpAffine& o) const {
    if (g_ != o.g_ || order_ != o.order_)
        throw Error(ErrorKind::Internal, "expaffine: shape mismatch in sum");
    ExpAffine e = *this;
    for (const auto& [k, p] : o.terms_) e.add_term(k.lin, k.phase, p);
    return e;
}

ExpAffine ExpAffine::operator-(const ExpAffine& o) const { return *this + (-o); }

ExpAffine ExpAffine::operator-() const {
    ExpAffine e(g_, order_);
    for (const auto& [k, p] : terms_) e.terms_.emplace(k, -p);
    return e;
}

ExpAffine ExpAffine::operator*(const ExpAffine& o) const {
    if (g_ != o.g_ || order_ != o.order_)
        throw Error(ErrorKind::Internal, "expaffine: shape mismatch in product");
    ExpAffine e(g_, order_);
    for (const auto& [ka, pa] : terms_)
        for (const auto& [kb, pb] : o.terms_) {
            QVector lin(g_);
            for (unsigned i = 0; i < g_; ++i) lin[i] = ka.lin[i] + kb.lin[i];
            e.add_term(std::move(lin), ka.phase + kb.phase, pa * pb);
        }
    return e;
}

ExpAffine ExpAffine::scaled(const PiScalar& s) const {
    ExpAffine e(g_, order_);
    for (const auto& [k, p] : terms_) e.add_term(k.lin, k.phase, p.scaled(s));
    return e;
}

ExpAffine ExpAffine::scaled_series(const HbarSeries& s) const {
    ExpAffine e(g_, order_);
    for (const auto& [k, p] : terms_) e.add_term(k.lin, k.phase, p.scaled(s));
    return e;
}

ExpAffine ExpAffine::translated(const QVector& shift) const {
    if (shift.size() != g_) throw Error(ErrorKind::Internal, "expaffine: shift arity mismatch");
    ExpAffine e(g_, order_);
    for (const auto& [k, p] : terms_) {
        GQ extra;
        for (unsigned i = 0; i < g_; ++i) extra += k.lin[i] * shift[i];
        e.add_term(k.lin, k.phase + extra, p.translated(shift));
    }
    return e;
}

ExpAffine ExpAffine::reduced(unsigned new_order) const {
    ExpAffine e(g_, new_order);
    for (const auto& [k, p] : terms_) e.add_term(k.lin, k.phase, p.reduced(new_order));
    return e;
}

ExpAffine ExpAffine::shifted_down(unsigned k) const {
    ExpAffine e(g_, order_ - k);
    for (const auto& [key, p] : terms_) e.add_term(key.lin, key.phase, p.shifted_down(k));
    return e;
}

std::string ExpAffine::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, p] : terms_) {
        if (!out.empty()) out += " + ";
        std::string poly;
        for (const auto& [m, c] : p.terms()) {
            if (!poly.empty()) poly += " + ";
            std::string mono;
            for (unsigned i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "v" + std::to_string(i + 1);
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            std::string cs = c.str();
            if (mono.empty())
                poly += cs;
            else if (cs == "1")
                poly += mono;
            else
                poly += "(" + cs + ")*" + mono;
        }
        if (p.terms().size() > 1) poly = "(" + poly + ")";
        bool trivial_exp = k.phase.is_zero();
        for (const auto& a : k.lin) trivial_exp = trivial_exp && a.is_zero();
        if (trivial_exp) {
            out += poly;
            continue;
        }
        std::string expo;
        for (unsigned i = 0; i < g_; ++i) {
            if (k.lin[i].is_zero()) continue;
            if (!expo.empty()) expo += "+";
            expo += "(" + k.lin[i].str() + ")*v" + std::to_string(i + 1);
        }
        if (!k.phase.is_zero()) {
            if (!expo.empty()) expo += "+";
            expo += k.phase.str();
        }
        out += poly + "*exp(pi*(" + expo + "))";
    }
    return out;
}

// ------------------------------------------------------------------ star --

ExpAffine star(const ExpAffine& f, const ExpAffine& g, const PoissonBivector& pi, unsigned order) {
    if (f.g() != g.g()) throw Error(ErrorKind::Internal, "star: arity mismatch");
    if (f.order() < order || g.order() < order)
        throw Error(ErrorKind::Internal,
                    "star: truncation mismatch, operands must carry at least the requested order");
    unsigned gg = f.g();
    ExpAffine fr = f.reduced(order);
    ExpAffine gr = g.reduced(order);
    ExpAffine out(gg, order);

    for (const auto& [ka, pa] : fr.terms())
        for (const auto& [kb, pb] : gr.terms()) {
            // bivariate polynomial in (x, y): x = vars 0..g-1, y = vars g..2g-1
            VPoly b(2 * gg, order);
            for (const auto& [ma, ca] : pa.terms())
                for (const auto& [mb, cb] : pb.terms()) {
                    HbarSeries c = ca * cb;
                    if (c.is_zero()) continue;
                    Monomial m(2 * gg, 0);
                    for (unsigned i = 0; i < gg; ++i) {
                        m[i] = ma[i];
                        m[gg + i] = mb[i];
                    }
                    b.add_term(m, c);
                }

            // apply exp(hbar D) with D = Pi(dx,dy) + pi Pi(A,dy) + pi Pi(dx,B)
            VPoly acc = b;
            VPoly cur = b;
            for (unsigned k = 1; k < order && !cur.is_zero(); ++k) {
                VPoly next(2 * gg, order);
                for (std::size_t u = 0; u < gg; ++u)
                    for (std::size_t v = 0; v < gg; ++v) {
                        const GQ& piuv = pi.m(u, v);
                        if (piuv.is_zero()) continue;
                        VPoly dy = cur.derivative(gg + v);
                        if (!dy.is_zero()) {
                            next = next + dy.derivative(u).scaled(PiScalar(piuv));
                            if (!ka.lin[u].is_zero())
                                next = next + dy.scaled(PiScalar::pi_times(piuv * ka.lin[u]));
                        }
                        if (!kb.lin[v].is_zero()) {
                            VPoly dx = cur.derivative(u);
                            if (!dx.is_zero())
                                next = next + dx.scaled(PiScalar::pi_times(piuv * kb.lin[v]));
                        }
                    }
                // multiply by hbar / k
                cur = VPoly(2 * gg, order);
                HbarSeries hk = HbarSeries::monomial(order, 1, PiScalar(GQ(Rational(1, k))));
                for (const auto& [m, c] : next.terms()) cur.add_term(m, c * hk);
                acc = acc + cur;
            }

            // collapse x = y = v
            VPoly collapsed(gg, order);
            for (const auto& [m, c] : acc.terms()) {
                Monomial mm(gg, 0);
                for (unsigned i = 0; i < gg; ++i) mm[i] = m[i] + m[gg + i];
                collapsed.add_term(mm, c);
            }

            // overall Moyal phase exp(hbar pi^2 Pi(A, B))
            GQ corr = pi.pair(ka.lin, kb.lin);
            if (!corr.is_zero()) {
                HbarSeries arg = HbarSeries::monomial(order, 1, PiScalar::pi_power(2, corr));
                collapsed = collapsed.scaled(HbarSeries::exp(arg));
            }

            QVector lin(gg);
            for (unsigned i = 0; i < gg; ++i) lin[i] = ka.lin[i] + kb.lin[i];
            out.add_term(std::move(lin), ka.phase + kb.phase, collapsed);
        }
    return out;
}

ExpAffine poisson_bracket(const ExpAffine& f, const ExpAffine& g, const PoissonBivector& pi) {
    // derivative of a term: poly picks up pi * A_u on top of the monomial rule
    unsigned gg = f.g();
    auto deriv = [&](const ExpAffine& e, unsigned var) {
        ExpAffine out(e.g(), e.order());
        for (const auto& [k, p] : e.terms()) {
            VPoly d = p.derivative(var);
            if (!k.lin[var].is_zero()) d = d + p.scaled(PiScalar::pi_times(k.lin[var]));
            if (!d.is_zero()) out.add_term(k.lin, k.phase, d);
        }
        return out;
    };
    ExpAffine acc = ExpAffine::zero(gg, f.order());
    for (std::size_t u = 0; u < gg; ++u)
        for (std::size_t v = 0; v < gg; ++v) {
            if (pi.m(u, v).is_zero()) continue;
            acc = acc + (deriv(f, u) * deriv(g, v)).scaled(PiScalar(pi.m(u, v)));
        }
    return acc;
}

// ----------------------------------------------------- automorphy factor --

GQ QuantumAHData::pair_covector(const QVector& l, const QVector& v) const {
    GQ acc;
    for (std::size_t i = 0; i < l.size(); ++i) acc += l[i] * v[i].conj();
    return acc;
}

AutomorphyFactor::AutomorphyFactor(QuantumAHData data, unsigned order)
    : data_(std::move(data)), order_(order), e_(integral_alternating_form(data_.ah.h, data_.lattice)) {
    if (!data_.poisson.is_antisymmetric())
        throw Error(ErrorKind::Validation, "poisson bivector is not antisymmetric");
    if (!compatibility(data_.ah.h, data_.poisson))
        throw Error(ErrorKind::Validation, "quantum data violates the compatibility contraction");
}

ExpAffine AutomorphyFactor::build(const LatticePoint& n, bool invert, std::optional<unsigned> below) const {
    unsigned g = data_.lattice.g;
    QVector x = data_.lattice.coords(n);
    QVector xbar(g);
    for (unsigned i = 0; i < g; ++i) xbar[i] = x[i].conj();

    // exponent linear part A = M conj(lambda), constant pi/2 H(lambda,lambda) + i pi chi-phase
    QVector lin = matvec(data_.ah.h.m, xbar);
    GQ hll = data_.ah.h.value(x, x);
    if (!hll.is_real()) throw Error(ErrorKind::Internal, "H(lambda, lambda) must be real");
    GQ phase(hll.re() / 2, data_.ah.chi.phase(n, e_));

    // unit series exp( sum_m hbar^m pi <l_m, lambda> )
    HbarSeries expo(order_);
    for (const auto& [m, l] : data_.l_series) {
        if (below && m >= *below) continue;
        if (m >= order_) continue;
        GQ c = data_.pair_covector(l, x);
        if (c.is_zero()) continue;
        expo.set_coeff(m, expo.coeff(m) + PiScalar::pi_times(c));
    }

    if (invert) {
        for (unsigned i = 0; i < g; ++i) lin[i] = -lin[i];
        phase = -phase;
        expo = -expo;
    }
    return ExpAffine::exponential(g, HbarSeries::exp(expo), lin, phase);
}

ExpAffine AutomorphyFactor::phi(const LatticePoint& n) const { return build(n, false, std::nullopt); }
ExpAffine AutomorphyFactor::phi_inverse(const LatticePoint& n) const { return build(n, true, std::nullopt); }
ExpAffine AutomorphyFactor::phi_lift(const LatticePoint& n, unsigned below) const {
    return build(n, false, below);
}
ExpAffine AutomorphyFactor::phi_lift_inverse(const LatticePoint& n, unsigned below) const {
    return build(n, true, below);
}

bool AutomorphyFactor::check_cocycle(const LatticePoint& n1, const LatticePoint& n2) const {
    ExpAffine lhs = star(phi(n2), phi(n1).translated(data_.lattice.coords(n2)), data_.poisson, order_);
    ExpAffine rhs = phi(data_.lattice.add(n1, n2));
    return lhs == rhs;
}

ExpAffine build_phi(const QuantumAHData& data, const LatticePoint& n, unsigned order) {
    return AutomorphyFactor(data, order).phi(n);
}

}  // namespace abelia
