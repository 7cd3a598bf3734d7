#include "abelia/groupcoh.hpp"

#include "abelia/exterior.hpp"

namespace abelia {

CochainAction translation_action(PeriodLattice lattice) {
    return [lat = std::move(lattice)](const LatticePoint& n, const ExpAffine& v) {
        return v.translated(lat.coords(n));
    };
}

CochainAction twisted_action(std::shared_ptr<const AutomorphyFactor> af,
                             std::optional<unsigned> lift_below, std::optional<unsigned> act_order) {
    unsigned order = act_order.value_or(af->order());
    if (order > af->order())
        throw Error(ErrorKind::Internal, "twisted action order exceeds the factor's truncation");
    return [af, lift_below, order](const LatticePoint& n, const ExpAffine& v) {
        ExpAffine moved = v.reduced(order).translated(af->data().lattice.coords(n));
        ExpAffine inv =
            lift_below ? af->phi_lift_inverse(n, *lift_below) : af->phi_inverse(n);
        return star(moved, inv, af->data().poisson, order);
    };
}

LatticeCochain delta(const LatticeCochain& f, const CochainAction& action, const PeriodLattice& lattice) {
    LatticeCochain out;
    out.degree = f.degree + 1;
    out.family = "delta(" + (f.family.empty() ? std::string("cochain") : f.family) + ")";
    out.rule = [f, action, lattice](const TuplePoints& tuple) {
        unsigned p = f.degree;
        TuplePoints head(tuple.begin() + 1, tuple.end());
        ExpAffine acc = action(tuple[0], f(head));
        for (unsigned i = 0; i + 1 <= p; ++i) {
            TuplePoints merged;
            merged.reserve(p);
            for (unsigned k = 0; k < tuple.size(); ++k) {
                if (k == i) {
                    merged.push_back(lattice.add(tuple[i], tuple[i + 1]));
                    ++k;
                } else {
                    merged.push_back(tuple[k]);
                }
            }
            ExpAffine term = f(merged);
            acc = (i % 2 == 0) ? acc - term : acc + term;
        }
        TuplePoints front(tuple.begin(), tuple.end() - 1);
        ExpAffine last = f(front);
        acc = (p % 2 == 0) ? acc - last : acc + last;
        return acc;
    };
    return out;
}

LatticeCochain cup(const LatticeCochain& f, const LatticeCochain& g, const CochainAction& action,
                   const PeriodLattice& lattice, ValuePairing pairing, const PoissonBivector& pi,
                   unsigned order) {
    LatticeCochain out;
    out.degree = f.degree + g.degree;
    out.family = "cup";
    out.rule = [f, g, action, lattice, pairing, pi, order](const TuplePoints& tuple) {
        TuplePoints left(tuple.begin(), tuple.begin() + f.degree);
        TuplePoints right(tuple.begin() + f.degree, tuple.end());
        LatticePoint shift(2 * lattice.g, 0);
        for (const auto& n : left) shift = lattice.add(shift, n);
        ExpAffine lv = f(left);
        ExpAffine rv = action(shift, g(right));
        if (pairing == ValuePairing::Star) return star(lv, rv, pi, order);
        return lv.reduced(order) * rv.reduced(order);
    };
    return out;
}

bool twisted_action_check(const CochainAction& action, const PeriodLattice& lattice,
                          const std::vector<std::tuple<LatticePoint, LatticePoint, ExpAffine>>& samples) {
    for (const auto& [n1, n2, g] : samples) {
        ExpAffine lhs = action(n1, action(n2, g));
        ExpAffine rhs = action(lattice.add(n1, n2), g);
        if (lhs != rhs) return false;
    }
    return true;
}

ExtensionClassCochain::ExtensionClassCochain(std::shared_ptr<const AutomorphyFactor> af, unsigned t0)
    : af_(std::move(af)), t0_(t0) {
    if (t0_ == 0) throw Error(ErrorKind::Internal, "extension class needs a positive order");
    if (t0_ >= af_->order())
        throw Error(ErrorKind::Internal, "extension class: truncation order too small for t0");
}

ExpAffine ExtensionClassCochain::apply(const LatticePoint& n, const ExpAffine& f) const {
    unsigned order = af_->order();
    ExpAffine philift = af_->phi_lift(n, t0_);
    ExpAffine diff = af_->phi_inverse(n) - af_->phi_lift_inverse(n, t0_);
    ExpAffine num = star(star(f, philift, af_->data().poisson, order), diff, af_->data().poisson, order);
    return num.shifted_down(t0_);
}

LatticeCochain ExtensionClassCochain::applied_to_one() const {
    LatticeCochain out;
    out.degree = 1;
    out.family = "extension-class";
    auto af = af_;
    unsigned t0 = t0_;
    out.rule = [af, t0](const TuplePoints& tuple) {
        ExtensionClassCochain cls(af, t0);
        return cls.apply(tuple[0], ExpAffine::one(af->data().lattice.g, af->order()));
    };
    return out;
}

std::vector<LatticeCochain> build_basis_cocycles(const QuantumAHData& data, unsigned degree,
                                                 unsigned order) {
    unsigned g = data.lattice.g;
    if (!data.ah.h.m.is_zero())
        throw Error(ErrorKind::Validation,
                    "explicit basis cocycles are only verified for deformations of the trivial bundle");
    for (const auto& r : data.ah.chi.phases) {
        Rational m2 = r / 2;
        if (m2.get_den() != 1)
            throw Error(ErrorKind::Validation,
                        "explicit basis cocycles require the trivial semicharacter");
    }
    if (data.l_series.empty())
        throw Error(ErrorKind::Validation, "explicit basis cocycles require a nonzero series");
    unsigned t0 = data.l_series.begin()->first;
    const QVector& lt = data.l_series.begin()->second;

    // echelon complement of span{l_t0} inside the covector space
    QMatrix row(1, g);
    for (unsigned c = 0; c < g; ++c) row(0, c) = lt[c];
    auto pivots = rref(row);
    if (pivots.empty()) throw Error(ErrorKind::Validation, "leading series covector is zero");
    std::vector<unsigned> complement;
    for (unsigned c = 0; c < g; ++c)
        if (c != pivots[0]) complement.push_back(c);

    std::vector<LatticeCochain> out;
    if (degree == 0 || degree > g) return out;
    auto index_sets = exterior_basis(static_cast<unsigned>(complement.size()), degree - 1);
    for (unsigned c = 0; c < t0; ++c) {
        for (const auto& iset : index_sets) {
            LatticeCochain coc;
            coc.degree = degree;
            std::string name = "h^" + std::to_string(c) + " * a^{";
            for (std::size_t k = 0; k < iset.size(); ++k)
                name += (k ? "," : "") + std::to_string(iset[k]);
            name += "} * alpha";
            coc.family = name;
            coc.rule = [data, complement, iset, c, t0, order](const TuplePoints& tuple) {
                unsigned g = data.lattice.g;
                // a^I factor: product of dual-basis pairings on lambda_1..lambda_{j-1}
                GQ aval(1);
                for (std::size_t k = 0; k < iset.size(); ++k) {
                    QVector dual(g);
                    dual[complement[iset[k] - 1]] = GQ(1);
                    aval *= data.pair_covector(dual, data.lattice.coords(tuple[k + 1]));
                }
                // tail factor ( exp(-sum_{m>=t0} h^m pi <l_m, lambda_0>) - 1 ) / h^{t0}
                HbarSeries expo(order + t0);
                QVector x0 = data.lattice.coords(tuple[0]);
                for (const auto& [m, l] : data.l_series) {
                    if (m >= order + t0) continue;
                    GQ cp = data.pair_covector(l, x0);
                    if (!cp.is_zero()) expo.set_coeff(m, PiScalar::pi_times(-cp));
                }
                HbarSeries tail = HbarSeries::exp(expo) - HbarSeries::one(order + t0);
                HbarSeries value = tail.shifted_down(t0);  // order N
                HbarSeries shifted = HbarSeries::monomial(order, c, PiScalar(aval)) * value;
                return ExpAffine::constant(g, shifted);
            };
            out.push_back(std::move(coc));
        }
    }
    return out;
}

std::vector<std::string> emit_formal_cocycles(const QuantumAHData& data, unsigned degree) {
    DegeneracyData d = degeneracy_subtorus(data.ah.h, data.lattice);
    ClassicalAnalysis an = classical_analysis(data.ah, data.lattice, d);
    std::vector<std::string> out;
    if (!an.chi_trivial_on_sub) return out;
    unsigned t0 = 0;
    for (const auto& [m, l] : data.l_series) {
        QVector rest = restrict_covector(l, d);
        bool zero = true;
        for (const auto& cvc : rest) zero = zero && cvc.is_zero();
        if (!zero) {
            t0 = m;
            break;
        }
    }
    if (t0 == 0) return out;
    long i = static_cast<long>(degree) - static_cast<long>(an.k) - 1;
    if (i < 0 || i > static_cast<long>(d.g0) - 1) return out;
    unsigned long hk = an.hbar_mult.get_ui();
    auto index_sets = exterior_basis(d.g0 > 0 ? d.g0 - 1 : 0, static_cast<unsigned>(i));
    for (unsigned c = 0; c < t0; ++c)
        for (unsigned long r = 1; r <= hk; ++r)
            for (const auto& iset : index_sets) {
                std::string is;
                for (std::size_t k = 0; k < iset.size(); ++k) is += (k ? "," : "") + std::to_string(iset[k]);
                out.push_back("h^" + std::to_string(c) + " * (b^" + std::to_string(r) +
                              "_{rho(l_1..l_" + std::to_string(an.k) + ")} o rho o T_{l_0}) * s^v(a^{" + is +
                              "})_{l_" + std::to_string(an.k + 1) + "..l_" + std::to_string(degree - 1) +
                              "} * phi_{l_0}^{-1} * (exp(-pi sum_{m>=" + std::to_string(t0) +
                              "} h^m <l_m, l_0>) - 1) / h^" + std::to_string(t0));
            }
    return out;
}

namespace {

unsigned long mix64(unsigned long x) {
    x += 0x9e3779b97f4a7c15UL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9UL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebUL;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<TuplePoints> sample_tuples(unsigned g, unsigned arity, unsigned count, unsigned long seed) {
    std::vector<TuplePoints> out;
    unsigned long state = seed;
    for (unsigned k = 0; k < count; ++k) {
        TuplePoints tuple;
        for (unsigned a = 0; a < arity; ++a) {
            LatticePoint n(2 * g);
            for (auto& x : n) {
                state = mix64(state);
                x = static_cast<long>(state % 7) - 3;
            }
            tuple.push_back(std::move(n));
        }
        out.push_back(std::move(tuple));
    }
    return out;
}

LatticeCochain random_test_cochain(unsigned g, unsigned degree, unsigned order, unsigned long seed,
                                   bool constants_only) {
    LatticeCochain out;
    out.degree = degree;
    out.family = constants_only ? "random-constant" : "random";
    out.rule = [g, order, seed, degree, constants_only](const TuplePoints& tuple) {
        unsigned long h = seed;
        for (const auto& n : tuple)
            for (long x : n) h = mix64(h ^ static_cast<unsigned long>(x + 11));
        // two deterministic pseudo-random terms: one polynomial, one exponential
        ExpAffine v = ExpAffine::zero(g, order);
        auto next = [&h]() {
            h = mix64(h);
            return static_cast<long>(h % 5) - 2;
        };
        if (constants_only) {
            HbarSeries s(order);
            for (unsigned k = 0; k < order; ++k) {
                PiScalar c;
                c.set(k % 2, GQ(Rational(next()), Rational(next())));
                s.set_coeff(k, c);
            }
            return ExpAffine::constant(g, s);
        }
        VPoly p(g, order);
        Monomial m(g, 0);
        m[static_cast<unsigned>(mix64(h) % g)] = static_cast<unsigned>(degree % 3);
        p.add_term(m, HbarSeries(order, PiScalar(GQ(Rational(next()), Rational(next())))));
        if (!p.is_zero()) v.add_term(QVector(g), GQ(), p);
        QVector lin(g);
        for (auto& c : lin) c = GQ(Rational(next()), Rational(next()));
        v = v + ExpAffine::exponential(
                    g, HbarSeries(order, PiScalar(GQ(Rational(next()), Rational(next())))), lin,
                    GQ(Rational(next()), Rational(next()) / 2));
        return v;
    };
    return out;
}

}  // namespace abelia
