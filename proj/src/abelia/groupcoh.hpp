#pragma once

// Cochains of the period lattice valued in symbolic functions, the group
// cohomology differential (optionally twisted by a factor of automorphy),
// the cup product, the extension-class machinery and the explicit basis
// cocycles for deformations of the trivial bundle.
//
// Cochain spaces are uncountable, so cochains are evaluable rules and every
// identity is checked pointwise on sampled lattice tuples.

#include <functional>
#include <memory>

#include "abelia/moyal.hpp"

namespace abelia {

using TuplePoints = std::vector<LatticePoint>;

struct LatticeCochain {
    unsigned degree = 0;
    std::string family;  // reporting tag, e.g. "constant" or "explicit-basis-cocycle"
    std::function<ExpAffine(const TuplePoints&)> rule;

    ExpAffine operator()(const TuplePoints& tuple) const {
        if (tuple.size() != degree) throw Error(ErrorKind::Internal, "cochain arity mismatch");
        return rule(tuple);
    }
};

// Module action of the lattice on values.
using CochainAction = std::function<ExpAffine(const LatticePoint&, const ExpAffine&)>;

// Translation-only action (the trivial bundle).
CochainAction translation_action(PeriodLattice lattice);

// Twisted action g |-> (g o T_lambda) * Phi_lambda^{-1} at the factor's
// truncation order.  When lift_below is set, the canonical lift of the
// reduction Phi mod hbar^{lift_below} twists instead.
CochainAction twisted_action(std::shared_ptr<const AutomorphyFactor> af,
                             std::optional<unsigned> lift_below = std::nullopt,
                             std::optional<unsigned> act_order = std::nullopt);

// Group cohomology differential with the given module action.
LatticeCochain delta(const LatticeCochain& f, const CochainAction& action, const PeriodLattice& lattice);

enum class ValuePairing { Commutative, Star };

// Cup product on cochains; the group acts on the right factor.
LatticeCochain cup(const LatticeCochain& f, const LatticeCochain& g, const CochainAction& action,
                   const PeriodLattice& lattice, ValuePairing pairing,
                   const PoissonBivector& pi, unsigned order);

// A_{l1} o A_{l2} = A_{l1+l2} on the sampled inputs.
bool twisted_action_check(const CochainAction& action, const PeriodLattice& lattice,
                          const std::vector<std::tuple<LatticePoint, LatticePoint, ExpAffine>>& samples);

// The extension-class cocycle: lambda |-> ( f |-> (f * phi_lambda) star
// (Phi^{-1} - phi^{-1}) / hbar^{t0} ), with phi the canonical lift of
// Phi mod hbar^{t0}.  Values drop t0 truncation orders.
class ExtensionClassCochain {
  public:
    ExtensionClassCochain(std::shared_ptr<const AutomorphyFactor> af, unsigned t0);

    unsigned t0() const { return t0_; }
    // apply the operator value at lambda to f (f at the factor's order)
    ExpAffine apply(const LatticePoint& n, const ExpAffine& f) const;
    // the cochain lambda |-> value at f = 1, as an order (N - t0) cochain
    LatticeCochain applied_to_one() const;

  private:
    std::shared_ptr<const AutomorphyFactor> af_;
    unsigned t0_;
};

// Explicit degree-j cocycles whose classes form a basis, for deformations
// of the trivial bundle (H = 0, trivial semicharacter, nonzero series).
// Values carry truncation order `order`; the count is t0 * C(g-1, j-1).
std::vector<LatticeCochain> build_basis_cocycles(const QuantumAHData& data, unsigned degree,
                                                 unsigned order);

// Formal expressions for the general case: the classical classes enter as
// opaque b^r symbols, so these are printable strings, not evaluable rules.
std::vector<std::string> emit_formal_cocycles(const QuantumAHData& data, unsigned degree);

// Deterministic sampling of lattice tuples with coordinates in [-3, 3].
std::vector<TuplePoints> sample_tuples(unsigned g, unsigned arity, unsigned count, unsigned long seed);

// Deterministic pseudo-random cochain for property checks: pure in the
// tuple, derived from the seed.  With constants_only the values are
// constant in v (star-central), the shape every cup identity pairs on.
LatticeCochain random_test_cochain(unsigned g, unsigned degree, unsigned order, unsigned long seed,
                                   bool constants_only = false);

}  // namespace abelia
