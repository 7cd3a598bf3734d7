#pragma once

// Formal scalars: polynomials in the transcendental symbol pi with Q(i)
// coefficients, and hbar-series truncated at a fixed order with such
// coefficients.  pi is never evaluated numerically; it is a unit of the
// scalar ring, so zero-tests and dimension counts are unaffected by it.

#include <map>
#include <vector>

#include "abelia/rational.hpp"

namespace abelia {

// Sparse polynomial in pi.  Exponent arithmetic is exact; the classical
// data only ever produces degrees 0..2 (phases and one Moyal correction),
// but series manipulations (exp expansions, iterated star corrections)
// legitimately push beyond that, so no hard cap is imposed here.  Callers
// that own the degree-2 invariant assert it via max_degree().
class PiScalar {
  public:
    PiScalar() = default;
    PiScalar(GQ deg0) { set(0, std::move(deg0)); }  // NOLINT: implicit by design
    PiScalar(long n) { set(0, GQ(n)); }             // NOLINT: implicit by design

    static PiScalar pi_times(GQ c) {
        PiScalar s;
        s.set(1, std::move(c));
        return s;
    }
    static PiScalar pi_power(unsigned deg, GQ c) {
        PiScalar s;
        s.set(deg, std::move(c));
        return s;
    }

    void set(unsigned deg, GQ c) {
        if (c.is_zero())
            coeffs_.erase(deg);
        else
            coeffs_[deg] = std::move(c);
    }
    GQ coeff(unsigned deg) const {
        auto it = coeffs_.find(deg);
        return it == coeffs_.end() ? GQ() : it->second;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int max_degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }

    PiScalar operator-() const {
        PiScalar s;
        for (const auto& [d, c] : coeffs_) s.coeffs_[d] = -c;
        return s;
    }
    PiScalar& operator+=(const PiScalar& o) {
        for (const auto& [d, c] : o.coeffs_) {
            auto it = coeffs_.find(d);
            if (it == coeffs_.end())
                coeffs_[d] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) coeffs_.erase(it);
            }
        }
        return *this;
    }
    PiScalar& operator-=(const PiScalar& o) { return *this += -o; }

    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
    friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
        PiScalar r;
        for (const auto& [da, ca] : a.coeffs_)
            for (const auto& [db, cb] : b.coeffs_) {
                GQ p = ca * cb;
                if (p.is_zero()) continue;
                auto it = r.coeffs_.find(da + db);
                if (it == r.coeffs_.end())
                    r.coeffs_[da + db] = std::move(p);
                else {
                    it->second += p;
                    if (it->second.is_zero()) r.coeffs_.erase(it);
                }
            }
        return r;
    }
    PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }

    PiScalar scaled(const GQ& c) const {
        PiScalar r;
        if (c.is_zero()) return r;
        for (const auto& [d, v] : coeffs_) r.coeffs_[d] = v * c;
        return r;
    }

    friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

    const std::map<unsigned, GQ>& coeffs() const { return coeffs_; }

    std::string str() const;

  private:
    std::map<unsigned, GQ> coeffs_;
};

// Truncated series sum_{k<order} c_k hbar^k with PiScalar coefficients.
// Binary operations demand equal truncation orders; mixing orders is a
// caller bug surfaced as a truncation-mismatch error.
class HbarSeries {
  public:
    explicit HbarSeries(unsigned order) : coeffs_(check_order(order)) {}
    HbarSeries(unsigned order, PiScalar constant) : coeffs_(check_order(order)) { coeffs_[0] = std::move(constant); }

    static HbarSeries one(unsigned order) { return HbarSeries(order, PiScalar(1)); }
    static HbarSeries monomial(unsigned order, unsigned k, PiScalar c) {
        HbarSeries s(order);
        if (k < order) s.coeffs_[k] = std::move(c);
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(coeffs_.size()); }
    const PiScalar& coeff(unsigned k) const { return coeffs_.at(k); }
    void set_coeff(unsigned k, PiScalar c) {
        if (k < order()) coeffs_[k] = std::move(c);
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    // True when invertible, i.e. the constant term is nonzero.
    bool is_unit() const { return !coeffs_[0].is_zero(); }

    // Smallest k with nonzero coefficient, or order() when zero.
    unsigned valuation() const {
        for (unsigned k = 0; k < order(); ++k)
            if (!coeffs_[k].is_zero()) return k;
        return order();
    }

    HbarSeries operator-() const {
        HbarSeries s(order());
        for (unsigned k = 0; k < order(); ++k) s.coeffs_[k] = -coeffs_[k];
        return s;
    }
    HbarSeries& operator+=(const HbarSeries& o) {
        require_same_order(o);
        for (unsigned k = 0; k < order(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    HbarSeries& operator-=(const HbarSeries& o) {
        require_same_order(o);
        for (unsigned k = 0; k < order(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
    friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
    friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
        a.require_same_order(b);
        HbarSeries r(a.order());
        for (unsigned i = 0; i < a.order(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (unsigned j = 0; i + j < a.order(); ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }
    HbarSeries& operator*=(const HbarSeries& o) { return *this = *this * o; }

    HbarSeries scaled(const PiScalar& c) const {
        HbarSeries r(order());
        for (unsigned k = 0; k < order(); ++k) r.coeffs_[k] = coeffs_[k] * c;
        return r;
    }

    // Truncate to a smaller order.
    HbarSeries reduced(unsigned new_order) const {
        if (new_order > order())
            throw Error(ErrorKind::Internal, "cannot extend a truncated hbar-series");
        HbarSeries r(new_order);
        for (unsigned k = 0; k < new_order; ++k) r.coeffs_[k] = coeffs_[k];
        return r;
    }

    // Exact division by hbar^k; requires the low coefficients to vanish.
    // The quotient is only known to order() - k.
    HbarSeries shifted_down(unsigned k) const {
        if (k >= order()) throw Error(ErrorKind::Internal, "hbar-division exceeds truncation order");
        for (unsigned j = 0; j < k; ++j)
            if (!coeffs_[j].is_zero())
                throw Error(ErrorKind::Internal, "series not divisible by requested hbar power");
        HbarSeries r(order() - k);
        for (unsigned j = 0; j + k < order(); ++j) r.coeffs_[j] = coeffs_[j + k];
        return r;
    }

    // Multiplicative inverse; requires a unit constant term.
    HbarSeries inverse() const;

    // exp of a series with zero constant term (so the sum is finite).
    static HbarSeries exp(const HbarSeries& x);

    friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const HbarSeries& a, const HbarSeries& b) { return !(a == b); }
    friend bool operator<(const HbarSeries& a, const HbarSeries& b);

    std::string str() const;

  private:
    static unsigned check_order(unsigned order) {
        if (order == 0) throw Error(ErrorKind::Internal, "hbar truncation order must be positive");
        return order;
    }
    void require_same_order(const HbarSeries& o) const {
        if (order() != o.order())
            throw Error(ErrorKind::Internal, "truncation mismatch: " + std::to_string(order()) + " vs " +
                                                 std::to_string(o.order()));
    }

    std::vector<PiScalar> coeffs_;
};

}  // namespace abelia
