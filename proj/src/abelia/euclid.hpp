#pragma once

// The two Euclidean coefficient rings behind the Smith normal form engine:
// univariate polynomials in hbar over Q(i), and plain integers.  Both expose
// the same small interface (euclid_size / divmod / canonical_unit) consumed
// by the generic elimination in smith.hpp.

#include <vector>

#include "abelia/rational.hpp"

namespace abelia {

// Polynomial in hbar with Q(i) coefficients, trailing zeros stripped.
class HbarPoly {
  public:
    HbarPoly() = default;
    HbarPoly(long n) {  // NOLINT: implicit by design
        if (n != 0) coeffs_.push_back(GQ(n));
    }
    HbarPoly(GQ c) {  // NOLINT: implicit by design
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit HbarPoly(std::vector<GQ> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static HbarPoly hbar_power(unsigned k, GQ c = GQ(1)) {
        std::vector<GQ> v(k + 1);
        v[k] = std::move(c);
        return HbarPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_unit() const { return coeffs_.size() == 1; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    // hbar-adic valuation; -1 for the zero polynomial.
    int valuation() const {
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero()) return static_cast<int>(k);
        return -1;
    }
    GQ coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : GQ(); }
    GQ leading() const { return coeffs_.empty() ? GQ() : coeffs_.back(); }

    HbarPoly operator-() const {
        HbarPoly p = *this;
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }
    HbarPoly& operator+=(const HbarPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    HbarPoly& operator-=(const HbarPoly& o) { return *this += -o; }
    friend HbarPoly operator+(HbarPoly a, const HbarPoly& b) { return a += b; }
    friend HbarPoly operator-(HbarPoly a, const HbarPoly& b) { return a -= b; }
    friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
        if (a.is_zero() || b.is_zero()) return HbarPoly();
        std::vector<GQ> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return HbarPoly(std::move(v));
    }
    HbarPoly& operator*=(const HbarPoly& o) { return *this = *this * o; }

    friend bool operator==(const HbarPoly& a, const HbarPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const HbarPoly& a, const HbarPoly& b) { return !(a == b); }

    std::string str() const;

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<GQ> coeffs_;
};

inline mpz_class euclid_size(const HbarPoly& p) { return mpz_class(p.degree() + 1); }

inline void divmod(const HbarPoly& a, const HbarPoly& b, HbarPoly& q, HbarPoly& r) {
    if (b.is_zero()) throw Error(ErrorKind::Internal, "polynomial division by zero");
    std::vector<GQ> rem(static_cast<std::size_t>(a.degree() + 1));
    for (int k = 0; k <= a.degree(); ++k) rem[k] = a.coeff(k);
    std::vector<GQ> quot;
    GQ lead_inv = b.leading().inverse();
    int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        GQ f = rem[k] * lead_inv;
        if (!f.is_zero()) {
            for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeff(j);
        }
        if (static_cast<int>(quot.size()) < k - db + 1) quot.resize(k - db + 1);
        quot[k - db] = f;
    }
    q = HbarPoly(std::move(quot));
    r = HbarPoly(std::move(rem));
}

// Unit u with p/u monic (doc: zero maps to unit 1).
inline HbarPoly canonical_unit(const HbarPoly& p) {
    if (p.is_zero()) return HbarPoly(1);
    return HbarPoly(p.leading());
}

inline HbarPoly exact_div(const HbarPoly& a, const HbarPoly& b) {
    HbarPoly q, r;
    divmod(a, b, q, r);
    if (!r.is_zero()) throw Error(ErrorKind::Internal, "polynomial division not exact");
    return q;
}

// Integer ring element for lattice arithmetic (GMP integer with the small
// interface the shared elimination code expects).
class ZZ {
  public:
    ZZ() : v_(0) {}
    ZZ(long n) : v_(n) {}  // NOLINT: implicit by design
    explicit ZZ(mpz_class v) : v_(std::move(v)) {}

    const mpz_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ == 1 || v_ == -1; }

    ZZ operator-() const { return ZZ(mpz_class(-v_)); }
    ZZ& operator+=(const ZZ& o) {
        v_ += o.v_;
        return *this;
    }
    ZZ& operator-=(const ZZ& o) {
        v_ -= o.v_;
        return *this;
    }
    ZZ& operator*=(const ZZ& o) {
        v_ *= o.v_;
        return *this;
    }
    friend ZZ operator+(ZZ a, const ZZ& b) { return a += b; }
    friend ZZ operator-(ZZ a, const ZZ& b) { return a -= b; }
    friend ZZ operator*(ZZ a, const ZZ& b) { return a *= b; }
    friend bool operator==(const ZZ& a, const ZZ& b) { return a.v_ == b.v_; }
    friend bool operator!=(const ZZ& a, const ZZ& b) { return !(a == b); }

    std::string str() const { return v_.get_str(); }

  private:
    mpz_class v_;
};

inline mpz_class euclid_size(const ZZ& z) { return abs(z.value()); }

inline void divmod(const ZZ& a, const ZZ& b, ZZ& q, ZZ& r) {
    if (b.is_zero()) throw Error(ErrorKind::Internal, "integer division by zero");
    mpz_class qq, rr;
    mpz_tdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
    q = ZZ(std::move(qq));
    r = ZZ(std::move(rr));
}

inline ZZ canonical_unit(const ZZ& z) { return (z.value() < 0) ? ZZ(-1) : ZZ(1); }

inline ZZ exact_div(const ZZ& a, const ZZ& b) {
    ZZ q, r;
    divmod(a, b, q, r);
    if (!r.is_zero()) throw Error(ErrorKind::Internal, "integer division not exact");
    return q;
}

}  // namespace abelia
