#pragma once

// Exact scalar layer: Gaussian rationals Q(i) on top of GMP rationals.
// Every computation in this project is exact; no floating point anywhere.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace abelia {

// Error kinds mirror the library's public failure contract.
enum class ErrorKind {
    Internal,
    Validation,
    Parse,
    Disagreement,
    Usage,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

using Rational = mpq_class;

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

unsigned long binomial(unsigned n, long k);

// Element of Q(i), kept canonical by mpq_class itself.
class GQ {
  public:
    GQ() : re_(0), im_(0) {}
    GQ(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design
    GQ(Rational re) : re_(std::move(re)), im_(0) {}
    GQ(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GQ i() { return GQ(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GQ conj() const { return GQ(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GQ operator-() const { return GQ(-re_, -im_); }

    GQ& operator+=(const GQ& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GQ& operator-=(const GQ& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GQ& operator*=(const GQ& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GQ& operator/=(const GQ& o) {
        if (o.is_zero()) throw Error(ErrorKind::Internal, "division by zero in Q(i)");
        Rational n = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GQ operator+(GQ a, const GQ& b) { return a += b; }
    friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
    friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
    friend GQ operator/(GQ a, const GQ& b) { return a /= b; }

    friend bool operator==(const GQ& a, const GQ& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

    // Total order for deterministic container keys; not a numeric order.
    friend bool operator<(const GQ& a, const GQ& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    GQ inverse() const {
        GQ one(1);
        return one / *this;
    }

    std::string str() const;

  private:
    Rational re_;
    Rational im_;
};

}  // namespace abelia
