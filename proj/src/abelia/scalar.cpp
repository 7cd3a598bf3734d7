#include "abelia/scalar.hpp"

namespace abelia {

std::string PiScalar::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, c] : coeffs_) {
        std::string term = c.str();
        bool wrap = term.find('+') != std::string::npos || (term.find('-', 1) != std::string::npos);
        if (wrap) term = "(" + term + ")";
        if (d >= 1) {
            if (term == "1")
                term = "";
            else if (term == "-1")
                term = "-";
            else
                term += "*";
            term += "pi";
            if (d > 1) term += "^" + std::to_string(d);
        }
        if (!first && term[0] != '-') out += "+";
        out += term;
        first = false;
    }
    return out;
}

HbarSeries HbarSeries::inverse() const {
    if (!is_unit()) throw Error(ErrorKind::Internal, "hbar-series is not a unit");
    const PiScalar& c0 = coeffs_[0];
    // Units of the pi-polynomial coefficient ring are monomials c*pi^d.
    if (c0.coeffs().size() != 1)
        throw Error(ErrorKind::Internal, "constant term is not invertible in the pi-polynomial ring");
    auto [d0, a0] = *c0.coeffs().begin();
    if (d0 != 0)
        throw Error(ErrorKind::Internal, "constant term carries a pi factor; series inverse unsupported");
    PiScalar inv0(a0.inverse());
    HbarSeries r(order());
    r.coeffs_[0] = inv0;
    for (unsigned k = 1; k < order(); ++k) {
        PiScalar acc;
        for (unsigned j = 0; j < k; ++j) acc += r.coeffs_[j] * coeffs_[k - j];
        r.coeffs_[k] = -(acc * inv0);
    }
    return r;
}

HbarSeries HbarSeries::exp(const HbarSeries& x) {
    if (!x.coeffs_[0].is_zero())
        throw Error(ErrorKind::Internal, "exp of an hbar-series requires zero constant term");
    HbarSeries sum = HbarSeries::one(x.order());
    HbarSeries pow = HbarSeries::one(x.order());
    Rational fact(1);
    for (unsigned k = 1; k < x.order(); ++k) {
        pow *= x;
        if (pow.is_zero()) break;
        fact *= k;
        sum += pow.scaled(PiScalar(GQ(Rational(1) / fact)));
    }
    return sum;
}

bool operator<(const HbarSeries& a, const HbarSeries& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    for (unsigned k = 0; k < a.order(); ++k) {
        const auto& ca = a.coeff(k).coeffs();
        const auto& cb = b.coeff(k).coeffs();
        if (ca != cb) return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    }
    return false;
}

std::string HbarSeries::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (unsigned k = 0; k < order(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        std::string term = coeffs_[k].str();
        if (k >= 1) {
            bool wrap = term.size() > 1;
            if (term == "1")
                term = "";
            else if (term == "-1")
                term = "-";
            else if (wrap)
                term = "(" + term + ")*";
            else
                term += "*";
            term += "h";
            if (k > 1) term += "^" + std::to_string(k);
        }
        if (!first && term[0] != '-') out += "+";
        out += term;
        first = false;
    }
    return out;
}

}  // namespace abelia
