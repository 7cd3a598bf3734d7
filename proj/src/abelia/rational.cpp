#include "abelia/rational.hpp"

namespace abelia {

std::string rational_to_string(const Rational& r) { return r.get_str(); }

unsigned long binomial(unsigned n, long k) {
    if (k < 0 || k > static_cast<long>(n)) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, static_cast<unsigned long>(k));
    return b.get_ui();
}

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw Error(ErrorKind::Parse, "empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw Error(ErrorKind::Parse, "bad rational literal: " + s);
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw Error(ErrorKind::Parse, "bad rational literal: " + s);
    if (r.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in rational: " + s);
    r.canonicalize();
    return r;
}

std::string GQ::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out += rational_to_string(re_);
    if (im_ != 0) {
        if (im_ == 1)
            out += out.empty() ? "i" : "+i";
        else if (im_ == -1)
            out += "-i";
        else {
            std::string imt = rational_to_string(im_);
            if (!out.empty() && imt[0] != '-') out += "+";
            out += imt + "i";
        }
    }
    return out;
}

}  // namespace abelia
