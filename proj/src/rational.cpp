#include "magbound/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace magbound {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational r;
        if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        r.canonicalize();
        return r;
    }
    // Decimal with optional exponent, parsed exactly.
    std::string mant = text;
    long exp10 = 0;
    auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
        mant = text.substr(0, e);
        try {
            exp10 = std::stol(text.substr(e + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational literal: " + text);
        }
    }
    bool neg = false;
    std::size_t pos = 0;
    if (pos < mant.size() && (mant[pos] == '-' || mant[pos] == '+')) {
        neg = mant[pos] == '-';
        ++pos;
    }
    std::string digits;
    bool seen_point = false, seen_digit = false;
    for (; pos < mant.size(); ++pos) {
        char c = mant[pos];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --exp10;
        } else {
            throw std::invalid_argument("bad rational literal: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad rational literal: " + text);
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
    Rational r(x);
    r.canonicalize();
    return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

}  // namespace magbound
