#pragma once

#include "magbound/rational.hpp"

#include <string>
#include <vector>

namespace magbound {

// Univariate polynomial with exact rational coefficients; index = power.
// Used both for λ-dependent coefficients and for kernels in t.
class RatPoly {
public:
    RatPoly() = default;
    RatPoly(const Rational& c);  // NOLINT: constants convert implicitly
    RatPoly(int c) : RatPoly(Rational(c)) {}
    explicit RatPoly(std::vector<Rational> coeffs);

    static RatPoly monomial(unsigned power, const Rational& c = 1);
    // (a + b·x)^n
    static RatPoly linear_power(const Rational& a, const Rational& b, unsigned n);

    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(unsigned i) const { return i < c_.size() ? c_[i] : Rational(0); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    RatPoly derivative() const;
    RatPoly antiderivative() const;
    Rational integral(const Rational& lo, const Rational& hi) const;
    // p(a + b·x)
    RatPoly compose_linear(const Rational& a, const Rational& b) const;

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    RatPoly& operator*=(const RatPoly& o);
    RatPoly& operator*=(const Rational& s);

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
    friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
    friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
    friend RatPoly operator-(RatPoly a) { return a *= Rational(-1); }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

    std::vector<std::string> to_strings() const;
    std::string pretty(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

using LambdaPoly = RatPoly;

// λ as a polynomial and (λ − 1) as a polynomial.
inline RatPoly poly_x() { return RatPoly::monomial(1); }

}  // namespace magbound
