#pragma once

#include "magbound/ratpoly.hpp"
#include "magbound/rational.hpp"

#include <stdexcept>
#include <vector>

namespace magbound {

inline Rational unit_inverse(const Rational& c) {
    if (c == 0) throw std::domain_error("series inverse: zero constant term");
    return 1 / c;
}

inline RatPoly unit_inverse(const RatPoly& c) {
    if (!c.is_constant() || c.is_zero()) throw std::domain_error("series inverse: constant term is not a unit");
    return RatPoly(Rational(1 / c.coeff(0)));
}

// Power series truncated after x^order, coefficients in a commutative ring C.
template <class C>
class TruncSeries {
public:
    explicit TruncSeries(int order) : a_(order + 1, C(0)) {}
    TruncSeries(int order, std::vector<C> coeffs) : a_(std::move(coeffs)) { a_.resize(order + 1, C(0)); }

    int order() const { return static_cast<int>(a_.size()) - 1; }
    const C& operator[](int i) const { return a_[i]; }
    C& operator[](int i) { return a_[i]; }
    const std::vector<C>& coeffs() const { return a_; }

    TruncSeries& operator+=(const TruncSeries& o) {
        for (int i = 0; i <= order(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        for (int i = 0; i <= order(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries out(a.order());
        for (int i = 0; i <= a.order(); ++i)
            for (int j = 0; i + j <= a.order(); ++j) out.a_[i + j] += a.a_[i] * b.a_[j];
        return out;
    }
    friend TruncSeries operator*(TruncSeries a, const C& s) {
        for (auto& x : a.a_) x = x * s;
        return a;
    }

    // Exact division; the divisor's constant term must be a unit.
    friend TruncSeries operator/(const TruncSeries& num, const TruncSeries& den) {
        C inv = unit_inverse(den.a_[0]);
        TruncSeries q(num.order());
        for (int n = 0; n <= num.order(); ++n) {
            C acc = num.a_[n];
            for (int k = 1; k <= n; ++k) acc -= den.a_[k] * q.a_[n - k];
            q.a_[n] = acc * inv;
        }
        return q;
    }

private:
    std::vector<C> a_;
};

// e^{c·x} truncated.
template <class C>
TruncSeries<C> exp_linear(const C& c, int order) {
    TruncSeries<C> s(order);
    C pw(1);
    for (int n = 0; n <= order; ++n) {
        s[n] = pw * C(Rational(1) / factorial(n));
        pw = pw * c;
    }
    return s;
}

}  // namespace magbound
