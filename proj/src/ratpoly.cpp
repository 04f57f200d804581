#include "magbound/ratpoly.hpp"

#include <algorithm>

namespace magbound {

RatPoly::RatPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(unsigned power, const Rational& c) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::linear_power(const Rational& a, const Rational& b, unsigned n) {
    std::vector<Rational> v(n + 1);
    for (unsigned k = 0; k <= n; ++k) v[k] = binomial(n, k) * pow(a, n - k) * pow(b, k);
    return RatPoly(std::move(v));
}

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RatPoly::operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::antiderivative() const {
    std::vector<Rational> v(c_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] / static_cast<long>(i + 1);
    return RatPoly(std::move(v));
}

Rational RatPoly::integral(const Rational& lo, const Rational& hi) const {
    RatPoly F = antiderivative();
    return F(hi) - F(lo);
}

RatPoly RatPoly::compose_linear(const Rational& a, const Rational& b) const {
    RatPoly out;
    RatPoly lin(std::vector<Rational>{a, b});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        out *= lin;
        out += RatPoly(*it);
    }
    return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(v);
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

std::vector<std::string> RatPoly::to_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(to_string(x));
    return out;
}

std::string RatPoly::pretty(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rational a = abs(c_[i]);
        bool neg = c_[i] < 0;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        bool unit = a == 1 && i > 0;
        if (!unit) s += to_string(a);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace magbound
