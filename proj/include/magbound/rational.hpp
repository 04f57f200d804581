#pragma once

#include <gmpxx.h>

#include <string>

namespace magbound {

using Rational = mpq_class;

// Accepts "n", "n/d" and plain decimals such as "0.35" or "-1e-3".
Rational parse_rational(const std::string& text);

// Canonical "num/den" form; integers print without a denominator.
std::string to_string(const Rational& r);

// Exact value of a finite double (every double is dyadic).
Rational from_double(double x);

double to_double(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

Rational factorial(unsigned n);

Rational binomial(unsigned n, unsigned k);

}  // namespace magbound
