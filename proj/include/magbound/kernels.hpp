#pragma once

#include "magbound/ratpoly.hpp"
#include "magbound/rational.hpp"
#include "magbound/umqnorm.hpp"

#include <vector>

namespace magbound {

// p_{a,b}(t) = ((a+b)!/(a!b!)) (1−t)^a t^b
Rational p_ab(int a, int b, const Rational& t);
RatPoly p_ab_poly(int a, int b);

// K̃(t) = Σ_{a+b=d} p_{a,b}(t) Θ_{a,b} on [0,1], d = p−1.
struct ReducedKernel {
    int degree = 0;
    Rational lambda;
    RatPoly poly;                 // in t
    std::vector<Rational> thetas; // Θ_{a, d−a}, a = 0..d (empty for d = 0)
    bool exact = true;            // false when an upper cost bound stands in for an irrational κ

    double operator()(double t) const { return poly(t); }
    Rational operator()(const Rational& t) const { return poly(t); }
};

// For irrational κ the kernel is assembled from the upper end of each norm enclosure.
ReducedKernel reduced_kernel(int degree, const Rational& lambda, const ConvexityClass& cls);

// Toeplitz kernel on [−1,1]: λK̃(t) for t ≥ 0 and (1−λ)K̃(t+1) for t < 0.
class TwoSidedKernel {
public:
    explicit TwoSidedKernel(ReducedKernel reduced);

    const ReducedKernel& reduced() const { return reduced_; }
    const RatPoly& upper_poly() const { return upper_; }  // valid on [0,1]
    const RatPoly& lower_poly() const { return lower_; }  // valid on [−1,0]
    double operator()(double t) const { return t >= 0 ? upper_(t) : lower_(t); }
    double right_limit_at_zero() const { return upper_(0.0); }
    double left_limit_at_zero() const { return lower_(0.0); }
    bool convolution_type() const { return upper_ == lower_.compose_linear(-1, 1); }

private:
    ReducedKernel reduced_;
    RatPoly upper_, lower_;
};

// Θ_k of the plain characteristic series for k = 1..N, from x·G(λx,(1−λ)x).
std::vector<Rational> g_series(const Rational& lambda, int N);

// Coefficients of x^d, d = 0..N, in (u−v)/(u e^v − v e^u)·e^{tu+(1−t)v}, u = λx, v = (1−λ)x.
std::vector<Rational> g_tilde_series(const Rational& lambda, const Rational& t, int N);

// Piecewise cubic correction between the plain and the cross-term-reduced degree-4 kernels.
Rational b_correction(const Rational& lambda, const Rational& t);
double b_correction(double lambda, double t);
RatPoly b_correction_poly(const Rational& lambda, bool nonnegative_t);

}  // namespace magbound
