#include "magbound/kernels.hpp"

#include "magbound/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace magbound {

Rational p_ab(int a, int b, const Rational& t) { return p_ab_poly(a, b)(t); }

RatPoly p_ab_poly(int a, int b) {
    if (a < 0 || b < 0) throw std::out_of_range("p_ab: negative count");
    Rational c = factorial(a + b) / (factorial(a) * factorial(b));
    return RatPoly::linear_power(1, -1, a) * RatPoly::monomial(b, c);
}

ReducedKernel reduced_kernel(int degree, const Rational& lambda, const ConvexityClass& cls) {
    if (degree < 0) throw std::out_of_range("reduced_kernel: negative degree");
    if (lambda < 0 || lambda > 1) throw std::out_of_range("reduced_kernel: lambda outside [0,1]");
    ReducedKernel k;
    k.degree = degree;
    k.lambda = lambda;
    if (degree == 0) {
        k.poly = RatPoly(1);
        return k;
    }
    for (int a = 0; a <= degree; ++a) {
        Enclosure th = theta_ab(a, degree - a, lambda, cls);
        k.exact = k.exact && th.exact();
        k.thetas.push_back(th.hi);
        k.poly += p_ab_poly(a, degree - a) * th.hi;
    }
    return k;
}

TwoSidedKernel::TwoSidedKernel(ReducedKernel reduced) : reduced_(std::move(reduced)) {
    const Rational& l = reduced_.lambda;
    upper_ = reduced_.poly * l;
    lower_ = reduced_.poly.compose_linear(1, 1) * Rational(1 - l);
}

namespace {

// h_m(a, b) = Σ_{i=0}^m a^i b^{m−i}
Rational complete_homogeneous(int m, const Rational& a, const Rational& b) {
    Rational s = 0;
    for (int i = 0; i <= m; ++i) s += pow(a, i) * pow(b, m - i);
    return s;
}

// (u e^v − v e^u)/(u − v) with u = λx, v = (1−λ)x.
TruncSeries<Rational> reduced_denominator(const Rational& lambda, int N) {
    Rational mu = 1 - lambda;
    TruncSeries<Rational> den(N);
    den[0] = 1;
    for (int n = 2; n <= N; ++n) den[n] = -lambda * mu * complete_homogeneous(n - 2, lambda, mu) / factorial(n);
    return den;
}

}  // namespace

std::vector<Rational> g_series(const Rational& lambda, int N) {
    if (N < 1 || N > 30) throw std::out_of_range("g_series: N must lie in [1, 30]");
    Rational mu = 1 - lambda;
    TruncSeries<Rational> num(N);
    for (int n = 1; n <= N + 1; ++n) num[n - 1] = complete_homogeneous(n - 1, lambda, mu) / factorial(n);
    TruncSeries<Rational> g = num / reduced_denominator(lambda, N);
    return std::vector<Rational>(g.coeffs().begin(), g.coeffs().begin() + N);
}

std::vector<Rational> g_tilde_series(const Rational& lambda, const Rational& t, int N) {
    if (N < 0 || N > 30) throw std::out_of_range("g_tilde_series: N must lie in [0, 30]");
    if (t < 0 || t > 1) throw std::out_of_range("g_tilde_series: t outside [0,1]");
    Rational rate = t * lambda + (1 - t) * (1 - lambda);
    TruncSeries<Rational> g = exp_linear(rate, N) / reduced_denominator(lambda, N);
    return g.coeffs();
}

RatPoly b_correction_poly(const Rational& lambda, bool nonnegative_t) {
    const Rational& l = lambda;
    Rational m = std::min(l, Rational(1 - l));
    if (nonnegative_t) {
        Rational pre = l * l * (1 - l) * m / 3;
        return RatPoly({Rational(1 - l), 0, Rational(-3 + 6 * l), Rational(2 - 4 * l)}) * pre;
    }
    Rational pre = l * (l - 1) * (l - 1) * m / 3;
    return RatPoly({l, 0, Rational(3 - 6 * l), Rational(2 - 4 * l)}) * pre;
}

Rational b_correction(const Rational& lambda, const Rational& t) {
    if (t < -1 || t > 1) throw std::out_of_range("b_correction: t outside [-1,1]");
    return b_correction_poly(lambda, t >= 0)(t);
}

double b_correction(double lambda, double t) {
    double m = std::min(lambda, 1 - lambda);
    double l = lambda;
    if (t >= 0)
        return l * l * (1 - l) * m / 3 * (1 - l - 3 * t * t + 2 * t * t * t + 6 * l * t * t - 4 * l * t * t * t);
    return l * (l - 1) * (l - 1) * m / 3 * (l + 3 * t * t + 2 * t * t * t - 6 * l * t * t - 4 * l * t * t * t);
}

}  // namespace magbound
