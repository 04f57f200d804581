#include "magbound/bch.hpp"

#include <doctest.h>

#include <cmath>

using namespace magbound;

namespace {

// ℓ¹ coefficients of Σ|c_n|x^n raised to the power n, as exact rationals.
std::vector<Rational> abs_power(const std::vector<Rational>& a, int n, int deg) {
    std::vector<Rational> r(deg + 1, 0);
    r[0] = 1;
    for (int k = 0; k < n; ++k) {
        std::vector<Rational> s(deg + 1, 0);
        for (int i = 0; i <= deg; ++i)
            for (int j = 1; i + j <= deg; ++j) s[i + j] += r[i] * a[j];
        r = s;
    }
    return r;
}

}  // namespace

TEST_CASE("resolvent coefficients") {
    ResolventSeries rs = resolvent_series(12);
    RatPoly l = poly_x();
    CHECK(rs[1] == RatPoly(1));
    CHECK(rs[2] == l - RatPoly(Rational(1, 2)));
    CHECK(rs[3] == l * l - l + RatPoly(Rational(1, 6)));
    CHECK(rs[2] * rs[2] == l * l - l + RatPoly(Rational(1, 4)));
    for (int n = 1; n <= 12; ++n) {
        CHECK(rs[n](Rational(1)) == 1 / factorial(n));
        CHECK(rs[n](Rational(0)) == (n % 2 ? 1 : -1) / factorial(n));
        CHECK(rs[n](Rational(1, 3)) == (n % 2 ? 1 : -1) * rs[n](Rational(2, 3)));
    }
    auto num = resolvent_coeffs(0.3, 12);
    for (int n = 1; n <= 12; ++n) CHECK(num[n - 1] == doctest::Approx(rs[n](0.3)).epsilon(1e-13));
    CHECK_THROWS(resolvent_series(41));
}

TEST_CASE("l1 resolvent product") {
    CHECK(upsilon_l1(0.4, 0, 0).value == 0);
    UpsilonValue v = upsilon_l1(0.5, 1, 1, 40);
    double t = std::tan(0.5);
    CHECK(std::fabs(v.value - t * t) < 1e-13);
    CHECK(v.upper >= v.value);
    CHECK(v.conclusive);
    CHECK(std::fabs(upsilon_l1(0.5, 1, 1).upper - t * t) < 1e-10);
    CHECK_THROWS(upsilon_l1(0.5, 3.2, 1));
    for (int i = 0; i <= 20; ++i)
        for (auto [x1, x2] : {std::pair{0.7, 1.3}, std::pair{1.4, 0.2}}) {
            double l = i / 20.0;
            CHECK(upsilon_l1(l, x1, x2).value == doctest::Approx(upsilon_l1(1 - l, x2, x1).value).epsilon(1e-13));
        }
}

TEST_CASE("critical lambda of the l1 threshold") {
    CriticalLambda c = critical_lambda(kC2 / 2);
    CHECK(c.lambda >= 0.35865);
    CHECK(c.lambda <= 0.35866);
    CHECK(std::fabs(c.value - 1) < 1e-4);
    CriticalLambda s = upsilon_sup(kC2 / 2, kC2 / 2);
    CHECK(std::fabs(std::min(s.lambda, 1 - s.lambda) - c.lambda) < 1e-6);
}

TEST_CASE("block components") {
    CHECK(upsilon_power_component(1, 1, 1) == NCPolyL::single({1, 2}));
    CHECK(upsilon_power_component(2, 2, 2) == NCPolyL::single({1, 2, 1, 2}));
    CHECK(upsilon_power_component(3, 2, 5).empty());
    NCPolyL c = upsilon_power_component(3, 3, 5);
    RatPoly l = poly_x(), q4 = l * l - l + RatPoly(Rational(1, 4)), q6 = l * l - l + RatPoly(Rational(1, 6));
    CHECK(c.coeff({1, 2, 2, 1, 2, 2, 1, 2}) == q4);
    CHECK(c.coeff({1, 2, 1, 2, 2, 1, 2, 2}) == q4);
    CHECK(c.coeff({1, 2, 2, 1, 2, 1, 2, 2}) == q4);
    CHECK(c.coeff({1, 2, 1, 2, 2, 2, 1, 2}) == q6);
    CHECK(mirror(mirror(c)) == c);
    CHECK(mirror(c) == upsilon_power_component(3, 5, 3).relabel([](int i) { return i; }));
}

TEST_CASE("block expansion agrees with the l1 product series") {
    ResolventSeries rs = resolvent_series(8);
    for (Rational lam : {Rational(1, 3), Rational(2, 7)}) {
        std::vector<Rational> a(9, 0);
        for (int n = 1; n <= 8; ++n) a[n] = abs(rs[n](lam));
        for (auto [n, d1, d2] : std::vector<std::tuple<int, int, int>>{{3, 3, 5}, {2, 3, 4}, {2, 4, 2}, {1, 3, 2}, {3, 5, 5}}) {
            Rational l1 = 0;
            NCPolyL comp = upsilon_power_component(n, d1, d2);
            for (const auto& [w, c] : comp.terms()) l1 += abs(c(lam));
            CHECK(l1 == abs_power(a, n, 8)[d1] * abs_power(a, n, 8)[d2]);
        }
    }
}

TEST_CASE("sign alignment on the critical window") {
    for (double l : {0.35865, 0.358655, 0.35866}) {
        AlignmentCheck a = check_alignment_35(l);
        CHECK(a.aligned);
        CHECK(a.cross_signs == std::array<int, 4>{1, 1, 1, -1});
        CHECK(a.coeffs[0] > 0);
        CHECK(a.coeffs[3] < 0);
        CHECK(a.min_abs == doctest::Approx((l - 0.5) * (l - 0.5)).epsilon(1e-12));
    }
    CHECK(!check_alignment_35(0.5).aligned);
}

TEST_CASE("cross-term gain") {
    const double x = kC2 / 2;
    // λ²−λ+1/6 < 0 exactly between these roots
    const double band_lo = (1 - 1 / std::sqrt(3.0)) / 2, band_hi = 1 - band_lo;
    for (int i = 0; i <= 40; ++i) {
        double l = i / 40.0;
        for (auto cls : {ConvexityClass::umq(1), ConvexityClass::umq(2)}) {
            BchGain g = bch_gain_upper(l, cls, x, x);
            CHECK(g.gain_35 >= 0);
            CHECK(g.gain_53 >= 0);
            if (l > band_lo && l < band_hi && i != 20) CHECK(g.bound < g.l1);
            if (l < band_lo || l > band_hi) {
                CHECK(!g.aligned);
                CHECK(g.bound == g.l1);
                CHECK(!g.diagnostic.empty());
            }
        }
        BchGain p = bch_gain_upper(l, ConvexityClass::plain(), x, x);
        CHECK(p.gain_35 == 0);
        CHECK(p.gain_53 == 0);
    }
    BchGain h = bch_gain_upper(0.5, ConvexityClass::umq(1), x, x);
    CHECK(h.gain_35 + h.gain_53 == 0);
    double l = 0.3587;
    BchGain g = bch_gain_upper(l, ConvexityClass::umq(2), x, x);
    double expect = 4 * (l - 0.5) * (l - 0.5) * (1 - std::sqrt(0.5)) * std::pow(l * (1 - l), 3) * std::pow(x, 8);
    CHECK(g.gain_35 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(g.gain_53 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(g.aligned);
}

TEST_CASE("improved threshold") {
    C2Scan plain = c2_improved(ConvexityClass::plain());
    CHECK(std::fabs(plain.s - kC2) < 1e-3);
    C2Scan q1 = c2_improved(ConvexityClass::umq(1)), q2 = c2_improved(ConvexityClass::umq(2));
    CHECK(q1.margin > 0);
    CHECK(q2.margin > 0);
    CHECK(q1.s > q2.s);
    // regression values of the first verified run
    CHECK(q1.s == doctest::Approx(2.904192257).epsilon(1e-8));
    CHECK(q2.s == doctest::Approx(2.901836872).epsilon(1e-8));
}
