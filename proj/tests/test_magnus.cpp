#include "magbound/magnus.hpp"
#include "magbound/umqnorm.hpp"

#include <doctest.h>

#include <cmath>

using namespace magbound;

namespace {

const ConvexityClass kQ1 = ConvexityClass::umq(1);
const ConvexityClass kQ2 = ConvexityClass::umq(2);

double cay(double kappa) { return 2 / std::pow(2.0 / 3 + kappa / 3, 0.2); }

}  // namespace

TEST_CASE("closed forms") {
    CHECK(c_plain(0.5) == doctest::Approx(2).epsilon(1e-15));
    CHECK(c_plain(0.5 + 1e-9) == doctest::Approx(2).epsilon(1e-12));
    CHECK(std::isinf(c_plain(0)));
    CHECK(std::isinf(c_plain(1)));
    CHECK(c_plain(1.0 / 3) == doctest::Approx(3 * std::log(2.0)).epsilon(1e-14));
    CHECK(c_eps(0.5) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(c_eps(0.25) == doctest::Approx(std::sqrt(M_PI * M_PI + std::log(3.0) * std::log(3.0))).epsilon(1e-14));
    CHECK(std::isinf(c_eps(0)));
    for (int i = 1; i < 100; ++i) {
        double l = i / 100.0;
        CHECK(c_plain(l) <= c_eps(l));
        CHECK(c_plain(l) == doctest::Approx(c_plain(1 - l)).epsilon(1e-13));
        CHECK(c_eps(l) == doctest::Approx(c_eps(1 - l)).epsilon(1e-13));
    }
}

TEST_CASE("Euler recursion") {
    auto th = euler_coeffs(Rational(1, 2), 20);
    for (int k = 1; k <= 20; ++k) CHECK(th[k - 1] == Rational(2) / pow(Rational(2), k));
    auto t0 = euler_coeffs(Rational(0), 10);
    for (int k = 1; k <= 10; ++k) CHECK(t0[k - 1] == 1 / factorial(k));
    Rational gap = Rational(1, 8) - Rational(5, 48);
    auto tc = euler_coeffs(Rational(1, 2), 20, {{4, gap}});
    CHECK(tc[3] == Rational(5, 48));
    for (int k = 1; k <= 20; ++k) CHECK(tc[k - 1] <= th[k - 1]);
    CHECK(tc[4] < th[4]);
    CHECK(degree_gap(4, Rational(1, 2), kQ1).gap == gap);
    CHECK(degree_gap(3, Rational(1, 2), kQ1).gap == 0);
}

TEST_CASE("blow-up of the characteristic ODE") {
    CHECK(ode_blowup(0.5).blowup == doctest::Approx(2).epsilon(1e-7));
    CHECK(std::fabs(ode_blowup(1.0 / 3).blowup - c_plain(1.0 / 3)) < 1e-6);
    CHECK(std::isinf(ode_blowup(0).blowup));
    CHECK(std::isinf(ode_blowup(1).blowup));
    Rational gap = Rational(1, 8) - Rational(5, 48);
    double b = ode_blowup(0.5, {{4, gap}}).blowup;
    CHECK(b > 2);
    // regression value of the first verified run
    CHECK(b == doctest::Approx(2.0232461555).epsilon(1e-9));
    CHECK(ode_blowup(0.5, {{4, gap / 2}}).blowup < b);
}

TEST_CASE("p-th root bounds at the symmetric point") {
    CHECK(*c_bound_pth_root(Rational(1, 2), 5, kQ2).lower == doctest::Approx(cay(std::sqrt(0.5))).epsilon(1e-12));
    CHECK(*c_bound_pth_root(Rational(1, 2), 5, kQ1).lower == doctest::Approx(cay(0.5)).epsilon(1e-12));
    for (int p = 1; p <= 5; ++p)
        CHECK(std::fabs(*c_bound_pth_root(Rational(1, 3), p, ConvexityClass::plain(), 1024).lower - c_plain(1.0 / 3)) <
              1e-5);
}

TEST_CASE("ordering chain and reflection") {
    for (const auto& cls : {kQ1, kQ2})
        for (Rational l : {Rational(1, 5), Rational(3, 10), Rational(2, 5), Rational(1, 2)}) {
            double v = *c_bound_pth_root(l, 5, cls, 512).lower, d = to_double(l);
            CHECK(c_plain(d) <= v + 1e-9);
            CHECK(v <= c_eps(d));
        }
    double a = *c_bound_pth_root(Rational(1, 3), 5, kQ1, 512).lower;
    double b = *c_bound_pth_root(Rational(2, 3), 5, kQ1, 512).lower;
    CHECK(std::fabs(a - b) <= 1e-9);
}

TEST_CASE("logarithmic bound") {
    BoundReport r2 = c_log_bound(5, kQ2);
    CHECK(std::fabs(*r2.lower - 2.040800) < 1e-4);
    CHECK(*r2.lower <= *c_bound_pth_root(Rational(1, 2), 5, kQ2).lower);
    CHECK(r2.lambda_range->first <= *r2.lambda);
    CHECK(*r2.lambda <= r2.lambda_range->second);
    CHECK(r2.meta.at("lipschitz_violations") == "0");
    BoundReport r0 = c_log_bound(5, ConvexityClass::plain());
    CHECK(std::fabs(*r0.lower - 2) < 1e-5);
}

TEST_CASE("crude ratio and trivial bounds") {
    for (const auto& cls : {kQ1, kQ2}) {
        double crude = *crude_ratio_bound(Rational(1, 2), 5, cls).lower;
        CHECK(crude == doctest::Approx(*c_bound_pth_root(Rational(1, 2), 5, cls).lower).epsilon(1e-12));
        BoundReport m = maglower_assembled(cls);
        CHECK(maglower_floor(cls) < *m.lower);
    }
    CHECK(*upper_trivial(kQ2, TrivialVariant::Cayley).upper == doctest::Approx(2 * std::pow(2, 1.0 / 6)));
    CHECK(*upper_trivial(kQ1, TrivialVariant::Cayley).upper == doctest::Approx(2 * std::pow(2, 1.0 / 3)));
    CHECK(std::fabs(*upper_trivial(ConvexityClass::umq(100000), TrivialVariant::Cayley).upper - 2) < 1e-5);
    CHECK(*upper_trivial(kQ1, TrivialVariant::Magnus, 1.0 / 3).upper ==
          doctest::Approx(c_plain(1.0 / 3) * std::pow(2, 1.0 / 3)));
    BoundReport u = upper_trivial(kQ1, TrivialVariant::Cayley);
    CHECK(u.consistent());
    CHECK(method_tag(u.method) == "trivial-upper");
}

TEST_CASE("comparison bounds") {
    for (const auto& cls : {kQ1, kQ2}) {
        double exact = *c_bound_pth_root(Rational(1, 2), 5, cls).lower;
        CHECK(*sicompar_bound(Rational(1, 2), 5, cls).lower == doctest::Approx(exact).epsilon(1e-12));
        CHECK(*ricompar_bound(Rational(1, 2), 5, cls).lower == doctest::Approx(exact).epsilon(1e-12));
    }
    double route = *c_bound_pth_root(Rational(1, 3), 5, ConvexityClass::plain()).lower;
    CHECK(*sicompar_bound(Rational(1, 3), 5, ConvexityClass::plain()).lower <= route);
    CHECK(*ricompar_bound(Rational(1, 3), 5, ConvexityClass::plain()).lower <= route);
    // regression values of the first verified run
    CHECK(*sicompar_bound(Rational(2, 5), 5, kQ1).lower == doctest::Approx(2.0005380339).epsilon(1e-9));
    CHECK(*ricompar_bound(Rational(2, 5), 5, kQ1).lower == doctest::Approx(1.9997092097).epsilon(1e-9));
}

TEST_CASE("ratio floors on a coarse grid") {
    CHECK(ratio_floor_scan(0.4, 0.6, 0.01).min_ratio > 0.25);
    CHECK(ratio_floor_scan(1.0 / 3, 2.0 / 3, 0.01, std::make_pair(0.4, 0.6)).min_ratio > 0.2);
}

TEST_CASE("continuity check") {
    CHECK(continuity_consistent(0.3, c_plain(0.3), 0.31, c_plain(0.31)));
    CHECK(!continuity_consistent(0.3, 2.0, 0.31, 3.0));
}
