#include "magbound/bch.hpp"
#include "magbound/permsums.hpp"
#include "magbound/umqnorm.hpp"

#include <doctest.h>

#include <cmath>

using namespace magbound;

namespace {

const ConvexityClass kQ1 = ConvexityClass::umq(1);

// Degree-4 boundary-kernel values with cross-term cost κ, m = min(λ, 1−λ).
Rational f04(const Rational& l, const Rational& kappa) {
    Rational m = l < Rational(1, 2) ? l : Rational(1 - l);
    return (-8 * l * l * l + 8 * l * l + l - (1 - kappa) * 8 * l * l * (1 - l) * m) / 24;
}
Rational f13(const Rational& l, const Rational& kappa) {
    Rational m = l < Rational(1, 2) ? l : Rational(1 - l);
    return (4 * l * l * l * l - 14 * l * l * l + 8 * l * l + 2 * l - (1 - kappa) * 8 * l * l * (1 - l) * m) / 24;
}
Rational f22(const Rational& l, const Rational& kappa) {
    Rational m = l < Rational(1, 2) ? l : Rational(1 - l);
    return (8 * l * l * l * l - 16 * l * l * l + 4 * l * l + 4 * l - (1 - kappa) * 4 * l * (1 - l) * m) / 24;
}

}  // namespace

TEST_CASE("convexity classes") {
    CHECK(kQ1.kappa_lo() == Rational(1, 2));
    CHECK(kQ1.kappa_exact());
    ConvexityClass q2 = ConvexityClass::umq(2);
    CHECK(!q2.kappa_exact());
    CHECK(q2.kappa_lo() < q2.kappa_hi());
    CHECK(to_double(q2.kappa_hi() - q2.kappa_lo()) < 1e-15);
    CHECK(to_double(q2.kappa_lo()) <= std::sqrt(0.5));
    CHECK(std::sqrt(0.5) <= to_double(q2.kappa_hi()));
    CHECK(ConvexityClass::plain().is_plain());
    CHECK_THROWS(ConvexityClass::with_kappa(Rational(1, 3)));
}

TEST_CASE("quasi-monomial enumeration counts") {
    CHECK(enumerate_quasimonomials(3).size() == 6);
    for (const auto& q : enumerate_quasimonomials(3)) CHECK(q.xi_count() == 0);
    auto d4 = enumerate_quasimonomials(4);
    CHECK(d4.size() == 48);
    int with_xi = 0;
    for (const auto& q : d4) with_xi += q.xi_count() > 0;
    CHECK(with_xi == 24);
    // regression value of the exhaustive degree-5 enumeration
    CHECK(enumerate_quasimonomials(5).size() == 840);
    CHECK_THROWS(enumerate_quasimonomials(6));
}

TEST_CASE("cross-term of the (3,5) block evaluates to four signed words") {
    QuasiMonomial c = bch_cross_term_35();
    CHECK(c.degree() == 8);
    CHECK(c.xi_count() == 1);
    NCPolyQ e = c.eval();
    Rational q(1, 4);
    CHECK(e.size() == 4);
    CHECK(e.coeff({1, 2, 2, 1, 2, 1, 2, 2}) == q);
    CHECK(e.coeff({1, 2, 1, 2, 2, 1, 2, 2}) == q);
    CHECK(e.coeff({1, 2, 2, 1, 2, 2, 1, 2}) == q);
    CHECK(e.coeff({1, 2, 1, 2, 2, 2, 1, 2}) == -q);
    CHECK(bch_cross_term_53().eval() == mirror(e));
}

TEST_CASE("exact norm of the degree-4 permutation sum") {
    NCPolyQ x = eval_lambda(mu_lambda(4), Rational(1, 2));
    NormResult r = fa_norm_exact(x, kQ1);
    CHECK(r.certified);
    CHECK(r.value.exact());
    CHECK(r.value.lo == Rational(5, 2));
    CHECK(theta_k(4, Rational(1, 2), kQ1).lo == Rational(5, 48));
    CHECK(theta_k(1, Rational(1, 2), kQ1).lo == 1);
    CHECK(fa_norm_exact(x, ConvexityClass::plain()).value.lo == 3);
}

TEST_CASE("single monomials and low degrees are not reduced") {
    NCPolyQ m = NCPolyQ::single({3, 1, 2, 4, 5}, Rational(-7, 3));
    CHECK(fa_norm_exact(m, kQ1).value.lo == Rational(7, 3));
    for (int k = 1; k <= 3; ++k)
        for (Rational l : {Rational(1, 3), Rational(1, 2)}) {
            NCPolyQ x = eval_lambda(mu_lambda(k), l);
            CHECK(fa_norm_exact(x, kQ1).value.lo == l1_norm(x));
        }
}

TEST_CASE("every reported optimum carries verified certificates") {
    for (NCPolyQ x : {eval_lambda(mu_lambda(4), Rational(1, 3)), eval_lambda(mu_ab(2, 3), Rational(2, 5)),
                      eval_lambda(mu_ab(0, 4), Rational(1, 2))})
        for (ConvexityClass cls : {kQ1, ConvexityClass::umq(2), ConvexityClass::with_kappa(Rational(3, 4))}) {
            NormResult r = fa_norm_exact(x, cls);
            REQUIRE(r.instances.size() == r.at_lo.size());
            for (std::size_t i = 0; i < r.instances.size(); ++i) {
                CHECK(r.at_lo[i].verify(r.instances[i]));
                CHECK(r.at_hi[i].verify(r.instances[i]));
            }
            CHECK(r.value.hi <= l1_norm(x));
        }
}

TEST_CASE("norm is nondecreasing and concave in the cross-term cost") {
    for (NCPolyQ x : {eval_lambda(mu_lambda(4), Rational(1, 2)), eval_lambda(mu_ab(1, 4), Rational(1, 3)),
                      eval_lambda(mu_lambda(5), Rational(2, 7))}) {
        std::vector<Rational> ks{Rational(1, 2), Rational(3, 4), Rational(7, 8), Rational(1)};
        std::vector<Rational> v;
        for (const auto& k : ks) v.push_back(fa_norm_exact(x, ConvexityClass::with_kappa(k)).value.lo);
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] <= v[i]);
        CHECK(v.back() == l1_norm(x));
        // slopes decrease along the samples
        for (std::size_t i = 2; i < v.size(); ++i)
            CHECK((v[i] - v[i - 1]) / (ks[i] - ks[i - 1]) <= (v[i - 1] - v[i - 2]) / (ks[i - 1] - ks[i - 2]));
    }
}

TEST_CASE("degree-4 boundary values agree with the closed formulas") {
    Rational half(1, 2);
    for (int side = 0; side < 2; ++side)
        for (int i = 1; i <= 7; ++i) {
            Rational l = side == 0 ? Rational(i, 16) : Rational(8 + i, 16);
            CHECK(theta_ab(0, 4, l, kQ1).lo == f04(l, half));
            CHECK(theta_ab(1, 3, l, kQ1).lo == f13(l, half));
            CHECK(theta_ab(2, 2, l, kQ1).lo == f22(l, half));
        }
    Enclosure e = theta_ab(2, 2, half, ConvexityClass::umq(2));
    CHECK(e.width() < 1e-12);
    double target = (8.0 / 16 - 2 + 1 + 2 - (1 - std::sqrt(0.5)) * 4 * 0.25 * 0.5) / 24;
    CHECK(e.lo.get_d() <= target + 1e-15);
    CHECK(target - 1e-15 <= e.hi.get_d());
}

TEST_CASE("boundary values swap under reflection") {
    for (ConvexityClass cls : {kQ1, ConvexityClass::with_kappa(Rational(5, 6))})
        for (Rational l : {Rational(1, 3), Rational(1, 5), Rational(3, 7)})
            for (int a = 0; a <= 5; ++a)
                CHECK(theta_ab(a, 5 - a, 1 - l, cls).lo == theta_ab(5 - a, a, l, cls).lo);
    for (Rational l : {Rational(0), Rational(1, 3), Rational(1)}) {
        CHECK(theta_ab(0, 1, l, kQ1).lo == l);
        CHECK(theta_ab(1, 0, l, kQ1).lo == 1 - l);
    }
}

TEST_CASE("feasible decompositions bound the exact norm") {
    NCPolyQ x = eval_lambda(mu_lambda(4), Rational(1, 2));
    CHECK(fa_norm_upper(x, kQ1, {}).lo == l1_norm(x));
    Enclosure up = fa_norm_upper(x, kQ1, enumerate_quasimonomials(4));
    CHECK(up.lo >= Rational(5, 2));
    CHECK(up.hi <= 3);
    NCPolyQ comp = eval_lambda(upsilon_power_component(3, 3, 5), Rational(1, 3));
    Enclosure g = fa_norm_upper(comp, kQ1, {bch_cross_term_35()});
    // min aligned coefficient is c₂(1/3)² = 1/36
    CHECK(g.lo == l1_norm(comp) - 4 * Rational(1, 36) * Rational(1, 2));
}
