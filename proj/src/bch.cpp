#include "magbound/bch.hpp"

#include "magbound/series.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace magbound {

namespace {

// compositions of total into exactly parts positive integers
void compositions(int total, int parts, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
    if (parts == 0) {
        if (total == 0) f(cur);
        return;
    }
    for (int first = 1; first <= total - (parts - 1); ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, f);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> all_compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    compositions(total, parts, cur, [&](const std::vector<int>& c) { out.push_back(c); });
    return out;
}

const NCPolyL& component_35() {
    static const NCPolyL comp = upsilon_power_component(3, 3, 5);
    return comp;
}

const std::array<Word, 4>& support_35() {
    static const std::array<Word, 4> ws{Word{1, 2, 2, 1, 2, 2, 1, 2}, Word{1, 2, 1, 2, 2, 1, 2, 2},
                                        Word{1, 2, 2, 1, 2, 1, 2, 2}, Word{1, 2, 1, 2, 2, 2, 1, 2}};
    return ws;
}

AlignmentCheck check_alignment(const NCPolyL& comp, const NCPolyQ& cross, const std::array<Word, 4>& words,
                               double lambda) {
    AlignmentCheck a;
    a.aligned = true;
    a.min_abs = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        a.coeffs[i] = comp.coeff(words[i])(lambda);
        Rational s = cross.coeff(words[i]);
        a.cross_signs[i] = s > 0 ? 1 : (s < 0 ? -1 : 0);
        double c = a.coeffs[i];
        if (a.cross_signs[i] == 0 || c == 0 || (c > 0) != (a.cross_signs[i] > 0)) a.aligned = false;
        a.min_abs = std::min(a.min_abs, std::fabs(c));
    }
    if (!a.aligned) a.min_abs = 0;
    return a;
}

}  // namespace

ResolventSeries resolvent_series(int N) {
    if (N < 1 || N > 40) throw std::out_of_range("resolvent_series: N must lie in [1, 40]");
    TruncSeries<RatPoly> u(N);
    for (int n = 1; n <= N; ++n) u[n] = RatPoly(Rational(1) / factorial(n));
    TruncSeries<RatPoly> den = u * RatPoly({Rational(1), Rational(-1)});
    den[0] = RatPoly(1);
    TruncSeries<RatPoly> r = u / den;
    ResolventSeries rs;
    for (int n = 1; n <= N; ++n) rs.c.push_back(r[n]);
    return rs;
}

std::vector<double> resolvent_coeffs(double lambda, int N) {
    if (N < 1) throw std::out_of_range("resolvent_coeffs: N must be positive");
    std::vector<double> u(N + 1), c(N + 1, 0.0);
    double f = 1;
    for (int n = 1; n <= N; ++n) {
        f /= n;
        u[n] = f;
    }
    for (int n = 1; n <= N; ++n) {
        double s = 0;
        for (int k = 1; k < n; ++k) s += c[k] * u[n - k];
        c[n] = u[n] - (1 - lambda) * s;
    }
    return std::vector<double>(c.begin() + 1, c.end());
}

SeriesSum abs_resolvent_sum(double lambda, double x, int N) {
    if (x < 0) throw std::out_of_range("abs_resolvent_sum: x must be nonnegative");
    SeriesSum s;
    if (x == 0) return s;
    std::vector<double> c = resolvent_coeffs(lambda, N);
    double pw = 1;
    for (int n = 1; n <= N; ++n) {
        pw *= x;
        s.value += std::fabs(c[n - 1]) * pw;
    }
    double root = 0;
    for (int n = std::max(1, N / 2); n <= N; ++n)
        if (c[n - 1] != 0) root = std::max(root, std::pow(std::fabs(c[n - 1]), 1.0 / n));
    double rho = 1.05 * root * x;
    if (rho >= 1) {
        s.conclusive = false;
        s.tail = std::numeric_limits<double>::infinity();
    } else {
        s.tail = std::pow(rho, N + 1) / (1 - rho);
    }
    return s;
}

UpsilonValue upsilon_l1(double lambda, double x1, double x2, int N) {
    if (!(lambda >= 0 && lambda <= 1)) throw std::out_of_range("upsilon_l1: lambda outside [0,1]");
    if (x1 >= M_PI || x2 >= M_PI) throw std::out_of_range("upsilon_l1: x1, x2 must be below pi");
    SeriesSum a = abs_resolvent_sum(lambda, x1, N), b = abs_resolvent_sum(lambda, x2, N);
    double pre = lambda * (1 - lambda);
    UpsilonValue v;
    v.value = pre * a.value * b.value;
    v.upper = pre * (a.value + a.tail) * (b.value + b.tail);
    v.conclusive = a.conclusive && b.conclusive;
    return v;
}

NCPolyL upsilon_power_component(int n, int d1, int d2) {
    if (n < 1) throw std::out_of_range("upsilon_power_component: power must be positive");
    NCPolyL out;
    if (d1 < n || d2 < n) return out;
    ResolventSeries rs = resolvent_series(std::max(d1, d2) - n + 1);
    auto is = all_compositions(d1, n), js = all_compositions(d2, n);
    for (const auto& i : is)
        for (const auto& j : js) {
            Word w;
            LambdaPoly c(1);
            for (int k = 0; k < n; ++k) {
                w.insert(w.end(), i[k], 1);
                w.insert(w.end(), j[k], 2);
                c = c * rs[i[k]] * rs[j[k]];
            }
            out.add(w, c);
        }
    return out;
}

QuasiMonomial bch_cross_term_35() {
    using Q = QuasiMonomial;
    return Q::product({Q::leaf(1), Q::leaf(2),
                       Q::xi(Q::leaf(2), Q::leaf(1), Q::product({Q::leaf(2), Q::leaf(1)}), Q::leaf(2)), Q::leaf(2)});
}

QuasiMonomial bch_cross_term_53() {
    using Q = QuasiMonomial;
    return Q::product({Q::leaf(1), Q::xi(Q::leaf(1), Q::product({Q::leaf(2), Q::leaf(1)}), Q::leaf(2), Q::leaf(1)),
                       Q::leaf(1), Q::leaf(2)});
}

AlignmentCheck check_alignment_35(double lambda) {
    static const NCPolyQ cross = bch_cross_term_35().eval();
    return check_alignment(component_35(), cross, support_35(), lambda);
}

BchGain bch_gain_upper(double lambda, const ConvexityClass& cls, double x1, double x2, int N) {
    static const NCPolyQ cross53 = bch_cross_term_53().eval();
    static const NCPolyL comp53 = mirror(component_35());
    static const std::array<Word, 4> support53 = [] {
        std::array<Word, 4> ws;
        for (int i = 0; i < 4; ++i) ws[i] = mirror(NCPolyQ::single(support_35()[i])).terms().begin()->first;
        return ws;
    }();
    UpsilonValue u = upsilon_l1(lambda, x1, x2, N);
    BchGain g;
    g.l1 = u.upper * u.upper * u.upper;
    g.conclusive = u.conclusive;
    const double kappa = to_double(cls.kappa_hi());
    const double pre = std::pow(lambda * (1 - lambda), 3);
    AlignmentCheck a35 = check_alignment_35(lambda);
    AlignmentCheck a53 = check_alignment(comp53, cross53, support53, lambda);
    g.aligned = a35.aligned && a53.aligned;
    if (!g.aligned) g.diagnostic = "coefficient signs do not match the cross-term pattern (+,+,+,-)";
    if (a35.aligned) g.gain_35 = 4 * a35.min_abs * (1 - kappa) * pre * std::pow(x1, 3) * std::pow(x2, 5);
    if (a53.aligned) g.gain_53 = 4 * a53.min_abs * (1 - kappa) * pre * std::pow(x1, 5) * std::pow(x2, 3);
    g.bound = g.l1 - g.gain_35 - g.gain_53;
    return g;
}

namespace {

CriticalLambda argmax_on(const std::function<double(double)>& f, double a, double b, int grid) {
    int best = 0;
    double bv = -1;
    for (int i = 0; i <= grid; ++i) {
        double v = f(a + (b - a) * i / grid);
        if (v > bv) {
            bv = v;
            best = i;
        }
    }
    double lo = a + (b - a) * std::max(0, best - 1) / grid, hi = a + (b - a) * std::min(grid, best + 1) / grid;
    auto r = boost::math::tools::brent_find_minima([&](double l) { return -f(l); }, lo, hi, 50);
    if (-r.second >= bv) return {r.first, -r.second};
    return {a + (b - a) * best / grid, bv};
}

}  // namespace

CriticalLambda critical_lambda(double x, int grid, int N) {
    return argmax_on([&](double l) { return upsilon_l1(l, x, x, N).value; }, 0.0, 0.5, grid);
}

CriticalLambda upsilon_sup(double x1, double x2, int grid, int N) {
    return argmax_on([&](double l) { return upsilon_l1(l, x1, x2, N).value; }, 0.0, 1.0, grid);
}

std::pair<double, double> bch_sup_root(double s, const ConvexityClass& cls, int grid, int N) {
    CriticalLambda c = argmax_on(
        [&](double l) { return std::cbrt(std::max(0.0, bch_gain_upper(l, cls, s / 2, s / 2, N).bound)); }, 0.0, 0.5,
        grid);
    return {c.value, c.lambda};
}

C2Scan c2_improved(const ConvexityClass& cls, int lambda_grid, double s_tol) {
    C2Scan out;
    out.lambda_grid = lambda_grid;
    double lo = 2.8, hi = 2.9;
    while (bch_sup_root(hi, cls, lambda_grid).first < 1) {
        lo = hi;
        hi += 0.05;
        if (hi >= 2 * M_PI) throw std::runtime_error("c2_improved: no crossing below 2*pi");
    }
    if (bch_sup_root(lo, cls, lambda_grid).first >= 1) throw std::runtime_error("c2_improved: lower start not below 1");
    while (hi - lo > s_tol) {
        double mid = 0.5 * (lo + hi);
        if (bch_sup_root(mid, cls, lambda_grid).first < 1) lo = mid;
        else hi = mid;
        ++out.bisections;
    }
    auto [v, l] = bch_sup_root(lo, cls, lambda_grid);
    out.s = lo;
    out.margin = lo - kC2;
    out.sup_at_s = v;
    out.arg_lambda = l;
    return out;
}

}  // namespace magbound
