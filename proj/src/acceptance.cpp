#include "magbound/acceptance.hpp"

#include "magbound/bch.hpp"
#include "magbound/convexity.hpp"
#include "magbound/kernels.hpp"
#include "magbound/magnus.hpp"
#include "magbound/specrad.hpp"
#include "magbound/umqnorm.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace magbound {

namespace {

struct Checker {
    CriterionResult& r;
    bool ok = true;

    void operator()(bool cond, const std::string& what) {
        if (!cond) ok = false;
        r.details.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
    }
};

std::string num(double x, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string truncated3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::floor(x * 1000) / 1000);
    return buf;
}

// lo ≤ (1/8)(2/3 + κ/3) ≤ hi with κ = 2^{−1/2}, decided exactly.
bool encloses_theta4_q2(const Enclosure& e) {
    Rational a = 24 * e.lo - 2, b = 24 * e.hi - 2;  // need a ≤ κ ≤ b
    bool lower_ok = a <= 0 || a * a <= Rational(1, 2);
    bool upper_ok = b >= 0 && b * b >= Rational(1, 2);
    return lower_ok && upper_ok;
}

void criterion1(Checker& check) {
    Enclosure t1 = theta_k(4, Rational(1, 2), ConvexityClass::umq(1));
    check(t1.exact() && t1.lo == Rational(5, 48), "q=1: Theta_4(1/2) = " + to_string(t1.lo) + " (expected 5/48)");
    Enclosure t2 = theta_k(4, Rational(1, 2), ConvexityClass::umq(2));
    check(t2.width() < 1e-12, "q=2: enclosure width " + num(t2.width(), 3));
    check(encloses_theta4_q2(t2), "q=2: enclosure contains (1/8)(2/3 + 2^{-1/2}/3) = " +
                                      num((2.0 / 3 + std::sqrt(0.5) / 3) / 8, 15));
}

void criterion2(Checker& check) {
    const ConvexityClass c1 = ConvexityClass::umq(1);
    for (Rational l : {Rational(1, 10), Rational(1, 5), Rational(1, 3), Rational(2, 5), Rational(1, 2), Rational(3, 5),
                       Rational(9, 10)}) {
        Rational m = l < Rational(1, 2) ? l : Rational(1 - l);
        Rational half = Rational(1, 2);  // 1 − κ at q = 1
        Rational f04 = (-8 * l * l * l + 8 * l * l + l - half * 8 * l * l * (1 - l) * m) / 24;
        Rational f13 = (4 * l * l * l * l - 14 * l * l * l + 8 * l * l + 2 * l - half * 8 * l * l * (1 - l) * m) / 24;
        Rational f22 = (8 * l * l * l * l - 16 * l * l * l + 4 * l * l + 4 * l - half * 4 * l * (1 - l) * m) / 24;
        Enclosure a = theta_ab(0, 4, l, c1), b = theta_ab(1, 3, l, c1), c = theta_ab(2, 2, l, c1);
        bool ok = a.exact() && b.exact() && c.exact() && a.lo == f04 && b.lo == f13 && c.lo == f22;
        check(ok, "lambda=" + to_string(l) + ": Theta_{0,4}=" + to_string(a.lo) + " Theta_{1,3}=" + to_string(b.lo) +
                      " Theta_{2,2}=" + to_string(c.lo));
    }
}

void criterion3(Checker& check) {
    double q2 = *c_bound_pth_root(Rational(1, 2), 5, ConvexityClass::umq(2)).lower;
    double q1 = *c_bound_pth_root(Rational(1, 2), 5, ConvexityClass::umq(1)).lower;
    double u2 = *upper_trivial(ConvexityClass::umq(2), TrivialVariant::Cayley).upper;
    double u1 = *upper_trivial(ConvexityClass::umq(1), TrivialVariant::Cayley).upper;
    double f2 = 2 / std::pow(2.0 / 3 + std::sqrt(0.5) / 3, 0.2), f1 = 2 / std::pow(2.0 / 3 + 0.5 / 3, 0.2);
    check(truncated3(q2) == "2.041" && std::fabs(q2 - f2) < 1e-9, "q=2 lower " + num(q2) + " -> " + truncated3(q2));
    check(truncated3(q1) == "2.074" && std::fabs(q1 - f1) < 1e-9, "q=1 lower " + num(q1) + " -> " + truncated3(q1));
    check(truncated3(u2) == "2.244", "q=2 upper " + num(u2) + " -> " + truncated3(u2));
    check(truncated3(u1) == "2.519", "q=1 upper " + num(u1) + " -> " + truncated3(u1));
}

void criterion4(Checker& check) {
    struct Case {
        int q;
        double expected;
    };
    for (Case c : {Case{2, 2.040800}, Case{1, 2.071801}}) {
        ConvexityClass cls = ConvexityClass::umq(c.q);
        BoundReport r = c_log_bound(5, cls);
        double v = *r.lower, floor = maglower_floor(cls);
        check(std::fabs(v - c.expected) <= 1e-4,
              "q=" + std::to_string(c.q) + ": log bound " + num(v) + " at lambda " + num(*r.lambda, 7));
        check(floor < v, "q=" + std::to_string(c.q) + ": floor " + num(floor) + " < " + num(v));
    }
}

void criterion5(Checker& check) {
    for (int k = 1; k <= 9; ++k) {
        Rational l(k, 10);
        double ld = to_double(l);
        TwoSidedKernel K(reduced_kernel(0, l, ConvexityClass::plain()));
        RadiusResult r = radius_refined([&](int n) { return discretize(K, n); }, 1e-9, kDefaultGridSize,
                                        4 * kDefaultGridSize);
        double exact = 1 / c_plain(ld);
        const auto& v = r.eigvec;
        int n = static_cast<int>(v.size());
        double top = 0, err = 0;
        for (int i = 0; i < n; ++i) top = std::max(top, std::pow((1 - ld) / ld, (i + 0.5) / n));
        for (int i = 0; i < n; ++i) err = std::max(err, std::fabs(v[i] - std::pow((1 - ld) / ld, (i + 0.5) / n) / top));
        check(std::fabs(r.radius - exact) <= 1e-6 && err <= 1e-4,
              "lambda=" + num(ld, 2) + ": radius " + num(r.radius, 12) + " vs " + num(exact, 12) + ", eigvec err " +
                  num(err, 3));
    }
}

void criterion6(Checker& check) {
    std::vector<Rational> th = euler_coeffs(Rational(1, 2), 20);
    bool ok = true;
    for (int k = 1; k <= 20; ++k) ok = ok && th[k - 1] == Rational(1) / pow(Rational(2), k - 1);
    check(ok, "Theta_k(1/2) = 2^{1-k} exactly for k <= 20");
    double b0 = ode_blowup(0.5).blowup;
    check(std::fabs(b0 - 2) <= 1e-6, "plain blow-up " + num(b0, 12));
    Correction gap = degree_gap(4, Rational(1, 2), ConvexityClass::umq(1));
    double b1 = ode_blowup(0.5, {gap}).blowup;
    check(gap.gap == Rational(1, 48), "degree-4 gap at q=1 is " + to_string(gap.gap));
    check(b1 > 2 && std::fabs(b1 - frozen::kOdeGapQ1Blowup) <= 1e-8,
          "corrected blow-up " + num(b1, 12) + " (frozen " + num(frozen::kOdeGapQ1Blowup, 12) + ")");
}

void criterion7(Checker& check) {
    int total = 0, good = 0;
    for (Rational l : {Rational(1, 5), Rational(1, 3), Rational(1, 2)})
        for (int d = 0; d <= 6; ++d) {
            ReducedKernel K = reduced_kernel(d, l, ConvexityClass::plain());
            for (Rational t : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) {
                ++total;
                if (g_tilde_series(l, t, d)[d] == K(t)) ++good;
            }
        }
    check(good == total, std::to_string(good) + "/" + std::to_string(total) + " exact coefficient matches");
}

void criterion8(Checker& check) {
    const std::vector<Rational> lambdas{Rational(1, 10), Rational(1, 5), Rational(1, 3), Rational(2, 5), Rational(1, 2),
                                        Rational(3, 5), Rational(2, 3), Rational(9, 10)};
    for (const ConvexityClass& cls : {ConvexityClass::umq(1), ConvexityClass::umq(2), ConvexityClass::with_kappa(Rational(3, 4))}) {
        Rational cost = 1 - cls.kappa_hi();
        bool ok = true;
        for (const Rational& l : lambdas) {
            TwoSidedKernel a(reduced_kernel(4, l, cls)), p(reduced_kernel(4, l, ConvexityClass::plain()));
            ok = ok && a.upper_poly() == p.upper_poly() - b_correction_poly(l, true) * cost;
            ok = ok && a.lower_poly() == p.lower_poly() - b_correction_poly(l, false) * cost;
        }
        check(ok, cls.label() + ": class kernel = plain kernel - (1-kappa) B on both t-signs at 8 lambdas");
    }
    RatioFloorScan inner = ratio_floor_scan(0.4, 0.6, 1e-3);
    check(inner.min_ratio > 0.25, "B/K on [2/5,3/5]: min " + num(inner.min_ratio, 8) + " at (lambda,t)=(" +
                                      num(inner.arg_lambda, 4) + "," + num(inner.arg_t, 4) + "), " +
                                      std::to_string(inner.samples) + " samples");
    RatioFloorScan outer = ratio_floor_scan(1.0 / 3, 2.0 / 3, 1e-3, std::make_pair(0.4, 0.6));
    check(outer.min_ratio > 0.2, "B/K on [1/3,2/3] minus [2/5,3/5]: min " + num(outer.min_ratio, 8) + " at (" +
                                     num(outer.arg_lambda, 4) + "," + num(outer.arg_t, 4) + "), " +
                                     std::to_string(outer.samples) + " samples");
}

void criterion9(Checker& check) {
    CriticalLambda c = critical_lambda(1.44923965);
    check(std::fabs(c.value - 1) <= 1e-4, "max upsilon_l1 = " + num(c.value, 10));
    double m = std::min(c.lambda, 1 - c.lambda);
    check(m >= 0.35865 && m <= 0.35866, "argmax min(lambda,1-lambda) = " + num(m, 8));
    C2Scan s = c2_improved(ConvexityClass::plain());
    check(std::fabs(s.s - kC2) <= 1e-3, "plain threshold " + num(s.s, 10));
}

void criterion10(Checker& check) {
    NCPolyL comp = upsilon_power_component(3, 3, 5);
    LambdaPoly sq({Rational(1, 4), Rational(-1), Rational(1)}), c3({Rational(1, 6), Rational(-1), Rational(1)});
    bool ok = comp.coeff({1, 2, 2, 1, 2, 2, 1, 2}) == sq && comp.coeff({1, 2, 1, 2, 2, 1, 2, 2}) == sq &&
              comp.coeff({1, 2, 2, 1, 2, 1, 2, 2}) == sq && comp.coeff({1, 2, 1, 2, 2, 2, 1, 2}) == c3;
    check(ok, "aligned words carry lambda^2-lambda+1/4 (three) and lambda^2-lambda+1/6");
    // quadratic c3 is convex, so negativity at both window ends covers the window
    bool signs = true;
    for (Rational l : {Rational(35865, 100000), Rational(35866, 100000)})
        for (Rational x : {l, Rational(1 - l)}) signs = signs && c3(x) < 0 && sq(x) > 0;
    for (double l : {0.35865, 0.358655, 0.35866, 0.64134, 0.64135}) signs = signs && check_alignment_35(l).aligned;
    check(signs, "sign pattern (+,+,+,-) on the critical window");
    struct Case {
        int q;
        double frozen;
    };
    for (Case c : {Case{1, frozen::kC2ImprovedQ1}, Case{2, frozen::kC2ImprovedQ2}}) {
        C2Scan s = c2_improved(ConvexityClass::umq(c.q));
        check(s.margin > 0 && std::fabs(s.s - c.frozen) <= 1e-6,
              "q=" + std::to_string(c.q) + ": improved threshold " + num(s.s, 10) + " margin " + num(s.margin, 4));
    }
}

void criterion11(Checker& check) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(0, 1);
    int nested = 0, rate_ok = 0, rate_cases = 0;
    const int kernels = 100;
    for (int k = 0; k < kernels; ++k) {
        double c[4][4];
        for (auto& row : c)
            for (double& x : row) x = U(rng);
        double base = k % 4 == 0 ? 0.0 : 0.05 + U(rng);
        if (k % 4 == 0) c[0][0] = 0;  // vanishes at the corner
        auto K = [&](double s, double t) {
            double v = base;
            double sp = 1;
            for (int i = 0; i < 4; ++i, sp *= s) {
                double tp = 1;
                for (int j = 0; j < 4; ++j, tp *= t) v += c[i][j] * sp * tp;
            }
            return v;
        };
        OperatorGrid g = OperatorGrid::general(K, 64);
        RadiusResult r = power_iteration_hopf(g, 1e-13, 200, true);
        bool nest = true;
        for (std::size_t i = 1; i < r.history.size(); ++i)
            nest = nest && r.history[i].first >= r.history[i - 1].first && r.history[i].second <= r.history[i - 1].second;
        nested += nest;
        double m = g.kernel_min(), M = g.kernel_max();
        if (m > 0) {
            ++rate_cases;
            double q = (M - m) / (M + m);
            bool ok = true;
            for (std::size_t i = 0; i < r.history.size(); ++i) {
                double w = r.history[i].second - r.history[i].first;
                double bound = std::pow(q, static_cast<double>(i)) * (M - m);
                ok = ok && w <= bound + 1e-13 * M;
            }
            rate_ok += ok;
        }
    }
    check(nested == kernels, std::to_string(nested) + "/" + std::to_string(kernels) + " kernels with nested brackets");
    check(rate_ok == rate_cases && rate_cases > 0,
          std::to_string(rate_ok) + "/" + std::to_string(rate_cases) + " positive kernels within the contraction bound");
    int good = 0;
    const int mats = 10;
    double worst = 0;
    for (int k = 0; k < mats; ++k) {
        const int n = 32;
        std::vector<double> e(n * n);
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = e[i * n + j] = U(rng) / n;
        double oracle = A.eigenvalues().cwiseAbs().maxCoeff();
        std::vector<double> seq = local_radius_sequence(OperatorGrid::from_matrix(n, e), 20000);
        double err = std::fabs(seq.back() - oracle);
        worst = std::max(worst, err);
        good += err <= 1e-4;
    }
    check(good == mats, "local radius sequence within 1e-4 of the dense eigenvalue on " + std::to_string(good) + "/" +
                            std::to_string(mats) + " matrices (worst " + num(worst, 3) + ")");
}

void criterion12(Checker& check) {
    struct Case {
        double p;
        int n;
    };
    for (Case c : {Case{2, 8}, Case{3, 6}, Case{1.5, 6}}) {
        LpSpace s(c.n, c.p);
        SampleReport a = check_umd_sampled(s, 10000, 1), b = check_umq_sampled(s, 10000, 1);
        check(a.ok() && b.ok(), "p=" + num(c.p, 3) + " n=" + std::to_string(c.n) + ": violations " +
                                    std::to_string(a.violations) + "/" + std::to_string(b.violations) + ", max ratios " +
                                    num(a.max_ratio, 4) + "/" + num(b.max_ratio, 4));
    }
}

struct CriterionDef {
    const char* title;
    double budget;
    void (*run)(Checker&);
};

const CriterionDef kCriteria[kCriterionCount] = {
    {"exact Theta_4 identity", 1, criterion1},
    {"degree-4 kernel formulas", 10, criterion2},
    {"Cayley-case constants", 1, criterion3},
    {"log-resolvent constants", 120, criterion4},
    {"plain closed form and eigenvector", 30, criterion5},
    {"Euler recursion and ODE blow-up", 5, criterion6},
    {"plain kernel generating function", 5, criterion7},
    {"degree-4 correction identity and ratio floors", 30, criterion8},
    {"BCH threshold", 60, criterion9},
    {"BCH cross-term content", 60, criterion10},
    {"Hopf brackets and local radius", 60, criterion11},
    {"convexity sampling", 60, criterion12},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("unknown acceptance criterion");
    const CriterionDef& s = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = s.title;
    r.budget_seconds = s.budget;
    Checker check{r};
    auto t0 = std::chrono::steady_clock::now();
    try {
        s.run(check);
    } catch (const std::exception& e) {
        check(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.checks_passed = check.ok;
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : todo) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass() ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " (" << num(r.seconds, 3)
       << " s, budget " << r.budget_seconds << " s)";
    if (r.checks_passed && !r.within_budget()) os << " [over time budget]";
    return os.str();
}

}  // namespace magbound
