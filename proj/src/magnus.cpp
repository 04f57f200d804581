#include "magbound/magnus.hpp"

#include "magbound/parallel.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace magbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

// Nearest rational with denominator 10^9; keeps LP coefficients small during λ searches.
Rational snap(double lambda) { return Rational(static_cast<long>(std::llround(lambda * 1e9)), 1000000000L); }

void check_lambda(const Rational& l) {
    if (l < 0 || l > 1) throw std::out_of_range("lambda outside [0,1]");
}

void check_p(int p) {
    if (p < 1 || p - 1 > kExhaustiveCap) throw std::out_of_range("p must satisfy 1 <= p and p-1 <= 5");
}

// Maximum of f on [a, b]: grid scan followed by Brent refinement around the best node.
template <class F>
std::pair<double, double> maximize(F&& f, double a, double b, int grid) {
    double best_x = a, best = -kInf;
    std::vector<double> xs(grid + 1), ys(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        xs[i] = a + (b - a) * i / grid;
        ys[i] = f(xs[i]);
        if (ys[i] > best) {
            best = ys[i];
            best_x = xs[i];
        }
    }
    int i = static_cast<int>(std::find(xs.begin(), xs.end(), best_x) - xs.begin());
    double lo = xs[std::max(0, i - 1)], hi = xs[std::min(grid, i + 1)];
    auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, 40);
    if (-r.second > best) return {r.first, -r.second};
    return {best_x, best};
}

std::string label_of(const ConvexityClass& cls) { return cls.label(); }

double two_pow_third_q(const ConvexityClass& cls) {
    if (cls.is_plain()) return 1.0;
    if (cls.q()) return std::pow(2.0, 1.0 / (3.0 * to_double(*cls.q())));
    return std::pow(to_double(cls.kappa_lo()), -1.0 / 3.0);
}

}  // namespace

std::string method_tag(BoundMethod m) {
    switch (m) {
        case BoundMethod::ClosedForm: return "closed-form";
        case BoundMethod::PthRootKernel: return "pth-root-kernel";
        case BoundMethod::Ode: return "ode";
        case BoundMethod::CrudeRatio: return "crude-ratio";
        case BoundMethod::TrivialUpper: return "trivial-upper";
        case BoundMethod::LogScan: return "log-scan";
        case BoundMethod::Sicompar: return "convolution-comparison";
        case BoundMethod::Ricompar: return "sup-comparison";
    }
    return "unknown";
}

double c_plain(double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) throw std::out_of_range("c_plain: lambda outside [0,1]");
    if (lambda == 0 || lambda == 1) return kInf;
    double d = 1 - 2 * lambda;
    if (std::fabs(d) < 1e-6) {
        // 2 artanh(d)/d = 2(1 + d²/3 + d⁴/5 + …)
        double d2 = d * d;
        return 2 * (1 + d2 / 3 + d2 * d2 / 5);
    }
    return std::log((1 - lambda) / lambda) / d;
}

double c_eps(double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) throw std::out_of_range("c_eps: lambda outside [0,1]");
    if (lambda == 0 || lambda == 1) return kInf;
    double lg = std::log(lambda / (1 - lambda));
    return std::sqrt(M_PI * M_PI + lg * lg);
}

std::vector<Rational> euler_coeffs(const Rational& lambda, int N, const std::vector<Correction>& corrections) {
    if (N < 1) throw std::out_of_range("euler_coeffs: N must be positive");
    Rational ll = lambda * (1 - lambda);
    std::vector<Rational> gap(N + 1, Rational(0));
    for (const auto& c : corrections) {
        if (c.gap < 0) throw std::invalid_argument("euler_coeffs: negative gap");
        if (c.degree >= 1 && c.degree <= N) gap[c.degree] += c.gap;
    }
    std::vector<Rational> th(N + 1, Rational(0));
    th[1] = 1 - gap[1];
    for (int k = 1; k < N; ++k) {
        Rational s = 0;
        for (int j = 1; j < k; ++j) s += th[j] * th[k - j];
        th[k + 1] = (th[k] + ll * s) / (k + 1) - gap[k + 1];
    }
    return std::vector<Rational>(th.begin() + 1, th.end());
}

OdeResult ode_blowup(double lambda, const std::vector<Correction>& corrections, double threshold, double rtol) {
    if (!(lambda >= 0 && lambda <= 1)) throw std::out_of_range("ode_blowup: lambda outside [0,1]");
    OdeResult res;
    if (lambda == 0 || lambda == 1) {
        res.blowup = kInf;
        res.finite = false;
        return res;
    }
    const double a = lambda, b = 1 - lambda;
    std::vector<std::pair<int, double>> drag;
    for (const auto& c : corrections) drag.emplace_back(c.degree, to_double(c.gap) * c.degree);
    using State = std::array<double, 1>;
    auto rhs = [&](const State& y, State& dy, double x) {
        double e = 0;
        for (auto [k, g] : drag) e += g * std::pow(x, k - 1);
        dy[0] = (1 + a * y[0]) * (1 + b * y[0]) - e;
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(rtol * 1e-3, rtol, ode::runge_kutta_dopri5<State>());
    State y{0.0};
    double x = 0, dt = 1e-3;
    const double x_cap = 1e3;
    while (y[0] < threshold) {
        if (x > x_cap) {
            res.blowup = kInf;
            res.finite = false;
            return res;
        }
        if (stepper.try_step(rhs, y, x, dt) == ode::success) ++res.steps;
        if (dt < 1e-300) throw std::runtime_error("ode_blowup: step size collapsed");
    }
    const double T = y[0];
    // Remaining time for Θ' = (1+aΘ)(1+bΘ) from T to ∞; the drag only delays this further.
    double tail = std::fabs(a - b) < 1e-12 ? 1.0 / (a * (1 + a * T))
                                           : (std::log(a / b) - std::log((1 + a * T) / (1 + b * T))) / (a - b);
    res.x_switch = x;
    res.tail = tail;
    res.blowup = x + tail;
    return res;
}

Correction degree_gap(int degree, const Rational& lambda, const ConvexityClass& cls) {
    Enclosure plain = theta_k(degree, lambda, ConvexityClass::plain());
    Enclosure cl = theta_k(degree, lambda, cls);
    Rational g = plain.lo - cl.hi;
    return {degree, g > 0 ? g : Rational(0)};
}

KernelRadius kernel_radius(int degree, const Rational& lambda, const ConvexityClass& cls, int n0, double tol) {
    check_lambda(lambda);
    KernelRadius kr;
    if (lambda == 0 || lambda == 1) {
        // one side vanishes: Volterra operator
        kr.exact = true;
        return kr;
    }
    TwoSidedKernel K(reduced_kernel(degree, lambda, cls));
    if (K.convolution_type()) {
        kr.radius = kr.lo = kr.hi = to_double(convolution_radius(K));
        kr.exact = true;
        return kr;
    }
    RadiusResult r = radius_refined([&](int n) { return discretize(K, n); }, tol, n0, 8 * n0);
    kr.radius = r.radius;
    kr.lo = r.lo;
    kr.hi = r.hi;
    kr.converged = r.converged;
    kr.warning = r.warning;
    return kr;
}

BoundReport c_bound_pth_root(const Rational& lambda, int p, const ConvexityClass& cls, int n0) {
    check_p(p);
    KernelRadius kr = kernel_radius(p - 1, lambda, cls, n0);
    BoundReport rep;
    rep.lambda = to_double(lambda);
    rep.cls = label_of(cls);
    rep.method = BoundMethod::PthRootKernel;
    rep.lower = kr.hi > 0 ? std::pow(1.0 / kr.hi, 1.0 / p) : kInf;
    rep.meta["p"] = std::to_string(p);
    rep.meta["radius"] = fmt(kr.radius);
    rep.meta["radius_bracket"] = fmt(kr.lo) + "," + fmt(kr.hi);
    rep.meta["radius_route"] = kr.exact ? "convolution-exact" : "richardson-power-iteration";
    if (!kr.warning.empty()) rep.meta["warning"] = kr.warning;
    return rep;
}

BoundReport c_log_bound(int p, const ConvexityClass& cls, const LogScanOptions& opt) {
    check_p(p);
    if (opt.grid_points < 3) throw std::out_of_range("c_log_bound: grid needs at least 3 points");
    const int G = opt.grid_points;
    auto lam = [&](int i) { return Rational(i, 2 * (G - 1)); };
    auto radius_at = [&](const Rational& l) { return kernel_radius(p - 1, l, cls, opt.n0).hi; };
    std::vector<double> r = parallel_map<double>(G, [&](std::size_t i) { return radius_at(lam(static_cast<int>(i))); });
    int best = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
    double lo = to_double(lam(std::max(0, best - 1))), hi = to_double(lam(std::min(G - 1, best + 1)));
    double best_l = to_double(lam(best)), best_r = r[best];
    if (hi > lo) {
        int bits = static_cast<int>(std::ceil(-std::log2(opt.lambda_tol))) + 1;
        boost::uintmax_t iters = 200;
        auto m = boost::math::tools::brent_find_minima([&](double x) { return -radius_at(snap(x)); }, lo, hi, bits, iters);
        if (-m.second > best_r) {
            best_r = -m.second;
            best_l = to_double(snap(m.first));
        }
    }
    int lipschitz_violations = 0;
    for (int i = 1; i + 1 < G; ++i) {
        double c1 = std::pow(1 / r[i], 1.0 / p), c2 = std::pow(1 / r[i + 1], 1.0 / p);
        if (!continuity_consistent(to_double(lam(i)), c1, to_double(lam(i + 1)), c2)) ++lipschitz_violations;
    }
    BoundReport rep;
    rep.lambda = best_l;
    rep.lambda_range = std::make_pair(lo, hi);
    rep.cls = label_of(cls);
    rep.method = BoundMethod::LogScan;
    rep.lower = std::pow(1.0 / best_r, 1.0 / p);
    rep.meta["p"] = std::to_string(p);
    rep.meta["grid_points"] = std::to_string(G);
    rep.meta["max_radius"] = fmt(best_r);
    rep.meta["grid_n0"] = std::to_string(opt.n0);
    rep.meta["lipschitz_violations"] = std::to_string(lipschitz_violations);
    return rep;
}

double kernel_ratio_sup(int degree, const Rational& lambda, const ConvexityClass& cls) {
    ReducedKernel num = reduced_kernel(degree, lambda, cls);
    ReducedKernel den = reduced_kernel(degree, lambda, ConvexityClass::plain());
    auto ratio = [&](double t) {
        double d = den(t);
        return d == 0 ? 0.0 : num(t) / d;
    };
    return maximize(ratio, 0.0, 1.0, 1000).second;
}

BoundReport crude_ratio_bound(const Rational& lambda, int p, const ConvexityClass& cls) {
    check_p(p);
    check_lambda(lambda);
    double l = to_double(lambda);
    BoundReport rep;
    rep.lambda = l;
    rep.cls = label_of(cls);
    rep.method = BoundMethod::CrudeRatio;
    if (lambda == 0 || lambda == 1) {
        rep.lower = kInf;
        return rep;
    }
    double S = kernel_ratio_sup(p - 1, lambda, cls);
    rep.lower = c_plain(l) / std::pow(S, 1.0 / p);
    rep.meta["p"] = std::to_string(p);
    rep.meta["ratio_sup"] = fmt(S);
    return rep;
}

BoundReport upper_trivial(const ConvexityClass& cls, TrivialVariant variant, double lambda) {
    BoundReport rep;
    rep.cls = label_of(cls);
    rep.method = BoundMethod::TrivialUpper;
    double base = variant == TrivialVariant::Cayley ? 2.0 : c_plain(lambda);
    if (variant == TrivialVariant::Magnus) rep.lambda = lambda;
    else rep.lambda = 0.5;
    rep.upper = base * two_pow_third_q(cls);
    rep.meta["variant"] = variant == TrivialVariant::Cayley ? "cayley" : "magnus";
    return rep;
}

BoundReport sicompar_bound(const Rational& lambda, int p, const ConvexityClass& cls) {
    check_p(p);
    check_lambda(lambda);
    ReducedKernel k = reduced_kernel(p - 1, lambda, cls);
    Rational r = std::max(lambda, Rational(1 - lambda)) * k.poly.integral(0, 1);
    BoundReport rep;
    rep.lambda = to_double(lambda);
    rep.cls = label_of(cls);
    rep.method = BoundMethod::Sicompar;
    rep.lower = std::pow(1.0 / to_double(r), 1.0 / p);
    rep.meta["p"] = std::to_string(p);
    rep.meta["radius_bound"] = to_string(r);
    return rep;
}

BoundReport ricompar_bound(const Rational& lambda, int p, const ConvexityClass& cls) {
    check_p(p);
    check_lambda(lambda);
    double l = to_double(lambda);
    ReducedKernel k = reduced_kernel(p - 1, lambda, cls);
    double kmax = maximize([&](double t) { return k(t); }, 0.0, 1.0, 1000).second;
    double r = kmax / c_plain(l);
    BoundReport rep;
    rep.lambda = l;
    rep.cls = label_of(cls);
    rep.method = BoundMethod::Ricompar;
    rep.lower = r > 0 ? std::pow(1.0 / r, 1.0 / p) : kInf;
    rep.meta["p"] = std::to_string(p);
    rep.meta["kernel_max"] = fmt(kmax);
    return rep;
}

RatioFloorScan ratio_floor_scan(double lo, double hi, double step, std::optional<std::pair<double, double>> skip) {
    if (!(step > 0) || hi < lo) throw std::invalid_argument("ratio_floor_scan: bad grid");
    const long nl = std::lround((hi - lo) / step);
    const long nt = std::lround(2.0 / step);
    struct Row {
        double min = kInf, t = 0;
        long samples = 0;
    };
    std::vector<Row> rows = parallel_map<Row>(static_cast<std::size_t>(nl + 1), [&](std::size_t j) {
        Row row;
        double ld = lo + step * static_cast<double>(j);
        if (skip && ld >= skip->first - 1e-12 && ld <= skip->second + 1e-12) return row;
        Rational l = snap(ld);
        ld = to_double(l);
        TwoSidedKernel K(reduced_kernel(4, l, ConvexityClass::plain()));
        auto consider = [&](double t, double kv) {
            double r = b_correction(ld, t) / kv;
            ++row.samples;
            if (r < row.min) {
                row.min = r;
                row.t = t;
            }
        };
        for (long i = 0; i <= nt; ++i) {
            double t = -1.0 + step * static_cast<double>(i);
            if (i == nt / 2 && nt % 2 == 0) {
                consider(0.0, K.right_limit_at_zero());
                double bl = b_correction_poly(l, false)(0.0);
                double r = bl / K.left_limit_at_zero();
                ++row.samples;
                if (r < row.min) {
                    row.min = r;
                    row.t = -0.0;
                }
                continue;
            }
            consider(t, K(t));
        }
        return row;
    });
    RatioFloorScan out;
    out.min_ratio = kInf;
    out.step = step;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        out.samples += rows[j].samples;
        if (rows[j].min < out.min_ratio) {
            out.min_ratio = rows[j].min;
            out.arg_t = rows[j].t;
            out.arg_lambda = to_double(snap(lo + step * static_cast<double>(j)));
        }
    }
    return out;
}

double maglower_floor(const ConvexityClass& cls) {
    double k = cls.kappa();
    return 2.0 / std::pow(0.75 + k / 4, 0.2);
}

BoundReport maglower_assembled(const ConvexityClass& cls, int grid_points) {
    if (grid_points < 2) throw std::out_of_range("maglower_assembled: grid needs at least 2 points");
    const int G = grid_points;
    std::vector<double> v = parallel_map<double>(G - 1, [&](std::size_t i) {
        return *crude_ratio_bound(Rational(static_cast<long>(i) + 1, 2 * (G - 1)), 5, cls).lower;
    });
    int arg = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
    BoundReport rep;
    rep.lambda = to_double(Rational(arg + 1, 2 * (G - 1)));
    rep.lambda_range = std::make_pair(0.0, 0.5);
    rep.cls = label_of(cls);
    rep.method = BoundMethod::CrudeRatio;
    rep.lower = v[arg];
    rep.meta["p"] = "5";
    rep.meta["grid_points"] = std::to_string(G);
    rep.meta["floor"] = fmt(maglower_floor(cls));
    rep.meta["margin"] = fmt(v[arg] - maglower_floor(cls));
    return rep;
}

bool continuity_consistent(double lambda1, double c1, double lambda2, double c2, double slack) {
    auto logit = [](double l) { return std::log(l / (1 - l)); };
    if (!std::isfinite(c1) || !std::isfinite(c2)) return true;
    return std::fabs(c1 - c2) <= std::fabs(logit(lambda1) - logit(lambda2)) + slack;
}

}  // namespace magbound
