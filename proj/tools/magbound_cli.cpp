#include "magbound/acceptance.hpp"
#include "magbound/bch.hpp"
#include "magbound/convexity.hpp"
#include "magbound/io.hpp"
#include "magbound/kernels.hpp"
#include "magbound/magnus.hpp"
#include "magbound/parallel.hpp"
#include "magbound/permsums.hpp"
#include "magbound/specrad.hpp"
#include "magbound/umqnorm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace magbound;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::string q;
    std::string kappa;
    std::string lambda = "1/2";
    int p = 5;
    int n = kDefaultGridSize;
    double tol = kDefaultTol;
    std::string format = "text";
    std::string out;
    std::uint64_t seed = 1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ConvexityClass make_class(const Common& c) {
    if (!c.q.empty() && !c.kappa.empty()) throw UsageError("--q and --kappa are mutually exclusive");
    if (!c.q.empty()) return ConvexityClass::umq(parse_rational(c.q));
    if (!c.kappa.empty()) return ConvexityClass::with_kappa(parse_rational(c.kappa));
    return ConvexityClass::plain();
}

Rational lambda_of(const Common& c) {
    Rational l = parse_rational(c.lambda);
    if (l < 0 || l > 1) throw UsageError("--lambda must lie in [0,1]");
    return l;
}

std::string fmt12(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class Output {
public:
    explicit Output(const Common& c) : common_(c) {
        if (!c.out.empty()) {
            file_.open(c.out);
            if (!file_) throw UsageError("cannot open output file " + c.out);
        }
    }
    std::ostream& os() { return common_.out.empty() ? std::cout : file_; }
    bool json() const { return common_.format == "json"; }
    bool csv() const { return common_.format == "csv"; }
    void emit_json(const std::string& cmd, const nlohmann::json& payload) { os() << envelope(cmd, payload).dump(2) << "\n"; }

private:
    const Common& common_;
    std::ofstream file_;
};

void add_common(CLI::App* sub, Common& c, bool with_lambda = true) {
    sub->add_option("--q", c.q, "convexity exponent q (omit with --kappa for the plain class)");
    sub->add_option("--kappa", c.kappa, "explicit rational cross-term cost in [1/2, 1]");
    if (with_lambda) sub->add_option("--lambda", c.lambda, "lambda as n/d or decimal")->capture_default_str();
    sub->add_option("--format", c.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", c.out, "write output to a file");
}

std::string enclosure_text(const Enclosure& e) {
    if (e.exact()) return to_string(e.lo);
    return "[" + to_string(e.lo) + ", " + to_string(e.hi) + "] ~ " + fmt12(e.mid());
}

int cmd_theta(const Common& c, int k, int a, int b) {
    ConvexityClass cls = make_class(c);
    Rational l = lambda_of(c);
    Enclosure e;
    json j = {{"lambda", to_string(l)}, {"class", cls.label()}};
    if (k > 0) {
        if (a >= 0 || b >= 0) throw UsageError("use either --k or --a/--b");
        e = theta_k(k, l, cls);
        j["k"] = k;
    } else {
        if (a < 0 || b < 0) throw UsageError("give --k, or both --a and --b");
        e = theta_ab(a, b, l, cls);
        j["a"] = a;
        j["b"] = b;
    }
    j["value"] = enclosure_json(e);
    Output out(c);
    if (out.json()) out.emit_json("theta", j);
    else out.os() << enclosure_text(e) << "\n";
    return kExitOk;
}

int cmd_norm(const Common& c, const std::string& poly, const std::string& poly_file, int mu, const std::vector<int>& counts, bool certificate) {
    ConvexityClass cls = make_class(c);
    NCPolyQ x;
    int given = !poly.empty() + !poly_file.empty() + (mu > 0) + !counts.empty();
    if (given != 1) throw UsageError("give exactly one of --poly, --poly-file, --mu, --mu-ab");
    if (!poly.empty()) x = parse_ncpoly(poly);
    else if (!poly_file.empty()) {
        std::ifstream in(poly_file);
        if (!in) throw UsageError("cannot read " + poly_file);
        try {
            x = ncpoly_from_json(json::parse(in));
        } catch (const json::exception& e) {
            throw UsageError(std::string("bad polynomial file: ") + e.what());
        }
    }
    else if (mu > 0) x = eval_lambda(mu_lambda(mu), lambda_of(c));
    else {
        if (counts.size() != 2) throw UsageError("--mu-ab takes two counts");
        x = eval_lambda(mu_ab(counts[0], counts[1]), lambda_of(c));
    }
    NormResult r = fa_norm_exact(x, cls);
    Output out(c);
    if (out.json()) {
        json j = {{"class", cls.label()}, {"target", ncpoly_json(x)}, {"l1", to_string(l1_norm(x))}};
        if (certificate) j["norm"] = certificate_json(r);
        else j["norm"] = {{"value", enclosure_json(r.value)}, {"certified", r.certified}};
        out.emit_json("norm", j);
    } else {
        out.os() << enclosure_text(r.value) << (r.certified ? "" : "  (certificate check failed)") << "\n";
    }
    return r.certified ? kExitOk : kExitFailed;
}

int cmd_kernel(const Common& c, int points) {
    ConvexityClass cls = make_class(c);
    Rational l = lambda_of(c);
    if (c.p < 1) throw UsageError("--p must be at least 1");
    TwoSidedKernel K(reduced_kernel(c.p - 1, l, cls));
    Output out(c);
    if (out.csv()) {
        out.os() << "t,kernel\n";
        for (int i = 0; i <= points; ++i) {
            double t = -1 + 2.0 * i / points;
            out.os() << fmt12(t) << "," << fmt12(K(t)) << "\n";
        }
    } else if (out.json()) {
        json th = json::array();
        for (const auto& t : K.reduced().thetas) th.push_back(to_string(t));
        out.emit_json("kernel", {{"degree", c.p - 1},
                                 {"lambda", to_string(l)},
                                 {"class", cls.label()},
                                 {"reduced", ratpoly_json(K.reduced().poly)},
                                 {"thetas", th},
                                 {"upper", ratpoly_json(K.upper_poly())},
                                 {"lower", ratpoly_json(K.lower_poly())},
                                 {"convolution_type", K.convolution_type()},
                                 {"exact", K.reduced().exact}});
    } else {
        out.os() << "reduced(t)       = " << K.reduced().poly.pretty("t") << "\n";
        out.os() << "kernel, t >= 0   = " << K.upper_poly().pretty("t") << "\n";
        out.os() << "kernel, t < 0    = " << K.lower_poly().pretty("t") << "\n";
        out.os() << "convolution type = " << (K.convolution_type() ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int cmd_radius(const Common& c, bool refine, bool eigvec) {
    ConvexityClass cls = make_class(c);
    Rational l = lambda_of(c);
    if (c.p < 1 || c.p - 1 > kExhaustiveCap) throw UsageError("--p must lie in [1, 6]");
    if (c.n < 2) throw UsageError("--n must be at least 2");
    TwoSidedKernel K(reduced_kernel(c.p - 1, l, cls));
    RadiusResult r = refine ? radius_refined([&](int n) { return discretize(K, n); }, c.tol, c.n, 4 * c.n)
                            : power_iteration_hopf(discretize(K, c.n), c.tol);
    json j = radius_json(r, eigvec);
    j["lambda"] = to_string(l);
    j["class"] = cls.label();
    j["degree"] = c.p - 1;
    j["refined"] = refine;
    if (K.convolution_type()) j["convolution_exact"] = to_string(convolution_radius(K));
    Output out(c);
    if (out.json()) out.emit_json("radius", j);
    else {
        out.os() << fmt12(r.radius) << "  bracket [" << fmt12(r.lo) << ", " << fmt12(r.hi) << "]";
        if (!r.warning.empty()) out.os() << "  warning: " << r.warning;
        out.os() << "\n";
    }
    return kExitOk;
}

int cmd_bound(const Common& c, const std::string& method, const std::string& variant, int grid_points) {
    ConvexityClass cls = make_class(c);
    BoundReport rep;
    if (method == "closed-form" || method == "eps") {
        double l = to_double(lambda_of(c));
        rep.lambda = l;
        rep.cls = "plain";
        rep.method = BoundMethod::ClosedForm;
        if (method == "closed-form") rep.lower = rep.upper = c_plain(l);
        else rep.upper = c_eps(l);
        rep.meta["formula"] = method == "closed-form" ? "log((1-l)/l)/(1-2l)" : "sqrt(pi^2+log^2(l/(1-l)))";
    } else if (method == "pth-root") {
        rep = c_bound_pth_root(lambda_of(c), c.p, cls, c.n);
    } else if (method == "log") {
        LogScanOptions opt;
        opt.grid_points = grid_points;
        rep = c_log_bound(c.p, cls, opt);
    } else if (method == "crude-ratio") {
        rep = crude_ratio_bound(lambda_of(c), c.p, cls);
    } else if (method == "trivial-upper") {
        rep = upper_trivial(cls, variant == "magnus" ? TrivialVariant::Magnus : TrivialVariant::Cayley,
                            to_double(lambda_of(c)));
    } else if (method == "sicompar") {
        rep = sicompar_bound(lambda_of(c), c.p, cls);
    } else if (method == "ricompar") {
        rep = ricompar_bound(lambda_of(c), c.p, cls);
    } else if (method == "maglower") {
        rep = maglower_assembled(cls, grid_points);
    } else if (method == "ode") {
        Rational l = lambda_of(c);
        std::vector<Correction> corr;
        if (!cls.is_plain())
            for (int k = 2; k <= kExhaustiveCap; ++k) {
                Correction g = degree_gap(k, l, cls);
                if (g.gap > 0) {
                    corr.push_back(g);
                    break;
                }
            }
        OdeResult o = ode_blowup(to_double(l), corr);
        rep.lambda = to_double(l);
        rep.cls = cls.label();
        rep.method = BoundMethod::Ode;
        rep.lower = o.blowup;
        rep.meta["steps"] = std::to_string(o.steps);
        rep.meta["tail"] = fmt12(o.tail);
        if (!corr.empty()) rep.meta["correction"] = "degree " + std::to_string(corr[0].degree) + " gap " + to_string(corr[0].gap);
    } else {
        throw UsageError("unknown method " + method);
    }
    Output out(c);
    if (out.json()) out.emit_json("bound", bound_json(rep));
    else {
        if (rep.lower) out.os() << "lower " << fmt12(*rep.lower);
        if (rep.lower && rep.upper) out.os() << "  ";
        if (rep.upper) out.os() << "upper " << fmt12(*rep.upper);
        out.os() << "\n";
    }
    return kExitOk;
}

int cmd_scan(const Common& c, int points) {
    ConvexityClass cls = make_class(c);
    if (points < 2) throw UsageError("--points must be at least 2");
    if (c.p < 1 || c.p - 1 > kExhaustiveCap) throw UsageError("--p must lie in [1, 6]");
    struct Row {
        double l, w, C;
    };
    std::vector<Row> rows = parallel_map<Row>(points, [&](std::size_t i) {
        Rational l(static_cast<long>(i), points - 1);
        l.canonicalize();
        KernelRadius kr = kernel_radius(c.p - 1, l, cls, std::min(c.n, 512));
        double w = std::pow(kr.hi, 1.0 / c.p);
        return Row{to_double(l), w, w > 0 ? 1 / w : INFINITY};
    });
    Output out(c);
    if (out.json()) {
        json a = json::array();
        for (const auto& r : rows) a.push_back({{"lambda", num_json(r.l)}, {"w", num_json(r.w)}, {"bound", num_json(r.C)}});
        out.emit_json("scan", {{"class", cls.label()}, {"p", c.p}, {"rows", a}});
    } else {
        out.os() << "lambda,w,bound\n";
        for (const auto& r : rows) out.os() << fmt12(r.l) << "," << fmt12(r.w) << "," << fmt12(r.C) << "\n";
    }
    return kExitOk;
}

struct BchFlags {
    bool l1 = false, gain = false, scan_c2 = false, critical = false;
    double x1 = kC2 / 2, x2 = kC2 / 2;
    std::string lambda;
    int order = kDefaultBchOrder;
};

int cmd_bch(const Common& c, const BchFlags& f) {
    ConvexityClass cls = make_class(c);
    if (!(f.l1 || f.gain || f.scan_c2 || f.critical)) throw UsageError("choose --l1, --gain, --scan-c2 or --critical-lambda");
    if (f.x1 < 0 || f.x2 < 0 || f.x1 >= M_PI || f.x2 >= M_PI) throw UsageError("x1, x2 must lie in [0, pi)");
    json j = {{"class", cls.label()}, {"x1", num_json(f.x1)}, {"x2", num_json(f.x2)}};
    std::ostringstream text;
    if (f.l1) {
        if (!f.lambda.empty()) {
            double l = to_double(parse_rational(f.lambda));
            UpsilonValue u = upsilon_l1(l, f.x1, f.x2, f.order);
            j["l1"] = {{"lambda", num_json(l)}, {"value", num_json(u.value)}, {"upper", num_json(u.upper)},
                       {"conclusive", u.conclusive}};
            text << "l1 " << fmt12(u.value) << "\n";
        } else {
            CriticalLambda s = upsilon_sup(f.x1, f.x2, 1000, f.order);
            j["l1"] = {{"sup", num_json(s.value)}, {"argmax_lambda", num_json(s.lambda)}};
            text << "l1 " << fmt12(s.value) << "\n";
        }
    }
    if (f.gain) {
        if (f.lambda.empty()) throw UsageError("--gain needs --lambda");
        BchGain g = bch_gain_upper(to_double(parse_rational(f.lambda)), cls, f.x1, f.x2, f.order);
        j["gain"] = bch_gain_json(g);
        j["bound"] = num_json(g.bound);
        text << "gain " << fmt12(g.gain_35 + g.gain_53) << "  bound " << fmt12(g.bound) << "\n";
    }
    if (f.critical) {
        if (f.x1 != f.x2) throw UsageError("--critical-lambda needs x1 = x2");
        CriticalLambda cl = critical_lambda(f.x1, 500, f.order);
        j["criticalLambda"] = {{"lambda", num_json(cl.lambda)}, {"mirror", num_json(1 - cl.lambda)}, {"value", num_json(cl.value)}};
        text << "critical lambda " << fmt12(cl.lambda) << " (and " << fmt12(1 - cl.lambda) << "), value " << fmt12(cl.value)
             << "\n";
    }
    if (f.scan_c2) {
        C2Scan s = c2_improved(cls);
        j["c2"] = {{"radius", num_json(s.s)},           {"margin", num_json(s.margin)},
                   {"sup_at_radius", num_json(s.sup_at_s)}, {"arg_lambda", num_json(s.arg_lambda)},
                   {"lambda_grid", s.lambda_grid},      {"reference", num_json(kC2)}};
        text << "improved radius " << fmt12(s.s) << " (margin " << fmt12(s.margin) << ")\n";
    }
    Output out(c);
    if (out.json()) out.emit_json("bch", j);
    else out.os() << text.str();
    return kExitOk;
}

int cmd_verify_convexity(const Common& c, double p, int n, long trials) {
    LpSpace s(n, p);
    SampleReport a = check_umd_sampled(s, trials, c.seed), b = check_umq_sampled(s, trials, c.seed);
    Output out(c);
    if (out.json()) out.emit_json("verify-convexity", {{"dixmier", sample_json(a)}, {"kleinian", sample_json(b)}});
    else
        for (const auto& r : {a, b})
            out.os() << r.pattern << ": p=" << fmt12(r.space.p) << " n=" << r.space.n << " trials=" << r.trials
                     << " violations=" << r.violations << " max_ratio=" << fmt12(r.max_ratio) << "\n";
    return a.ok() && b.ok() ? kExitOk : kExitFailed;
}

int cmd_verify(const Common& c, const std::vector<int>& only, bool verbose) {
    Output out(c);
    json results = json::array();
    bool all = true;
    run_acceptance(only, [&](const CriterionResult& r) {
        all = all && r.pass();
        if (out.json()) {
            results.push_back(criterion_json(r));
            return;
        }
        out.os() << format_result_line(r) << "\n";
        if (verbose || !r.pass())
            for (const auto& d : r.details) out.os() << "      " << d << "\n";
        out.os().flush();
    });
    if (out.json()) out.emit_json("verify", {{"criteria", results}, {"all_passed", all}});
    return all ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convergence-radius bounds for Magnus and BCH expansions in uniformly convex Banach algebras"};
    app.require_subcommand(1);
    Common common;

    auto* theta = app.add_subcommand("theta", "normalized universal norm of a permutation sum");
    int k = 0, a = -1, b = -1;
    add_common(theta, common);
    theta->add_option("--k", k, "total degree");
    theta->add_option("--a", a, "count before the marker");
    theta->add_option("--b", b, "count after the marker");

    auto* norm = app.add_subcommand("norm", "exact norm of a homogeneous noncommutative polynomial");
    std::string poly, poly_file;
    int mu = 0;
    std::vector<int> muab;
    bool certificate = false;
    add_common(norm, common);
    norm->add_option("--poly", poly, "polynomial such as \"Y1234 - 1/2*Y2143\"");
    norm->add_option("--poly-file", poly_file, "polynomial as JSON {\"terms\": [{\"word\": [..], \"coeff\": \"p/q\"}]}")
        ->check(CLI::ExistingFile);
    norm->add_option("--mu", mu, "use the permutation sum of this degree at --lambda");
    norm->add_option("--mu-ab", muab, "use the marked permutation sum with counts a b")->expected(2);
    norm->add_flag("--certificate", certificate, "include primal and dual LP certificates (json)");

    auto* kernel = app.add_subcommand("kernel", "resolvent estimating kernel");
    int kpoints = 200;
    add_common(kernel, common);
    kernel->add_option("--p", common.p, "p, the kernel has degree p-1")->capture_default_str();
    kernel->add_option("--points", kpoints, "samples on [-1,1] for csv")->capture_default_str();

    auto* radius = app.add_subcommand("radius", "spectral radius of the kernel operator");
    bool refine = false, eigvec = false;
    add_common(radius, common);
    radius->add_option("--p", common.p, "p, the kernel has degree p-1")->capture_default_str();
    radius->add_option("--n", common.n, "grid size")->capture_default_str();
    radius->add_option("--tol", common.tol, "bracket tolerance")->capture_default_str();
    radius->add_flag("--refine", refine, "grid refinement with extrapolation");
    radius->add_flag("--eigvec", eigvec, "include the eigenvector (json)");

    auto* bound = app.add_subcommand("bound", "convergence-radius bound");
    std::string method = "pth-root", variant = "cayley";
    int grid_points = 101;
    add_common(bound, common);
    bound->add_option("--method", method, "closed-form, eps, pth-root, log, crude-ratio, trivial-upper, ode, sicompar, ricompar, maglower")
        ->check(CLI::IsMember({"closed-form", "eps", "pth-root", "log", "crude-ratio", "trivial-upper", "ode",
                               "sicompar", "ricompar", "maglower"}))
        ->capture_default_str();
    bound->add_option("--variant", variant, "cayley or magnus (trivial-upper)")
        ->check(CLI::IsMember({"cayley", "magnus"}))
        ->capture_default_str();
    bound->add_option("--p", common.p, "p")->capture_default_str();
    bound->add_option("--n", common.n, "grid size")->capture_default_str();
    bound->add_option("--grid-points", grid_points, "lambda grid for log/maglower")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "lambda scan of w and the bound, csv");
    int spoints = 101;
    add_common(scan, common, false);
    common.format = "csv";
    scan->add_option("--p", common.p, "p")->capture_default_str();
    scan->add_option("--n", common.n, "grid size cap")->capture_default_str();
    scan->add_option("--points", spoints, "lambda points on [0,1]")->capture_default_str();

    auto* bch = app.add_subcommand("bch", "BCH threshold machinery");
    BchFlags bf;
    add_common(bch, common, false);
    bch->add_flag("--l1", bf.l1, "l1 norm of the resolvent product (sup over lambda unless --lambda)");
    bch->add_flag("--gain", bf.gain, "cross-term gain at --lambda");
    bch->add_flag("--scan-c2", bf.scan_c2, "improved threshold scan");
    bch->add_flag("--critical-lambda", bf.critical, "lambda maximizing the l1 norm");
    bch->add_option("--x1", bf.x1, "first scale")->capture_default_str();
    bch->add_option("--x2", bf.x2, "second scale")->capture_default_str();
    bch->add_option("--lambda", bf.lambda, "lambda");
    bch->add_option("--order", bf.order, "truncation order")->capture_default_str();

    auto* vc = app.add_subcommand("verify-convexity", "sampled checks of the operator inequalities on finite l_p");
    double vp = 2;
    int vn = 8;
    long trials = 10000;
    add_common(vc, common, false);
    vc->add_option("--p", vp, "exponent p")->capture_default_str();
    vc->add_option("--n", vn, "dimension")->capture_default_str();
    vc->add_option("--trials", trials, "trials")->capture_default_str();
    vc->add_option("--seed", common.seed, "seed")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the golden-constant suite");
    std::vector<int> only;
    bool verbose = false;
    add_common(verify, common, false);
    verify->add_option("--only", only, "criterion numbers");
    verify->add_flag("-v,--verbose", verbose, "print every check");

    // scan defaults to csv unless told otherwise
    common.format = "text";
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (scan->parsed() && scan->count("--format") == 0) common.format = "csv";

    try {
        if (theta->parsed()) return cmd_theta(common, k, a, b);
        if (norm->parsed()) return cmd_norm(common, poly, poly_file, mu, muab, certificate);
        if (kernel->parsed()) return cmd_kernel(common, kpoints);
        if (radius->parsed()) return cmd_radius(common, refine, eigvec);
        if (bound->parsed()) return cmd_bound(common, method, variant, grid_points);
        if (scan->parsed()) return cmd_scan(common, spoints);
        if (bch->parsed()) return cmd_bch(common, bf);
        if (vc->parsed()) return cmd_verify_convexity(common, vp, vn, trials);
        if (verify->parsed()) return cmd_verify(common, only, verbose);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}
