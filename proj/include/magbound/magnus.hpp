#pragma once

#include "magbound/kernels.hpp"
#include "magbound/rational.hpp"
#include "magbound/specrad.hpp"
#include "magbound/umqnorm.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace magbound {

enum class BoundMethod { ClosedForm, PthRootKernel, Ode, CrudeRatio, TrivialUpper, LogScan, Sicompar, Ricompar };

std::string method_tag(BoundMethod m);

struct BoundReport {
    std::optional<double> lambda;
    std::optional<std::pair<double, double>> lambda_range;
    std::string cls;  // class label
    BoundMethod method = BoundMethod::ClosedForm;
    std::optional<double> lower;
    std::optional<double> upper;
    std::map<std::string, std::string> meta;  // how the numbers were obtained

    bool consistent() const { return !lower || !upper || *lower <= *upper; }
};

// Radius 1/w of the plain resolvent series: log((1−λ)/λ)/(1−2λ), 2 at λ = 1/2, +∞ at the ends.
double c_plain(double lambda);
// √(π² + log²(λ/(1−λ))), the general ℓ¹ radius.
double c_eps(double lambda);

struct Correction {
    int degree;
    Rational gap;  // ≥ 0, subtracted from the coefficient of x^degree
};

// Θ_1..Θ_N from (k+1)Θ_{k+1} = Θ_k + λ(1−λ)Σ Θ_jΘ_{k−j}, each coefficient lowered by its gap.
std::vector<Rational> euler_coeffs(const Rational& lambda, int N, const std::vector<Correction>& corrections = {});

struct OdeResult {
    double blowup = 0;
    double x_switch = 0;  // abscissa where the analytic tail takes over
    double tail = 0;
    int steps = 0;
    bool finite = true;
};

// Blow-up point of Θ' = (1+λΘ)(1+(1−λ)Θ) − Σ gap·k·x^{k−1}, Θ(0) = 0.
OdeResult ode_blowup(double lambda, const std::vector<Correction>& corrections = {}, double threshold = 1e6,
                     double rtol = 1e-12);

// Gap Θ_k(plain) − Θ_k(class) at the given degree, as a correction term.
Correction degree_gap(int degree, const Rational& lambda, const ConvexityClass& cls);

struct KernelRadius {
    double radius = 0;
    double lo = 0, hi = 0;
    bool exact = false;  // convolution case
    bool converged = true;
    std::string warning;
};

KernelRadius kernel_radius(int degree, const Rational& lambda, const ConvexityClass& cls, int n0 = kDefaultGridSize,
                           double tol = 1e-9);

// (1/r)^{1/p} with r the spectral radius of the degree p−1 kernel.
BoundReport c_bound_pth_root(const Rational& lambda, int p, const ConvexityClass& cls, int n0 = kDefaultGridSize);

struct LogScanOptions {
    int grid_points = 101;  // on [0, 1/2]
    double lambda_tol = 1e-6;
    int n0 = 512;
};

// min over λ of the p-th-root bound, via max of the kernel radius over [0, 1/2].
BoundReport c_log_bound(int p, const ConvexityClass& cls, const LogScanOptions& opt = {});

// sup over t ∈ [0,1] of the class kernel over the plain kernel.
double kernel_ratio_sup(int degree, const Rational& lambda, const ConvexityClass& cls);

// 1/(w·S^{1/p}) with w the plain radius reciprocal and S the kernel ratio supremum.
BoundReport crude_ratio_bound(const Rational& lambda, int p, const ConvexityClass& cls);

enum class TrivialVariant { Cayley, Magnus };

BoundReport upper_trivial(const ConvexityClass& cls, TrivialVariant variant, double lambda = 0.5);

BoundReport sicompar_bound(const Rational& lambda, int p, const ConvexityClass& cls);
BoundReport ricompar_bound(const Rational& lambda, int p, const ConvexityClass& cls);

struct RatioFloorScan {
    double min_ratio = 0;
    double arg_lambda = 0;
    double arg_t = 0;
    double step = 0;
    long samples = 0;
};

// Minimum of B(λ,t)/K₄(λ,t) over λ-grid points in [lo, hi] (skipping the open band (skip_lo, skip_hi) if given)
// and t ∈ [−1, 1], both with the given step.
RatioFloorScan ratio_floor_scan(double lo, double hi, double step, std::optional<std::pair<double, double>> skip = {});

// 2/(3/4 + κ/4)^{1/5}
double maglower_floor(const ConvexityClass& cls);

// min over a λ grid on (0, 1/2] of the crude ratio bound at p = 5.
BoundReport maglower_assembled(const ConvexityClass& cls, int grid_points = 201);

// Lipschitz check |C(λ1) − C(λ2)| ≤ |logit λ1 − logit λ2|.
bool continuity_consistent(double lambda1, double c1, double lambda2, double c2, double slack = 1e-9);

}  // namespace magbound
