#pragma once

#include "magbound/ncpoly.hpp"
#include "magbound/ratpoly.hpp"
#include "magbound/umqnorm.hpp"

#include <array>
#include <string>
#include <vector>

namespace magbound {

inline constexpr double kC2 = 2.89847930;
inline constexpr int kDefaultBchOrder = 24;

// c_n(λ), n = 1..N, of u/(1+(1−λ)u) with u = e^x − 1.
struct ResolventSeries {
    std::vector<LambdaPoly> c;  // c[0] is c_1
    const LambdaPoly& operator[](int n) const { return c.at(n - 1); }
    int order() const { return static_cast<int>(c.size()); }
};

ResolventSeries resolvent_series(int N);

// Numeric c_1..c_N at one λ.
std::vector<double> resolvent_coeffs(double lambda, int N);

struct SeriesSum {
    double value = 0;   // truncated sum
    double tail = 0;    // empirical geometric majorant of the remainder
    bool conclusive = true;
};

// Σ_{n≤N} |c_n(λ)| x^n with tail.
SeriesSum abs_resolvent_sum(double lambda, double x, int N = kDefaultBchOrder);

struct UpsilonValue {
    double value = 0;
    double upper = 0;  // value + tail contribution
    bool conclusive = true;
};

// λ(1−λ)·A(x1)·A(x2) with A(x) = Σ|c_n(λ)| xⁿ.
UpsilonValue upsilon_l1(double lambda, double x1, double x2, int N = kDefaultBchOrder);

// Words of Υⁿ with Y₁-degree d1 and Y₂-degree d2; coefficient Π c_{i_k} c_{j_k}.
// The factor λⁿ(1−λ)ⁿ x₁^{d1} x₂^{d2} is left out.
NCPolyL upsilon_power_component(int n, int d1, int d2);

// Y1Y2·Ξ(Y2,Y1,Y2Y1,Y2)·Y2 and its mirror image for the (5,3) component.
QuasiMonomial bch_cross_term_35();
QuasiMonomial bch_cross_term_53();

// Reverse every word and swap Y1 ↔ Y2.
template <class C>
NCPoly<C> mirror(const NCPoly<C>& p) {
    NCPoly<C> out;
    for (const auto& [w, c] : p.terms()) {
        Word r(w.rbegin(), w.rend());
        for (int& l : r) l = 3 - l;
        out.add(r, c);
    }
    return out;
}

struct AlignmentCheck {
    std::array<double, 4> coeffs{};  // component coefficients on the cross-term support
    std::array<int, 4> cross_signs{};
    bool aligned = false;
    double min_abs = 0;
};

AlignmentCheck check_alignment_35(double lambda);

struct BchGain {
    double l1 = 0;        // |Υ³|_ℓ¹ upper value (including tail)
    double gain_35 = 0;
    double gain_53 = 0;
    double bound = 0;     // l1 − gains
    bool aligned = false;
    bool conclusive = true;
    std::string diagnostic;
};

BchGain bch_gain_upper(double lambda, const ConvexityClass& cls, double x1, double x2, int N = kDefaultBchOrder);

struct CriticalLambda {
    double lambda = 0;  // in [0, 1/2]
    double value = 0;
};

// argmax over λ ∈ [0,1/2] of upsilon_l1(λ, x, x).
CriticalLambda critical_lambda(double x, int grid = 500, int N = kDefaultBchOrder);

// sup over λ ∈ [0,1] of upsilon_l1(λ, x1, x2).
CriticalLambda upsilon_sup(double x1, double x2, int grid = 1000, int N = kDefaultBchOrder);

struct C2Scan {
    double s = 0;          // improved radius
    double margin = 0;     // s − C₂
    double sup_at_s = 0;   // sup_λ bound^{1/3} at s
    double arg_lambda = 0;
    int lambda_grid = 0;
    int bisections = 0;
};

// sup over λ ∈ [0, 1/2] of bch_gain_upper(λ, cls, s/2, s/2)^{1/3}.
std::pair<double, double> bch_sup_root(double s, const ConvexityClass& cls, int grid, int N = kDefaultBchOrder);

// Largest s with sup_λ bound^{1/3} < 1 by bisection in s to the given tolerance.
C2Scan c2_improved(const ConvexityClass& cls, int lambda_grid = 400, double s_tol = 1e-7);

}  // namespace magbound
