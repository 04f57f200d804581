#pragma once

#include "magbound/ncpoly.hpp"
#include "magbound/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace magbound {

// Closed interval of rationals; lo == hi marks an exact value.
struct Enclosure {
    Rational lo;
    Rational hi;

    static Enclosure point(const Rational& v) { return {v, v}; }
    bool exact() const { return lo == hi; }
    bool contains(double x) const { return lo.get_d() <= x && x <= hi.get_d(); }
    double mid() const { return Rational((lo + hi) / 2).get_d(); }
    double width() const { return Rational(hi - lo).get_d(); }
    Enclosure scaled(const Rational& s) const;  // s ≥ 0
};

// Norm class: plain Banach algebras (κ = 1) or the Kleinian-pattern class with cost κ = 2^{-1/q}.
class ConvexityClass {
public:
    static ConvexityClass plain();
    static ConvexityClass umq(const Rational& q);
    // Exact rational cost override, 1/2 ≤ κ ≤ 1.
    static ConvexityClass with_kappa(const Rational& kappa);

    bool is_plain() const { return kappa_lo_ == 1; }
    bool kappa_exact() const { return kappa_lo_ == kappa_hi_; }
    const Rational& kappa_lo() const { return kappa_lo_; }
    const Rational& kappa_hi() const { return kappa_hi_; }
    double kappa() const { return kappa_; }
    const std::optional<Rational>& q() const { return q_; }
    std::string label() const;

private:
    ConvexityClass(Rational lo, Rational hi, double k, std::optional<Rational> q)
        : kappa_lo_(std::move(lo)), kappa_hi_(std::move(hi)), kappa_(k), q_(std::move(q)) {}
    Rational kappa_lo_, kappa_hi_;
    double kappa_;
    std::optional<Rational> q_;
};

// Expression tree over generators built from products and the four-argument cross operation.
struct QuasiMonomial {
    enum class Kind { Leaf, Product, Xi };
    Kind kind = Kind::Leaf;
    int letter = 0;
    std::vector<QuasiMonomial> children;

    static QuasiMonomial leaf(int letter);
    static QuasiMonomial product(std::vector<QuasiMonomial> factors);
    static QuasiMonomial xi(QuasiMonomial s1, QuasiMonomial s2, QuasiMonomial s3, QuasiMonomial s4);
    static QuasiMonomial word(const Word& w);

    int xi_count() const;
    int degree() const;
    NCPolyQ eval() const;
    std::string to_string() const;
};

inline constexpr int kExhaustiveCap = 5;

// All quasi-monomials whose letters form exactly the given multiset, deduplicated by evaluated
// polynomial up to sign (keeping the cheapest tree). Throws above the exhaustive cap.
std::vector<QuasiMonomial> enumerate_quasimonomials(const std::vector<int>& generators);
std::vector<QuasiMonomial> enumerate_quasimonomials(int degree);  // distinct Y1..Yk

struct LPColumn {
    QuasiMonomial tree;
    NCPolyQ poly;
    int xi_count = 0;
};

struct LPInstance {
    std::vector<LPColumn> columns;
    NCPolyQ target;
    std::vector<Word> rows;
};

// Optimal solution at one fixed cost κ, with primal and dual certificates.
struct LPSolution {
    Rational kappa;
    Rational value;
    std::vector<Rational> weights;  // signed coefficient per column
    std::vector<Rational> dual;     // one per row
    std::vector<int> basis;         // column index, negative part encoded as −(index+1)
    int pivots = 0;

    // Exact check of primal feasibility, dual feasibility and zero duality gap.
    bool verify(const LPInstance& inst) const;
};

LPInstance build_lp(const NCPolyQ& target);
LPSolution solve_lp(const LPInstance& inst, const Rational& kappa);

struct NormResult {
    Enclosure value;
    // One instance per letter multiset of the target, with solutions at κ_lo and κ_hi.
    std::vector<LPInstance> instances;
    std::vector<LPSolution> at_lo;
    std::vector<LPSolution> at_hi;
    bool certified = false;
};

NormResult fa_norm_exact(const NCPolyQ& x, const ConvexityClass& cls);

// Feasible-decomposition bound: greedily subtract sign-aligned cross-terms.
Enclosure fa_norm_upper(const NCPolyQ& x, const ConvexityClass& cls,
                        const std::vector<QuasiMonomial>& cross_terms);

// (1/(a+b)!)·|μ_{a,b}(λ)| and (1/k!)·|μ_k(λ)| in the given class.
Enclosure theta_ab(int a, int b, const Rational& lambda, const ConvexityClass& cls);
Enclosure theta_k(int k, const Rational& lambda, const ConvexityClass& cls);

}  // namespace magbound
