#pragma once

#include "magbound/ncpoly.hpp"
#include "magbound/rational.hpp"

#include <utility>
#include <vector>

namespace magbound {

inline constexpr int kDefaultMaxDegree = 8;

struct AscentDescent {
    int asc = 0;
    int des = 0;
};

// Counts strict rises and falls of consecutive entries; entries must be distinct.
AscentDescent ascent_descent(const std::vector<Rational>& seq);

// Σ_σ λ^asc(σ) (λ−1)^des(σ) Y_σ(1)…Y_σ(k).
NCPolyL mu_lambda(int k, int max_degree = kDefaultMaxDegree);

// Same sum with the boundary marker a+½ prepended; letters 1..a+b.
NCPolyL mu_ab(int a, int b, int max_degree = kDefaultMaxDegree);

// Markers a+½ in front and (a+b+c+1)−½−c at the end; letters 1..a+b+c.
NCPolyL mu_abc(int a, int b, int c, int max_degree = kDefaultMaxDegree);

// Σ_σ λ^asc (1−λ)^des over the same marked sequences: the ℓ¹ norm of mu_ab for λ ∈ [0,1].
RatPoly mu_ab_l1(int a, int b);
RatPoly mu_lambda_l1(int k);

// All permutations of {1..n} in lexicographic order.
std::vector<std::vector<int>> permutations(int n);

}  // namespace magbound
