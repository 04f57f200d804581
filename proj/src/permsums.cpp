#include "magbound/permsums.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace magbound {

namespace {

void check_degree(int k, int max_degree) {
    if (k < 1 || k > max_degree)
        throw std::out_of_range("degree " + std::to_string(k) + " outside [1, " +
                                std::to_string(max_degree) + "]");
}

// Marked sequence (front?, σ..., back?) as doubled integers so the half markers stay exact.
AscentDescent marked_counts(const std::vector<int>& perm, int front2, int back2) {
    AscentDescent ad;
    int prev = front2;
    for (int v : perm) {
        int cur = 2 * v;
        if (prev != 0) (cur > prev ? ad.asc : ad.des)++;
        prev = cur;
    }
    if (back2 != 0) (back2 > prev ? ad.asc : ad.des)++;
    return ad;
}

RatPoly weight(const AscentDescent& ad) {
    return RatPoly::monomial(ad.asc) * RatPoly::linear_power(-1, 1, ad.des);
}

RatPoly abs_weight(const AscentDescent& ad) {
    return RatPoly::monomial(ad.asc) * RatPoly::linear_power(1, -1, ad.des);
}

NCPolyL marked_sum(int n, int front2, int back2) {
    NCPolyL out;
    for (const auto& perm : permutations(n)) out.add(perm, weight(marked_counts(perm, front2, back2)));
    return out;
}

RatPoly marked_l1(int n, int front2, int back2) {
    RatPoly out;
    for (const auto& perm : permutations(n)) out += abs_weight(marked_counts(perm, front2, back2));
    return out;
}

}  // namespace

std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

AscentDescent ascent_descent(const std::vector<Rational>& seq) {
    std::set<Rational> seen(seq.begin(), seq.end());
    if (seen.size() != seq.size()) throw std::invalid_argument("ascent_descent: entries must be distinct");
    AscentDescent ad;
    for (std::size_t i = 1; i < seq.size(); ++i) (seq[i - 1] < seq[i] ? ad.asc : ad.des)++;
    return ad;
}

NCPolyL mu_lambda(int k, int max_degree) {
    check_degree(k, max_degree);
    return marked_sum(k, 0, 0);
}

NCPolyL mu_ab(int a, int b, int max_degree) {
    if (a < 0 || b < 0) throw std::out_of_range("mu_ab: negative count");
    check_degree(a + b, max_degree);
    return marked_sum(a + b, 2 * a + 1, 0);
}

NCPolyL mu_abc(int a, int b, int c, int max_degree) {
    if (a < 0 || b < 0 || c < 0) throw std::out_of_range("mu_abc: negative count");
    int n = a + b + c;
    check_degree(n, max_degree);
    // back marker p − ½ − c with p = n + 1
    return marked_sum(n, 2 * a + 1, 2 * (n + 1 - c) - 1);
}

RatPoly mu_ab_l1(int a, int b) {
    if (a < 0 || b < 0 || a + b < 1) throw std::out_of_range("mu_ab_l1: bad counts");
    return marked_l1(a + b, 2 * a + 1, 0);
}

RatPoly mu_lambda_l1(int k) {
    if (k < 1) throw std::out_of_range("mu_lambda_l1: bad degree");
    return marked_l1(k, 0, 0);
}

}  // namespace magbound
