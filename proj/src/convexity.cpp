#include "magbound/convexity.hpp"

#include "magbound/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace magbound {

namespace {

constexpr double kRoundoff = 1e-12;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double power_mean(double a, double b, double r) { return std::pow((std::pow(a, r) + std::pow(b, r)) / 2, 1 / r); }

template <class Ratio>
SampleReport run(const char* pattern, const LpSpace& space, long trials, std::uint64_t seed, Ratio ratio) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    std::vector<double> r = parallel_map<double>(static_cast<std::size_t>(trials), [&](std::size_t t) {
        std::uint64_t k = trial_seed(seed, t);
        return ratio(random_matrix(space.n, trial_seed(k, 0, 1)), random_matrix(space.n, trial_seed(k, 0, 2)),
                     random_matrix(space.n, trial_seed(k, 0, 3)), random_matrix(space.n, trial_seed(k, 0, 4)),
                     trial_seed(k, 0, 5));
    });
    SampleReport rep;
    rep.pattern = pattern;
    rep.space = space;
    rep.trials = trials;
    rep.seed = seed;
    for (long t = 0; t < trials; ++t) {
        if (r[t] > 1 + kRoundoff) ++rep.violations;
        if (r[t] > rep.max_ratio) {
            rep.max_ratio = r[t];
            rep.worst_trial = t;
        }
    }
    return rep;
}

}  // namespace

LpSpace::LpSpace(int dim, double exponent) : n(dim), p(exponent) {
    if (dim < 1) throw std::invalid_argument("LpSpace: dimension must be positive");
    if (!(exponent > 1) || !std::isfinite(exponent)) throw std::invalid_argument("LpSpace: p must lie in (1, inf)");
}

double LpSpace::q() const { return std::max(p, p / (p - 1)); }
double LpSpace::q_prime() const { return std::min(p, p / (p - 1)); }

double LpSpace::norm(const Eigen::VectorXd& v) const {
    if (p == 2) return v.norm();
    return std::pow(v.cwiseAbs().array().pow(p).sum(), 1 / p);
}

double LpSpace::operator_norm_upper(const Eigen::MatrixXd& a) const {
    if (p == 2) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        return svd.singularValues()(0) * (1 + kRoundoff);
    }
    double col = a.cwiseAbs().colwise().sum().maxCoeff();
    double row = a.cwiseAbs().rowwise().sum().maxCoeff();
    return std::pow(col, 1 / p) * std::pow(row, 1 - 1 / p) * (1 + kRoundoff);
}

double LpSpace::operator_norm_lower(const Eigen::MatrixXd& a, std::uint64_t seed, int probes) const {
    double best = 0;
    for (int j = 0; j < n; ++j) best = std::max(best, norm(a.col(j)));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (int k = 0; k < probes; ++k) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = nd(rng);
        best = std::max(best, norm(a * v) / norm(v));
    }
    return best;
}

double clarkson_delta(double eps, double q) {
    if (!(eps > 0 && eps <= 2)) throw std::out_of_range("clarkson_delta: eps must lie in (0, 2]");
    return 1 - std::pow(1 - std::pow(eps / 2, q), 1 / q);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
    return splitmix(splitmix(seed ^ splitmix(trial)) + stream);
}

Eigen::MatrixXd random_matrix(int n, std::uint64_t key) {
    std::mt19937_64 rng(key);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = nd(rng);
    return m;
}

double dixmier_ratio(const LpSpace& s, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Eigen::MatrixXd& Z,
                     const Eigen::MatrixXd& W, std::uint64_t probe_seed) {
    Eigen::MatrixXd lhs = (X * Z + Y * Z + X * W - Y * W) / 4;
    double rq = s.q_prime();
    double rhs = std::pow(2.0, -1 / s.q()) * power_mean(s.operator_norm_upper(X), s.operator_norm_upper(Y), rq) *
                 power_mean(s.operator_norm_upper(Z), s.operator_norm_upper(W), rq);
    double l = s.operator_norm_lower(lhs, probe_seed);
    return rhs == 0 ? (l == 0 ? 0 : INFINITY) : l / rhs;
}

double kleinian_ratio(const LpSpace& s, const Eigen::MatrixXd& S1, const Eigen::MatrixXd& S2,
                      const Eigen::MatrixXd& S3, const Eigen::MatrixXd& S4, std::uint64_t probe_seed) {
    Eigen::MatrixXd a = S1 * S2, b = S2 * S1, c = S3 * S4, d = S4 * S3;
    Eigen::MatrixXd lhs = (a * c + b * c + a * d - b * d) / 4;
    double rhs = std::pow(2.0, -1 / s.q()) * s.operator_norm_upper(S1) * s.operator_norm_upper(S2) *
                 s.operator_norm_upper(S3) * s.operator_norm_upper(S4);
    double l = s.operator_norm_lower(lhs, probe_seed);
    return rhs == 0 ? (l == 0 ? 0 : INFINITY) : l / rhs;
}

SampleReport check_umd_sampled(const LpSpace& space, long trials, std::uint64_t seed) {
    return run("dixmier", space, trials, seed,
               [&](const auto& a, const auto& b, const auto& c, const auto& d, std::uint64_t k) {
                   return dixmier_ratio(space, a, b, c, d, k);
               });
}

SampleReport check_umq_sampled(const LpSpace& space, long trials, std::uint64_t seed) {
    return run("kleinian", space, trials, seed,
               [&](const auto& a, const auto& b, const auto& c, const auto& d, std::uint64_t k) {
                   return kleinian_ratio(space, a, b, c, d, k);
               });
}

}  // namespace magbound
