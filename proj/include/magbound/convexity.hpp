#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace magbound {

struct LpSpace {
    int n = 2;
    double p = 2;

    LpSpace(int dim, double exponent);
    double q() const;        // max(p, p/(p−1))
    double q_prime() const;  // min(p, p/(p−1))
    double norm(const Eigen::VectorXd& v) const;
    // Upper bound on the operator norm: exact (SVD) for p = 2, Schur test ‖A‖₁^{1/p}‖A‖_∞^{1−1/p} otherwise.
    double operator_norm_upper(const Eigen::MatrixXd& a) const;
    // Lower bound on the operator norm from basis vectors and the given number of random probes.
    double operator_norm_lower(const Eigen::MatrixXd& a, std::uint64_t seed, int probes = 8) const;
};

// 1 − (1 − (ε/2)^q)^{1/q}
double clarkson_delta(double eps, double q);

struct SampleReport {
    std::string pattern;  // "dixmier" or "kleinian"
    LpSpace space{2, 2};
    long trials = 0;
    long violations = 0;
    double max_ratio = 0;
    long worst_trial = -1;
    std::uint64_t seed = 0;

    bool ok() const { return violations == 0; }
};

// Independent generator per (seed, trial, stream).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0);
Eigen::MatrixXd random_matrix(int n, std::uint64_t key);

// Left side |((XZ+YZ+XW−YW)/4)v|_p over probe vectors against 2^{−1/q}·M(‖X‖,‖Y‖)·M(‖Z‖,‖W‖), M the q′-power mean.
double dixmier_ratio(const LpSpace& s, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Eigen::MatrixXd& Z,
                     const Eigen::MatrixXd& W, std::uint64_t probe_seed);
// Left side of the Kleinian pattern (S1S2S3S4+S2S1S3S4+S1S2S4S3−S2S1S4S3)/4 against 2^{−1/q}·Π‖S_i‖.
double kleinian_ratio(const LpSpace& s, const Eigen::MatrixXd& S1, const Eigen::MatrixXd& S2,
                      const Eigen::MatrixXd& S3, const Eigen::MatrixXd& S4, std::uint64_t probe_seed);

SampleReport check_umd_sampled(const LpSpace& space, long trials, std::uint64_t seed);
SampleReport check_umq_sampled(const LpSpace& space, long trials, std::uint64_t seed);

}  // namespace magbound
