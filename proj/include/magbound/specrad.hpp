#pragma once

#include "magbound/kernels.hpp"
#include "magbound/rational.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace magbound {

// n×n nonnegative matrix approximating an integral operator on [0,1] at midpoint nodes.
class OperatorGrid {
public:
    // Toeplitz fill from a kernel of t_j − t_i; the diagonal takes the mean of the one-sided limits.
    static OperatorGrid toeplitz(const std::function<double(double)>& kernel, double right_at_zero,
                                 double left_at_zero, int n);
    static OperatorGrid general(const std::function<double(double, double)>& kernel, int n);
    // Matrix given directly (row-major), no 1/n scaling.
    static OperatorGrid from_matrix(int n, std::vector<double> entries);

    int n() const { return n_; }
    const std::vector<double>& nodes() const { return nodes_; }
    bool is_toeplitz() const { return toeplitz_; }
    double entry(int i, int j) const;
    // Bounds of n·A[i][j]; these play the role of the kernel bounds m ≤ K ≤ M.
    double kernel_min() const { return kmin_; }
    double kernel_max() const { return kmax_; }

    void apply(const std::vector<double>& v, std::vector<double>& out) const;
    // Matrix entries as a dense row-major array.
    std::vector<double> dense() const;

private:
    struct FftPlan;
    int n_ = 0;
    bool toeplitz_ = false;
    double scale_ = 1.0;
    std::vector<double> nodes_;
    std::vector<double> symbol_;  // Toeplitz: entry(i,j) = symbol_[j − i + n − 1]
    std::vector<double> matrix_;  // general: row-major
    double kmin_ = 0, kmax_ = 0;
    std::shared_ptr<FftPlan> fft_;
    void finish();
};

OperatorGrid discretize(const TwoSidedKernel& kernel, int n);

struct RadiusResult {
    double radius = 0;
    double lo = 0, hi = 0;  // enclosing bracket
    int iterations = 0;
    int n = 0;
    bool converged = false;
    bool hopf_rate_applicable = false;  // kernel bounded below by a positive constant
    std::vector<double> eigvec;          // normalized to max 1
    std::vector<std::pair<double, double>> history;  // raw per-iteration brackets
    std::string warning;
};

inline constexpr int kDefaultGridSize = 2048;
inline constexpr double kDefaultTol = 1e-8;

RadiusResult power_iteration_hopf(const OperatorGrid& grid, double tol = kDefaultTol, int max_iter = -1,
                                  bool keep_history = false);

// Exact radius ∫₀¹ K for a kernel of convolution type.
Rational convolution_radius(const TwoSidedKernel& kernel);

// Runs the grid at n, 2n, 4n, … and Richardson-extrapolates the midpoints (h² error model).
RadiusResult radius_refined(const std::function<OperatorGrid(int)>& make_grid, double tol = 1e-9,
                            int n0 = kDefaultGridSize, int max_n = 4 * kDefaultGridSize);

// ((1/n)·⟨1, A^k 1⟩)^{1/k} for k = 1..steps.
std::vector<double> local_radius_sequence(const OperatorGrid& grid, int steps);

}  // namespace magbound
