#include "magbound/kernels.hpp"
#include "magbound/magnus.hpp"
#include "magbound/specrad.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace magbound;

namespace {

double dense_radius(const std::vector<double>& entries, int n) {
    Eigen::MatrixXd a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        entries.data(), n, n);
    return a.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd as_matrix(const OperatorGrid& g) {
    std::vector<double> d = g.dense();
    return Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d.data(), g.n(), g.n());
}

OperatorGrid from_eigen(const Eigen::MatrixXd& m) {
    std::vector<double> e(m.size());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e[i * m.cols() + j] = m(i, j);
    return OperatorGrid::from_matrix(static_cast<int>(m.rows()), e);
}

}  // namespace

TEST_CASE("constant and scaled identity grids") {
    OperatorGrid g = OperatorGrid::general([](double, double) { return 0.7; }, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) CHECK(g.entry(i, j) == doctest::Approx(0.7 / 16).epsilon(1e-15));
    RadiusResult r = power_iteration_hopf(g, 1e-12);
    CHECK(r.radius == doctest::Approx(0.7).epsilon(1e-14));
    std::vector<double> id(9, 0.0);
    for (int i = 0; i < 3; ++i) id[4 * i] = 2.5;
    RadiusResult s = power_iteration_hopf(OperatorGrid::from_matrix(3, id), 1e-12);
    CHECK(s.iterations <= 1);
    CHECK(s.lo == doctest::Approx(2.5));
    CHECK(s.hi == doctest::Approx(2.5));
    RadiusResult z = power_iteration_hopf(OperatorGrid::from_matrix(3, std::vector<double>(9, 0.0)), 1e-12);
    CHECK(z.radius == 0);
    CHECK(z.hi == 0);
}

TEST_CASE("two-valued Toeplitz grid of the degree-0 kernel") {
    Rational l(1, 3);
    TwoSidedKernel K(reduced_kernel(0, l, ConvexityClass::plain()));
    OperatorGrid g = discretize(K, 8);
    CHECK(g.is_toeplitz());
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double expect = j > i ? (1.0 / 3) / 8 : j < i ? (2.0 / 3) / 8 : 0.5 / 8;
            CHECK(g.entry(i, j) == doctest::Approx(expect).epsilon(1e-15));
        }
    RadiusResult r = power_iteration_hopf(discretize(K, 2048));
    CHECK(std::fabs(r.radius - 1 / (3 * std::log(2.0))) < 1e-5);
    CHECK(r.lo <= r.radius);
    CHECK(r.radius <= r.hi);
}

TEST_CASE("random nonnegative matrices: bracket contains the dense eigenvalue") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> e(64);
        for (double& x : e) x = u(rng);
        RadiusResult r = power_iteration_hopf(OperatorGrid::from_matrix(8, e), 1e-11);
        double ref = dense_radius(e, 8);
        CHECK(r.converged);
        CHECK(r.lo <= ref + 1e-12);
        CHECK(ref <= r.hi + 1e-12);
    }
}

TEST_CASE("brackets are nested and shrink at the averaging rate") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        double c0 = u(rng), c1 = u(rng), c2 = u(rng);
        OperatorGrid g =
            OperatorGrid::general([&](double s, double t) { return c0 + c1 * s * t + c2 * (s - t) * (s - t); }, 64);
        RadiusResult r = power_iteration_hopf(g, 1e-13, -1, true);
        REQUIRE(r.history.size() >= 2);
        double m = g.kernel_min(), M = g.kernel_max();
        for (std::size_t k = 1; k < r.history.size(); ++k) {
            CHECK(r.history[k].first >= r.history[k - 1].first);
            CHECK(r.history[k].second <= r.history[k - 1].second);
            double rate = std::pow((M - m) / (M + m), static_cast<double>(k)) * (M - m);
            CHECK(r.history[k].second - r.history[k].first <= rate * (1 + 1e-9) + 1e-15);
        }
    }
}

TEST_CASE("local radius sequence approaches the dense eigenvalue") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> e(32 * 32);
        for (double& x : e) x = u(rng);
        auto seq = local_radius_sequence(OperatorGrid::from_matrix(32, e), 20000);
        CHECK(std::fabs(seq.back() - dense_radius(e, 32)) < 1e-4);
    }
}

TEST_CASE("convolution-type kernels integrate exactly") {
    for (Rational kappa : {Rational(1, 2), Rational(3, 4), Rational(1)}) {
        TwoSidedKernel K(reduced_kernel(4, Rational(1, 2), ConvexityClass::with_kappa(kappa)));
        CHECK(convolution_radius(K) == (Rational(2, 3) + kappa / 3) / 32);
    }
    TwoSidedKernel K0(reduced_kernel(0, Rational(1, 2), ConvexityClass::plain()));
    CHECK(convolution_radius(K0) == Rational(1, 2));
    CHECK_THROWS(convolution_radius(TwoSidedKernel(reduced_kernel(2, Rational(1, 3), ConvexityClass::plain()))));
}

TEST_CASE("refined radius of the plain kernel and its eigenvector") {
    for (double lam : {0.2, 0.7}) {
        Rational l = from_double(lam);
        TwoSidedKernel K(reduced_kernel(0, l, ConvexityClass::plain()));
        RadiusResult r = radius_refined([&](int n) { return discretize(K, n); }, 1e-9, 1024, 4096);
        CHECK(std::fabs(r.radius - 1 / c_plain(lam)) < 1e-6);
        double mx = 0;
        std::vector<double> ref(r.eigvec.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            double t = (i + 0.5) / ref.size();
            ref[i] = std::pow((1 - lam) / lam, t);
            mx = std::max(mx, ref[i]);
        }
        double err = 0;
        for (std::size_t i = 0; i < ref.size(); ++i) err = std::max(err, std::fabs(r.eigvec[i] - ref[i] / mx));
        CHECK(err < 1e-4);
    }
}

TEST_CASE("radius is monotone under pointwise kernel order") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        auto k1 = [&](double s, double t) { return a + b * s * s + c * t; };
        auto k2 = [&](double s, double t) { return k1(s, t) + d * s * t; };
        double r1 = power_iteration_hopf(OperatorGrid::general(k1, 128), 1e-12).hi;
        double r2 = power_iteration_hopf(OperatorGrid::general(k2, 128), 1e-12).lo;
        CHECK(r1 <= r2 + 1e-12);
    }
}

TEST_CASE("grid refinement error shrinks") {
    TwoSidedKernel K(reduced_kernel(4, Rational(1, 3), ConvexityClass::umq(1)));
    std::vector<double> r;
    for (int n : {64, 128, 256, 512}) r.push_back(power_iteration_hopf(discretize(K, n), 1e-13).radius);
    for (std::size_t i = 2; i < r.size(); ++i) CHECK(std::fabs(r[i] - r[i - 1]) < std::fabs(r[i - 1] - r[i - 2]));
}

TEST_CASE("degree-5 kernel is dominated by the composed degree-0 and degree-4 kernels") {
    for (Rational l : {Rational(1, 3), Rational(2, 5)}) {
        ConvexityClass cls = ConvexityClass::umq(1);
        const int n = 256;
        TwoSidedKernel k0(reduced_kernel(0, l, cls)), k4(reduced_kernel(4, l, cls)), k5(reduced_kernel(5, l, cls));
        Eigen::MatrixXd a0 = as_matrix(discretize(k0, n)), a4 = as_matrix(discretize(k4, n));
        double r5 = power_iteration_hopf(discretize(k5, n), 1e-13).radius;
        double r04 = power_iteration_hopf(from_eigen(a0 * a4), 1e-13).radius;
        double r40 = power_iteration_hopf(from_eigen(a4 * a0), 1e-13).radius;
        CHECK(r5 <= r04 * (1 + 1e-6));
        CHECK(r5 <= r40 * (1 + 1e-6));
    }
}
