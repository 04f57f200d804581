#include "magbound/convexity.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace magbound;

TEST_CASE("Clarkson modulus") {
    for (double q : {2.0, 3.0, 5.5}) {
        CHECK(clarkson_delta(2, q) == doctest::Approx(1));
        CHECK(clarkson_delta(1e-9, q) < 1e-12);
        double prev = 0;
        for (int i = 1; i <= 200; ++i) {
            double d = clarkson_delta(i / 100.0, q);
            CHECK(d > prev);
            prev = d;
        }
    }
    CHECK(clarkson_delta(1, 2) == doctest::Approx(1 - std::sqrt(3.0) / 2).epsilon(1e-14));
}

TEST_CASE("finite lp spaces") {
    LpSpace s3(4, 3), s15(4, 1.5), s2(4, 2);
    CHECK(s3.q() == doctest::Approx(3));
    CHECK(s3.q_prime() == doctest::Approx(1.5));
    CHECK(s15.q() == doctest::Approx(3));
    CHECK(s2.q() == doctest::Approx(2));
    Eigen::VectorXd v(4);
    v << 1, -2, 0, 2;
    CHECK(s3.norm(v) == doctest::Approx(std::cbrt(17.0)));
    CHECK(s2.norm(v) == doctest::Approx(3));
    for (std::uint64_t k = 0; k < 20; ++k) {
        Eigen::MatrixXd a = random_matrix(5, k);
        for (double p : {1.5, 2.0, 3.0}) {
            LpSpace s(5, p);
            CHECK(s.operator_norm_lower(a, k) <= s.operator_norm_upper(a));
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        CHECK(LpSpace(5, 2).operator_norm_upper(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-11));
    }
    CHECK(trial_seed(1, 2) != trial_seed(1, 3));
    CHECK(trial_seed(1, 2, 0) != trial_seed(1, 2, 1));
    CHECK(random_matrix(4, 9) == random_matrix(4, 9));
}

TEST_CASE("collapsed patterns stay below the halved product") {
    for (double p : {1.5, 2.0, 3.0}) {
        LpSpace s(5, p);
        double cap = std::pow(2.0, 1 / s.q()) / 2 + 1e-12;
        for (std::uint64_t k = 0; k < 50; ++k) {
            Eigen::MatrixXd X = random_matrix(5, 4 * k), Z = random_matrix(5, 4 * k + 1);
            CHECK(dixmier_ratio(s, X, X, Z, Z, k) <= cap);
            Eigen::MatrixXd S1 = random_matrix(5, 4 * k + 2), S3 = random_matrix(5, 4 * k + 3);
            CHECK(kleinian_ratio(s, S1, S1, S3, Z, k) <= cap);
        }
    }
}

TEST_CASE("commuting diagonal operators") {
    for (double p : {1.5, 2.0, 3.0}) {
        LpSpace s(6, p);
        for (std::uint64_t k = 0; k < 50; ++k) {
            Eigen::MatrixXd d[4];
            for (int i = 0; i < 4; ++i) d[i] = random_matrix(6, 10 * k + i).diagonal().asDiagonal();
            CHECK(kleinian_ratio(s, d[0], d[1], d[2], d[3], k) <= std::pow(2.0, 1 / s.q()) / 2 + 1e-12);
        }
    }
}

TEST_CASE("sampled inequalities hold with no violations") {
    for (double p : {2.0, 3.0, 1.5})
        for (int n : {4, 8}) {
            LpSpace s(n, p);
            SampleReport a = check_umd_sampled(s, 10000, 20260101), b = check_umq_sampled(s, 10000, 20260101);
            CHECK(a.ok());
            CHECK(b.ok());
            CHECK(a.max_ratio <= 1);
            CHECK(b.max_ratio <= 1);
            CHECK(a.trials == 10000);
        }
}

TEST_CASE("sampling is reproducible") {
    LpSpace s(6, 3);
    SampleReport a = check_umq_sampled(s, 500, 42), b = check_umq_sampled(s, 500, 42);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.worst_trial == b.worst_trial);
    CHECK(check_umq_sampled(s, 500, 43).max_ratio != a.max_ratio);
}
