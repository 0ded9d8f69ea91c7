#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "d2d/closeness.hpp"
#include "support/quadrature.hpp"

using namespace d2d;

TEST_CASE("fit_gamma moment matching on known inputs") {
    auto law = fit_gamma(ContactStats{4, 10.0, 25.0});
    auto params = std::get<GammaParams>(law);
    CHECK(params.shape == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(params.scale == doctest::Approx(2.5).epsilon(1e-12));

    auto law2 = fit_gamma(ContactStats{3, 4.0, 8.0 / 3.0});
    auto params2 = std::get<GammaParams>(law2);
    CHECK(params2.shape == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(params2.scale == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("fit_gamma collapses zero variance to a point mass") {
    auto law = fit_gamma(ContactStats{1, 5.0, 0.0});
    CHECK(std::get<PointMass>(law).value == 5.0);
}

TEST_CASE("fit_gamma rejects nonpositive means and negative variance") {
    CHECK_THROWS_AS(fit_gamma(ContactStats{1, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_gamma(ContactStats{1, -2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_gamma(ContactStats{1, 2.0, -1.0}), std::invalid_argument);
}

TEST_CASE("fit_gamma reproduces the stats moments for randomized inputs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mean_dist(0.05, 100.0);
    std::uniform_real_distribution<double> ratio_dist(0.01, 10.0);
    for (int i = 0; i < 1000; ++i) {
        double m = mean_dist(rng);
        double v = ratio_dist(rng) * m * m;
        auto params = std::get<GammaParams>(fit_gamma(ContactStats{5, m, v}));
        CHECK(params.shape * params.scale == doctest::Approx(m).epsilon(1e-12));
        CHECK(params.shape * params.scale * params.scale == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("reg_lower_gamma closed forms") {
    CHECK(reg_lower_gamma(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
    CHECK(std::fabs(reg_lower_gamma(2.0, 1.0) - (1.0 - 2.0 * std::exp(-1.0))) < 1e-10);

    for (double x : {0.01, 0.3, 1.0, 2.5, 7.0, 30.0})
        CHECK(std::fabs(reg_lower_gamma(1.0, x) - (1.0 - std::exp(-x))) < 1e-10);
}

TEST_CASE("reg_lower_gamma boundary and limit behavior") {
    for (double a : {0.5, 1.0, 2.0, 4.0, 10.0}) {
        CHECK(reg_lower_gamma(a, 0.0) == 0.0);
        CHECK(reg_lower_gamma(a, 1e6) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("reg_lower_gamma rejects bad domains") {
    CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(reg_lower_gamma(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(reg_lower_gamma(std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("reg_lower_gamma agrees with the quadrature oracle") {
    for (double a : {0.5, 1.0, 2.0, 4.0, 10.0}) {
        for (double x : {0.0, 0.1, 1.0, 5.0, 20.0, 50.0}) {
            double got = reg_lower_gamma(a, x);
            double want = oracle::reg_lower_gamma(a, x);
            CHECK(std::fabs(got - want) <= 1e-9);
        }
    }
}

TEST_CASE("reg_lower_gamma is monotone in x and bounded") {
    for (double a : {0.5, 1.0, 3.0, 10.0}) {
        double prev = 0.0;
        for (double x = 0.0; x <= 40.0; x += 0.25) {
            double p = reg_lower_gamma(a, x);
            CHECK(p >= prev);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            prev = p;
        }
    }
}

TEST_CASE("closeness closed forms") {
    CHECK(std::fabs(closeness(GammaParams{1.0, 2.0}, 2.0) - std::exp(-1.0)) < 1e-10);
    CHECK(std::fabs(closeness(GammaParams{2.0, 1.0}, 1.0) - 2.0 * std::exp(-1.0)) < 1e-10);
}

TEST_CASE("closeness at zero threshold is one") {
    CHECK(closeness(GammaParams{3.0, 0.7}, 0.0) == 1.0);
    CHECK(closeness(PointMass{5.0}, 0.0) == 1.0);
}

TEST_CASE("closeness of a point mass is a step") {
    CHECK(closeness(PointMass{5.0}, 4.0) == 1.0);
    CHECK(closeness(PointMass{5.0}, 5.0) == 1.0);
    CHECK(closeness(PointMass{5.0}, 5.5) == 0.0);
}

TEST_CASE("closeness rejects negative thresholds") {
    CHECK_THROWS_AS(closeness(GammaParams{1.0, 1.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(closeness(PointMass{5.0}, -0.1), std::invalid_argument);
}

TEST_CASE("closeness is nonincreasing in the minimum contact time") {
    GammaParams params{2.3, 1.7};
    double prev = 1.0;
    for (double x = 0.0; x <= 30.0; x += 0.5) {
        double w = closeness(params, x);
        CHECK(w <= prev + 1e-15);
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
        prev = w;
    }
}

TEST_CASE("closeness matches the empirical tail of gamma samples") {
    std::mt19937_64 rng(77);
    struct Case {
        double shape, scale, x_min;
    };
    for (const auto& c : {Case{3.0, 2.0, 5.0}, Case{0.8, 4.0, 2.0}, Case{6.0, 0.5, 3.5}}) {
        std::gamma_distribution<double> dist(c.shape, c.scale);
        const int n = 100000;
        int tail = 0;
        for (int i = 0; i < n; ++i)
            if (dist(rng) >= c.x_min) ++tail;
        double w = closeness(GammaParams{c.shape, c.scale}, c.x_min);
        CHECK(std::fabs(double(tail) / n - w) < 0.015);
    }
}

TEST_CASE("min_contact_time is the size over rate ratio") {
    CHECK(min_contact_time(1e6, 1e6) == doctest::Approx(1.0));
    CHECK(min_contact_time(8e6, 2e6) == doctest::Approx(4.0));
    CHECK(min_contact_time(5e6, 2e6) == doctest::Approx(2.0 * min_contact_time(5e6, 4e6)));
}

TEST_CASE("min_contact_time rejects nonpositive inputs") {
    CHECK_THROWS_AS(min_contact_time(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(min_contact_time(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(min_contact_time(-1.0, 1.0), std::invalid_argument);
}
