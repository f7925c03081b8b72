#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

#include "cutofflab/profiles.hpp"

using namespace cutofflab;

TEST_CASE("normal_cdf: center, tails, symmetry, reference value") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(9.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normal_cdf(-9.0) == doctest::Approx(0.0).epsilon(1e-12));
    // frozen 50-digit reference: Phi(1) = 0.84134474606854294859...
    CHECK(std::fabs(normal_cdf(1.0) - 0.8413447460685429) < 1e-12);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 100; ++i) {
        double z = dist(rng);
        CHECK(std::fabs(normal_cdf(z) + normal_cdf(-z) - 1.0) < 1e-12);
    }
}

TEST_CASE("profile_hypercube: limits and a hand value") {
    CHECK(profile_hypercube(40.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(profile_hypercube(-40.0) == doctest::Approx(1.0).epsilon(1e-12));
    // c = -ln 2 gives 2 Phi(1) - 1 = 0.68268949213708589717...
    CHECK(std::fabs(profile_hypercube(-std::log(2.0)) - 0.6826894921370859) < 1e-12);
}

TEST_CASE("profile_poisson_shuffle: oracle value at 0, limits, truncation stability") {
    // direct summation over k <= 60; frozen reference 0.32975303263304656751...
    double oracle = oracles::poisson_tv_direct(1.0, 2.0, 60);
    CHECK(std::fabs(profile_poisson_shuffle(0.0) - oracle) < 1e-13);
    CHECK(std::fabs(profile_poisson_shuffle(0.0) - 0.3297530326330466) < 1e-12);

    CHECK(profile_poisson_shuffle(40.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(profile_poisson_shuffle(-12.0) - 1.0) < 2e-9);
    CHECK(profile_poisson_shuffle(-12.0) <= 1.0);

    // doubling the truncation point moves nothing beyond 1e-12
    for (double c : {-1.0, 0.0, 1.5}) {
        double lambda = 1.0 + std::exp(-c);
        double longer = oracles::poisson_tv_direct(1.0, lambda, 400);
        CHECK(std::fabs(profile_poisson_shuffle(c) - longer) < 1e-12);
    }
    CHECK(std::fabs(tv_poisson(1.0, 2.0) -
                    oracles::poisson_tv_direct(1.0, 2.0, 200)) < 1e-13);
}

TEST_CASE("profile_bernoulli_laplace: quadrature oracle and closed-form point") {
    for (double c : {-1.0, 0.0, 1.0}) {
        double mu = std::exp(-2.0 * c);
        CHECK(std::fabs(profile_bernoulli_laplace(c) - oracles::normal_tv_quadrature(mu)) <
              1e-8);
    }
    // c = 0: 2 Phi(1/2) - 1 = 0.38292492254802620728...
    CHECK(std::fabs(profile_bernoulli_laplace(0.0) - 0.3829249225480262) < 1e-12);
    CHECK(profile_bernoulli_laplace(40.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("profile_bernoulli_laplace(c) equals profile_hypercube(2c)") {
    for (double c = -2.0; c <= 2.0 + 1e-9; c += 0.25)
        CHECK(profile_bernoulli_laplace(c) ==
              doctest::Approx(profile_hypercube(2.0 * c)).epsilon(1e-14));
}

TEST_CASE("profile_ramanujan: half at zero, degree handling") {
    for (int d : {3, 4, 10})
        CHECK(profile_ramanujan(0.0, d) == doctest::Approx(0.5).epsilon(1e-14));
    // d = 3: alpha = 1/(2 sqrt 6)
    double alpha = 1.0 / (2.0 * std::sqrt(6.0));
    CHECK(profile_ramanujan(1.0, 3) ==
          doctest::Approx(1.0 - normal_cdf(alpha)).epsilon(1e-14));
    CHECK(profile_ramanujan(60.0, 3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(profile_ramanujan(0.0, 2), ParameterError);
}

TEST_CASE("all closed-form profiles: range, monotonicity, finite modulus") {
    auto check_profile = [](const char* name, auto&& profile) {
        const int points = 200;
        double prev = 2.0;
        for (int i = 0; i < points; ++i) {
            double c = -4.0 + 8.0 * i / (points - 1);
            double v = profile(c);
            INFO(name << " at c = " << c);
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-12);
            CHECK(v <= prev + 1e-12);
            // empirical Lipschitz bound: these profiles all have |slope| < 2
            double h = 0.02;
            CHECK(std::fabs(profile(c + h) - v) <= 2.0 * h);
            prev = v;
        }
    };
    check_profile("hypercube", [](double c) { return profile_hypercube(c); });
    check_profile("poisson", [](double c) { return profile_poisson_shuffle(c); });
    check_profile("bernoulli-laplace", [](double c) { return profile_bernoulli_laplace(c); });
    check_profile("ramanujan(3)", [](double c) { return profile_ramanujan(c, 3); });
}

TEST_CASE("closed_form_profile dispatch") {
    CHECK(closed_form_profile("hypercube", 0.3) == profile_hypercube(0.3));
    CHECK(closed_form_profile("ramanujan", 0.3, 5) == profile_ramanujan(0.3, 5));
    CHECK_THROWS_AS(closed_form_profile("asep", 0.0), ParameterError);
}
