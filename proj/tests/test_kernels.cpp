#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cutofflab/kernels.hpp"

using namespace cutofflab;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

bool close_rel(double a, double b, double rel, double abs_floor = 1e-300) {
    return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), 1e-30}) + abs_floor;
}

}  // namespace

TEST_CASE("scalar kernels match naive formulas") {
    std::mt19937_64 rng(42);
    auto a = random_vector(rng, 37, -2.0, 2.0);
    auto b = random_vector(rng, 37, -2.0, 2.0);

    double expect_dot = 0.0, expect_abs = 0.0, expect_diff = 0.0, expect_ssq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        expect_dot += a[i] * b[i];
        expect_abs += std::fabs(a[i]);
        expect_diff += std::fabs(a[i] - b[i]);
        expect_ssq += std::fabs(b[i]) * a[i] * a[i];
    }
    std::vector<double> w(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) w[i] = std::fabs(b[i]);

    CHECK(kernels::scalar::dot(a.data(), b.data(), a.size()) == doctest::Approx(expect_dot));
    CHECK(kernels::scalar::sum_abs(a.data(), a.size()) == doctest::Approx(expect_abs));
    CHECK(kernels::scalar::sum_abs_diff(a.data(), b.data(), a.size()) ==
          doctest::Approx(expect_diff));
    CHECK(kernels::scalar::weighted_ssq(w.data(), a.data(), a.size()) ==
          doctest::Approx(expect_ssq));
}

TEST_CASE("rate2_exp_sum and sq_diff_exp_sum reference semantics") {
    std::mt19937_64 rng(7);
    auto w = random_vector(rng, 19, 0.0, 3.0);
    auto r = random_vector(rng, 19, 0.0, 4.0);
    double s = 1.7;
    double expect = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        expect += w[i] * r[i] * r[i] * std::exp(-s * r[i]);
    CHECK(kernels::rate2_exp_sum(w.data(), r.data(), w.size(), s) == doctest::Approx(expect));

    double expect2 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double d = std::exp(-0.4 * r[i]) - std::exp(-2.9 * r[i]);
        expect2 += w[i] * d * d;
    }
    CHECK(kernels::sq_diff_exp_sum(w.data(), r.data(), w.size(), 0.4, 2.9) ==
          doctest::Approx(expect2));
}

TEST_CASE("backend dispatch reports a known backend") {
    auto b = kernels::active_backend();
    CHECK((b == kernels::Backend::Scalar || b == kernels::Backend::Avx2));
    CHECK(std::string(kernels::backend_name(b)).size() > 0);
}

#ifdef CUTOFFLAB_HAVE_AVX2_KERNELS

TEST_CASE("avx2 kernels agree with scalar reference") {
    if (!kernels::avx2_available()) return;
    std::mt19937_64 rng(2024);

    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4},
                          std::size_t{5}, std::size_t{64}, std::size_t{257}}) {
        auto a = random_vector(rng, n, -3.0, 3.0);
        auto b = random_vector(rng, n, -3.0, 3.0);
        auto w = random_vector(rng, n, 0.0, 2.0);
        auto r = random_vector(rng, n, 0.0, 6.0);

        CHECK(close_rel(kernels::avx2::dot(a.data(), b.data(), n),
                        kernels::scalar::dot(a.data(), b.data(), n), 1e-13));
        CHECK(close_rel(kernels::avx2::sum_abs(a.data(), n),
                        kernels::scalar::sum_abs(a.data(), n), 1e-13));
        CHECK(close_rel(kernels::avx2::sum_abs_diff(a.data(), b.data(), n),
                        kernels::scalar::sum_abs_diff(a.data(), b.data(), n), 1e-13));
        CHECK(close_rel(kernels::avx2::weighted_ssq(w.data(), a.data(), n),
                        kernels::scalar::weighted_ssq(w.data(), a.data(), n), 1e-13));
        for (double s : {0.0, 0.3, 2.0, 40.0, 400.0}) {
            CHECK(close_rel(kernels::avx2::rate2_exp_sum(w.data(), r.data(), n, s),
                            kernels::scalar::rate2_exp_sum(w.data(), r.data(), n, s), 1e-13));
            CHECK(close_rel(kernels::avx2::sq_diff_exp_sum(w.data(), r.data(), n, s, s + 1.3),
                            kernels::scalar::sq_diff_exp_sum(w.data(), r.data(), n, s, s + 1.3),
                            1e-13));
        }
    }
}

TEST_CASE("avx2 scaled_matvec agrees with scalar") {
    if (!kernels::avx2_available()) return;
    std::mt19937_64 rng(99);
    const std::size_t rows = 23, cols = 31;
    auto m = random_vector(rng, rows * cols, -1.0, 1.0);
    auto v = random_vector(rng, cols, -1.0, 1.0);
    auto scale = random_vector(rng, rows, 0.0, 1.0);
    std::vector<double> out_a(rows), out_s(rows);
    kernels::avx2::scaled_matvec(m.data(), rows, cols, v.data(), scale.data(), out_a.data());
    kernels::scalar::scaled_matvec(m.data(), rows, cols, v.data(), scale.data(), out_s.data());
    for (std::size_t i = 0; i < rows; ++i) CHECK(close_rel(out_a[i], out_s[i], 1e-13));

    kernels::avx2::scaled_matvec(m.data(), rows, cols, v.data(), nullptr, out_a.data());
    kernels::scalar::scaled_matvec(m.data(), rows, cols, v.data(), nullptr, out_s.data());
    for (std::size_t i = 0; i < rows; ++i) CHECK(close_rel(out_a[i], out_s[i], 1e-13));
}

TEST_CASE("avx2 vector exp matches std::exp across the negative range") {
    if (!kernels::avx2_available()) return;
    std::mt19937_64 rng(518);
    std::uniform_real_distribution<double> dist(-745.0, 1.0);
    const std::size_t n = 100000;
    std::vector<double> args(n), rates(n), ones(n, 1.0), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        args[i] = dist(rng);
        rates[i] = -args[i];  // exp_scale computes exp(-s * r) with s = 1
    }
    kernels::avx2::exp_scale(ones.data(), rates.data(), n, 1.0, out.data());
    for (std::size_t i = 0; i < n; ++i) {
        double expect = std::exp(args[i]);
        CHECK(close_rel(out[i], expect, 5e-15, 1e-300));
    }
    // saturation and exact points
    std::vector<double> edge_r = {750.0, 0.0, -0.5};
    std::vector<double> edge_a = {1.0, 1.0, 1.0};
    std::vector<double> edge_out(3);
    kernels::avx2::exp_scale(edge_a.data(), edge_r.data(), 3, 1.0, edge_out.data());
    CHECK(edge_out[0] == 0.0);
    CHECK(edge_out[1] == 1.0);
    CHECK(edge_out[2] == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
}

#endif  // CUTOFFLAB_HAVE_AVX2_KERNELS
