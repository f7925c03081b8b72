#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// fixed-truncation series, Simpson quadrature, and explicit matrix-vector
// evolution. Expected values in the test files were frozen from these (and
// from 50-digit reference computations).

#include <cmath>
#include <functional>
#include <vector>

#include "cutofflab/chain.hpp"

namespace oracles {

// TV(Poisson(l1), Poisson(l2)) by direct summation over k = 0..k_max.
inline double poisson_tv_direct(double l1, double l2, int k_max) {
    double sum = 0.0;
    double log_fact = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) log_fact += std::log(static_cast<double>(k));
        double p1 = std::exp(-l1 + k * std::log(l1) - log_fact);
        double p2 = std::exp(-l2 + k * std::log(l2) - log_fact);
        sum += std::fabs(p1 - p2);
    }
    return 0.5 * sum;
}

// (1/2) integral |phi(x - mu) - phi(x)| dx by composite Simpson, split at the
// crossing point x = mu/2 where the integrand has a kink.
inline double normal_tv_quadrature(double mu, int panels_per_side = 20000) {
    auto phi = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::acos(-1.0));
    };
    auto integrand = [&](double x) { return std::fabs(phi(x - mu) - phi(x)); };
    auto simpson = [&](double a, double b, int n) {
        double h = (b - a) / (2 * n);
        double total = integrand(a) + integrand(b);
        for (int i = 1; i < 2 * n; ++i)
            total += integrand(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return total * h / 3.0;
    };
    const double mid = mu / 2.0;
    const double lo = mid - 12.0 - std::fabs(mu);
    const double hi = mid + 12.0 + std::fabs(mu);
    return 0.5 * (simpson(lo, mid, panels_per_side) + simpson(mid, hi, panels_per_side));
}

// Row of P^steps by repeated dense matrix-vector products.
inline std::vector<double> row_by_matrix_power(const cutofflab::ReversibleChain& chain,
                                               std::size_t x, int steps) {
    std::vector<double> v(chain.size, 0.0), next(chain.size, 0.0);
    v[x] = 1.0;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t y = 0; y < chain.size; ++y) {
            double total = 0.0;
            for (std::size_t z = 0; z < chain.size; ++z)
                total += v[z] * chain.transition(z, y);
            next[y] = total;
        }
        v.swap(next);
    }
    return v;
}

inline double tv_brute(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace oracles
