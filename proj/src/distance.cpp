#include "cutofflab/distance.hpp"

#include <algorithm>
#include <cmath>

#include "cutofflab/kernels.hpp"

namespace cutofflab {

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw ParameterError("tv_distance: length mismatch (" + std::to_string(p.size()) +
                             " vs " + std::to_string(q.size()) + ")");
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0)
            throw ParameterError("tv_distance: negative entry at index " + std::to_string(i));
        sp += p[i];
        sq += q[i];
    }
    if (std::fabs(sp - 1.0) > 1e-9 || std::fabs(sq - 1.0) > 1e-9)
        throw ParameterError("tv_distance: inputs must sum to 1 within 1e-9 (got " +
                             format_double(sp) + ", " + format_double(sq) + ")");
    return 0.5 * kernels::sum_abs_diff(p.data(), q.data(), p.size());
}

namespace {

// Deviation of the time-t row from pi: dev(y) = pi(y) sum_{i>=2} f_i(x) f_i(y) decay_i.
double tv_from_coefficients(const SpectralDecomposition& dec, std::vector<double>& coeff) {
    coeff[0] = 0.0;  // drop the trivial eigenvalue: reconstruct Q - pi directly
    std::vector<double> dev(dec.size);
    kernels::scaled_matvec(dec.eigenfunctions.data(), dec.size, dec.size, coeff.data(),
                           dec.stationary.data(), dev.data());
    return 0.5 * kernels::sum_abs(dev.data(), dec.size);
}

}  // namespace

double d_continuous(const SpectralDecomposition& dec, std::size_t x, double t) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    if (t < 0.0) throw DomainError("d_continuous: time must be nonnegative");
    const std::size_t n = dec.size;
    std::vector<double> rates(n), coeff(n);
    for (std::size_t i = 0; i < n; ++i) rates[i] = 1.0 - dec.eigenvalues[i];
    kernels::exp_scale(dec.eigenfunctions.row(x), rates.data(), n, t, coeff.data());
    return tv_from_coefficients(dec, coeff);
}

double d_discrete(const SpectralDecomposition& dec, std::size_t x, double s) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    if (s < 0.0) throw DomainError("d_discrete: time must be nonnegative");
    const std::size_t n = dec.size;
    std::vector<double> coeff(n);
    const bool integer_s = (s == std::floor(s));
    for (std::size_t i = 0; i < n; ++i) {
        double beta = dec.eigenvalues[i];
        double pw;
        if (integer_s) {
            pw = std::pow(beta, s);
        } else if (beta < -1e-12) {
            throw DomainError("d_discrete at non-integer time requires a nonnegative "
                              "spectrum; use make_lazy");
        } else {
            pw = beta > 0.0 ? std::exp(s * std::log(beta)) : 0.0;
        }
        coeff[i] = dec.eigenfunctions(x, i) * pw;
    }
    return tv_from_coefficients(dec, coeff);
}

double d_weighted_birth_death(const ReversibleChain& chain, double t) {
    if (t < 0.0) throw DomainError("d_weighted_birth_death: time must be nonnegative");
    const std::size_t n = chain.size;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (chain.transition(x, y) != 0.0 &&
                (y > x + 1 || x > y + 1))
                throw ContractError("d_weighted_birth_death expects a birth-death "
                                    "(tridiagonal) chain, got " + chain.label);

    std::vector<double> up(n, 0.0), down(n, 0.0), stay(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (j + 1 < n) up[j] = chain.transition(j, j + 1);
        if (j > 0) down[j] = chain.transition(j, j - 1);
        stay[j] = chain.transition(j, j);
    }

    std::vector<double> v(n, 0.0), next(n, 0.0), acc(n, 0.0);
    v[0] = 1.0;
    const double log_t = t > 0.0 ? std::log(t) : 0.0;
    double log_fact = 0.0;  // ln k!
    double mass = 0.0;
    const double k_cap = t + 50.0 * std::sqrt(t + 1.0) + 200.0;
    for (double k = 0.0;; k += 1.0) {
        double log_w = t == 0.0 ? (k == 0.0 ? 0.0 : -1e9) : -t + k * log_t - log_fact;
        double w = log_w > -745.0 ? std::exp(log_w) : 0.0;
        if (w > 0.0) {
            for (std::size_t j = 0; j < n; ++j) acc[j] += w * v[j];
            mass += w;
        }
        // past the mode the weights decay superexponentially; once they are
        // dead the remaining Poisson tail is far below 1e-14
        if (k >= t && w < 1e-17) {
            if (mass < 1.0 - 1e-10)
                throw NumericalError("uniformization mass " + format_double(mass) +
                                     " did not reach 1");
            break;
        }
        if (k > k_cap)
            throw NumericalError("uniformization did not accumulate unit mass by k = " +
                                 format_double(k));
        // next = v P for the tridiagonal transition
        for (std::size_t j = 0; j < n; ++j) {
            double s = v[j] * stay[j];
            if (j > 0) s += v[j - 1] * up[j - 1];
            if (j + 1 < n) s += v[j + 1] * down[j + 1];
            next[j] = s;
        }
        v.swap(next);
        log_fact += std::log(k + 1.0);
    }
    return 0.5 * kernels::sum_abs_diff(acc.data(), chain.stationary.data(), n);
}

double mixing_time(const SpectralDecomposition& dec, std::size_t x, double eps,
                   TimeConvention convention) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("mixing_time: eps must be in (0,1)");
    const bool discrete = convention == TimeConvention::Discrete;
    auto d = [&](double t) {
        return discrete ? d_discrete(dec, x, t) : d_continuous(dec, x, t);
    };
    if (d(0.0) <= eps) return 0.0;

    double hi = 1.0;
    int guard = 0;
    while (d(hi) > eps) {
        hi *= 2.0;
        if (++guard > 200)
            throw NumericalError("mixing_time: distance never dropped below eps");
    }
    if (discrete) {
        // least integer t with d(t) <= eps
        double lo = hi / 2.0;
        while (hi - lo > 1.0) {
            double mid = std::floor((lo + hi) / 2.0);
            (d(mid) <= eps ? hi : lo) = mid;
        }
        return hi;
    }
    double lo = hi / 2.0;
    if (hi == 1.0) lo = 0.0;
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (d(mid) <= eps ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

L2Check l2_difference_check(const SpectralDecomposition& dec, std::size_t x, double s1,
                            double s2) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    if (s1 < 0.0 || s2 < s1)
        throw ParameterError("l2_difference_check requires 0 <= s1 <= s2");
    if (s1 == s2) return {0.0, 0.0};

    const std::size_t n = dec.size;
    std::vector<double> rates(n), weights(n);
    const double* fx = dec.eigenfunctions.row(x);
    for (std::size_t i = 0; i < n; ++i) {
        rates[i] = 1.0 - dec.eigenvalues[i];
        weights[i] = fx[i] * fx[i];
    }
    // i = 1 contributes exp(0)-exp(0) = 0 to both routes; keep the sum from i>=2.
    L2Check result;
    result.spectral = kernels::sq_diff_exp_sum(weights.data() + 1, rates.data() + 1, n - 1,
                                               s1, s2);

    std::vector<double> c1(n), c2(n), diff(n), u(n);
    kernels::exp_scale(fx, rates.data(), n, s1, c1.data());
    kernels::exp_scale(fx, rates.data(), n, s2, c2.data());
    diff[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) diff[i] = c1[i] - c2[i];
    // u(y) = (Q^{s1} - Q^{s2})(x, y) / pi(y); direct = sum_y pi(y) u(y)^2
    kernels::scaled_matvec(dec.eigenfunctions.data(), n, n, diff.data(), nullptr, u.data());
    result.direct = kernels::weighted_ssq(dec.stationary.data(), u.data(), n);

    if (std::fabs(result.direct - result.spectral) >
        1e-8 * std::max(1.0, result.direct))
        throw NumericalError("L2 identity violated: direct = " + format_double(result.direct) +
                             ", spectral = " + format_double(result.spectral));
    return result;
}

void validate_profile(const ProfileCurve& curve) {
    if (curve.c_grid.size() != curve.values.size())
        throw InvariantError("profile grid/value length mismatch");
    for (std::size_t i = 0; i + 1 < curve.c_grid.size(); ++i)
        if (!(curve.c_grid[i] < curve.c_grid[i + 1]))
            throw InvariantError("profile c-grid is not strictly increasing");
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        double v = curve.values[i];
        if (v < -1e-12 || v > 1.0 + 1e-12)
            throw InvariantError("profile value " + format_double(v) + " outside [0,1] at c = " +
                                 format_double(curve.c_grid[i]));
        if (i > 0 && v > curve.values[i - 1] + 1e-9)
            throw InvariantError("profile increases along the grid at c = " +
                                 format_double(curve.c_grid[i]));
    }
}

}  // namespace cutofflab
