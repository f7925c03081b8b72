#include "cutofflab/profiles.hpp"

#include <cmath>

namespace cutofflab {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// log pmf of Poisson(lambda) at k, with the factorial accumulated by the
// caller as ln k!.
double poisson_log_pmf(double lambda, double k, double log_fact) {
    return -lambda + k * std::log(lambda) - log_fact;
}

}  // namespace

double tv_poisson(double lambda1, double lambda2) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw ParameterError("tv_poisson requires positive means");
    const double lmax = std::max(lambda1, lambda2);
    double log_fact = 0.0;
    double sum = 0.0;
    for (double k = 0.0;; k += 1.0) {
        double p1 = std::exp(poisson_log_pmf(lambda1, k, log_fact));
        double p2 = std::exp(poisson_log_pmf(lambda2, k, log_fact));
        sum += std::fabs(p1 - p2);
        // past the mode the pmf ratio is at most rho = lmax/(k+1), so each
        // tail is bounded by pmf(k) * rho/(1-rho)
        double rho = lmax / (k + 1.0);
        if (k > lmax && rho < 0.999 && (p1 + p2) * rho / (1.0 - rho) < 1e-14) break;
        if (k > 2.0 * lmax + 1e7)
            throw NumericalError("tv_poisson truncation did not converge");
        log_fact += std::log(k + 1.0);
    }
    // log-space pmf evaluation carries ~1e-9 relative error for extreme
    // means; the true value lies in [0, 1]
    return std::min(1.0, std::max(0.0, 0.5 * sum));
}

double tv_unit_normals(double mu1, double mu2) {
    return 2.0 * normal_cdf(std::fabs(mu1 - mu2) / 2.0) - 1.0;
}

double profile_hypercube(double c) {
    return 2.0 * normal_cdf(0.5 * std::exp(-c)) - 1.0;
}

double profile_poisson_shuffle(double c) {
    return tv_poisson(1.0, 1.0 + std::exp(-c));
}

double profile_bernoulli_laplace(double c) {
    return tv_unit_normals(std::exp(-2.0 * c), 0.0);
}

double profile_ramanujan(double c, int degree) {
    if (degree < 3)
        throw ParameterError("ramanujan profile requires degree d >= 3, got " +
                             std::to_string(degree));
    const double d = static_cast<double>(degree);
    const double alpha = std::pow(d - 2.0, 1.5) / (2.0 * std::sqrt(d * (d - 1.0)));
    return 1.0 - normal_cdf(alpha * c);
}

double closed_form_profile(const std::string& name, double c, int degree) {
    if (name == "hypercube") return profile_hypercube(c);
    if (name == "poisson-shuffle") return profile_poisson_shuffle(c);
    if (name == "bernoulli-laplace") return profile_bernoulli_laplace(c);
    if (name == "ramanujan") return profile_ramanujan(c, degree);
    throw ParameterError("unknown closed-form profile: " + name +
                         " (expected hypercube, poisson-shuffle, bernoulli-laplace or "
                         "ramanujan)");
}

}  // namespace cutofflab
