#include "cutofflab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cutofflab/distance.hpp"
#include "cutofflab/kernels.hpp"
#include "cutofflab/parallel.hpp"

namespace cutofflab {

const char* to_string(ConditionId id) {
    switch (id) {
        case ConditionId::Cond: return "cond";
        case ConditionId::Cond2: return "cond2";
        case ConditionId::Cond3: return "cond3";
        case ConditionId::Cond4: return "cond4";
    }
    return "?";
}

ConditionId condition_from_string(const std::string& name) {
    if (name == "cond") return ConditionId::Cond;
    if (name == "cond2") return ConditionId::Cond2;
    if (name == "cond3") return ConditionId::Cond3;
    if (name == "cond4") return ConditionId::Cond4;
    throw ParameterError("unknown condition id: " + name +
                         " (expected cond, cond2, cond3 or cond4)");
}

bool condition_is_discrete(ConditionId id) {
    return id == ConditionId::Cond2 || id == ConditionId::Cond4;
}

bool condition_is_transitive(ConditionId id) {
    return id == ConditionId::Cond3 || id == ConditionId::Cond4;
}

namespace {

constexpr double kNegativeSpectrumTol = 1e-12;

double evaluation_time(double t_n, double w_n, double c) {
    double s = t_n + c * w_n;
    if (s < 0.0)
        throw DomainError("condition evaluation time t_n + c w_n = " + format_double(s) +
                          " is negative");
    return s;
}

// weights[i] <- f_i(x)^2 (or 1 for the transitive form), restricted to i >= 2.
void start_weights(const SpectralDecomposition& dec, std::size_t x, bool transitive,
                   std::vector<double>& weights) {
    weights.resize(dec.size - 1);
    const double* fx = dec.eigenfunctions.row(x);
    for (std::size_t i = 1; i < dec.size; ++i)
        weights[i - 1] = transitive ? 1.0 : fx[i] * fx[i];
}

void check_gap(const SpectralDecomposition& dec) {
    if (dec.size > 1 && dec.eigenvalues[1] > 1.0 - kNegativeSpectrumTol)
        throw ContractError("beta_2 = 1 within tolerance: chain is not irreducible");
}

double cond_continuous_impl(const SpectralDecomposition& dec, std::size_t x, bool transitive,
                            double t_n, double w_n, double c) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    check_gap(dec);
    const double s = evaluation_time(t_n, w_n, c);
    std::vector<double> weights, rates(dec.size - 1);
    start_weights(dec, x, transitive, weights);
    for (std::size_t i = 1; i < dec.size; ++i) rates[i - 1] = 1.0 - dec.eigenvalues[i];
    return w_n * w_n *
           kernels::rate2_exp_sum(weights.data(), rates.data(), rates.size(), 2.0 * s);
}

double cond_discrete_impl(const SpectralDecomposition& dec, std::size_t x, bool transitive,
                          double t_n, double w_n, double c) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    check_gap(dec);
    const double s = evaluation_time(t_n, w_n, c);
    std::vector<double> weights, logs;
    start_weights(dec, x, transitive, weights);
    std::vector<double> w_used, r_used;
    for (std::size_t i = 1; i < dec.size; ++i) {
        double beta = dec.eigenvalues[i];
        if (beta < -kNegativeSpectrumTol)
            throw DomainError("discrete condition requires a nonnegative spectrum "
                              "(beta_min = " + format_double(beta) + "); use make_lazy");
        if (beta <= 0.0) continue;  // log^2(b) b^{2s} -> 0 as b -> 0
        w_used.push_back(weights[i - 1]);
        r_used.push_back(-std::log(beta));
    }
    double sum = kernels::rate2_exp_sum(w_used.data(), r_used.data(), w_used.size(), 2.0 * s);
    return w_n * std::sqrt(sum);
}

// Analytic spectra evaluate in log space so cluster weights like C(n,i) never
// overflow on the way into the sum.
double cond_analytic_impl(const AnalyticSpectrum& spec, bool discrete, double t_n, double w_n,
                          double c) {
    const double s = evaluation_time(t_n, w_n, c);
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.clusters(); ++i) {
        if (spec.rates[i] <= 0.0) continue;  // trivial eigenvalue
        double r;
        if (discrete) {
            if (spec.betas[i] < -kNegativeSpectrumTol)
                throw DomainError("discrete condition requires a nonnegative spectrum");
            if (spec.betas[i] <= 0.0) continue;
            r = -std::log1p(-spec.rates[i]);  // -log(beta)
        } else {
            r = spec.rates[i];
        }
        double log_term = spec.log_weights[i] - 2.0 * s * r + 2.0 * std::log(r);
        if (log_term > -745.0) sum += std::exp(log_term);
    }
    return discrete ? w_n * std::sqrt(sum) : w_n * w_n * sum;
}

void require_transitive(bool transitive, const std::string& label) {
    if (!transitive)
        throw ContractError("transitive condition requested for non-transitive chain " + label);
}

}  // namespace

double cond_continuous(const SpectralDecomposition& dec, std::size_t x, double t_n, double w_n,
                       double c) {
    return cond_continuous_impl(dec, x, false, t_n, w_n, c);
}

double cond_continuous(const AnalyticSpectrum& spec, double t_n, double w_n, double c) {
    return cond_analytic_impl(spec, false, t_n, w_n, c);
}

double cond_continuous_transitive(const SpectralDecomposition& dec, double t_n, double w_n,
                                  double c) {
    require_transitive(dec.transitive, dec.label);
    return cond_continuous_impl(dec, 0, true, t_n, w_n, c);
}

double cond_continuous_transitive(const AnalyticSpectrum& spec, double t_n, double w_n,
                                  double c) {
    require_transitive(spec.transitive, spec.label);
    return cond_analytic_impl(spec, false, t_n, w_n, c);
}

double cond_discrete(const SpectralDecomposition& dec, std::size_t x, double t_n, double w_n,
                     double c) {
    return cond_discrete_impl(dec, x, false, t_n, w_n, c);
}

double cond_discrete(const AnalyticSpectrum& spec, double t_n, double w_n, double c) {
    return cond_analytic_impl(spec, true, t_n, w_n, c);
}

double cond_discrete_transitive(const SpectralDecomposition& dec, double t_n, double w_n,
                                double c) {
    require_transitive(dec.transitive, dec.label);
    return cond_discrete_impl(dec, 0, true, t_n, w_n, c);
}

double cond_discrete_transitive(const AnalyticSpectrum& spec, double t_n, double w_n, double c) {
    require_transitive(spec.transitive, spec.label);
    return cond_analytic_impl(spec, true, t_n, w_n, c);
}

BoundCheckResult mvt_bound_check(const SpectralDecomposition& dec, std::size_t x, double t_n,
                                 double w_n, double c1, double c2, TimeConvention convention) {
    if (!(c1 < c2)) throw ParameterError("mvt_bound_check requires c1 < c2");
    const double s1 = t_n + c1 * w_n;
    const double s2 = t_n + c2 * w_n;
    if (s1 < 0.0) throw DomainError("mvt_bound_check requires s1 = t_n + c1 w_n >= 0");

    BoundCheckResult result;
    if (convention == TimeConvention::Continuous) {
        double diff = d_continuous(dec, x, s1) - d_continuous(dec, x, s2);
        result.lhs = 4.0 * diff * diff;
        result.rhs = (c2 - c1) * (c2 - c1) * cond_continuous(dec, x, t_n, w_n, c1);
    } else {
        result.lhs = std::fabs(d_discrete(dec, x, s1) - d_discrete(dec, x, s2));
        result.rhs = (c2 - c1) * cond_discrete(dec, x, t_n, w_n, c1);
    }
    result.holds = result.lhs <= result.rhs + 1e-10;
    return result;
}

namespace {

// Known dominating g(c) per (family, condition). The hypercube bound applies
// to the condition value itself; the random-to-random bound from the
// literature dominates the squared condition, so its square root is attached
// (undefined for c <= 1, reported as NaN).
std::optional<double> reference_value(const std::string& family, ConditionId id, double c) {
    if (!condition_is_discrete(id)) return std::nullopt;
    if (family == "hypercube" || family == "hypercube-analytic") return g_hypercube(c);
    if (family == "random-to-random") {
        if (c <= 1.0) return std::numeric_limits<double>::quiet_NaN();
        return std::sqrt(g_random_to_random(c));
    }
    return std::nullopt;
}

}  // namespace

ConditionReport limsup_report(const ChainFamily& family, ConditionId condition,
                              std::span<const int> n_list, std::span<const double> c_grid,
                              int top_k) {
    if (n_list.empty()) throw ParameterError("limsup_report: empty n list");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
        if (!(n_list[i] < n_list[i + 1]))
            throw ParameterError("limsup_report: n list must be strictly increasing");
    if (top_k < 1 || static_cast<std::size_t>(top_k) > n_list.size())
        throw ParameterError("limsup_report: need 1 <= K <= len(n_list)");
    for (std::size_t j = 0; j + 1 < c_grid.size(); ++j)
        if (!(c_grid[j] < c_grid[j + 1]))
            throw ParameterError("limsup_report: c grid must be strictly increasing");
    if (condition_is_transitive(condition))
        require_transitive(family.transitive, family.name);
    validate_schedule(family, n_list);

    ConditionReport report;
    report.condition = condition;
    report.family = family.name;
    report.n_list.assign(n_list.begin(), n_list.end());
    report.c_grid.assign(c_grid.begin(), c_grid.end());
    report.values = DenseMatrix(n_list.size(), c_grid.size());
    report.top_k = top_k;

    const bool discrete = condition_is_discrete(condition);
    const bool transitive = condition_is_transitive(condition);

    FamilySession session(family);
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const int n = n_list[i];
        const double t_n = family.cutoff_time(n);
        const double w_n = family.cutoff_window(n);
        if (family.analytic) {
            const AnalyticSpectrum spec = family.spectrum(n);
            parallel_for(c_grid.size(), [&, i](std::size_t j) {
                report.values(i, j) = cond_analytic_impl(spec, discrete, t_n, w_n, c_grid[j]);
            });
        } else {
            const SpectralDecomposition& dec = session.decomposition(n);
            const std::size_t x = static_cast<std::size_t>(family.start(n));
            parallel_for(c_grid.size(), [&, i, x](std::size_t j) {
                report.values(i, j) =
                    discrete ? cond_discrete_impl(dec, x, transitive, t_n, w_n, c_grid[j])
                             : cond_continuous_impl(dec, x, transitive, t_n, w_n, c_grid[j]);
            });
        }
    }

    report.limsup_estimate.assign(c_grid.size(), 0.0);
    for (std::size_t j = 0; j < c_grid.size(); ++j) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = n_list.size() - top_k; i < n_list.size(); ++i)
            m = std::max(m, report.values(i, j));
        report.limsup_estimate[j] = m;
    }

    if (reference_value(family.name, condition, c_grid.empty() ? 0.0 : c_grid[0])) {
        std::vector<double> ref(c_grid.size());
        for (std::size_t j = 0; j < c_grid.size(); ++j)
            ref[j] = *reference_value(family.name, condition, c_grid[j]);
        report.reference_bound = std::move(ref);
    }
    return report;
}

double continuity_certificate(const ConditionReport& report, double c1, double c2) {
    if (c1 > c2) throw ParameterError("continuity_certificate requires c1 <= c2");
    if (report.c_grid.empty()) throw ParameterError("continuity_certificate: empty report grid");
    if (c1 < report.c_grid.front() - 1e-12 || c2 > report.c_grid.back() + 1e-12)
        throw ParameterError("continuity_certificate: c1, c2 must lie on the report grid");
    if (c1 == c2) return 0.0;

    // limsup at c1, linear between grid points
    const auto& grid = report.c_grid;
    auto hi = std::lower_bound(grid.begin(), grid.end(), c1);
    double limsup;
    if (hi == grid.begin()) {
        limsup = report.limsup_estimate.front();
    } else if (hi == grid.end()) {
        limsup = report.limsup_estimate.back();
    } else {
        std::size_t j = static_cast<std::size_t>(hi - grid.begin());
        double u = (c1 - grid[j - 1]) / (grid[j] - grid[j - 1]);
        limsup = (1.0 - u) * report.limsup_estimate[j - 1] + u * report.limsup_estimate[j];
    }
    if (!std::isfinite(limsup))
        throw DomainError("continuity_certificate: limsup estimate at c1 is not finite");

    if (condition_is_discrete(report.condition)) return 0.5 * (c2 - c1) * limsup;
    return 0.5 * (c2 - c1) * std::sqrt(limsup);
}

double g_hypercube(double c) {
    double x = std::exp(-c);
    return std::sqrt(2.0 * std::exp(x) * (x * x + x));
}

double g_random_to_random(double c) {
    if (c <= 1.0)
        throw DomainError("g_random_to_random is defined for c > 1 only (pole at c = 1), got " +
                          format_double(c));
    double e = std::exp(-2.0 * (c - 1.0));
    double denom = 1.0 - e;
    return 3.0 * std::exp(-2.0 * c) + 4.0 * e / (denom * denom * denom);
}

double g_bernoulli_laplace(double c, double a_constant) {
    if (!(a_constant > 0.0))
        throw ParameterError("g_bernoulli_laplace needs an explicit positive constant");
    const double x = std::exp(-(c - 1.0));
    double term_u = x;  // x^i / i!
    double sum = 0.0;
    for (int i = 1;; ++i) {
        double term = static_cast<double>(i) * i * term_u;
        sum += term;
        if (!std::isfinite(sum)) return sum * a_constant;  // saturated for very negative c
        double ratio = x * (i + 1.0) / (static_cast<double>(i) * i);
        if (ratio < 0.5 && a_constant * 2.0 * term * ratio < 1e-14) break;
        if (i > 1000000)
            throw NumericalError("g_bernoulli_laplace series did not converge");
        term_u *= x / (i + 1.0);
    }
    return a_constant * sum;
}

}  // namespace cutofflab
