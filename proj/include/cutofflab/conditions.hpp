#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutofflab/families.hpp"
#include "cutofflab/spectral.hpp"
#include "cutofflab/types.hpp"

namespace cutofflab {

// Spectral continuity conditions evaluated at s = t_n + c w_n:
//   cond   (continuous, start x):  w^2 sum_{i>=2} f_i(x)^2 (1-b_i)^2 e^{-2s(1-b_i)}
//   cond2  (discrete,   start x):  w sqrt( sum_{i>=2} f_i(x)^2 log^2(b_i) b_i^{2s} )
//   cond3  (continuous, transitive): as cond with every f_i(x)^2 = 1
//   cond4  (discrete,   transitive): as cond2 with every f_i(x)^2 = 1
// Discrete conditions require a nonnegative spectrum; b_i = 0 terms
// contribute 0 (the limiting value of log^2(b) b^{2s}).
enum class ConditionId { Cond, Cond2, Cond3, Cond4 };

const char* to_string(ConditionId id);
ConditionId condition_from_string(const std::string& name);
bool condition_is_discrete(ConditionId id);
bool condition_is_transitive(ConditionId id);

double cond_continuous(const SpectralDecomposition& dec, std::size_t x, double t_n, double w_n,
                       double c);
double cond_continuous(const AnalyticSpectrum& spec, double t_n, double w_n, double c);
double cond_continuous_transitive(const SpectralDecomposition& dec, double t_n, double w_n,
                                  double c);
double cond_continuous_transitive(const AnalyticSpectrum& spec, double t_n, double w_n,
                                  double c);
double cond_discrete(const SpectralDecomposition& dec, std::size_t x, double t_n, double w_n,
                     double c);
double cond_discrete(const AnalyticSpectrum& spec, double t_n, double w_n, double c);
double cond_discrete_transitive(const SpectralDecomposition& dec, double t_n, double w_n,
                                double c);
double cond_discrete_transitive(const AnalyticSpectrum& spec, double t_n, double w_n, double c);

// The Mean-Value-Theorem bound behind the continuity theorems, instantiated
// at finite n. Continuous: 4(d(s1)-d(s2))^2 <= (c2-c1)^2 cond(c1); discrete:
// |d(s1)-d(s2)| <= |c2-c1| cond2(c1). Requires c1 < c2 and s1 >= 0.
struct BoundCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;  // lhs <= rhs + 1e-10
};
BoundCheckResult mvt_bound_check(const SpectralDecomposition& dec, std::size_t x, double t_n,
                                 double w_n, double c1, double c2, TimeConvention convention);

// Condition values over an (n, c) table with a finite-n limsup estimate
// (columnwise max over the top_k largest n). reference_bound carries a known
// dominating g(c) where the family has one registered; entries may be NaN
// where the reference is undefined (e.g. random-to-random for c <= 1).
struct ConditionReport {
    ConditionId condition = ConditionId::Cond;
    std::string family;
    std::vector<int> n_list;
    std::vector<double> c_grid;
    DenseMatrix values;  // (n index, c index)
    std::vector<double> limsup_estimate;
    std::optional<std::vector<double>> reference_bound;
    int top_k = 3;
};

ConditionReport limsup_report(const ChainFamily& family, ConditionId condition,
                              std::span<const int> n_list, std::span<const double> c_grid,
                              int top_k = 3);

// Upper bound on |Phi(c1) - Phi(c2)| implied by the report: continuous
// conditions give (1/2)|c2-c1| sqrt(limsup(c1)), discrete ones
// (1/2)|c2-c1| limsup(c1) (the paper's two g conventions). c1 and c2 must lie
// inside the report's grid range; limsup(c1) is interpolated linearly between
// grid points.
double continuity_certificate(const ConditionReport& report, double c1, double c2);

// Closed-form dominating functions.
// g_hypercube bounds cond2/cond4 for the lazy hypercube walk directly;
// g_random_to_random and g_bernoulli_laplace bound the *squared* discrete
// condition w^2 sum log^2(b) b^{2s}.
double g_hypercube(double c);  // sqrt(2 e^{e^-c} (e^{-2c} + e^-c))
double g_random_to_random(double c);  // 3e^{-2c} + 4e^{-2(c-1)}/(1-e^{-2(c-1)})^3, c > 1
// a_constant * sum_{i>=1} i^2 e^{-(c-1)i} / i!, truncated when the ratio-test
// tail bound drops below 1e-14. The constant has no default.
double g_bernoulli_laplace(double c, double a_constant);

}  // namespace cutofflab
