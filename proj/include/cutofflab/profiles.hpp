#pragma once

#include <string>

#include "cutofflab/types.hpp"

namespace cutofflab {

// Standard normal CDF, absolute accuracy well under 1e-10 (evaluated through
// erfc, so the lower tail keeps relative accuracy too).
double normal_cdf(double z);

// TV distance of two Poisson laws by direct summation, truncated when the
// ratio-test remainder of both tails drops below 1e-14.
double tv_poisson(double lambda1, double lambda2);

// TV distance of N(mu1, 1) and N(mu2, 1): 2*Phi(|mu1-mu2|/2) - 1.
double tv_unit_normals(double mu1, double mu2);

// Closed-form limit profiles. All are non-increasing in c with values in
// [0, 1] and tend to 0 as c -> +infinity.
double profile_hypercube(double c);        // 2 Phi(e^{-c}/2) - 1
double profile_poisson_shuffle(double c);  // TV(Poisson(1), Poisson(1 + e^{-c}))
double profile_bernoulli_laplace(double c);  // TV(N(e^{-2c},1), N(0,1))
double profile_ramanujan(double c, int degree);  // P(Z > alpha c), degree >= 3

// Evaluates a closed-form profile by name ("hypercube", "poisson-shuffle",
// "bernoulli-laplace", "ramanujan"); degree applies to ramanujan only.
double closed_form_profile(const std::string& name, double c, int degree = 3);

}  // namespace cutofflab
