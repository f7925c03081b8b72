#pragma once

#include <span>
#include <string>
#include <vector>

#include "cutofflab/chain.hpp"
#include "cutofflab/spectral.hpp"
#include "cutofflab/types.hpp"

namespace cutofflab {

// (1/2) sum |p - q|. Both arguments must be probability vectors of equal
// length (entries >= 0, sums within 1e-9 of 1).
double tv_distance(std::span<const double> p, std::span<const double> q);

// d_x(t) = || Q^t(x,.) - pi ||_TV evaluated through the spectral formula; the
// deviation from pi is reconstructed directly (trivial eigenvalue dropped),
// so there is no cancellation against pi. d(0) = 1 - pi(x).
double d_continuous(const SpectralDecomposition& dec, std::size_t x, double t);

// Discrete-time analogue through beta^s; same domain rules as discrete_row.
double d_discrete(const SpectralDecomposition& dec, std::size_t x, double s);

// TV distance from stationarity of a birth-death chain started at state 0,
// computed by uniformization (e^{-t(I-P)} = sum_k e^{-t} t^k/k! P^k): a
// nonnegative series with no cancellation, stable for weight chains of any
// supported n where the spectral route from the corner loses all accuracy.
// For build_hypercube_weight_chain(n) this equals the full 2^n-state walk's
// distance from a corner (lumping identity). Requires a tridiagonal chain.
double d_weighted_birth_death(const ReversibleChain& weight_chain, double t);

// inf { t : d_x(t) <= eps }. Continuous convention: bracketing plus bisection
// to 1e-6 absolute (valid since d is continuous and non-increasing); discrete
// convention: least integer t by doubling plus binary search. eps >= d(0)
// returns 0.
double mixing_time(const SpectralDecomposition& dec, std::size_t x, double eps,
                   TimeConvention convention);

// Both sides of the L2 identity between two heat-kernel times:
// direct   = || (Q^{s1}_x - Q^{s2}_x)/pi ||^2_{2,pi} from reconstructed rows,
// spectral = sum_{i>=2} f_i(x)^2 (e^{-s1(1-b_i)} - e^{-s2(1-b_i)})^2.
// The two routes must agree within 1e-8 * max(1, direct) or NumericalError
// is thrown.
struct L2Check {
    double direct = 0.0;
    double spectral = 0.0;
};
L2Check l2_difference_check(const SpectralDecomposition& dec, std::size_t x, double s1,
                            double s2);

struct ProfileMeta {
    std::string family;
    std::string n_label;  // parameter n, or "closed-form"
    std::string start;
    std::string convention;
    std::vector<double> dropped_c;  // grid points with negative evaluation time
};

// Sampled profile curve: values in [0,1], non-increasing along the grid
// (within 1e-9 slack; TV from stationarity is non-increasing in time).
struct ProfileCurve {
    std::vector<double> c_grid;
    std::vector<double> values;
    ProfileMeta meta;
};

// Throws InvariantError when the curve leaves [0,1] (1e-12 slack) or
// increases along the grid by more than 1e-9.
void validate_profile(const ProfileCurve& curve);

}  // namespace cutofflab
