#pragma once

#include <string>
#include <vector>

#include "cutofflab/chain.hpp"
#include "cutofflab/types.hpp"

namespace cutofflab {

// Orthonormal spectral decomposition of a reversible chain in L2(pi):
// eigenvalues sorted descending with eigenvalues[0] == 1, eigenfunctions
// stored as F(y, i) = f_i(y) (state-major rows, so row reconstructions are
// contiguous dot products). f_1 is the constant function 1; each column's
// sign is normalized so its first nonzero entry is positive.
// Immutable and safe to share read-only across threads.
struct SpectralDecomposition {
    std::size_t size = 0;
    std::vector<double> eigenvalues;
    DenseMatrix eigenfunctions;
    std::vector<double> stationary;
    bool transitive = false;
    std::string label;
};

// Symmetrizes S(x,y) = sqrt(pi(x)/pi(y)) P(x,y) and applies a dense symmetric
// eigensolver; f_i(x) = v_i(x)/sqrt(pi(x)). Throws DomainError when some
// stationary entry is <= 0, NumericalError when the solver fails or the
// spectrum leaves [-1,1], InvariantError when beta_2 >= 1 (reducible input).
SpectralDecomposition decompose(const ReversibleChain& chain);

// Spectrum of the lazy hypercube walk in closed form, one cluster per
// distinct rate i/n with start weight C(n, i) at a corner (weights stored in
// log space; their exponentials sum to 2^n = 1/pi(corner)). Serves both the
// start-state conditions (corner aggregates) and the transitive ones
// (multiplicities), which coincide for this walk.
struct AnalyticSpectrum {
    std::vector<double> rates;        // ascending, rates[0] == 0
    std::vector<double> betas;        // 1 - rates[i]
    std::vector<double> log_weights;  // ln of the cluster aggregate weight
    bool transitive = true;
    std::string label;

    std::size_t clusters() const { return rates.size(); }
    double weight(std::size_t i) const;  // exp(log_weights[i]); inf if it overflows
};

AnalyticSpectrum hypercube_analytic_spectrum(int n);  // n in [1, 16384]

// Q^t(x,.) = pi(.) sum_i f_i(x) f_i(.) e^{-t(1-beta_i)}. Entries negative by
// at most 1e-12 are clipped to 0; larger negatives or a total off 1 by more
// than 1e-10 raise NumericalError.
std::vector<double> heat_kernel_row(const SpectralDecomposition& dec, std::size_t x, double t);

// P^s(x,.) via beta_i^s. Integer s works for any spectrum; non-integer s
// requires all eigenvalues >= 0 (real-power extension with 0^s = 0 for s > 0)
// and raises DomainError otherwise. The result is a signed vector: no
// clipping is applied.
std::vector<double> discrete_row(const SpectralDecomposition& dec, std::size_t x, double s);

struct EigenCluster {
    double value = 0.0;     // representative eigenvalue (first member)
    std::size_t first = 0;  // index of first member
    std::size_t count = 0;
};

// Groups a descending eigenvalue list into clusters at the given tolerance.
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& eigenvalues,
                                              double tol = 1e-6);

// Rotation-invariant start weights: sum of f_i(x)^2 over each cluster.
std::vector<double> start_weights_by_cluster(const SpectralDecomposition& dec, std::size_t x,
                                             double tol = 1e-6);

}  // namespace cutofflab
