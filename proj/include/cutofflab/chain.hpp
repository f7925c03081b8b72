#pragma once

#include <string>
#include <vector>

#include "cutofflab/types.hpp"

namespace cutofflab {

// A finite reversible Markov chain: row-stochastic transition matrix plus its
// stationary measure. Invariants (checked by validate_chain):
//   - each transition row sums to 1 within 1e-12
//   - all transition and stationary entries are >= 0; stationary sums to 1
//     within 1e-12
//   - detailed balance |pi(x)P(x,y) - pi(y)P(y,x)| <= 1e-12 for all x,y
//   - the graph of nonzero transition entries is strongly connected
// Chains are immutable after construction and safe to share across threads.
struct ReversibleChain {
    std::size_t size = 0;
    DenseMatrix transition;
    std::vector<double> stationary;
    std::string label;
    // Set by builders of vertex-transitive chains (doubly stochastic rows).
    bool transitive = false;
};

// Throws InvariantError naming the violated invariant and offending entry.
void validate_chain(const ReversibleChain& chain);

// Lazy walk on {0,1}^n: pick a coordinate uniformly at random and resample it
// uniformly. Eigenvalues are 1 - i/n with multiplicity C(n,i). Dense 2^n-state
// representation; n <= 14.
ReversibleChain build_hypercube_lazy(int n);

// Hamming-weight lumping of build_hypercube_lazy(n): birth-death chain on
// {0..n}, up (n-j)/(2n), down j/(2n), stationary Binomial(n, 1/2). Started at
// 0 it has the same TV distance from stationarity as the full walk started at
// a corner. Supports n <= 4096.
ReversibleChain build_hypercube_weight_chain(int n);

// Two-urn swap chain counting red balls in the k-ball urn; states {0..k},
// stationary hypergeometric. Requires 1 <= k <= n/2, n <= 4000. The (n,k) =
// (2,1) instance is periodic; apply make_lazy where aperiodicity is needed.
ReversibleChain build_bernoulli_laplace(int n, int k);

// Shuffles on the symmetric group (n! states, 2 <= n <= 6), states indexed by
// lexicographic rank of the deck word, uniform stationary, transitive.
ReversibleChain build_random_transpositions(int n);  // P(s,s)=1/n, 2/n^2 per transposition
ReversibleChain build_star_transpositions(int n);    // swap with top card, 1/n each
ReversibleChain build_random_to_random(int n);       // n^2 remove/insert moves

// (I + P)/2: stationary measure and detailed balance preserved exactly, all
// eigenvalues mapped to (1+beta)/2 >= 0.
ReversibleChain make_lazy(const ReversibleChain& chain);

// Chain text format (UTF-8, line oriented, '#' starts a comment line):
//   states <N>
//   pi <v1> ... <vN>
//   row <i> <p_i1> ... <p_iN>     (i = 1..N)
// load_chain validates all ReversibleChain invariants; parse errors carry the
// line number. save/load round-trips entrywise (17 significant digits).
ReversibleChain load_chain(const std::string& path);
void save_chain(const ReversibleChain& chain, const std::string& path);

}  // namespace cutofflab
