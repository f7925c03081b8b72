#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutofflab/distance.hpp"
#include "cutofflab/spectral.hpp"
#include "cutofflab/types.hpp"

namespace cutofflab {

// A parameterized chain family together with its cutoff schedule (t_n, w_n).
// Registered families and schedules (natural log throughout):
//   hypercube            lumped weight chain, t=(1/2) n ln n, w=n, start 0
//   hypercube-analytic   closed-form spectrum, same schedule, transitive
//   bernoulli-laplace    k=floor(n/2), t=(1/2) n ln min(k, sqrt n), w=n, start k
//   random-transpositions t=(1/2) n ln n, w=n/2, start identity
//   star-transpositions  t=n ln n, w=n, start identity
//   random-to-random     t=(3/4) n ln n - (1/4) n ln ln n, w=n, start identity
struct ChainFamily {
    std::string name;
    int n_min = 1;
    int n_max = 1;
    bool transitive = false;
    bool analytic = false;  // family provides a closed-form spectrum, no matrix
    TimeConvention convention = TimeConvention::Continuous;
    std::function<ReversibleChain(int)> build;
    std::function<AnalyticSpectrum(int)> spectrum;
    std::function<double(int)> cutoff_time;
    std::function<double(int)> cutoff_window;
    std::function<int(int)> start;  // designated start state for parameter n

    void check_n(int n) const;  // throws SizeLimitError outside [n_min, n_max]
};

const ChainFamily& family_by_name(const std::string& name);
std::vector<std::string> family_names();

// Checks w_n > 0 and that w_n/t_n decreases over the given n list.
void validate_schedule(const ChainFamily& family, std::span<const int> n_list);

// Caches per-n decompositions (or chains) so curve/report evaluation over a
// grid reuses them. Cache fills are serialized internally, so distance() may
// be called concurrently; prepare() warms the cache up front.
class FamilySession {
  public:
    explicit FamilySession(const ChainFamily& family) : family_(&family) {}

    const ChainFamily& family() const { return *family_; }
    void prepare(int n);

    // d(t) under the given convention from the family's start state. The
    // hypercube family evaluates through the lumped birth-death chain by
    // uniformization in continuous time (exact at any supported n).
    double distance(int n, double t, TimeConvention convention, std::optional<int> start = {});

    const SpectralDecomposition& decomposition(int n);
    const ReversibleChain& chain(int n);

  private:
    const ChainFamily* family_;
    std::mutex cache_mutex_;
    std::map<int, std::shared_ptr<const ReversibleChain>> chains_;
    std::map<int, std::shared_ptr<const SpectralDecomposition>> decs_;
};

// values[j] = d(t_n + c_grid[j] w_n) under the family's (or the requested)
// convention; grid points with negative evaluation time are dropped and
// recorded in meta. start defaults to the family's designated start.
ProfileCurve empirical_profile(const ChainFamily& family, int n, std::optional<int> start,
                               std::span<const double> c_grid,
                               std::optional<TimeConvention> convention = {});

}  // namespace cutofflab
