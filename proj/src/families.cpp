#include "cutofflab/families.hpp"

#include <cmath>

#include "cutofflab/parallel.hpp"

namespace cutofflab {

void ChainFamily::check_n(int n) const {
    if (n < n_min || n > n_max)
        throw SizeLimitError("family '" + name + "' supports n in [" + std::to_string(n_min) +
                             ", " + std::to_string(n_max) + "], got " + std::to_string(n));
}

namespace {

double half_n_log_n(int n) { return 0.5 * n * std::log(static_cast<double>(n)); }

std::vector<ChainFamily> make_registry() {
    std::vector<ChainFamily> fams;

    {
        ChainFamily f;
        f.name = "hypercube";
        f.n_min = 1;
        f.n_max = 4096;
        f.transitive = false;  // the lumped representation is not doubly stochastic
        f.build = [](int n) { return build_hypercube_weight_chain(n); };
        f.cutoff_time = half_n_log_n;
        f.cutoff_window = [](int n) { return static_cast<double>(n); };
        f.start = [](int) { return 0; };
        fams.push_back(std::move(f));
    }
    {
        ChainFamily f;
        f.name = "hypercube-analytic";
        f.n_min = 1;
        f.n_max = 16384;
        f.transitive = true;
        f.analytic = true;
        f.spectrum = [](int n) { return hypercube_analytic_spectrum(n); };
        f.cutoff_time = half_n_log_n;
        f.cutoff_window = [](int n) { return static_cast<double>(n); };
        f.start = [](int) { return 0; };
        fams.push_back(std::move(f));
    }
    {
        ChainFamily f;
        f.name = "bernoulli-laplace";
        f.n_min = 2;
        // decompose-based evaluation from the extreme start state runs out of
        // double range beyond n ~ 100 (pi_min = 1/C(n, n/2)); the raw builder
        // accepts larger n.
        f.n_max = 100;
        f.transitive = false;
        f.build = [](int n) { return build_bernoulli_laplace(n, n / 2); };
        f.cutoff_time = [](int n) {
            int k = n / 2;
            return 0.5 * n * std::log(std::min(static_cast<double>(k), std::sqrt(n)));
        };
        f.cutoff_window = [](int n) { return static_cast<double>(n); };
        f.start = [](int n) { return n / 2; };  // all red balls in urn 1
        fams.push_back(std::move(f));
    }
    {
        ChainFamily f;
        f.name = "random-transpositions";
        f.n_min = 2;
        f.n_max = 6;
        f.transitive = true;
        f.build = [](int n) { return build_random_transpositions(n); };
        f.cutoff_time = half_n_log_n;
        f.cutoff_window = [](int n) { return 0.5 * n; };
        f.start = [](int) { return 0; };  // identity permutation
        fams.push_back(std::move(f));
    }
    {
        ChainFamily f;
        f.name = "star-transpositions";
        f.n_min = 2;
        f.n_max = 6;
        f.transitive = true;
        f.build = [](int n) { return build_star_transpositions(n); };
        f.cutoff_time = [](int n) { return n * std::log(static_cast<double>(n)); };
        f.cutoff_window = [](int n) { return static_cast<double>(n); };
        f.start = [](int) { return 0; };
        fams.push_back(std::move(f));
    }
    {
        ChainFamily f;
        f.name = "random-to-random";
        f.n_min = 2;
        f.n_max = 6;
        f.transitive = true;
        f.build = [](int n) { return build_random_to_random(n); };
        f.cutoff_time = [](int n) {
            double dn = static_cast<double>(n);
            return 0.75 * dn * std::log(dn) - 0.25 * dn * std::log(std::log(dn));
        };
        f.cutoff_window = [](int n) { return static_cast<double>(n); };
        f.start = [](int) { return 0; };
        fams.push_back(std::move(f));
    }
    return fams;
}

const std::vector<ChainFamily>& registry() {
    static const std::vector<ChainFamily> fams = make_registry();
    return fams;
}

}  // namespace

const ChainFamily& family_by_name(const std::string& name) {
    for (const auto& f : registry())
        if (f.name == name) return f;
    throw ParameterError("unknown chain family: " + name);
}

std::vector<std::string> family_names() {
    std::vector<std::string> names;
    for (const auto& f : registry()) names.push_back(f.name);
    return names;
}

void validate_schedule(const ChainFamily& family, std::span<const int> n_list) {
    double prev_ratio = 0.0;
    bool first = true;
    for (int n : n_list) {
        family.check_n(n);
        double t = family.cutoff_time(n);
        double w = family.cutoff_window(n);
        if (!(w > 0.0))
            throw InvariantError("cutoff window w_n must be positive at n = " + std::to_string(n));
        if (!(t > 0.0))
            throw InvariantError("cutoff time t_n must be positive at n = " + std::to_string(n));
        double ratio = w / t;
        if (!first && ratio > prev_ratio + 1e-12)
            throw InvariantError("w_n/t_n must decrease along the n list (violated at n = " +
                                 std::to_string(n) + ")");
        prev_ratio = ratio;
        first = false;
    }
}

void FamilySession::prepare(int n) {
    family_->check_n(n);
    if (family_->analytic) return;
    if (family_->name == "hypercube") {
        chain(n);  // uniformization needs the chain only
        return;
    }
    decomposition(n);
}

const ReversibleChain& FamilySession::chain(int n) {
    family_->check_n(n);
    if (family_->analytic)
        throw ContractError("family '" + family_->name + "' has no matrix representation");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = chains_.find(n);
    if (it == chains_.end())
        it = chains_.emplace(n, std::make_shared<const ReversibleChain>(family_->build(n))).first;
    return *it->second;
}

const SpectralDecomposition& FamilySession::decomposition(int n) {
    const ReversibleChain& c = chain(n);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = decs_.find(n);
    if (it == decs_.end())
        it = decs_.emplace(n, std::make_shared<const SpectralDecomposition>(decompose(c))).first;
    return *it->second;
}

double FamilySession::distance(int n, double t, TimeConvention convention,
                               std::optional<int> start) {
    family_->check_n(n);
    if (family_->analytic)
        throw ContractError("family '" + family_->name +
                            "' is spectrum-only; TV distance needs a matrix family");
    int x = start.value_or(family_->start(n));
    if (family_->name == "hypercube" && convention == TimeConvention::Continuous && x == 0)
        return d_weighted_birth_death(chain(n), t);
    if (family_->name == "hypercube" && convention == TimeConvention::Discrete && n > 64)
        throw SizeLimitError("discrete-time hypercube profiles need the spectral route, "
                             "accurate only for n <= 64");
    const auto& dec = decomposition(n);
    return convention == TimeConvention::Discrete ? d_discrete(dec, x, t)
                                                  : d_continuous(dec, x, t);
}

ProfileCurve empirical_profile(const ChainFamily& family, int n, std::optional<int> start,
                               std::span<const double> c_grid,
                               std::optional<TimeConvention> convention) {
    family.check_n(n);
    if (c_grid.size() < 1) throw ParameterError("empirical_profile: empty c grid");
    for (std::size_t i = 0; i + 1 < c_grid.size(); ++i)
        if (!(c_grid[i] < c_grid[i + 1]))
            throw ParameterError("empirical_profile: c grid must be strictly increasing");

    const TimeConvention conv = convention.value_or(family.convention);
    const double t_n = family.cutoff_time(n);
    const double w_n = family.cutoff_window(n);

    ProfileCurve curve;
    curve.meta.family = family.name;
    curve.meta.n_label = std::to_string(n);
    curve.meta.start = std::to_string(start.value_or(family.start(n)));
    curve.meta.convention = to_string(conv);

    std::vector<double> kept;
    for (double c : c_grid) {
        if (t_n + c * w_n < 0.0)
            curve.meta.dropped_c.push_back(c);
        else
            kept.push_back(c);
    }
    curve.c_grid = kept;
    curve.values.assign(kept.size(), 0.0);

    FamilySession session(family);
    session.prepare(n);
    parallel_for(kept.size(), [&](std::size_t j) {
        curve.values[j] = session.distance(n, t_n + kept[j] * w_n, conv, start);
    });
    validate_profile(curve);
    return curve;
}

}  // namespace cutofflab
