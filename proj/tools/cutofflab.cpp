// Command-line front end: spectra, TV curves, limit profiles, continuity
// condition reports and Mean-Value-Theorem bound checks, with reproducible
// CSV/JSON output (17 significant digits, byte-identical across runs for the
// same flags and seed).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cutofflab/chain.hpp"
#include "cutofflab/conditions.hpp"
#include "cutofflab/csvio.hpp"
#include "cutofflab/distance.hpp"
#include "cutofflab/families.hpp"
#include "cutofflab/profiles.hpp"
#include "cutofflab/spectral.hpp"

namespace {

using namespace cutofflab;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;

    std::vector<double> points() const {
        if (count < 2 || !(min < max))
            throw ParameterError("grid needs count >= 2 and min < max");
        std::vector<double> g(count);
        for (std::size_t i = 0; i < count; ++i)
            g[i] = min + (max - min) * static_cast<double>(i) / (count - 1);
        return g;
    }
};

struct ChainSource {
    std::string name = "file";
    int n = 0;
    int k = 0;
    std::string path;
    bool lazy = false;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--chain", name,
                        "hypercube | hypercube-weight | hypercube-analytic | "
                        "bernoulli-laplace | random-transpositions | star-transpositions | "
                        "random-to-random | file")
            ->required();
        cmd->add_option("--n", n, "family size parameter");
        cmd->add_option("--k", k, "bernoulli-laplace urn size (default n/2)");
        cmd->add_option("--path", path, "chain file for --chain file");
        cmd->add_flag("--lazy", lazy, "replace P by (I+P)/2");
    }

    ReversibleChain build() const {
        ReversibleChain chain;
        if (name == "hypercube") {
            chain = build_hypercube_lazy(n);
        } else if (name == "hypercube-weight") {
            chain = build_hypercube_weight_chain(n);
        } else if (name == "bernoulli-laplace") {
            chain = build_bernoulli_laplace(n, k > 0 ? k : n / 2);
        } else if (name == "random-transpositions") {
            chain = build_random_transpositions(n);
        } else if (name == "star-transpositions") {
            chain = build_star_transpositions(n);
        } else if (name == "random-to-random") {
            chain = build_random_to_random(n);
        } else if (name == "file") {
            if (path.empty()) throw ParameterError("--chain file requires --path");
            chain = load_chain(path);
        } else {
            throw ParameterError("unknown chain source: " + name);
        }
        return lazy ? make_lazy(chain) : chain;
    }

    int default_start() const {
        if (name == "bernoulli-laplace") return k > 0 ? k : n / 2;
        return 0;
    }

    // Paper cutoff schedule for the built-in families; file chains fall back
    // to chain-intrinsic scales (t_mix(1/4), relaxation time).
    std::optional<std::pair<double, double>> schedule() const {
        double dn = static_cast<double>(n);
        if (name == "hypercube" || name == "hypercube-weight")
            return std::make_pair(0.5 * dn * std::log(dn), dn);
        if (name == "bernoulli-laplace") {
            double dk = static_cast<double>(k > 0 ? k : n / 2);
            return std::make_pair(0.5 * dn * std::log(std::min(dk, std::sqrt(dn))), dn);
        }
        if (name == "random-transpositions")
            return std::make_pair(0.5 * dn * std::log(dn), 0.5 * dn);
        if (name == "star-transpositions")
            return std::make_pair(dn * std::log(dn), dn);
        if (name == "random-to-random")
            return std::make_pair(0.75 * dn * std::log(dn) - 0.25 * dn * std::log(std::log(dn)),
                                  dn);
        return std::nullopt;
    }
};

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file: " + out_path);
    out << content;
    if (!out) throw ParameterError("failed writing output file: " + out_path);
}

// Deterministic uniform draws independent of library distribution details.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

  private:
    double next_unit() {
        // splitmix64
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    std::uint64_t state_;
};

std::string convention_cell(TimeConvention conv) { return to_string(conv); }

int run_spectrum(const ChainSource& source, int start_flag, bool have_start,
                 const std::string& out, const std::string& format) {
    std::string content;
    if (source.name == "hypercube-analytic") {
        auto spec = hypercube_analytic_spectrum(source.n);
        content = format == "json" ? spectrum_json(spec) : spectrum_csv(spec);
    } else {
        auto chain = source.build();
        auto dec = decompose(chain);
        std::size_t x = static_cast<std::size_t>(have_start ? start_flag
                                                            : source.default_start());
        if (x >= dec.size) throw ParameterError("start state out of range");
        content = format == "json" ? spectrum_json(dec, x) : spectrum_csv(dec, x);
    }
    write_output(out, content);
    return kExitOk;
}

int main_impl(int argc, char** argv) {
    CLI::App app{"cutofflab: total-variation mixing profiles and spectral continuity "
                 "conditions for reversible Markov chains"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- spectrum ----
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and start-state weights");
    ChainSource spectrum_source;
    spectrum_source.add_flags(spectrum_cmd);
    int spectrum_start = 0;
    auto* spectrum_start_opt =
        spectrum_cmd->add_option("--start", spectrum_start, "start state index");

    // ---- tv-curve ----
    auto* tv_cmd = app.add_subcommand("tv-curve", "d(t) over a time grid or cutoff schedule");
    ChainSource tv_source;
    tv_source.add_flags(tv_cmd);
    int tv_start = 0;
    auto* tv_start_opt = tv_cmd->add_option("--start", tv_start, "start state index");
    GridSpec tv_tgrid;
    auto* t_min_opt = tv_cmd->add_option("--t-min", tv_tgrid.min, "time grid start");
    tv_cmd->add_option("--t-max", tv_tgrid.max, "time grid end");
    tv_cmd->add_option("--t-count", tv_tgrid.count, "time grid size");
    double tv_tn = 0.0, tv_wn = 0.0;
    auto* tv_tn_opt = tv_cmd->add_option("--tn", tv_tn, "cutoff time t_n (c-schedule mode)");
    tv_cmd->add_option("--wn", tv_wn, "cutoff window w_n (c-schedule mode)");
    GridSpec tv_cgrid;
    tv_cmd->add_option("--c-min", tv_cgrid.min, "c grid start");
    tv_cmd->add_option("--c-max", tv_cgrid.max, "c grid end");
    tv_cmd->add_option("--c-count", tv_cgrid.count, "c grid size");
    bool tv_discrete = false;
    tv_cmd->add_flag("--discrete", tv_discrete, "discrete-time convention");

    // ---- profile ----
    auto* profile_cmd = app.add_subcommand("profile", "closed-form or empirical limit profile");
    std::string closed_form;
    profile_cmd->add_option("--closed-form", closed_form,
                            "hypercube | poisson-shuffle | bernoulli-laplace | ramanujan");
    int degree = 3;
    profile_cmd->add_option("--degree", degree, "ramanujan graph degree (d >= 3)");
    std::string profile_family;
    profile_cmd->add_option("--family", profile_family, "chain family for empirical profiles");
    std::vector<int> profile_ns;
    profile_cmd->add_option("--n", profile_ns, "family sizes")->delimiter(',');
    int profile_start = 0;
    auto* profile_start_opt =
        profile_cmd->add_option("--start", profile_start, "start state index");
    bool profile_discrete = false;
    profile_cmd->add_flag("--discrete", profile_discrete, "discrete-time convention");
    GridSpec profile_grid;
    profile_cmd->add_option("--c-min", profile_grid.min, "c grid start")->required();
    profile_cmd->add_option("--c-max", profile_grid.max, "c grid end")->required();
    profile_cmd->add_option("--c-count", profile_grid.count, "c grid size")->required();

    // ---- condition ----
    auto* condition_cmd =
        app.add_subcommand("condition", "continuity-condition report over an (n, c) table");
    std::string condition_family;
    condition_cmd->add_option("--family", condition_family, "chain family")->required();
    std::string condition_id = "cond";
    condition_cmd->add_option("--id", condition_id, "cond | cond2 | cond3 | cond4")->required();
    std::vector<int> condition_ns;
    condition_cmd->add_option("--n", condition_ns, "increasing family sizes")
        ->required()
        ->delimiter(',');
    int top_k = 3;
    condition_cmd->add_option("--k-top", top_k, "limsup estimate uses the top K sizes");
    bool condition_lazy = false;
    condition_cmd->add_flag("--lazy", condition_lazy,
                            "evaluate the lazy (I+P)/2 version of the family");
    GridSpec condition_grid;
    condition_cmd->add_option("--c-min", condition_grid.min, "c grid start")->required();
    condition_cmd->add_option("--c-max", condition_grid.max, "c grid end")->required();
    condition_cmd->add_option("--c-count", condition_grid.count, "c grid size")->required();

    // ---- bound-check ----
    auto* bound_cmd = app.add_subcommand(
        "bound-check", "Mean-Value-Theorem bound on random (c1, c2) pairs");
    ChainSource bound_source;
    bound_source.add_flags(bound_cmd);
    int bound_start = 0;
    auto* bound_start_opt = bound_cmd->add_option("--start", bound_start, "start state index");
    int trials = 100;
    bound_cmd->add_option("--trials", trials, "number of random (c1, c2) pairs");
    std::uint64_t seed = 1;
    bound_cmd->add_option("--seed", seed, "RNG seed");
    std::string bound_convention = "both";
    bound_cmd->add_option("--convention", bound_convention, "continuous | discrete | both")
        ->check(CLI::IsMember({"continuous", "discrete", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (spectrum_cmd->parsed())
        return run_spectrum(spectrum_source, spectrum_start, spectrum_start_opt->count() > 0,
                            out_path, format);

    if (tv_cmd->parsed()) {
        auto chain = tv_source.build();
        std::size_t x = static_cast<std::size_t>(
            tv_start_opt->count() > 0 ? tv_start : tv_source.default_start());
        const bool schedule_mode = tv_tn_opt->count() > 0;
        if (!schedule_mode && t_min_opt->count() == 0)
            throw ParameterError("tv-curve needs either --t-min/--t-max/--t-count or "
                                 "--tn/--wn with a c grid");
        const TimeConvention conv =
            tv_discrete ? TimeConvention::Discrete : TimeConvention::Continuous;

        std::vector<double> grid = schedule_mode ? tv_cgrid.points() : tv_tgrid.points();
        ProfileCurve curve;
        curve.meta.family = chain.label;
        curve.meta.n_label = schedule_mode
                                 ? "tn=" + format_double(tv_tn) + " wn=" + format_double(tv_wn)
                                 : "time-grid";
        curve.meta.start = std::to_string(x);
        curve.meta.convention = to_string(conv);

        const bool lumped = tv_source.name == "hypercube-weight" &&
                            conv == TimeConvention::Continuous && x == 0 && !tv_source.lazy;
        std::optional<SpectralDecomposition> dec;
        if (!lumped) dec = decompose(chain);

        for (double g : grid) {
            double t = schedule_mode ? tv_tn + g * tv_wn : g;
            if (t < 0.0) {
                curve.meta.dropped_c.push_back(g);
                continue;
            }
            double d = lumped ? d_weighted_birth_death(chain, t)
                              : (conv == TimeConvention::Discrete ? d_discrete(*dec, x, t)
                                                                  : d_continuous(*dec, x, t));
            curve.c_grid.push_back(g);
            curve.values.push_back(d);
        }
        validate_profile(curve);
        std::string content = format == "json" ? curve_json(curve) : curve_csv(curve);
        if (!schedule_mode && format == "csv") {
            // time-grid mode labels the abscissa t rather than c
            auto pos = content.find("c,value");
            if (pos != std::string::npos) content.replace(pos, 7, "t,value");
        }
        write_output(out_path, content);
        return kExitOk;
    }

    if (profile_cmd->parsed()) {
        auto grid = profile_grid.points();
        if (!closed_form.empty()) {
            ProfileCurve curve;
            curve.meta.family = closed_form;
            curve.meta.n_label = "closed-form";
            curve.meta.start = "-";
            curve.meta.convention = "limit";
            curve.c_grid = grid;
            curve.values.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                curve.values[i] = closed_form_profile(closed_form, grid[i], degree);
            validate_profile(curve);
            write_output(out_path, format == "json" ? curve_json(curve) : curve_csv(curve));
            return kExitOk;
        }
        if (profile_family.empty() || profile_ns.empty())
            throw ParameterError("profile needs --closed-form or --family with --n");
        for (std::size_t i = 0; i + 1 < profile_ns.size(); ++i)
            if (profile_ns[i] >= profile_ns[i + 1])
                throw ParameterError("--n list must be strictly increasing");
        const auto& family = family_by_name(profile_family);
        std::optional<int> start;
        if (profile_start_opt->count() > 0) start = profile_start;
        std::optional<TimeConvention> conv;
        if (profile_discrete) conv = TimeConvention::Discrete;
        std::vector<ProfileCurve> curves;
        std::vector<std::string> labels;
        for (int n : profile_ns) {
            curves.push_back(empirical_profile(family, n, start, grid, conv));
            labels.push_back("n=" + std::to_string(n));
        }
        std::string content;
        if (curves.size() == 1)
            content = format == "json" ? curve_json(curves[0]) : curve_csv(curves[0]);
        else
            content = format == "json" ? multi_curve_json(grid, curves, labels)
                                       : multi_curve_csv(grid, curves, labels);
        write_output(out_path, content);
        return kExitOk;
    }

    if (condition_cmd->parsed()) {
        ChainFamily family = family_by_name(condition_family);
        if (condition_lazy) {
            if (family.analytic)
                throw ParameterError("--lazy does not apply to the analytic family");
            auto base_build = family.build;
            family.build = [base_build](int n) { return make_lazy(base_build(n)); };
            family.name = "lazy(" + family.name + ")";
        }
        auto report = limsup_report(family, condition_from_string(condition_id), condition_ns,
                                    condition_grid.points(), top_k);
        write_output(out_path, format == "json" ? report_json(report) : report_csv(report));
        return kExitOk;
    }

    if (bound_cmd->parsed()) {
        auto chain = bound_source.build();
        std::size_t x = static_cast<std::size_t>(
            bound_start_opt->count() > 0 ? bound_start : bound_source.default_start());
        auto dec = decompose(chain);
        if (x >= dec.size) throw ParameterError("start state out of range");

        double t_n, w_n;
        if (auto sched = bound_source.schedule()) {
            t_n = sched->first;
            w_n = sched->second;
        } else {
            t_n = mixing_time(dec, x, 0.25, TimeConvention::Continuous);
            w_n = 1.0 / (1.0 - dec.eigenvalues[1]);
        }

        const bool want_cont = bound_convention != "discrete";
        const bool want_disc = bound_convention != "continuous";
        bool lazified = false;
        std::optional<SpectralDecomposition> lazy_dec;
        if (want_disc && dec.eigenvalues.back() < -1e-12) {
            lazy_dec = decompose(make_lazy(chain));
            lazified = true;
        }

        std::ostringstream body;
        body << "# chain: " << chain.label << "\n";
        body << "# start: " << x << "\n";
        body << "# t_n: " << format_double(t_n) << "\n";
        body << "# w_n: " << format_double(w_n) << "\n";
        if (lazified) body << "# discrete trials use the lazy chain\n";
        body << "trial,convention,c1,c2,lhs,rhs,holds\n";

        Rng rng(seed);
        bool all_hold = true;
        for (int trial = 0; trial < trials; ++trial) {
            double c1, c2;
            int guard = 0;
            do {
                c1 = rng.uniform(-2.0, 4.0);
                c2 = rng.uniform(-2.0, 4.0);
                if (c1 > c2) std::swap(c1, c2);
                if (++guard > 10000)
                    throw NumericalError("could not draw admissible (c1, c2)");
            } while (!(c2 - c1 > 1e-9) || t_n + c1 * w_n < 0.0);

            for (TimeConvention conv :
                 {TimeConvention::Continuous, TimeConvention::Discrete}) {
                if (conv == TimeConvention::Continuous && !want_cont) continue;
                if (conv == TimeConvention::Discrete && !want_disc) continue;
                const SpectralDecomposition& use_dec =
                    (conv == TimeConvention::Discrete && lazified) ? *lazy_dec : dec;
                auto res = mvt_bound_check(use_dec, x, t_n, w_n, c1, c2, conv);
                all_hold = all_hold && res.holds;
                body << trial << ',' << convention_cell(conv) << ',' << format_double(c1)
                     << ',' << format_double(c2) << ',' << format_double(res.lhs) << ','
                     << format_double(res.rhs) << ',' << (res.holds ? "true" : "false")
                     << "\n";
            }
        }
        body << "all_hold=" << (all_hold ? "true" : "false") << "\n";
        write_output(out_path, body.str());
        return all_hold ? kExitOk : kExitPropertyFailure;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return main_impl(argc, argv);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
