#include "cutofflab/chain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>
#include <vector>

#include "cutofflab/perm.hpp"

namespace cutofflab {

namespace {

constexpr double kStochasticTol = 1e-12;

double lchoose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Binomial / hypergeometric stationary vectors are computed in log space and
// renormalized, so the sum is 1 up to one rounding.
void normalize(std::vector<double>& v) {
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= s;
}

void bfs_reachable(const DenseMatrix& m, bool transpose, std::vector<char>& seen) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> queue{0};
    seen.assign(n, 0);
    seen[0] = 1;
    while (!queue.empty()) {
        std::size_t x = queue.back();
        queue.pop_back();
        for (std::size_t y = 0; y < n; ++y) {
            double p = transpose ? m(y, x) : m(x, y);
            if (p != 0.0 && !seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
}

}  // namespace

void validate_chain(const ReversibleChain& chain) {
    const std::size_t n = chain.size;
    if (n == 0) throw InvariantError("chain has no states");
    if (chain.transition.rows() != n || chain.transition.cols() != n)
        throw InvariantError("transition matrix shape does not match size");
    if (chain.stationary.size() != n)
        throw InvariantError("stationary vector length does not match size");

    for (std::size_t x = 0; x < n; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            double p = chain.transition(x, y);
            if (p < 0.0)
                throw InvariantError("negative transition entry at (" + std::to_string(x) +
                                     "," + std::to_string(y) + ")");
            sum += p;
        }
        if (std::fabs(sum - 1.0) > kStochasticTol)
            throw InvariantError("row " + std::to_string(x) + " sums to " +
                                 format_double(sum) + ", not 1 within 1e-12");
    }

    double pisum = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        if (chain.stationary[x] < 0.0)
            throw InvariantError("negative stationary entry at state " + std::to_string(x));
        pisum += chain.stationary[x];
    }
    if (std::fabs(pisum - 1.0) > kStochasticTol)
        throw InvariantError("stationary measure sums to " + format_double(pisum) +
                             ", not 1 within 1e-12");

    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            double lhs = chain.stationary[x] * chain.transition(x, y);
            double rhs = chain.stationary[y] * chain.transition(y, x);
            if (std::fabs(lhs - rhs) > kStochasticTol)
                throw InvariantError("detailed balance violated at pair (" +
                                     std::to_string(x) + "," + std::to_string(y) +
                                     "): |" + format_double(lhs) + " - " +
                                     format_double(rhs) + "| > 1e-12");
        }
    }

    std::vector<char> seen;
    bfs_reachable(chain.transition, false, seen);
    if (std::count(seen.begin(), seen.end(), char(1)) != static_cast<long>(n))
        throw InvariantError("chain is reducible: not all states reachable from state 0");
    bfs_reachable(chain.transition, true, seen);
    if (std::count(seen.begin(), seen.end(), char(1)) != static_cast<long>(n))
        throw InvariantError("chain is reducible: state 0 not reachable from all states");
}

ReversibleChain build_hypercube_lazy(int n) {
    if (n < 1 || n > 14)
        throw SizeLimitError("hypercube size n must be in [1, 14] for the dense 2^n-state "
                             "representation, got " + std::to_string(n));
    const std::size_t states = std::size_t{1} << n;
    ReversibleChain chain;
    chain.size = states;
    chain.label = "hypercube-lazy(n=" + std::to_string(n) + ")";
    chain.transitive = true;
    chain.transition = DenseMatrix(states, states);
    chain.stationary.assign(states, 1.0 / static_cast<double>(states));
    const double flip = 1.0 / (2.0 * n);
    for (std::size_t x = 0; x < states; ++x) {
        chain.transition(x, x) = 0.5;
        for (int i = 0; i < n; ++i) chain.transition(x, x ^ (std::size_t{1} << i)) = flip;
    }
    return chain;
}

ReversibleChain build_hypercube_weight_chain(int n) {
    if (n < 1 || n > 4096)
        throw SizeLimitError("hypercube weight chain supports n in [1, 4096], got " +
                             std::to_string(n));
    const std::size_t states = static_cast<std::size_t>(n) + 1;
    ReversibleChain chain;
    chain.size = states;
    chain.label = "hypercube-weight(n=" + std::to_string(n) + ")";
    chain.transition = DenseMatrix(states, states);
    chain.stationary.resize(states);
    for (int j = 0; j <= n; ++j) {
        double up = static_cast<double>(n - j) / (2.0 * n);
        double down = static_cast<double>(j) / (2.0 * n);
        if (j < n) chain.transition(j, j + 1) = up;
        if (j > 0) chain.transition(j, j - 1) = down;
        chain.transition(j, j) = 1.0 - up - down;
        chain.stationary[j] = std::exp(lchoose(n, j) - n * std::log(2.0));
    }
    normalize(chain.stationary);
    return chain;
}

ReversibleChain build_bernoulli_laplace(int n, int k) {
    if (k < 1 || 2 * k > n)
        throw ParameterError("bernoulli-laplace requires 1 <= k <= n/2, got n=" +
                             std::to_string(n) + " k=" + std::to_string(k));
    if (n > 4000)
        throw SizeLimitError("bernoulli-laplace supports n <= 4000, got " + std::to_string(n));
    const std::size_t states = static_cast<std::size_t>(k) + 1;
    ReversibleChain chain;
    chain.size = states;
    chain.label = "bernoulli-laplace(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
    chain.transition = DenseMatrix(states, states);
    chain.stationary.resize(states);
    const double denom = static_cast<double>(k) * (n - k);
    for (int j = 0; j <= k; ++j) {
        // j red balls in urn 1: a swap moves one red out with probability
        // j*(n-2k+j)/denom and one red in with probability (k-j)^2/denom.
        double down = static_cast<double>(j) * (n - 2 * k + j) / denom;
        double up = static_cast<double>(k - j) * (k - j) / denom;
        if (j > 0) chain.transition(j, j - 1) = down;
        if (j < k) chain.transition(j, j + 1) = up;
        chain.transition(j, j) = 1.0 - down - up;
        chain.stationary[j] = std::exp(lchoose(k, j) + lchoose(n - k, k - j) - lchoose(n, k));
    }
    normalize(chain.stationary);
    return chain;
}

namespace {

void check_deck_size(int n, const char* name) {
    if (n < 2 || n > 6)
        throw SizeLimitError(std::string(name) + " supports deck sizes n in [2, 6] " +
                             "(n! states), got " + std::to_string(n));
}

ReversibleChain symmetric_group_chain(int n, const std::string& label) {
    const std::size_t states = perm::factorial(n);
    ReversibleChain chain;
    chain.size = states;
    chain.label = label;
    chain.transitive = true;
    chain.transition = DenseMatrix(states, states);
    chain.stationary.assign(states, 1.0 / static_cast<double>(states));
    return chain;
}

}  // namespace

ReversibleChain build_random_transpositions(int n) {
    check_deck_size(n, "random transpositions");
    auto chain = symmetric_group_chain(n, "random-transpositions(n=" + std::to_string(n) + ")");
    const double pair_prob = 2.0 / (static_cast<double>(n) * n);
    for (std::size_t s = 0; s < chain.size; ++s) {
        auto word = perm::unrank(n, s);
        chain.transition(s, s) += 1.0 / n;  // the n diagonal picks i = j
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                std::swap(word[i], word[j]);
                chain.transition(s, perm::rank(word)) += pair_prob;
                std::swap(word[i], word[j]);
            }
        }
    }
    return chain;
}

ReversibleChain build_star_transpositions(int n) {
    check_deck_size(n, "star transpositions");
    auto chain = symmetric_group_chain(n, "star-transpositions(n=" + std::to_string(n) + ")");
    const double move_prob = 1.0 / n;
    for (std::size_t s = 0; s < chain.size; ++s) {
        auto word = perm::unrank(n, s);
        chain.transition(s, s) += move_prob;  // i = 1 is the identity move
        for (int i = 1; i < n; ++i) {
            std::swap(word[0], word[i]);
            chain.transition(s, perm::rank(word)) += move_prob;
            std::swap(word[0], word[i]);
        }
    }
    return chain;
}

ReversibleChain build_random_to_random(int n) {
    check_deck_size(n, "random-to-random");
    auto chain = symmetric_group_chain(n, "random-to-random(n=" + std::to_string(n) + ")");
    const double move_prob = 1.0 / (static_cast<double>(n) * n);
    for (std::size_t s = 0; s < chain.size; ++s) {
        const auto word = perm::unrank(n, s);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                auto moved = word;
                int card = moved[i];
                moved.erase(moved.begin() + i);
                moved.insert(moved.begin() + j, card);
                chain.transition(s, perm::rank(moved)) += move_prob;
            }
        }
    }
    return chain;
}

ReversibleChain make_lazy(const ReversibleChain& chain) {
    ReversibleChain lazy = chain;
    lazy.label = "lazy(" + chain.label + ")";
    for (std::size_t x = 0; x < chain.size; ++x) {
        for (std::size_t y = 0; y < chain.size; ++y)
            lazy.transition(x, y) = 0.5 * chain.transition(x, y);
        lazy.transition(x, x) += 0.5;
    }
    return lazy;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

double parse_number(std::string_view token, int line_no) {
    double v = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" +
                         std::string(token) + "'");
    return v;
}

}  // namespace

ReversibleChain load_chain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open chain file: " + path);

    ReversibleChain chain;
    std::size_t n = 0;
    bool have_states = false, have_pi = false;
    std::vector<char> have_row;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        const std::string_view kind = tokens[0];
        if (kind == "states") {
            if (have_states) throw ParseError("line " + std::to_string(line_no) +
                                              ": duplicate 'states' line");
            if (tokens.size() != 2)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'states <N>'");
            double v = parse_number(tokens[1], line_no);
            if (v < 1 || v != std::floor(v) || v > 1e7)
                throw ParseError("line " + std::to_string(line_no) + ": invalid state count");
            n = static_cast<std::size_t>(v);
            chain.size = n;
            chain.transition = DenseMatrix(n, n);
            chain.stationary.assign(n, 0.0);
            have_row.assign(n, 0);
            have_states = true;
        } else if (kind == "pi") {
            if (!have_states)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": 'pi' before 'states'");
            if (tokens.size() != n + 1)
                throw ParseError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(n) + " stationary entries, got " +
                                 std::to_string(tokens.size() - 1));
            for (std::size_t i = 0; i < n; ++i)
                chain.stationary[i] = parse_number(tokens[i + 1], line_no);
            have_pi = true;
        } else if (kind == "row") {
            if (!have_states)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": 'row' before 'states'");
            if (tokens.size() != n + 2)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'row <i> ' + " +
                                 std::to_string(n) + " entries");
            double iv = parse_number(tokens[1], line_no);
            if (iv < 1 || iv > static_cast<double>(n) || iv != std::floor(iv))
                throw ParseError("line " + std::to_string(line_no) + ": row index out of range");
            std::size_t row = static_cast<std::size_t>(iv) - 1;
            if (have_row[row])
                throw ParseError("line " + std::to_string(line_no) + ": duplicate row " +
                                 std::string(tokens[1]));
            for (std::size_t j = 0; j < n; ++j)
                chain.transition(row, j) = parse_number(tokens[j + 2], line_no);
            have_row[row] = 1;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown directive '" +
                             std::string(kind) + "'");
        }
    }
    if (!have_states) throw ParseError("missing 'states' line in " + path);
    if (!have_pi) throw ParseError("missing 'pi' line in " + path);
    for (std::size_t i = 0; i < n; ++i)
        if (!have_row[i]) throw ParseError("missing row " + std::to_string(i + 1) + " in " + path);

    auto slash = path.find_last_of('/');
    chain.label = slash == std::string::npos ? path : path.substr(slash + 1);
    validate_chain(chain);
    return chain;
}

void save_chain(const ReversibleChain& chain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot open file for writing: " + path);
    out << "# " << chain.label << "\n";
    out << "states " << chain.size << "\n";
    out << "pi";
    for (double v : chain.stationary) out << ' ' << format_double(v);
    out << "\n";
    for (std::size_t i = 0; i < chain.size; ++i) {
        out << "row " << (i + 1);
        for (std::size_t j = 0; j < chain.size; ++j)
            out << ' ' << format_double(chain.transition(i, j));
        out << "\n";
    }
    if (!out) throw ParameterError("failed writing chain to " + path);
}

}  // namespace cutofflab
