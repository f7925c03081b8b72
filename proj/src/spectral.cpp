#include "cutofflab/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "cutofflab/kernels.hpp"

namespace cutofflab {

namespace {

constexpr double kEdgeTol = 1e-8;  // slack for |beta| <= 1 and beta_1 == 1

double lchoose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

SpectralDecomposition decompose(const ReversibleChain& chain) {
    const std::size_t n = chain.size;
    for (std::size_t x = 0; x < n; ++x)
        if (chain.stationary[x] <= 0.0)
            throw DomainError("degenerate stationary measure: pi(" + std::to_string(x) +
                              ") <= 0, cannot symmetrize");

    std::vector<double> sqrt_pi(n);
    for (std::size_t x = 0; x < n; ++x) sqrt_pi[x] = std::sqrt(chain.stationary[x]);

    Eigen::MatrixXd s(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            s(x, y) = chain.transition(x, y) * sqrt_pi[x] / sqrt_pi[y];
    // detailed balance makes S symmetric up to rounding; fold the residue
    Eigen::MatrixXd sym = 0.5 * (s + s.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolver did not converge for " + chain.label);

    SpectralDecomposition dec;
    dec.size = n;
    dec.stationary = chain.stationary;
    dec.transitive = chain.transitive;
    dec.label = chain.label;
    dec.eigenvalues.resize(n);
    dec.eigenfunctions = DenseMatrix(n, n);

    // Eigen returns ascending order; we keep them descending.
    for (std::size_t i = 0; i < n; ++i) {
        double beta = solver.eigenvalues()(static_cast<Eigen::Index>(n - 1 - i));
        if (beta > 1.0 + kEdgeTol || beta < -1.0 - kEdgeTol)
            throw NumericalError("eigenvalue " + format_double(beta) +
                                 " outside [-1,1] for " + chain.label);
        dec.eigenvalues[i] = std::clamp(beta, -1.0, 1.0);
    }
    if (std::fabs(dec.eigenvalues[0] - 1.0) > kEdgeTol)
        throw NumericalError("largest eigenvalue " + format_double(dec.eigenvalues[0]) +
                             " is not 1 for " + chain.label);
    dec.eigenvalues[0] = 1.0;
    if (n > 1 && dec.eigenvalues[1] > 1.0 - kEdgeTol)
        throw InvariantError("beta_2 = " + format_double(dec.eigenvalues[1]) +
                             " is not < 1: chain is reducible");

    for (std::size_t i = 0; i < n; ++i) {
        const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(n - 1 - i));
        double max_abs = 0.0;
        for (std::size_t x = 0; x < n; ++x)
            max_abs = std::max(max_abs, std::fabs(col(static_cast<Eigen::Index>(x))));
        double sign = 1.0;
        for (std::size_t x = 0; x < n; ++x) {
            double v = col(static_cast<Eigen::Index>(x));
            if (std::fabs(v) > 1e-9 * max_abs) {
                sign = v > 0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t x = 0; x < n; ++x)
            dec.eigenfunctions(x, i) = sign * col(static_cast<Eigen::Index>(x)) / sqrt_pi[x];
    }
    return dec;
}

double AnalyticSpectrum::weight(std::size_t i) const { return std::exp(log_weights[i]); }

AnalyticSpectrum hypercube_analytic_spectrum(int n) {
    if (n < 1 || n > 16384)
        throw SizeLimitError("analytic hypercube spectrum supports n in [1, 16384], got " +
                             std::to_string(n));
    AnalyticSpectrum spec;
    spec.label = "hypercube-analytic(n=" + std::to_string(n) + ")";
    spec.rates.resize(n + 1);
    spec.betas.resize(n + 1);
    spec.log_weights.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        double rate = static_cast<double>(i) / n;
        spec.rates[i] = rate;
        spec.betas[i] = 1.0 - rate;
        spec.log_weights[i] = lchoose(n, i);
    }
    return spec;
}

namespace {

// row(y) = pi(y) * <F_row_y, coeff> with coeff_i = f_i(x) * decay_i.
std::vector<double> reconstruct_row(const SpectralDecomposition& dec,
                                    const std::vector<double>& coeff) {
    std::vector<double> row(dec.size);
    kernels::scaled_matvec(dec.eigenfunctions.data(), dec.size, dec.size, coeff.data(),
                           dec.stationary.data(), row.data());
    return row;
}

}  // namespace

std::vector<double> heat_kernel_row(const SpectralDecomposition& dec, std::size_t x, double t) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    if (t < 0.0) throw DomainError("heat kernel time must be nonnegative");
    const std::size_t n = dec.size;
    std::vector<double> rates(n), coeff(n);
    for (std::size_t i = 0; i < n; ++i) rates[i] = 1.0 - dec.eigenvalues[i];
    kernels::exp_scale(dec.eigenfunctions.row(x), rates.data(), n, t, coeff.data());
    auto row = reconstruct_row(dec, coeff);

    double sum = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        if (row[y] < 0.0) {
            if (row[y] < -1e-12)
                throw NumericalError("heat kernel entry " + format_double(row[y]) +
                                     " at state " + std::to_string(y) +
                                     " below the -1e-12 clipping threshold");
            row[y] = 0.0;
        }
        sum += row[y];
    }
    if (std::fabs(sum - 1.0) > 1e-10)
        throw NumericalError("heat kernel row sums to " + format_double(sum) +
                             ", off 1 by more than 1e-10");
    return row;
}

std::vector<double> discrete_row(const SpectralDecomposition& dec, std::size_t x, double s) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    if (s < 0.0) throw DomainError("discrete time must be nonnegative");
    const std::size_t n = dec.size;
    std::vector<double> coeff(n);
    const bool integer_s = (s == std::floor(s));
    if (integer_s) {
        for (std::size_t i = 0; i < n; ++i)
            coeff[i] = dec.eigenfunctions(x, i) * std::pow(dec.eigenvalues[i], s);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double beta = dec.eigenvalues[i];
            if (beta < -1e-12)
                throw DomainError("non-integer discrete time " + format_double(s) +
                                  " requires a nonnegative spectrum (beta_min = " +
                                  format_double(beta) + "); use make_lazy");
            // real-power extension: 0^s = 0 for s > 0
            coeff[i] = beta > 0.0 ? dec.eigenfunctions(x, i) * std::exp(s * std::log(beta))
                                  : 0.0;
        }
    }
    return reconstruct_row(dec, coeff);
}

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& eigenvalues,
                                              double tol) {
    std::vector<EigenCluster> clusters;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (!clusters.empty() && std::fabs(clusters.back().value - eigenvalues[i]) <= tol) {
            ++clusters.back().count;
        } else {
            clusters.push_back({eigenvalues[i], i, 1});
        }
    }
    return clusters;
}

std::vector<double> start_weights_by_cluster(const SpectralDecomposition& dec, std::size_t x,
                                             double tol) {
    if (x >= dec.size) throw ParameterError("state index out of range");
    auto clusters = cluster_eigenvalues(dec.eigenvalues, tol);
    std::vector<double> weights(clusters.size(), 0.0);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t i = clusters[c].first; i < clusters[c].first + clusters[c].count; ++i) {
            double f = dec.eigenfunctions(x, i);
            weights[c] += f * f;
        }
    }
    return weights;
}

}  // namespace cutofflab
