#include "banddist/simulation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <string>

#include "banddist/band_distance.hpp"
#include "banddist/baselines.hpp"
#include "banddist/clustering.hpp"
#include "banddist/spectral.hpp"

namespace banddist::sim {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<double> linear_ramp(double from, double to, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

const std::vector<double>& bump_variance() {
    static const std::vector<double> v{1, 1, 1, 1, 3, 5, 7, 9, 3, 2, 1, 1, 1, 1, 1};
    return v;
}

}  // namespace

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // Mixing the seed first keeps the run sets of nearby seeds disjoint.
    return splitmix64(splitmix64(seed) ^ index);
}

std::vector<double> MvnClassSpec::covariance() const {
    const std::size_t d = mean.size();
    if (sigma2.size() != d) throw Error(Errc::length_mismatch, "mean and variance vectors differ in length");
    if (!(rho > -1.0 && rho < 1.0)) throw Error(Errc::invalid_argument, "rho must lie in (-1, 1)");
    std::vector<double> cov(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!(sigma2[i] > 0.0)) throw Error(Errc::invalid_argument, "variances must be positive");
        for (std::size_t j = 0; j < d; ++j) {
            const auto lag = static_cast<int>(i > j ? i - j : j - i);
            cov[i * d + j] = std::sqrt(sigma2[i]) * std::sqrt(sigma2[j]) * std::pow(rho, lag);
        }
    }
    // Exact symmetry and the stated variances on the diagonal.
    for (std::size_t i = 0; i < d; ++i) {
        cov[i * d + i] = sigma2[i];
        for (std::size_t j = 0; j < i; ++j) cov[j * d + i] = cov[i * d + j];
    }
    return cov;
}

std::vector<double> cholesky(const std::vector<double>& matrix, std::size_t dim) {
    if (matrix.size() != dim * dim) throw Error(Errc::invalid_argument, "matrix must be dim x dim");
    const Eigen::Map<const RowMatrix> a(matrix.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::LLT<RowMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw Error(Errc::not_positive_definite, "covariance is not positive definite");
    const RowMatrix l = llt.matrixL();
    return {l.data(), l.data() + l.size()};
}

std::vector<std::vector<double>> sample_mvn(const MvnClassSpec& spec, std::size_t n, std::mt19937_64& rng) {
    const std::size_t d = spec.mean.size();
    const auto l = cholesky(spec.covariance(), d);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::vector<double> z(d);
    for (auto& row : rows) {
        for (auto& v : z) v = normal(rng);
        for (std::size_t i = 0; i < d; ++i) {
            double acc = spec.mean[i];
            for (std::size_t j = 0; j <= i; ++j) acc += l[i * d + j] * z[j];
            row[i] = acc;
        }
    }
    return rows;
}

std::vector<std::vector<double>> sample_mvn(const MvnClassSpec& spec, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_mvn(spec, n, rng);
}

void check_stationary(const ArmaSpec& spec) {
    if (!(spec.noise_variance > 0.0)) throw Error(Errc::invalid_argument, "noise variance must be positive");
    const auto p = static_cast<Eigen::Index>(spec.ar.size());
    if (p == 0) return;
    // Roots of 1 - phi_1 z - ... outside the unit circle <=> companion
    // eigenvalues inside it.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = spec.ar[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    for (Eigen::Index i = 0; i < p; ++i) {
        if (std::abs(solver.eigenvalues()[i]) >= 1.0) {
            throw Error(Errc::not_stationary, "AR polynomial has a root on or inside the unit circle");
        }
    }
}

double arma_spectral_density(const ArmaSpec& spec, double omega) {
    const std::complex<double> z = std::polar(1.0, -omega);
    std::complex<double> ma = 1.0;
    std::complex<double> zk = 1.0;
    for (double theta : spec.ma) {
        zk *= z;
        ma += theta * zk;
    }
    std::complex<double> ar = 1.0;
    zk = 1.0;
    for (double phi : spec.ar) {
        zk *= z;
        ar -= phi * zk;
    }
    return spec.noise_variance / (2.0 * std::numbers::pi) * std::norm(ma) / std::norm(ar);
}

std::vector<double> simulate_arma(const ArmaSpec& spec, std::size_t length, std::mt19937_64& rng,
                                  std::size_t burn_in) {
    check_stationary(spec);
    const std::size_t total = burn_in + length;
    std::normal_distribution<double> normal(0.0, std::sqrt(spec.noise_variance));
    std::vector<double> x(total, 0.0);
    std::vector<double> e(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        e[t] = normal(rng);
        double v = e[t];
        for (std::size_t i = 0; i < spec.ar.size() && i < t; ++i) v += spec.ar[i] * x[t - 1 - i];
        for (std::size_t j = 0; j < spec.ma.size() && j < t; ++j) v += spec.ma[j] * e[t - 1 - j];
        x[t] = v;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

std::vector<MvnClassSpec> design_a_classes() {
    return {{linear_ramp(0.1, 1.5, 15), bump_variance(), 0.9}, {linear_ramp(1.5, 0.1, 15), bump_variance(), 0.9}};
}

std::vector<MvnClassSpec> design_b_classes() {
    // Mean and variance curves are declared defaults: up, down and flat means
    // crossed with the bump, its reversal and a constant variance.
    const std::vector<std::vector<double>> means{linear_ramp(0.1, 1.5, 15), linear_ramp(1.5, 0.1, 15),
                                                 std::vector<double>(15, 0.8)};
    const auto& bump = bump_variance();
    const std::vector<std::vector<double>> variances{bump, std::vector<double>(bump.rbegin(), bump.rend()),
                                                     std::vector<double>(15, 2.0)};
    std::vector<MvnClassSpec> classes;
    for (const auto& mu : means) {
        for (const auto& s2 : variances) classes.push_back({mu, s2, 0.9});
    }
    return classes;
}

std::vector<ArmaSpec> design_c_models() {
    return {
        {{}, {0.5}, 1.0},          {{}, {0.9, 0.9}, 1.0}, {{}, {0.8, 0.6, 0.2}, 1.0},
        {{0.8}, {}, 1.0},          {{0.3, 0.3}, {}, 1.0}, {{0.9, -0.8}, {}, 1.0},
    };
}

LabeledDataset generate_mvn_dataset(const std::vector<MvnClassSpec>& classes, std::size_t per_class,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> truth;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (auto& row : sample_mvn(classes[c], per_class, rng)) {
            rows.push_back(std::move(row));
            truth.push_back(static_cast<int>(c + 1));
        }
    }
    return {validate_set(rows), std::move(truth)};
}

LabeledDataset generate_arma_dataset(const std::vector<ArmaSpec>& models, std::size_t per_model, std::size_t length,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> truth;
    for (std::size_t m = 0; m < models.size(); ++m) {
        for (std::size_t r = 0; r < per_model; ++r) {
            rows.push_back(simulate_arma(models[m], length, rng));
            truth.push_back(static_cast<int>(m + 1));
        }
    }
    return {validate_set(rows), std::move(truth)};
}

RunOutcome compare_on(const LabeledDataset& data, std::size_t k) {
    const KMedoidsConfig cfg{.k = k};
    const auto band = kmedoids(band_distance_matrix(data.series), cfg);
    const auto euclid = kmedoids(lp_distance_matrix(data.series, 2.0), cfg);
    return {rand_index(data.truth, band.partition.labels()), rand_index(data.truth, euclid.partition.labels())};
}

RunOutcome simulation_a_run(std::uint64_t seed) {
    return compare_on(generate_mvn_dataset(design_a_classes(), 10, seed), 2);
}

RunOutcome simulation_b_run(std::uint64_t seed) {
    return compare_on(generate_mvn_dataset(design_b_classes(), 10, seed), 9);
}

LabeledDataset simulation_c_dataset(std::uint64_t seed, const std::vector<std::size_t>& spans) {
    auto raw = generate_arma_dataset(design_c_models(), 15, 144, seed);
    return {periodogram_set(raw.series, spans), std::move(raw.truth)};
}

RunOutcome simulation_c_run(std::uint64_t seed, const std::vector<std::size_t>& spans) {
    return compare_on(simulation_c_dataset(seed, spans), 6);
}

ComparisonResult summarize(std::vector<RunOutcome> outcomes) {
    ComparisonResult result;
    result.runs = outcomes.size();
    for (const auto& o : outcomes) {
        result.rand_band.push_back(o.rand_band);
        result.rand_euclid.push_back(o.rand_euclid);
        result.delta.push_back(o.delta());
    }
    const auto m = static_cast<double>(result.runs);
    double sum = 0.0;
    for (double d : result.delta) sum += d;
    result.mean_delta = sum / m;
    double ss = 0.0;
    for (double d : result.delta) ss += (d - result.mean_delta) * (d - result.mean_delta);
    result.var_delta = result.runs > 1 ? ss / (m - 1.0) : 0.0;
    result.sd_delta = std::sqrt(result.var_delta);
    bool all_equal = true;
    for (double d : result.delta) all_equal = all_equal && d == result.delta.front();
    result.zero_variance = all_equal || result.var_delta == 0.0;
    if (!result.zero_variance) result.z = result.mean_delta / std::sqrt(result.var_delta / m);
    return result;
}

ComparisonResult compare_methods(const RunGenerator& generator, std::size_t runs, std::uint64_t seed) {
    if (runs < 2) throw Error(Errc::invalid_argument, "need at least 2 runs, got " + std::to_string(runs));
    std::vector<RunOutcome> outcomes(runs);
    std::vector<std::exception_ptr> failures(runs);
    const auto n = static_cast<std::ptrdiff_t>(runs);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        const auto run = static_cast<std::size_t>(r);
        try {
            outcomes[run] = generator(derive_seed(seed, run));
        } catch (...) {
            failures[run] = std::current_exception();
        }
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return summarize(std::move(outcomes));
}

}  // namespace banddist::sim
