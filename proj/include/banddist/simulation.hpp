#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "banddist/core.hpp"

namespace banddist::sim {

/// splitmix64(splitmix64(seed) ^ index). Run r of a comparison uses
/// derive_seed(seed, r), so results do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Multivariate normal class with covariance sigma_i sigma_j rho^|i-j|.
struct MvnClassSpec {
    std::vector<double> mean;
    std::vector<double> sigma2;
    double rho = 0.9;

    /// Row-major d x d covariance matrix.
    std::vector<double> covariance() const;
};

/// Lower Cholesky factor (row-major). Throws Errc::not_positive_definite.
std::vector<double> cholesky(const std::vector<double>& matrix, std::size_t dim);

/// n draws from N(mean, covariance) as rows.
std::vector<std::vector<double>> sample_mvn(const MvnClassSpec& spec, std::size_t n, std::mt19937_64& rng);
std::vector<std::vector<double>> sample_mvn(const MvnClassSpec& spec, std::size_t n, std::uint64_t seed);

/// x_t = sum phi_i x_{t-i} + e_t + sum theta_j e_{t-j}, e ~ N(0, noise_variance).
struct ArmaSpec {
    std::vector<double> ar;
    std::vector<double> ma;
    double noise_variance = 1.0;
};

/// Throws Errc::not_stationary unless every root of the AR polynomial lies
/// outside the unit circle, Errc::invalid_argument for non-positive variance.
void check_stationary(const ArmaSpec& spec);

/// Closed-form spectral density f(w) = s2 / (2 pi) |theta(e^-iw)|^2 / |phi(e^-iw)|^2,
/// w in radians per sample.
double arma_spectral_density(const ArmaSpec& spec, double omega);

inline constexpr std::size_t kArmaBurnIn = 500;

std::vector<double> simulate_arma(const ArmaSpec& spec, std::size_t length, std::mt19937_64& rng,
                                  std::size_t burn_in = kArmaBurnIn);

/// Class specifications of the three designs.
std::vector<MvnClassSpec> design_a_classes();
std::vector<MvnClassSpec> design_b_classes();
std::vector<ArmaSpec> design_c_models();

/// Observations drawn per class, class after class; truth ids are 1-based.
LabeledDataset generate_mvn_dataset(const std::vector<MvnClassSpec>& classes, std::size_t per_class,
                                    std::uint64_t seed);
/// Raw ARMA realizations, model after model.
LabeledDataset generate_arma_dataset(const std::vector<ArmaSpec>& models, std::size_t per_model, std::size_t length,
                                     std::uint64_t seed);

struct RunOutcome {
    double rand_band;
    double rand_euclid;

    double delta() const noexcept { return rand_band - rand_euclid; }
};

/// Clusters one labeled dataset with k-medoids under band and Euclidean
/// distance and scores each partition against the truth.
RunOutcome compare_on(const LabeledDataset& data, std::size_t k);

/// 10 observations per class, k = 2.
RunOutcome simulation_a_run(std::uint64_t seed);
/// 10 observations per class, 9 classes, k = 9.
RunOutcome simulation_b_run(std::uint64_t seed);
/// 15 realizations of each ARMA model, T = 144, smoothed periodograms, k = 6.
RunOutcome simulation_c_run(std::uint64_t seed, const std::vector<std::size_t>& spans = {9, 9});
/// The smoothed periodogram dataset simulation_c_run clusters.
LabeledDataset simulation_c_dataset(std::uint64_t seed, const std::vector<std::size_t>& spans = {9, 9});

struct ComparisonResult {
    std::vector<double> rand_band;
    std::vector<double> rand_euclid;
    std::vector<double> delta;
    double mean_delta = 0.0;
    double var_delta = 0.0;  // sample variance, divisor M - 1
    double sd_delta = 0.0;
    /// mean / sqrt(var / M); empty when every delta is identical.
    std::optional<double> z;
    bool zero_variance = false;
    std::size_t runs = 0;
};

using RunGenerator = std::function<RunOutcome(std::uint64_t run_seed)>;

/// Runs the generator M times with derived seeds and aggregates delta = band
/// minus Euclidean Rand index. Throws Errc::invalid_argument for M < 2.
ComparisonResult compare_methods(const RunGenerator& generator, std::size_t runs, std::uint64_t seed);

/// Aggregates stored per-run outcomes in order.
ComparisonResult summarize(std::vector<RunOutcome> outcomes);

}  // namespace banddist::sim
