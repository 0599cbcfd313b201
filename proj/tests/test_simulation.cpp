#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "banddist/band_distance.hpp"
#include "banddist/clustering.hpp"
#include "banddist/simulation.hpp"
#include "banddist/spectral.hpp"

using namespace banddist;
using namespace banddist::sim;

TEST(Mvn, CovarianceEntries) {
    const auto spec = design_a_classes().front();
    const auto cov = spec.covariance();
    EXPECT_EQ(cov[4 * 15 + 4], 3.0);
    EXPECT_NEAR(cov[3 * 15 + 4], std::sqrt(3.0) * 0.9, 1e-15);
    EXPECT_EQ(cov[3 * 15 + 4], cov[4 * 15 + 3]);
}

TEST(Mvn, CholeskyReconstructs) {
    for (const auto& spec : design_b_classes()) {
        const auto cov = spec.covariance();
        const auto l = cholesky(cov, 15);
        double worst = 0.0;
        for (std::size_t i = 0; i < 15; ++i) {
            for (std::size_t j = 0; j < 15; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < 15; ++k) acc += l[i * 15 + k] * l[j * 15 + k];
                worst = std::max(worst, std::abs(acc - cov[i * 15 + j]));
            }
        }
        EXPECT_LT(worst, 1e-10);
    }
}

TEST(Mvn, NotPositiveDefinite) {
    try {
        cholesky({1, 2, 2, 1}, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_positive_definite);
    }
}

TEST(Mvn, IndependentWhenRhoZero) {
    const MvnClassSpec spec{std::vector<double>(3, 0.0), {1, 4, 9}, 0.0};
    const auto rows = sample_mvn(spec, 2000, 11);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
            double sab = 0, saa = 0, sbb = 0;
            for (const auto& r : rows) {
                sab += r[a] * r[b];
                saa += r[a] * r[a];
                sbb += r[b] * r[b];
            }
            EXPECT_LT(std::abs(sab / std::sqrt(saa * sbb)), 0.1);
        }
    }
}

TEST(Mvn, EmpiricalMeanWithinClt) {
    const auto spec = design_a_classes().back();
    const auto rows = sample_mvn(spec, 5000, 12);
    for (std::size_t i = 0; i < 15; ++i) {
        double mean = 0.0;
        for (const auto& r : rows) mean += r[i] / 5000.0;
        EXPECT_LT(std::abs(mean - spec.mean[i]), 3.0 * std::sqrt(spec.sigma2[i] / 5000.0));
    }
}

TEST(Mvn, Deterministic) {
    const auto spec = design_a_classes().front();
    EXPECT_EQ(sample_mvn(spec, 5, 3), sample_mvn(spec, 5, 3));
    EXPECT_NE(sample_mvn(spec, 5, 3), sample_mvn(spec, 5, 4));
}

TEST(Arma, StationarityCheck) {
    EXPECT_NO_THROW(check_stationary({{0.9, -0.8}, {}, 1.0}));
    try {
        check_stationary({{1.0}, {}, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_stationary);
    }
    EXPECT_THROW(check_stationary({{0.5, 0.6}, {}, 1.0}), Error);
    EXPECT_THROW(check_stationary({{}, {}, 0.0}), Error);
    for (const auto& m : design_c_models()) EXPECT_NO_THROW(check_stationary(m));
}

TEST(Arma, Ma1LagOneAutocorrelation) {
    std::mt19937_64 rng(13);
    const auto x = simulate_arma({{}, {0.5}, 1.0}, 2000, rng);
    double mean = 0.0;
    for (double v : x) mean += v / 2000.0;
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        c0 += (x[t] - mean) * (x[t] - mean);
        if (t > 0) c1 += (x[t] - mean) * (x[t - 1] - mean);
    }
    EXPECT_NEAR(c1 / c0, 0.4, 0.1);
}

TEST(Arma, Ma1DensityClosedForm) {
    const ArmaSpec ma1{{}, {0.5}, 1.0};
    for (double w : {0.0, 0.7, 2.0, std::numbers::pi}) {
        EXPECT_NEAR(arma_spectral_density(ma1, w), (1.25 + std::cos(w)) / (2 * std::numbers::pi), 1e-14);
    }
}

TEST(Arma, Ar2PeakLocation) {
    const ArmaSpec ar2{{0.9, -0.8}, {}, 1.0};
    double best_w = 0.0, best = 0.0;
    for (int i = 0; i <= 200000; ++i) {
        const double w = std::numbers::pi * i / 200000.0;
        const double f = arma_spectral_density(ar2, w);
        if (f > best) {
            best = f;
            best_w = w;
        }
    }
    // cos w* = -phi1 (1 - phi2) / (4 phi2)
    EXPECT_NEAR(std::cos(best_w), -0.9 * 1.8 / (4 * -0.8), 1e-4);
    EXPECT_GT(best_w, 0.0);
    EXPECT_LT(best_w, std::numbers::pi);
}

TEST(Arma, SmoothedPeriodogramTracksDensity) {
    // Class mean of smoothed periodograms vs 2 pi f at the Fourier frequencies.
    const ArmaSpec ma1{{}, {0.5}, 1.0};
    std::mt19937_64 rng(14);
    std::vector<double> mean(72, 0.0);
    const std::vector<std::size_t> spans{9, 9};
    for (int rep = 0; rep < 400; ++rep) {
        const auto pg = daniell_smooth(periodogram(simulate_arma(ma1, 144, rng)), spans);
        for (std::size_t j = 0; j < 72; ++j) mean[j] += pg.ordinates[j] / 400.0;
    }
    for (std::size_t j = 5; j < 67; ++j) {
        const double w = 2 * std::numbers::pi * static_cast<double>(j + 1) / 144.0;
        const double want = 2 * std::numbers::pi * arma_spectral_density(ma1, w);
        EXPECT_NEAR(mean[j], want, 0.1 * want);
    }
}

TEST(Datasets, ShapesAndTruth) {
    const auto a = generate_mvn_dataset(design_a_classes(), 10, 1);
    EXPECT_EQ(a.series.size(), 20u);
    EXPECT_EQ(a.truth, (std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}));
    const auto b = generate_mvn_dataset(design_b_classes(), 10, 1);
    EXPECT_EQ(b.series.size(), 90u);
    EXPECT_EQ(std::set<int>(b.truth.begin(), b.truth.end()).size(), 9u);
    const auto c = simulation_c_dataset(1);
    EXPECT_EQ(c.series.size(), 90u);
    EXPECT_EQ(c.series.length(), 72u);
}

TEST(Datasets, Deterministic) {
    EXPECT_EQ(generate_mvn_dataset(design_b_classes(), 10, 5).series,
              generate_mvn_dataset(design_b_classes(), 10, 5).series);
    EXPECT_EQ(simulation_c_dataset(5).series, simulation_c_dataset(5).series);
    const auto r1 = simulation_a_run(9);
    const auto r2 = simulation_a_run(9);
    EXPECT_EQ(r1.rand_band, r2.rand_band);
    EXPECT_EQ(r1.rand_euclid, r2.rand_euclid);
}

TEST(Datasets, IndistinguishableClassesLookLikeChance) {
    const auto spec = design_a_classes().front();
    double ari = 0.0;
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto data = generate_mvn_dataset({spec, spec}, 10, s);
        const auto fit = kmedoids(band_distance_matrix(data.series), {.k = 2});
        ari += adjusted_rand_index(data.truth, fit.partition.labels()) / 40.0;
    }
    EXPECT_LT(std::abs(ari), 0.1);
}

TEST(Compare, OneErrorDelta) {
    std::vector<int> truth(20, 1);
    std::fill(truth.begin() + 10, truth.end(), 2);
    auto one_off = truth;
    one_off[0] = 2;
    // 11 vs 9: misplaced point disagrees with 9 + 10 pairs out of 190
    EXPECT_DOUBLE_EQ(1.0 - rand_index(truth, one_off), 19.0 / 190.0);
}

TEST(Compare, SummaryMatchesRecomputation) {
    const auto r = compare_methods(simulation_a_run, 12, 3);
    double mean = 0.0;
    for (double d : r.delta) mean += d;
    mean /= 12.0;
    double var = 0.0;
    for (double d : r.delta) var += (d - mean) * (d - mean);
    var /= 11.0;
    EXPECT_EQ(r.mean_delta, mean);
    EXPECT_EQ(r.var_delta, var);
    for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(r.delta[i], r.rand_band[i] - r.rand_euclid[i]);
    if (!r.zero_variance) {
        EXPECT_EQ(*r.z, mean / std::sqrt(var / 12.0));
    }
    const auto again = compare_methods(simulation_a_run, 12, 3);
    EXPECT_EQ(again.delta, r.delta);
}

TEST(Compare, ZeroVarianceFlag) {
    const auto r = compare_methods([](std::uint64_t) { return RunOutcome{0.9, 0.9}; }, 5, 0);
    EXPECT_TRUE(r.zero_variance);
    EXPECT_FALSE(r.z.has_value());
    EXPECT_EQ(r.mean_delta, 0.0);
    EXPECT_THROW(compare_methods(simulation_a_run, 1, 0), Error);
}

TEST(Compare, ErrorsPropagate) {
    EXPECT_THROW(compare_methods([](std::uint64_t) -> RunOutcome { throw Error(Errc::invalid_argument, "x"); }, 3, 0),
                 Error);
}

TEST(Seeds, DistinctAcrossRunsAndBases) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s) {
        for (std::uint64_t r = 0; r < 200; ++r) seen.insert(derive_seed(s, r));
    }
    EXPECT_EQ(seen.size(), 800u);
}
