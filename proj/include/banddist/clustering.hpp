#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "banddist/core.hpp"

namespace banddist {

struct KMedoidsConfig {
    std::size_t k = 2;
    std::size_t max_iterations = 100;
    std::uint64_t seed = 0;
    /// Extra runs from seeded random medoids; the BUILD start is always run
    /// and wins ties on cost.
    std::size_t restarts = 0;
};

struct KMedoidsResult {
    Partition partition;
    double cost;
    /// Total cost after BUILD, then after every accepted swap.
    std::vector<double> cost_history;
    std::size_t iterations;
    bool converged;
};

/// PAM: greedy BUILD followed by best-improvement SWAP. Ties go to the lowest
/// index everywhere. Cluster ids follow ascending medoid index.
KMedoidsResult kmedoids(const DistanceMatrix& dist, const KMedoidsConfig& cfg);

/// Sum over observations of the distance to the nearest of `medoids`.
double medoid_cost(const DistanceMatrix& dist, std::span<const std::size_t> medoids);

struct KMeansResult {
    Partition partition;
    std::vector<std::vector<double>> centroids;
    std::size_t iterations;
};

/// Lloyd's iterations from k distinct seeded rows. An empty cluster is
/// re-seeded with the point farthest from its current centroid.
KMeansResult kmeans(const TimeSeriesSet& set, std::size_t k, std::uint64_t seed, std::size_t max_iterations = 100);

/// Fraction of observation pairs on which the two labelings agree. Returns 1
/// for fewer than two observations.
double rand_index(std::span<const int> a, std::span<const int> b);

/// Hubert-Arabie adjusted Rand index. When the expected index equals its
/// maximum the ratio is undefined; returns 1 for identical partitions and 0
/// otherwise.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace banddist
