#include "banddist/clustering.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>

namespace banddist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nearest and second-nearest medoid distance per observation; `nearest` holds
// the position in the (ascending) medoid list.
struct NearestTable {
    std::vector<std::size_t> nearest;
    std::vector<double> first;
    std::vector<double> second;
};

NearestTable nearest_table(const DistanceMatrix& dist, const std::vector<std::size_t>& medoids) {
    const std::size_t n = dist.size();
    NearestTable tab{std::vector<std::size_t>(n, 0), std::vector<double>(n, kInf), std::vector<double>(n, kInf)};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            const double d = dist(j, medoids[m]);
            if (d < tab.first[j]) {
                tab.second[j] = tab.first[j];
                tab.first[j] = d;
                tab.nearest[j] = m;
            } else if (d < tab.second[j]) {
                tab.second[j] = d;
            }
        }
    }
    return tab;
}

std::vector<std::size_t> build_medoids(const DistanceMatrix& dist, std::size_t k) {
    const std::size_t n = dist.size();
    std::vector<std::size_t> medoids;
    std::vector<bool> chosen(n, false);

    std::size_t first = 0;
    double best = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) total += dist(i, j);
        if (total < best) {
            best = total;
            first = i;
        }
    }
    medoids.push_back(first);
    chosen[first] = true;
    std::vector<double> nearest(n);
    for (std::size_t j = 0; j < n; ++j) nearest[j] = dist(j, first);

    while (medoids.size() < k) {
        std::size_t pick = n;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            double gain = 0.0;
            for (std::size_t j = 0; j < n; ++j) gain += std::max(nearest[j] - dist(j, i), 0.0);
            if (gain > best_gain) {
                best_gain = gain;
                pick = i;
            }
        }
        medoids.push_back(pick);
        chosen[pick] = true;
        for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], dist(j, pick));
    }
    std::sort(medoids.begin(), medoids.end());
    return medoids;
}

struct SwapOutcome {
    std::vector<std::size_t> medoids;
    double cost;
    std::vector<double> history;
    std::size_t iterations;
    bool converged;
};

SwapOutcome swap_phase(const DistanceMatrix& dist, std::vector<std::size_t> medoids, std::size_t max_iterations) {
    const std::size_t n = dist.size();
    SwapOutcome out{{}, medoid_cost(dist, medoids), {}, 0, false};
    out.history.push_back(out.cost);

    std::vector<bool> is_medoid(n, false);
    for (auto m : medoids) is_medoid[m] = true;

    while (out.iterations < max_iterations) {
        const auto tab = nearest_table(dist, medoids);
        double best_delta = 0.0;
        std::size_t best_pos = 0;
        std::size_t best_candidate = n;
        for (std::size_t pos = 0; pos < medoids.size(); ++pos) {
            for (std::size_t h = 0; h < n; ++h) {
                if (is_medoid[h]) continue;
                double delta = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double dh = dist(j, h);
                    if (tab.nearest[j] == pos) {
                        delta += std::min(tab.second[j], dh) - tab.first[j];
                    } else if (dh < tab.first[j]) {
                        delta += dh - tab.first[j];
                    }
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_pos = pos;
                    best_candidate = h;
                }
            }
        }
        const double tolerance = 1e-12 * std::max(1.0, out.cost);
        if (best_candidate == n || best_delta >= -tolerance) {
            out.converged = true;
            break;
        }
        is_medoid[medoids[best_pos]] = false;
        is_medoid[best_candidate] = true;
        medoids[best_pos] = best_candidate;
        std::sort(medoids.begin(), medoids.end());
        ++out.iterations;

        const double cost = medoid_cost(dist, medoids);
        assert(cost <= out.cost + tolerance && "PAM swap increased the total cost");
        out.cost = cost;
        out.history.push_back(cost);
    }
    out.medoids = std::move(medoids);
    return out;
}

Partition assign_to_medoids(const DistanceMatrix& dist, const std::vector<std::size_t>& medoids) {
    const std::size_t n = dist.size();
    std::vector<int> labels(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        double best = kInf;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            if (dist(j, medoids[m]) < best) {
                best = dist(j, medoids[m]);
                labels[j] = static_cast<int>(m + 1);
            }
        }
    }
    // A medoid always belongs to its own cluster, even when an earlier medoid
    // is at distance zero.
    for (std::size_t m = 0; m < medoids.size(); ++m) labels[medoids[m]] = static_cast<int>(m + 1);
    return Partition(std::move(labels), medoids.size(), medoids);
}

void check_lengths(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw Error(Errc::length_mismatch,
                    "label sequences differ in length: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

double choose2(double n) { return n * (n - 1.0) / 2.0; }

struct Contingency {
    double sum_cells = 0.0;  // sum over cells of C(n_ij, 2)
    double sum_rows = 0.0;   // sum over a-clusters of C(a_i, 2)
    double sum_cols = 0.0;   // sum over b-clusters of C(b_j, 2)
    double pairs = 0.0;      // C(n, 2)
};

Contingency contingency(std::span<const int> a, std::span<const int> b) {
    std::map<std::pair<int, int>, std::size_t> cells;
    std::map<int, std::size_t> rows;
    std::map<int, std::size_t> cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++cells[{a[i], b[i]}];
        ++rows[a[i]];
        ++cols[b[i]];
    }
    Contingency c;
    for (const auto& [key, count] : cells) c.sum_cells += choose2(static_cast<double>(count));
    for (const auto& [key, count] : rows) c.sum_rows += choose2(static_cast<double>(count));
    for (const auto& [key, count] : cols) c.sum_cols += choose2(static_cast<double>(count));
    c.pairs = choose2(static_cast<double>(a.size()));
    return c;
}

}  // namespace

double medoid_cost(const DistanceMatrix& dist, std::span<const std::size_t> medoids) {
    double total = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) {
        double best = kInf;
        for (auto m : medoids) best = std::min(best, dist(j, m));
        total += best;
    }
    return total;
}

KMedoidsResult kmedoids(const DistanceMatrix& dist, const KMedoidsConfig& cfg) {
    const std::size_t n = dist.size();
    if (cfg.k == 0) throw Error(Errc::invalid_argument, "k must be positive");
    if (cfg.k > n) throw Error(Errc::k_too_large, "k = " + std::to_string(cfg.k) + " exceeds N = " + std::to_string(n));

    auto best = swap_phase(dist, build_medoids(dist, cfg.k), cfg.max_iterations);

    if (cfg.restarts > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::vector<std::size_t> order(n);
        for (std::size_t r = 0; r < cfg.restarts; ++r) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<std::size_t> start(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cfg.k));
            std::sort(start.begin(), start.end());
            auto candidate = swap_phase(dist, std::move(start), cfg.max_iterations);
            if (candidate.cost < best.cost - 1e-12 * std::max(1.0, best.cost)) best = std::move(candidate);
        }
    }
    return {assign_to_medoids(dist, best.medoids), best.cost, std::move(best.history), best.iterations,
            best.converged};
}

KMeansResult kmeans(const TimeSeriesSet& set, std::size_t k, std::uint64_t seed, std::size_t max_iterations) {
    const std::size_t n = set.size();
    const std::size_t dims = set.length();
    if (k == 0) throw Error(Errc::invalid_argument, "k must be positive");
    if (k > n) throw Error(Errc::k_too_large, "k = " + std::to_string(k) + " exceeds N = " + std::to_string(n));

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::vector<double>> centroids(k);
    for (std::size_t c = 0; c < k; ++c) {
        auto row = set.row(order[c]);
        centroids[c].assign(row.begin(), row.end());
    }

    auto sq_dist = [&](std::size_t i, const std::vector<double>& centroid) {
        double acc = 0.0;
        for (std::size_t t = 0; t < dims; ++t) acc += (set(i, t) - centroid[t]) * (set(i, t) - centroid[t]);
        return acc;
    };

    std::vector<std::size_t> assignment(n, k);
    std::size_t iterations = 0;
    while (iterations < max_iterations) {
        ++iterations;
        std::vector<std::size_t> next(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            double best = kInf;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = sq_dist(i, centroids[c]);
                if (d < best) {
                    best = d;
                    next[i] = c;
                }
            }
        }

        std::vector<std::size_t> counts(k, 0);
        for (auto c : next) ++counts[c];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            // Farthest point among clusters that can spare one.
            std::size_t donor = n;
            double far = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[next[i]] < 2) continue;
                const double d = sq_dist(i, centroids[next[i]]);
                if (d > far) {
                    far = d;
                    donor = i;
                }
            }
            --counts[next[donor]];
            next[donor] = c;
            counts[c] = 1;
        }

        for (std::size_t c = 0; c < k; ++c) std::fill(centroids[c].begin(), centroids[c].end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < dims; ++t) centroids[next[i]][t] += set(i, t);
        }
        for (std::size_t c = 0; c < k; ++c) {
            for (auto& v : centroids[c]) v /= static_cast<double>(counts[c]);
        }

        const bool stable = next == assignment;
        assignment = std::move(next);
        if (stable) break;
    }

    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(assignment[i] + 1);
    return {Partition(std::move(labels), k), std::move(centroids), iterations};
}

double rand_index(std::span<const int> a, std::span<const int> b) {
    check_lengths(a, b);
    if (a.size() < 2) return 1.0;
    const auto c = contingency(a, b);
    // agreements = pairs together in both + pairs apart in both
    const double agree = c.pairs + 2.0 * c.sum_cells - c.sum_rows - c.sum_cols;
    return agree / c.pairs;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    check_lengths(a, b);
    const auto c = contingency(a, b);
    const double expected = c.pairs == 0.0 ? 0.0 : c.sum_rows * c.sum_cols / c.pairs;
    const double maximum = 0.5 * (c.sum_rows + c.sum_cols);
    if (maximum == expected) {
        const bool identical = c.sum_cells == c.sum_rows && c.sum_cells == c.sum_cols;
        return identical ? 1.0 : 0.0;
    }
    return (c.sum_cells - expected) / (maximum - expected);
}

}  // namespace banddist
