// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "banddist/band_distance.hpp"
#include "banddist/clustering.hpp"
#include "banddist/csv.hpp"
#include "banddist/pipeline.hpp"
#include "banddist/seasonal.hpp"
#include "banddist/simulation.hpp"
#include "banddist/spectral.hpp"
#include "oracles.hpp"

using namespace banddist;

namespace {

// Pinned tolerances and limits.
constexpr double kTriangleSlack = 1e-12;
constexpr double kMetricSeconds = 30.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kSimASeconds = 300.0;
constexpr double kSimCSeconds = 600.0;
constexpr double kSimAMinZ = 3.0;
constexpr double kSimBMinZ = 5.0;
constexpr double kSimCMinBand = 0.95;
constexpr double kSimCMaxEuclid = 0.92;
constexpr double kSimCMinGap = 0.05;
constexpr double kSimCMinZ = 10.0;
constexpr double kPeakLeakage = 1e-9;
constexpr double kParsevalRel = 1e-9;
constexpr double kSeasonalMeanRel = 1e-6;
constexpr double kSeasonalShift = 1e-9;
constexpr double kSeasonalScaleRel = 1e-12;
constexpr double kSeasonalRoundTrip = 1e-12;
constexpr double kCostTol = 1e-12;
constexpr std::uint64_t kSeed = 7;
constexpr std::size_t kSimRunsAB = 200;
constexpr std::size_t kSimRunsC = 100;
constexpr std::size_t kRestarts = 8;

int failures = 0;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, bool ok, const std::string& title, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

oracle::Rows random_rows(std::mt19937_64& rng, std::size_t n_min, std::size_t n_max, std::size_t t_min,
                         std::size_t t_max) {
    std::uniform_int_distribution<std::size_t> n(n_min, n_max);
    std::uniform_int_distribution<std::size_t> t(t_min, t_max);
    const auto rows_n = n(rng);
    const auto cols = t(rng);
    return oracle::normal_rows(rng, rows_n, cols);
}

void metric_axioms() {
    Timer timer;
    std::mt19937_64 rng(kSeed);
    bool ok = true;
    double worst_slack = -INFINITY;
    std::size_t triples = 0;
    for (int inst = 0; inst < 200; ++inst) {
        const auto rows = random_rows(rng, 3, 10, 1, 12);
        const auto d = band_distance_matrix(validate_set(rows));
        const std::size_t n = rows.size();
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                ok = ok && d(x, y) >= 0.0 && d(x, y) == d(y, x);
                ok = ok && ((d(x, y) == 0.0) == (rows[x] == rows[y]));
                for (std::size_t z = 0; z < n; ++z, ++triples) {
                    const double slack = d(x, z) - d(x, y) - d(y, z);
                    worst_slack = std::max(worst_slack, slack);
                    ok = ok && slack <= kTriangleSlack;
                }
            }
        }
    }
    const double secs = timer.seconds();
    ok = ok && secs < kMetricSeconds;
    report(1, ok, "metric axioms",
           "200 instances, " + std::to_string(triples) + " triples, max(D_xz - D_xy - D_yz) = " + fmt(worst_slack) +
               " (tol " + fmt(kTriangleSlack) + "), " + fmt(secs, 3) + " s (limit " + fmt(kMetricSeconds) + " s)");
}

void oracle_equivalence() {
    Timer timer;
    std::mt19937_64 rng(kSeed + 1);
    int equal = 0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto set = validate_set(random_rows(rng, 2, 12, 1, 20));
        equal += band_distance_matrix(set) == naive_band_distance_matrix(set);
    }
    const double secs = timer.seconds();
    report(2, equal == 50 && secs < kOracleSeconds, "oracle equivalence",
           std::to_string(equal) + "/50 bit-identical (tol 0), " + fmt(secs, 3) + " s (limit " + fmt(kOracleSeconds) +
               " s)");
}

void order_invariance() {
    std::mt19937_64 rng(kSeed + 2);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> slope(0.1, 10.0);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    int equal = 0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto rows = random_rows(rng, 3, 10, 1, 12);
        auto mapped = rows;
        for (std::size_t t = 0; t < rows.front().size(); ++t) {
            const int kind = pick(rng);
            const double a = slope(rng);
            const double b = shift(rng);
            for (auto& r : mapped) {
                const double v = r[t];
                r[t] = kind == 0 ? a * v + b : kind == 1 ? v * v * v + b : std::exp(v);
            }
        }
        equal += band_distance_matrix(validate_set(rows)) == band_distance_matrix(validate_set(mapped));
    }
    report(3, equal == 50, "order-preservation invariance",
           std::to_string(equal) + "/50 unchanged exactly under per-column affine / cube+shift / exp maps");
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::string z_text(const sim::ComparisonResult& r) { return r.z ? fmt(*r.z) : std::string("undefined"); }

void simulations_ab() {
    Timer timer;
    const auto a = sim::compare_methods(sim::simulation_a_run, kSimRunsAB, kSeed);
    const double secs_a = timer.seconds();
    const bool ok_a = a.mean_delta > 0.0 && a.z && *a.z > kSimAMinZ && secs_a < kSimASeconds;
    report(4, ok_a, "simulation A",
           "M=" + std::to_string(kSimRunsAB) + " seed=" + std::to_string(kSeed) + ": mean delta " +
               fmt(a.mean_delta) + ", Z " + z_text(a) + " (need > " + fmt(kSimAMinZ) + "), " +
               fmt(secs_a, 3) + " s");

    Timer timer_b;
    const auto b = sim::compare_methods(sim::simulation_b_run, kSimRunsAB, kSeed);
    const bool ok_b = b.z && *b.z > kSimBMinZ && a.z && *b.z > *a.z;
    report(5, ok_b, "simulation B",
           "M=" + std::to_string(kSimRunsAB) + " seed=" + std::to_string(kSeed) + " (matched with A): mean delta " +
               fmt(b.mean_delta) + ", band Rand " + fmt(mean_of(b.rand_band)) + ", Euclidean Rand " +
               fmt(mean_of(b.rand_euclid)) + ", Z " + z_text(b) + " (need > " + fmt(kSimBMinZ) + " and > Z_A " +
               z_text(a) + "), " + fmt(timer_b.seconds(), 3) + " s");
}

void simulation_c() {
    Timer timer;
    const auto single = sim::simulation_c_run(kSeed);
    bool ok = single.rand_band >= kSimCMinBand && single.rand_euclid <= kSimCMaxEuclid;
    std::string detail = "single run seed=" + std::to_string(kSeed) + ": band Rand " + fmt(single.rand_band) +
                         " (need >= " + fmt(kSimCMinBand) + "), Euclidean Rand " + fmt(single.rand_euclid) +
                         " (need <= " + fmt(kSimCMaxEuclid) + ")";
    for (const std::vector<std::size_t> spans : {std::vector<std::size_t>{5, 5}, std::vector<std::size_t>{9, 9}}) {
        const auto r = sim::compare_methods([&](std::uint64_t s) { return sim::simulation_c_run(s, spans); },
                                            kSimRunsC, kSeed);
        const double gap = mean_of(r.rand_band) - mean_of(r.rand_euclid);
        ok = ok && gap >= kSimCMinGap && r.z && *r.z > kSimCMinZ;
        detail += "; spans (" + std::to_string(spans[0]) + "," + std::to_string(spans[1]) + ") M=" +
                  std::to_string(kSimRunsC) + ": band " + fmt(mean_of(r.rand_band)) + " vs Euclidean " +
                  fmt(mean_of(r.rand_euclid)) + ", gap " + fmt(gap) + ", Z " + z_text(r);
    }
    const double secs = timer.seconds();
    ok = ok && secs < kSimCSeconds;
    report(6, ok, "simulation C", detail + "; " + fmt(secs, 3) + " s");
}

void rand_ari() {
    const std::vector<int> a{1, 1, 2, 2};
    const std::vector<int> b{1, 2, 1, 2};
    const std::vector<int> c{3, 1, 1, 2, 3, 2, 2};
    const double ri = rand_index(a, b);
    const double ari = adjusted_rand_index(a, b);
    const bool identical = rand_index(c, c) == 1.0 && adjusted_rand_index(c, c) == 1.0 && rand_index(a, a) == 1.0 &&
                           adjusted_rand_index(a, a) == 1.0;
    const bool ok = ri == 1.0 / 3.0 && ari == -1.0 / 3.0 && identical;
    report(7, ok, "Rand / ARI",
           "Rand(1122,1212) = " + fmt(ri, 17) + " (expect 1/3), ARI = " + fmt(ari, 17) +
               " (expect -1/3; permutation-model oracle gives " +
               fmt(static_cast<double>(oracle::ari_by_permutation(a, b)), 17) + "), identical partitions -> 1: " +
               (identical ? "yes" : "no"));
}

void spectral() {
    std::vector<double> x(144);
    for (std::size_t t = 0; t < 144; ++t) x[t] = std::cos(2 * std::numbers::pi * 3.0 * static_cast<double>(t) / 144);
    const auto pg = periodogram(x);
    double leak = 0.0;
    for (std::size_t j = 0; j < pg.ordinates.size(); ++j) {
        if (j != 2) leak = std::max(leak, pg.ordinates[j] / pg.ordinates[2]);
    }
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> z;
    double worst = 0.0;
    for (std::size_t n : {2u, 17u, 143u, 144u, 1000u}) {
        std::vector<double> y(n);
        for (auto& v : y) v = 3.0 * z(rng) + 10.0;
        double mean = 0.0;
        for (double v : y) mean += v / static_cast<double>(n);
        double var = 0.0;
        for (double v : y) var += (v - mean) * (v - mean) / static_cast<double>(n);
        worst = std::max(worst, std::abs(periodogram(y).parseval_variance() - var) / var);
    }
    const auto windows = stft_window_count(144, 40, 8);
    const auto img = stft(x, {.window = 40, .hop = 8});
    const bool ok = leak < kPeakLeakage && worst < kParsevalRel && windows == 14 && img.windows == 14;
    report(8, ok, "spectral",
           "cosine off-peak/peak " + fmt(leak) + " (tol " + fmt(kPeakLeakage) + "), Parseval rel. error " + fmt(worst) +
               " (tol " + fmt(kParsevalRel) + "), STFT windows " + std::to_string(img.windows) + " (expect 14)");
}

TimeSeriesSet leap_year_set(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    using namespace std::chrono;
    sys_days d = year_month_day{year{2012}, January, day{1}};
    for (int i = 0; i < 366; ++i, d += days{1}) {
        const year_month_day ymd{d};
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        labels.emplace_back(buf);
        std::vector<double> row(24);
        for (std::size_t t = 0; t < 24; ++t) {
            row[t] = 7.0 + 2.0 * std::cos(2 * std::numbers::pi * i / 366.0) +
                     std::sin(2 * std::numbers::pi * static_cast<double>(t) / 24) + z(rng);
        }
        rows.push_back(std::move(row));
    }
    return validate_set(rows, labels);
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) files[e.path().filename().string()] = csv::read_file(e.path());
    return files;
}

void substitution_properties() {
    // Seasonal self-consistency on a balanced (one day per calendar day) design.
    const auto set = leap_year_set(kSeed);
    const auto surface = fit_seasonal(set);
    const auto residuals = remove_seasonal(set, surface);
    double mean = 0.0;
    for (double v : residuals.values()) mean += v / static_cast<double>(residuals.values().size());
    auto rows = set.to_rows();
    for (auto& r : rows) {
        for (auto& v : r) v += 50.0;
    }
    const auto shifted = validate_set(rows, set.labels());
    const auto shifted_res = remove_seasonal(shifted, fit_seasonal(shifted));
    double shift_err = 0.0;
    for (std::size_t i = 0; i < residuals.values().size(); ++i) {
        shift_err = std::max(shift_err, std::abs(residuals.values()[i] - shifted_res.values()[i]));
    }
    for (auto& r : rows) {
        for (auto& v : r) v = (v - 50.0) * 2.5;
    }
    const auto scaled = fit_seasonal(validate_set(rows, set.labels()));
    double scale_err = 0.0;
    for (std::size_t i = 0; i < scaled.grid().size(); ++i) {
        scale_err = std::max(scale_err, std::abs(scaled.grid()[i] - 2.5 * surface.grid()[i]) / std::abs(scaled.grid()[i]));
    }
    const auto back = add_seasonal(residuals, surface);
    double trip = 0.0;
    for (std::size_t i = 0; i < set.values().size(); ++i) trip = std::max(trip, std::abs(back.values()[i] - set.values()[i]));
    const bool seasonal_ok = std::abs(mean) < kSeasonalMeanRel * 7.0 && shift_err < kSeasonalShift &&
                             scale_err < kSeasonalScaleRel && trip < kSeasonalRoundTrip;

    // Pipeline determinism: two runs of the same config, then a manifest replay.
    const auto dir = std::filesystem::temp_directory_path() / "banddist_acceptance";
    std::filesystem::remove_all(dir);
    std::ostringstream data;
    csv::write_set(data, select_rows(set, std::vector<std::size_t>{150, 151, 152, 153, 154, 155, 156, 157, 158, 159,
                                                                     330, 331, 332, 333, 334, 335, 336, 337, 338, 339}));
    csv::write_file(dir / "days.csv", data.str());
    RunConfig cfg;
    cfg.input = dir / "days.csv";
    cfg.ingest.day_length = 24;
    cfg.detrend = true;
    cfg.bandwidths = {3.0, 90.0};
    cfg.representation = Representation::stft;
    cfg.stft = {.window = 8, .hop = 4, .coefficients = 4};
    cfg.k = 3;
    cfg.output_dir = dir / "out";
    run_pipeline(cfg);
    const auto first = snapshot(cfg.output_dir);
    std::filesystem::remove_all(cfg.output_dir);
    run_pipeline(cfg);
    const bool same = snapshot(cfg.output_dir) == first;
    std::filesystem::copy_file(cfg.output_dir / "manifest.json", dir / "manifest.json");
    std::filesystem::remove_all(cfg.output_dir);
    run_pipeline(load_manifest(dir / "manifest.json"));
    const bool replay = snapshot(cfg.output_dir) == first;
    std::filesystem::remove_all(dir);

    report(9, seasonal_ok && same && replay, "wind-data pipeline (substituted)",
           "external dataset unavailable; substitute properties: residual mean " + fmt(mean) + ", shift invariance " +
               fmt(shift_err) + ", scaling rel. error " + fmt(scale_err) + ", round trip " + fmt(trip) +
               ", pipeline byte-identical rerun: " + (same ? "yes" : "no") + ", manifest replay: " +
               (replay ? "yes" : "no") + " (" + std::to_string(first.size()) + " artifacts)");
}

void kmedoids_optimum() {
    // Reference toys under the default deterministic BUILD start.
    const DistanceMatrix planted(4, {0, 0.1, 1, 1, 0.1, 0, 1, 1, 1, 1, 0, 0.1, 1, 1, 0.1, 0}, DistanceMethod::lp);
    const auto pr = kmedoids(planted, {.k = 2});
    const bool planted_ok = pr.partition.labels() == std::vector<int>{1, 1, 2, 2} && std::abs(pr.cost - 0.2) < kCostTol &&
                            std::abs(pr.cost - oracle::best_medoids(planted, 2).first) < kCostTol;
    const auto zr = kmedoids(DistanceMatrix(4, std::vector<double>(16, 0.0), DistanceMethod::lp), {.k = 2});
    const bool zero_ok = zr.cost == 0.0 && zr.partition.medoids() == std::vector<std::size_t>{0, 1};

    // Every symmetric 4x4 matrix with off-diagonal entries in {1, 2, 3, 4}.
    // SWAP alone is only locally optimal, so the grid is run with restarts.
    const std::size_t pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::size_t with_restarts = 0;
    std::size_t build_only = 0;
    std::size_t total = 0;
    for (int code = 0; code < 4096; ++code) {
        std::vector<double> e(16, 0.0);
        int c = code;
        for (const auto& p : pairs) {
            const double v = 1.0 + c % 4;
            c /= 4;
            e[p[0] * 4 + p[1]] = e[p[1] * 4 + p[0]] = v;
        }
        const DistanceMatrix d(4, e, DistanceMethod::lp);
        const double best = oracle::best_medoids(d, 2).first;
        with_restarts += std::abs(kmedoids(d, {.k = 2, .seed = kSeed, .restarts = kRestarts}).cost - best) <= kCostTol;
        build_only += std::abs(kmedoids(d, {.k = 2}).cost - best) <= kCostTol;
        ++total;
    }

    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t steps = 0;
    bool monotone = true;
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t n = 8 + inst % 25;
        std::vector<double> e(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) e[i * n + j] = e[j * n + i] = u(rng);
        }
        const auto r = kmedoids(DistanceMatrix(n, e, DistanceMethod::lp), {.k = static_cast<std::size_t>(2 + inst % 5)});
        for (std::size_t i = 1; i < r.cost_history.size(); ++i, ++steps) {
            monotone = monotone && r.cost_history[i] <= r.cost_history[i - 1];
        }
    }
    report(10, planted_ok && zero_ok && with_restarts == total && monotone, "k-medoids optimum and monotone cost",
           std::string("reference toys at the exhaustive optimum: ") + (planted_ok && zero_ok ? "yes" : "no") + "; " +
               std::to_string(with_restarts) + "/" + std::to_string(total) + " grid matrices optimal with " +
               std::to_string(kRestarts) + " restarts (BUILD start alone: " + std::to_string(build_only) + "/" +
               std::to_string(total) + ", tol " + fmt(kCostTol) + "); cost non-increasing over " +
               std::to_string(steps) + " swap steps in 200 runs: " + (monotone ? "yes" : "no"));
}

void guarded(const std::function<void()>& criterion, int id) {
    try {
        criterion();
    } catch (const std::exception& e) {
        report(id, false, "exception", e.what());
    }
}

}  // namespace

int main() {
    guarded(metric_axioms, 1);
    guarded(oracle_equivalence, 2);
    guarded(order_invariance, 3);
    guarded(simulations_ab, 4);
    guarded(simulation_c, 6);
    guarded(rand_ari, 7);
    guarded(spectral, 8);
    guarded(substitution_properties, 9);
    guarded(kmedoids_optimum, 10);
    std::printf("%d criterion line(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
