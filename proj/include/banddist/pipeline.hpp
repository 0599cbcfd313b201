#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "banddist/core.hpp"
#include "banddist/seasonal.hpp"
#include "banddist/spectral.hpp"

namespace banddist {

enum class Command { distances, cluster, simulate, detrend, stft, pgram, report };
enum class Representation { raw, stft, pgram };
enum class IngestFormat { matrix, wide, long_format };

const char* command_name(Command c) noexcept;
Command parse_command(std::string_view text);
Representation parse_representation(std::string_view text);
IngestFormat parse_ingest_format(std::string_view text);

/// Distance selection as written on the command line: "band", "lp:P" or
/// "pidist:K,P" (K = 0 picks the default group count).
struct MethodSpec {
    DistanceMethod method = DistanceMethod::band;
    double p = 2.0;
    std::size_t groups = 0;

    std::string key() const;
};

MethodSpec parse_method(std::string_view text);
DistanceMatrix compute_distances(const TimeSeriesSet& set, const MethodSpec& method);

struct WindIngestSpec {
    IngestFormat format = IngestFormat::wide;
    std::size_t day_length = 144;
};

/// wide: one day per row with its date in the first column. long: rows of
/// "timestamp,value" grouped into complete days. matrix: any numeric CSV.
/// Rows come back sorted by date (wide/long).
TimeSeriesSet ingest(const WindIngestSpec& spec, const std::filesystem::path& path);
TimeSeriesSet ingest_text(const WindIngestSpec& spec, std::string_view text);

/// Days 1..15 of June and December, in input order.
TimeSeriesSet paper_sample(const TimeSeriesSet& set);

struct RunConfig {
    Command command = Command::cluster;
    std::filesystem::path input;
    std::filesystem::path output_dir = "out";
    WindIngestSpec ingest;
    bool paper_sample = false;

    bool detrend = false;
    SeasonalBandwidths bandwidths;

    Representation representation = Representation::raw;
    StftParams stft;
    bool augment_mean = false;
    std::vector<std::size_t> spans{9, 9};

    MethodSpec method;
    std::size_t k = 6;
    std::uint64_t seed = 0;
    std::size_t restarts = 0;
    std::filesystem::path cache_dir;

    char design = 'a';
    std::size_t runs = 200;
};

/// Canonical JSON for a config (stable key order).
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(std::string_view text);

/// Reads the "config" object of a manifest written by run_pipeline and checks
/// that the recorded input hash still matches the file.
RunConfig load_manifest(const std::filesystem::path& manifest);

struct PipelineResult {
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> warnings;
};

/// Runs one command end to end and writes its artifacts plus manifest.json
/// into cfg.output_dir. Errors carry the failing stage in their message.
PipelineResult run_pipeline(const RunConfig& cfg);

/// Report files derived from a cluster run in `dir`: cluster_summary.csv,
/// medoid_series.csv, cluster_lines.csv and, for STFT runs,
/// stft_medoid_<c>.csv. Throws Errc::missing_artifact.
std::vector<std::filesystem::path> emit_report(const std::filesystem::path& dir);

}  // namespace banddist
