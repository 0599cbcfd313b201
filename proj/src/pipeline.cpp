#include "banddist/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "banddist/band_distance.hpp"
#include "banddist/baselines.hpp"
#include "banddist/clustering.hpp"
#include "banddist/csv.hpp"
#include "banddist/distance_cache.hpp"
#include "banddist/simulation.hpp"

namespace banddist {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kMonthNames[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                       "jul", "aug", "sep", "oct", "nov", "dec"};

const char* representation_name(Representation r) {
    switch (r) {
        case Representation::raw: return "raw";
        case Representation::stft: return "stft";
        case Representation::pgram: return "pgram";
    }
    return "raw";
}

const char* format_name(IngestFormat f) {
    switch (f) {
        case IngestFormat::matrix: return "matrix";
        case IngestFormat::wide: return "wide";
        case IngestFormat::long_format: return "long";
    }
    return "matrix";
}

const char* taper_name(Taper t) {
    switch (t) {
        case Taper::hanning: return "hanning";
        case Taper::hamming: return "hamming";
        case Taper::rectangular: return "rectangular";
    }
    return "hanning";
}

Taper parse_taper(std::string_view s) {
    if (s == "hanning") return Taper::hanning;
    if (s == "hamming") return Taper::hamming;
    if (s == "rectangular") return Taper::rectangular;
    throw Error(Errc::invalid_argument, "unknown taper '" + std::string(s) + "'");
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(Errc::invalid_argument, std::string("bad ") + what + " '" + std::string(s) + "'");
    }
    return value;
}

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        std::string_view msg = e.what();
        const std::string prefix = std::string(errc_name(e.code())) + ": ";
        if (msg.starts_with(prefix)) msg.remove_prefix(prefix.size());
        throw Error(e.code(), std::string(name) + ": " + std::string(msg));
    } catch (const std::exception& e) {
        throw Error(Errc::invalid_argument, std::string(name) + ": " + e.what());
    }
}

std::string set_csv(const TimeSeriesSet& set, std::string_view prefix = "t") {
    std::ostringstream out;
    csv::write_set(out, set, true, prefix);
    return out.str();
}

bool all_dated(const TimeSeriesSet& set) {
    if (!set.has_labels()) return false;
    return std::all_of(set.labels().begin(), set.labels().end(),
                       [](const std::string& l) { return parse_date(l).has_value(); });
}

TimeSeriesSet sort_by_date(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& labels) {
    std::vector<std::pair<CalendarDate, std::size_t>> order;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto date = parse_date(labels[i]);
        if (!date) throw Error(Errc::parse_error, "row " + std::to_string(i + 1) + ": '" + labels[i] + "' is not a date");
        order.emplace_back(*date, i);
    }
    std::stable_sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (order[i].first == order[i - 1].first) {
            throw Error(Errc::parse_error, "duplicate date " + labels[order[i].second]);
        }
    }
    std::vector<std::vector<double>> sorted_rows;
    std::vector<std::string> sorted_labels;
    for (const auto& [date, i] : order) {
        sorted_rows.push_back(rows[i]);
        sorted_labels.push_back(labels[i].substr(0, 10));
    }
    return validate_set(sorted_rows, std::move(sorted_labels));
}

TimeSeriesSet ingest_wide(const WindIngestSpec& spec, std::string_view text) {
    auto table = csv::parse(text);
    if (table.labels.size() != table.rows.size()) throw Error(Errc::parse_error, "wide format needs a date column");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != spec.day_length) {
            throw Error(Errc::ragged_rows, "day " + table.labels[i] + " has " + std::to_string(table.rows[i].size()) +
                                               " readings, expected " + std::to_string(spec.day_length));
        }
    }
    return sort_by_date(table.rows, table.labels);
}

TimeSeriesSet ingest_long(const WindIngestSpec& spec, std::string_view text) {
    auto table = csv::parse(text);
    if (table.labels.size() != table.rows.size()) throw Error(Errc::parse_error, "long format needs a timestamp column");
    // date -> (time part, value), ordered by timestamp text within a day
    std::map<std::string, std::vector<std::pair<std::string, double>>> days;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& stamp = table.labels[i];
        if (table.rows[i].size() != 1) {
            throw Error(Errc::parse_error, "timestamp " + stamp + ": expected exactly one value");
        }
        if (!parse_date(stamp)) throw Error(Errc::parse_error, "'" + stamp + "' is not a timestamp");
        days[stamp.substr(0, 10)].emplace_back(stamp.size() > 11 ? stamp.substr(11) : std::string(),
                                               table.rows[i][0]);
    }
    std::string bad;
    for (const auto& [date, readings] : days) {
        if (readings.size() != spec.day_length) {
            bad += (bad.empty() ? "" : ", ") + date + " (" + std::to_string(readings.size()) + ")";
        }
    }
    if (!bad.empty()) {
        throw Error(Errc::incomplete_day,
                    "days without exactly " + std::to_string(spec.day_length) + " readings: " + bad);
    }
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (auto& [date, readings] : days) {
        std::stable_sort(readings.begin(), readings.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<double> row;
        for (const auto& r : readings) row.push_back(r.second);
        rows.push_back(std::move(row));
        labels.push_back(date);
    }
    return sort_by_date(rows, labels);
}

json stft_json(const StftParams& p) {
    return {{"window", p.window},       {"hop", p.hop},
            {"coefficients", p.coefficients}, {"taper", taper_name(p.taper)},
            {"floor_eps", p.floor_eps}, {"normalize_variance", p.normalize_variance}};
}

json config_json(const RunConfig& cfg) {
    json j;
    j["command"] = command_name(cfg.command);
    j["input"] = cfg.input.generic_string();
    j["output_dir"] = cfg.output_dir.generic_string();
    j["format"] = format_name(cfg.ingest.format);
    j["day_length"] = cfg.ingest.day_length;
    j["paper_sample"] = cfg.paper_sample;
    j["detrend"] = cfg.detrend;
    j["bandwidths"] = {{"time_of_day", cfg.bandwidths.time_of_day}, {"day_of_year", cfg.bandwidths.day_of_year}};
    j["representation"] = representation_name(cfg.representation);
    j["stft"] = stft_json(cfg.stft);
    j["augment_mean"] = cfg.augment_mean;
    j["spans"] = cfg.spans;
    j["method"] = cfg.method.key();
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["restarts"] = cfg.restarts;
    j["cache_dir"] = cfg.cache_dir.generic_string();
    j["design"] = std::string(1, cfg.design);
    j["runs"] = cfg.runs;
    return j;
}

TimeSeriesSet load_input(const RunConfig& cfg, std::vector<std::string>& warnings) {
    auto set = stage("ingest", [&] { return ingest(cfg.ingest, cfg.input); });
    if (cfg.paper_sample) set = stage("sample", [&] { return paper_sample(set); });
    for (auto& w : validation_warnings(set)) warnings.push_back(std::move(w));
    return set;
}

TimeSeriesSet represent(const RunConfig& cfg, const TimeSeriesSet& set) {
    switch (cfg.representation) {
        case Representation::raw: return set;
        case Representation::stft:
            return stage("stft", [&] { return stft_features(set, cfg.stft, cfg.augment_mean); });
        case Representation::pgram: return stage("pgram", [&] { return periodogram_set(set, cfg.spans); });
    }
    return set;
}

DistanceMatrix distances_for(const RunConfig& cfg, const TimeSeriesSet& features) {
    return stage("distance", [&] {
        if (cfg.cache_dir.empty()) return compute_distances(features, cfg.method);
        const DistanceCache cache(cfg.cache_dir);
        const auto key = cfg.method.key();
        if (auto hit = cache.load(features, key)) return std::move(*hit);
        auto dist = compute_distances(features, cfg.method);
        cache.store(features, key, dist);
        return dist;
    });
}

using Artifacts = std::map<std::string, std::string>;

std::vector<fs::path> write_artifacts(const fs::path& dir, const Artifacts& files) {
    std::vector<fs::path> out;
    for (const auto& [name, contents] : files) {
        csv::write_file(dir / name, contents);
        out.push_back(dir / name);
    }
    return out;
}

std::string simulation_runs_csv(const sim::ComparisonResult& r) {
    std::ostringstream out;
    out << "run,rand_band,rand_euclid,delta\n";
    for (std::size_t i = 0; i < r.runs; ++i) {
        out << i + 1 << ',' << csv::format_double(r.rand_band[i]) << ',' << csv::format_double(r.rand_euclid[i])
            << ',' << csv::format_double(r.delta[i]) << '\n';
    }
    return out.str();
}

Artifacts run_simulation(const RunConfig& cfg) {
    sim::RunGenerator gen;
    switch (cfg.design) {
        case 'a': gen = sim::simulation_a_run; break;
        case 'b': gen = sim::simulation_b_run; break;
        case 'c': {
            const auto spans = cfg.spans;
            gen = [spans](std::uint64_t s) { return sim::simulation_c_run(s, spans); };
            break;
        }
        default: throw Error(Errc::invalid_argument, std::string("unknown design '") + cfg.design + "'");
    }
    const auto result = stage("simulate", [&] { return sim::compare_methods(gen, cfg.runs, cfg.seed); });
    double band = 0.0;
    double euclid = 0.0;
    for (std::size_t i = 0; i < result.runs; ++i) {
        band += result.rand_band[i];
        euclid += result.rand_euclid[i];
    }
    json summary;
    summary["M"] = result.runs;
    summary["mean"] = result.mean_delta;
    summary["sd"] = result.sd_delta;
    summary["z"] = result.z ? json(*result.z) : json(nullptr);
    summary["zero_variance"] = result.zero_variance;
    summary["mean_rand_band"] = band / static_cast<double>(result.runs);
    summary["mean_rand_euclid"] = euclid / static_cast<double>(result.runs);
    summary["config"] = config_json(cfg);
    return {{"runs.csv", simulation_runs_csv(result)}, {"summary.json", summary.dump(2) + "\n"}};
}

}  // namespace

const char* command_name(Command c) noexcept {
    switch (c) {
        case Command::distances: return "distances";
        case Command::cluster: return "cluster";
        case Command::simulate: return "simulate";
        case Command::detrend: return "detrend";
        case Command::stft: return "stft";
        case Command::pgram: return "pgram";
        case Command::report: return "report";
    }
    return "cluster";
}

Command parse_command(std::string_view text) {
    for (auto c : {Command::distances, Command::cluster, Command::simulate, Command::detrend, Command::stft,
                   Command::pgram, Command::report}) {
        if (text == command_name(c)) return c;
    }
    throw Error(Errc::invalid_argument, "unknown command '" + std::string(text) + "'");
}

Representation parse_representation(std::string_view text) {
    for (auto r : {Representation::raw, Representation::stft, Representation::pgram}) {
        if (text == representation_name(r)) return r;
    }
    throw Error(Errc::invalid_argument, "unknown representation '" + std::string(text) + "'");
}

IngestFormat parse_ingest_format(std::string_view text) {
    for (auto f : {IngestFormat::matrix, IngestFormat::wide, IngestFormat::long_format}) {
        if (text == format_name(f)) return f;
    }
    throw Error(Errc::invalid_argument, "unknown input format '" + std::string(text) + "'");
}

std::string MethodSpec::key() const {
    switch (method) {
        case DistanceMethod::band: return "band";
        case DistanceMethod::lp: return "lp:" + csv::format_double(p);
        case DistanceMethod::pidist: return "pidist:" + std::to_string(groups) + "," + csv::format_double(p);
    }
    return "band";
}

MethodSpec parse_method(std::string_view text) {
    MethodSpec spec;
    const auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    const auto args = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
    if (head == "band") {
        if (!args.empty()) throw Error(Errc::invalid_argument, "band takes no parameters");
        spec.method = DistanceMethod::band;
    } else if (head == "lp") {
        spec.method = DistanceMethod::lp;
        if (!args.empty()) spec.p = parse_number<double>(args, "p");
    } else if (head == "pidist") {
        spec.method = DistanceMethod::pidist;
        const auto comma = args.find(',');
        if (!args.empty()) spec.groups = parse_number<std::size_t>(args.substr(0, comma), "group count");
        if (comma != std::string_view::npos) spec.p = parse_number<double>(args.substr(comma + 1), "p");
    } else {
        throw Error(Errc::invalid_argument, "unknown method '" + std::string(text) + "'");
    }
    if (spec.method != DistanceMethod::band && !(spec.p >= 1.0)) {
        throw Error(Errc::invalid_p, "p must be >= 1, got " + csv::format_double(spec.p));
    }
    return spec;
}

DistanceMatrix compute_distances(const TimeSeriesSet& set, const MethodSpec& method) {
    switch (method.method) {
        case DistanceMethod::band: return band_distance_matrix(set, containment_options_from_env());
        case DistanceMethod::lp: return lp_distance_matrix(set, method.p);
        case DistanceMethod::pidist: return pidist_distance_matrix(set, {method.groups, method.p, true});
    }
    return band_distance_matrix(set);
}

TimeSeriesSet ingest_text(const WindIngestSpec& spec, std::string_view text) {
    if (spec.day_length == 0) throw Error(Errc::invalid_argument, "day length must be positive");
    switch (spec.format) {
        case IngestFormat::matrix: {
            auto table = csv::parse(text);
            return validate_set(table.rows, std::move(table.labels));
        }
        case IngestFormat::wide: return ingest_wide(spec, text);
        case IngestFormat::long_format: return ingest_long(spec, text);
    }
    throw Error(Errc::invalid_argument, "unknown input format");
}

TimeSeriesSet ingest(const WindIngestSpec& spec, const fs::path& path) {
    if (!fs::exists(path)) throw Error(Errc::io_error, "input " + path.string() + " does not exist");
    return ingest_text(spec, csv::read_file(path));
}

TimeSeriesSet paper_sample(const TimeSeriesSet& set) {
    if (!all_dated(set)) throw Error(Errc::missing_date_label, "the June/December sample needs dated observations");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto d = *parse_date(set.labels()[i]);
        if ((d.month == 6 || d.month == 12) && d.day <= 15) keep.push_back(i);
    }
    return select_rows(set, keep);
}

std::string config_to_json(const RunConfig& cfg) { return config_json(cfg).dump(2); }

RunConfig config_from_json(std::string_view text) {
    const auto j = json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::parse_error, "config is not a JSON object");
    try {
        RunConfig cfg;
        cfg.command = parse_command(j.at("command").get<std::string>());
        cfg.input = j.at("input").get<std::string>();
        cfg.output_dir = j.at("output_dir").get<std::string>();
        cfg.ingest.format = parse_ingest_format(j.at("format").get<std::string>());
        cfg.ingest.day_length = j.at("day_length").get<std::size_t>();
        cfg.paper_sample = j.at("paper_sample").get<bool>();
        cfg.detrend = j.at("detrend").get<bool>();
        cfg.bandwidths.time_of_day = j.at("bandwidths").at("time_of_day").get<double>();
        cfg.bandwidths.day_of_year = j.at("bandwidths").at("day_of_year").get<double>();
        cfg.representation = parse_representation(j.at("representation").get<std::string>());
        const auto& s = j.at("stft");
        cfg.stft.window = s.at("window").get<std::size_t>();
        cfg.stft.hop = s.at("hop").get<std::size_t>();
        cfg.stft.coefficients = s.at("coefficients").get<std::size_t>();
        cfg.stft.taper = parse_taper(s.at("taper").get<std::string>());
        cfg.stft.floor_eps = s.at("floor_eps").get<double>();
        cfg.stft.normalize_variance = s.at("normalize_variance").get<bool>();
        cfg.augment_mean = j.at("augment_mean").get<bool>();
        cfg.spans = j.at("spans").get<std::vector<std::size_t>>();
        cfg.method = parse_method(j.at("method").get<std::string>());
        cfg.k = j.at("k").get<std::size_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.restarts = j.at("restarts").get<std::size_t>();
        cfg.cache_dir = j.at("cache_dir").get<std::string>();
        const auto design = j.at("design").get<std::string>();
        cfg.design = design.empty() ? 'a' : design.front();
        cfg.runs = j.at("runs").get<std::size_t>();
        return cfg;
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string("config: ") + e.what());
    }
}

RunConfig load_manifest(const fs::path& manifest) {
    const auto j = json::parse(csv::read_file(manifest), nullptr, false);
    if (j.is_discarded() || !j.contains("config")) {
        throw Error(Errc::parse_error, manifest.string() + " is not a manifest");
    }
    auto cfg = config_from_json(j["config"].dump());
    if (j.contains("input") && j["input"].contains("sha256") && !cfg.input.empty()) {
        const auto now = sha256_hex(csv::read_file(cfg.input));
        if (now != j["input"]["sha256"].get<std::string>()) {
            throw Error(Errc::invalid_argument, "input " + cfg.input.string() + " changed since the manifest was written");
        }
    }
    return cfg;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    PipelineResult result;
    Artifacts files;
    const bool needs_input = cfg.command != Command::simulate && cfg.command != Command::report;
    if (needs_input && cfg.input.empty()) throw Error(Errc::invalid_argument, "an input file is required");

    if (cfg.command == Command::report) {
        result.artifacts = stage("report", [&] { return emit_report(cfg.output_dir); });
        return result;
    }

    if (cfg.command == Command::simulate) {
        files = run_simulation(cfg);
    } else {
        auto set = load_input(cfg, result.warnings);
        switch (cfg.command) {
            case Command::detrend: {
                const auto surface = stage("detrend", [&] { return fit_seasonal(set, cfg.bandwidths); });
                std::ostringstream grid;
                write_surface(grid, surface);
                files["surface.csv"] = grid.str();
                files["residuals.csv"] = set_csv(stage("detrend", [&] { return remove_seasonal(set, surface); }));
                break;
            }
            case Command::stft: {
                files["features.csv"] = set_csv(stage("stft", [&] {
                    return stft_features(set, cfg.stft, cfg.augment_mean);
                }), "f");
                break;
            }
            case Command::pgram: {
                files["periodogram.csv"] = set_csv(stage("pgram", [&] { return periodogram_set(set, cfg.spans); }), "f");
                break;
            }
            case Command::distances:
            case Command::cluster: {
                if (cfg.detrend) {
                    const auto surface = stage("detrend", [&] { return fit_seasonal(set, cfg.bandwidths); });
                    set = stage("detrend", [&] { return remove_seasonal(set, surface); });
                }
                files["series.csv"] = set_csv(set);
                const auto features = represent(cfg, set);
                if (cfg.representation != Representation::raw) files["features.csv"] = set_csv(features, "f");
                const auto dist = distances_for(cfg, features);
                std::ostringstream matrix;
                csv::write_matrix(matrix, dist);
                files["distances.csv"] = matrix.str();
                if (cfg.command == Command::cluster) {
                    const KMedoidsConfig kcfg{.k = cfg.k, .max_iterations = 100, .seed = cfg.seed,
                                              .restarts = cfg.restarts};
                    const auto clusters = stage("cluster", [&] { return kmedoids(dist, kcfg); });
                    std::ostringstream part;
                    csv::write_partition(part, clusters.partition, set.labels());
                    files["partition.csv"] = part.str();
                }
                break;
            }
            default: break;
        }
    }

    json manifest;
    manifest["tool"] = "banddist";
    manifest["version"] = kVersion;
    manifest["config"] = config_json(cfg);
    if (!cfg.input.empty() && cfg.command != Command::simulate) {
        manifest["input"] = {{"path", cfg.input.generic_string()}, {"sha256", sha256_hex(csv::read_file(cfg.input))}};
    }
    json hashes = json::object();
    for (const auto& [name, contents] : files) hashes[name] = sha256_hex(contents);
    manifest["artifacts"] = hashes;
    manifest["warnings"] = result.warnings;
    files["manifest.json"] = manifest.dump(2) + "\n";

    result.artifacts = stage("write", [&] { return write_artifacts(cfg.output_dir, files); });
    if (cfg.command == Command::cluster) {
        auto report = stage("report", [&] { return emit_report(cfg.output_dir); });
        result.artifacts.insert(result.artifacts.end(), report.begin(), report.end());
    }
    return result;
}

std::vector<fs::path> emit_report(const fs::path& dir) {
    auto require = [&](const char* name) {
        const auto p = dir / name;
        if (!fs::exists(p)) throw Error(Errc::missing_artifact, "missing artifact " + p.string());
        return p;
    };
    const auto manifest = json::parse(csv::read_file(require("manifest.json")), nullptr, false);
    if (manifest.is_discarded() || !manifest.contains("config")) {
        throw Error(Errc::parse_error, "manifest.json is not a manifest");
    }
    const auto cfg = config_from_json(manifest["config"].dump());
    const auto series = csv::read_set(require("series.csv"));
    const auto part = csv::read(require("partition.csv"));
    if (part.rows.size() != series.size()) {
        throw Error(Errc::length_mismatch, "partition.csv and series.csv disagree on the number of observations");
    }
    // Label column present when observations are named; otherwise column 1
    // holds the 1-based index.
    const std::size_t offset = part.labels.empty() ? 1 : 0;
    std::vector<int> labels;
    std::vector<std::size_t> medoid_of;
    for (std::size_t i = 0; i < part.rows.size(); ++i) {
        const auto& row = part.rows[i];
        if (row.size() != offset + 2) throw Error(Errc::parse_error, "partition.csv has an unexpected shape");
        labels.push_back(static_cast<int>(row[offset]));
        if (row[offset + 1] != 0.0) medoid_of.push_back(i);
    }
    const std::size_t k = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()));
    std::vector<std::size_t> medoids(k, series.size());
    for (auto m : medoid_of) medoids[static_cast<std::size_t>(labels[m]) - 1] = m;
    for (auto m : medoids) {
        if (m == series.size()) throw Error(Errc::missing_artifact, "partition.csv lacks a medoid for some cluster");
    }
    const Partition partition(labels, k, medoids);
    const auto sizes = partition.cluster_sizes();

    auto name_of = [&](std::size_t i) { return series.has_labels() ? series.labels()[i] : std::to_string(i + 1); };

    Artifacts files;
    {
        const bool dated = all_dated(series);
        std::set<unsigned> months;
        if (dated) {
            for (const auto& l : series.labels()) months.insert(parse_date(l)->month);
        }
        std::ostringstream out;
        out << "cluster,size";
        for (auto m : months) out << ',' << kMonthNames[m - 1];
        out << ",medoid,members\n";
        for (std::size_t c = 0; c < k; ++c) {
            out << c + 1 << ',' << sizes[c];
            for (auto m : months) {
                std::size_t count = 0;
                for (std::size_t i = 0; i < series.size(); ++i) {
                    if (static_cast<std::size_t>(labels[i]) == c + 1 && parse_date(series.labels()[i])->month == m) {
                        ++count;
                    }
                }
                out << ',' << count;
            }
            out << ',' << name_of(medoids[c]) << ',';
            bool first = true;
            for (std::size_t i = 0; i < series.size(); ++i) {
                if (static_cast<std::size_t>(labels[i]) != c + 1) continue;
                out << (first ? "" : ";") << name_of(i);
                first = false;
            }
            out << '\n';
        }
        files["cluster_summary.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "cluster,observation";
        for (std::size_t t = 0; t < series.length(); ++t) out << ",t" << t + 1;
        out << '\n';
        for (std::size_t c = 0; c < k; ++c) {
            out << c + 1 << ',' << name_of(medoids[c]);
            for (double v : series.row(medoids[c])) out << ',' << csv::format_double(v);
            out << '\n';
        }
        files["medoid_series.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "cluster,observation,is_medoid,t,value\n";
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto c = static_cast<std::size_t>(labels[i]);
            const bool med = medoids[c - 1] == i;
            const auto row = series.row(i);
            for (std::size_t t = 0; t < row.size(); ++t) {
                out << c << ',' << name_of(i) << ',' << (med ? 1 : 0) << ',' << t + 1 << ','
                    << csv::format_double(row[t]) << '\n';
            }
        }
        files["cluster_lines.csv"] = out.str();
    }
    if (cfg.representation == Representation::stft) {
        for (std::size_t c = 0; c < k; ++c) {
            std::ostringstream out;
            write_stft_triples(out, stft(series.row(medoids[c]), cfg.stft));
            files["stft_medoid_" + std::to_string(c + 1) + ".csv"] = out.str();
        }
    }
    return write_artifacts(dir, files);
}

}  // namespace banddist
