#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "banddist/pipeline.hpp"

namespace {

using banddist::RunConfig;

struct Flags {
    std::string method = "band";
    std::string format = "wide";
    std::string representation = "raw";
    std::string taper = "hanning";
    std::string design = "a";
};

void add_input(CLI::App* cmd, RunConfig& cfg, Flags& flags) {
    cmd->add_option("input", cfg.input, "Input CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--format", flags.format, "wide | long | matrix")
        ->check(CLI::IsMember({"wide", "long", "matrix"}))
        ->capture_default_str();
    cmd->add_option("--day-length", cfg.ingest.day_length, "Readings per day")->capture_default_str();
    cmd->add_flag("--paper-sample", cfg.paper_sample, "Keep days 1-15 of June and December");
}

void add_stft(CLI::App* cmd, RunConfig& cfg, Flags& flags) {
    cmd->add_option("--window", cfg.stft.window, "STFT window length")->capture_default_str();
    cmd->add_option("--hop", cfg.stft.hop, "STFT hop")->capture_default_str();
    cmd->add_option("--coefficients", cfg.stft.coefficients, "Fourier coefficients per window")
        ->capture_default_str();
    cmd->add_option("--taper", flags.taper, "hanning | hamming | rectangular")
        ->check(CLI::IsMember({"hanning", "hamming", "rectangular"}))
        ->capture_default_str();
    cmd->add_option("--floor-eps", cfg.stft.floor_eps, "Magnitude floor before log")->capture_default_str();
    cmd->add_flag("--normalize-variance", cfg.stft.normalize_variance, "Scale each series to unit variance");
    cmd->add_flag("--augment-mean", cfg.augment_mean, "Append the series mean to the feature vector");
}

void add_spans(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--spans", cfg.spans, "Modified Daniell spans")->delimiter(',')->capture_default_str();
}

void add_detrend(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--ht", cfg.bandwidths.time_of_day, "Time-of-day bandwidth (readings)")->capture_default_str();
    cmd->add_option("--hc", cfg.bandwidths.day_of_year, "Day-of-year bandwidth (days)")->capture_default_str();
}

void add_distance(CLI::App* cmd, RunConfig& cfg, Flags& flags) {
    add_input(cmd, cfg, flags);
    cmd->add_option("--method", flags.method, "band | lp:P | pidist:K,P")->capture_default_str();
    cmd->add_flag("--detrend", cfg.detrend, "Remove the seasonal surface first");
    add_detrend(cmd, cfg);
    cmd->add_option("--representation", flags.representation, "raw | stft | pgram")
        ->check(CLI::IsMember({"raw", "stft", "pgram"}))
        ->capture_default_str();
    add_stft(cmd, cfg, flags);
    add_spans(cmd, cfg);
    cmd->add_option("--cache", cfg.cache_dir, "Directory for cached distance matrices");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Band distance clustering toolkit"};
    app.set_version_flag("--version", "banddist 0.1.0");
    app.require_subcommand(1);

    RunConfig cfg;
    Flags flags;
    std::string output = "out";
    std::string manifest;
    app.add_option("-o,--output", output, "Output directory")->capture_default_str();

    auto* distances = app.add_subcommand("distances", "Pairwise distance matrix");
    add_distance(distances, cfg, flags);

    auto* cluster = app.add_subcommand("cluster", "k-medoids clustering with report");
    add_distance(cluster, cfg, flags);
    cluster->add_option("-k,--k", cfg.k, "Number of clusters")->capture_default_str();
    cluster->add_option("--seed", cfg.seed, "Seed for random restarts")->capture_default_str();
    cluster->add_option("--restarts", cfg.restarts, "Random restarts after BUILD")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Band vs Euclidean Rand-index comparison");
    simulate->add_option("--design", flags.design, "a | b | c")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->capture_default_str();
    simulate->add_option("--runs", cfg.runs, "Number of runs M")->capture_default_str();
    simulate->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    add_spans(simulate, cfg);

    auto* detrend = app.add_subcommand("detrend", "Fit and remove the seasonal surface");
    add_input(detrend, cfg, flags);
    add_detrend(detrend, cfg);

    auto* stft = app.add_subcommand("stft", "STFT feature vectors");
    add_input(stft, cfg, flags);
    add_stft(stft, cfg, flags);

    auto* pgram = app.add_subcommand("pgram", "Smoothed periodograms");
    add_input(pgram, cfg, flags);
    add_spans(pgram, cfg);

    app.add_subcommand("report", "Rebuild report files from a cluster run");

    auto* rerun = app.add_subcommand("rerun", "Re-run the configuration stored in a manifest");
    rerun->add_option("manifest", manifest, "manifest.json")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto* sub = app.get_subcommands().front();
        if (sub->get_name() == "rerun") {
            cfg = banddist::load_manifest(manifest);
            if (app.count("--output") > 0) cfg.output_dir = output;
        } else {
            cfg.command = banddist::parse_command(sub->get_name());
            cfg.output_dir = output;
            cfg.method = banddist::parse_method(flags.method);
            cfg.ingest.format = banddist::parse_ingest_format(flags.format);
            cfg.representation = banddist::parse_representation(flags.representation);
            cfg.stft.taper = flags.taper == "hamming"       ? banddist::Taper::hamming
                             : flags.taper == "rectangular" ? banddist::Taper::rectangular
                                                            : banddist::Taper::hanning;
            cfg.design = flags.design.front();
        }
        const auto result = banddist::run_pipeline(cfg);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& path : result.artifacts) std::cout << path.generic_string() << '\n';
    } catch (const banddist::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
