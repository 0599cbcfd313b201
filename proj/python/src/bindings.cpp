#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "banddist/band_distance.hpp"
#include "banddist/baselines.hpp"
#include "banddist/clustering.hpp"
#include "banddist/seasonal.hpp"
#include "banddist/simulation.hpp"
#include "banddist/spectral.hpp"

namespace py = pybind11;
using namespace banddist;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TimeSeriesSet to_set(const Array& x, std::vector<std::string> labels = {}) {
    if (x.ndim() != 2) throw py::value_error("expected a 2-d array (observations x time)");
    const auto n = static_cast<std::size_t>(x.shape(0));
    const auto t = static_cast<std::size_t>(x.shape(1));
    return validate_set(std::span<const double>(x.data(), n * t), n, t, std::move(labels));
}

Array to_array(std::span<const double> values, std::size_t rows, std::size_t cols) {
    Array out({rows, cols});
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

Array to_array(const DistanceMatrix& d) { return to_array(d.entries(), d.size(), d.size()); }

Array to_array(const TimeSeriesSet& s) { return to_array(s.values(), s.size(), s.length()); }

std::span<const double> series_of(const Array& x) {
    if (x.ndim() != 1) throw py::value_error("expected a 1-d array");
    return {x.data(), static_cast<std::size_t>(x.shape(0))};
}

Taper parse_taper(const std::string& name) {
    if (name == "hanning") return Taper::hanning;
    if (name == "hamming") return Taper::hamming;
    if (name == "rectangular") return Taper::rectangular;
    throw py::value_error("unknown taper: " + name);
}

py::dict comparison_dict(const sim::ComparisonResult& r) {
    py::dict out;
    out["runs"] = r.runs;
    out["rand_band"] = r.rand_band;
    out["rand_euclid"] = r.rand_euclid;
    out["delta"] = r.delta;
    out["mean_delta"] = r.mean_delta;
    out["sd_delta"] = r.sd_delta;
    out["z"] = r.z ? py::cast(*r.z) : py::none();
    out["zero_variance"] = r.zero_variance;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Band distance toolkit core";

    py::register_exception<Error>(m, "BandDistError", PyExc_ValueError);

    m.def(
        "band_distance_matrix", [](const Array& x) { return to_array(band_distance_matrix(to_set(x))); }, py::arg("x"),
        "Band distance between the rows of x.");
    m.def(
        "naive_band_distance_matrix", [](const Array& x) { return to_array(naive_band_distance_matrix(to_set(x))); },
        py::arg("x"), "Reference implementation of band_distance_matrix.");
    m.def(
        "lp_distance_matrix", [](const Array& x, double p) { return to_array(lp_distance_matrix(to_set(x), p)); },
        py::arg("x"), py::arg("p") = 2.0);
    m.def(
        "pidist_distance_matrix",
        [](const Array& x, std::size_t groups, double p, bool rescale) {
            return to_array(pidist_distance_matrix(to_set(x), {.k = groups, .p = p, .rescale = rescale}));
        },
        py::arg("x"), py::arg("groups") = 0, py::arg("p") = 2.0, py::arg("rescale") = true);

    m.def(
        "kmedoids",
        [](const Array& d, std::size_t k, std::uint64_t seed, std::size_t restarts, std::size_t max_iterations) {
            if (d.ndim() != 2 || d.shape(0) != d.shape(1)) throw py::value_error("expected a square matrix");
            const auto n = static_cast<std::size_t>(d.shape(0));
            const DistanceMatrix dist(n, std::vector<double>(d.data(), d.data() + n * n), DistanceMethod::lp);
            const auto r = kmedoids(dist, {.k = k, .max_iterations = max_iterations, .seed = seed, .restarts = restarts});
            py::dict out;
            out["labels"] = r.partition.labels();
            out["medoids"] = r.partition.medoids();
            out["cost"] = r.cost;
            out["cost_history"] = r.cost_history;
            out["iterations"] = r.iterations;
            out["converged"] = r.converged;
            return out;
        },
        py::arg("d"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 0, py::arg("max_iterations") = 100);
    m.def(
        "kmeans",
        [](const Array& x, std::size_t k, std::uint64_t seed) {
            const auto set = to_set(x);
            const auto r = kmeans(set, k, seed);
            py::dict out;
            out["labels"] = r.partition.labels();
            out["centroids"] = r.centroids;
            out["iterations"] = r.iterations;
            return out;
        },
        py::arg("x"), py::arg("k"), py::arg("seed") = 0);
    m.def(
        "rand_index", [](const std::vector<int>& a, const std::vector<int>& b) { return rand_index(a, b); },
        py::arg("a"), py::arg("b"));
    m.def(
        "adjusted_rand_index",
        [](const std::vector<int>& a, const std::vector<int>& b) { return adjusted_rand_index(a, b); }, py::arg("a"),
        py::arg("b"));

    m.def(
        "periodogram", [](const Array& x) { return periodogram(series_of(x)).ordinates; }, py::arg("x"),
        "Raw periodogram at Fourier frequencies j/T, j = 1..floor(T/2).");
    m.def(
        "smoothed_periodogram",
        [](const Array& x, const std::vector<std::size_t>& spans) {
            return daniell_smooth(periodogram(series_of(x)), spans).ordinates;
        },
        py::arg("x"), py::arg("spans") = std::vector<std::size_t>{9, 9});
    m.def(
        "stft",
        [](const Array& x, std::size_t window, std::size_t hop, std::size_t coefficients, const std::string& taper,
           double floor_eps, bool normalize_variance) {
            const auto img = stft(series_of(x), {.window = window,
                                                 .hop = hop,
                                                 .coefficients = coefficients,
                                                 .taper = parse_taper(taper),
                                                 .floor_eps = floor_eps,
                                                 .normalize_variance = normalize_variance});
            return to_array(img.cells, img.windows, img.bins);
        },
        py::arg("x"), py::arg("window") = 40, py::arg("hop") = 8, py::arg("coefficients") = 12,
        py::arg("taper") = "hanning", py::arg("floor_eps") = 1e-12, py::arg("normalize_variance") = false,
        "Log-magnitude STFT image, windows x bins.");

    m.def(
        "fit_seasonal",
        [](const Array& x, std::vector<std::string> dates, double ht, double hc) {
            const auto surface = fit_seasonal(to_set(x, std::move(dates)), {ht, hc});
            return to_array(surface.grid(), surface.grid().size() / surface.day_length(), surface.day_length());
        },
        py::arg("x"), py::arg("dates"), py::arg("ht") = 12.0, py::arg("hc") = 15.0,
        "Seasonal surface on a (calendar day x time of day) grid.");
    m.def(
        "remove_seasonal",
        [](const Array& x, std::vector<std::string> dates, double ht, double hc) {
            const auto set = to_set(x, std::move(dates));
            return to_array(remove_seasonal(set, fit_seasonal(set, {ht, hc})));
        },
        py::arg("x"), py::arg("dates"), py::arg("ht") = 12.0, py::arg("hc") = 15.0);

    m.def(
        "simulate",
        [](const std::string& design, std::size_t runs, std::uint64_t seed, const std::vector<std::size_t>& spans) {
            sim::RunGenerator gen;
            if (design == "a") {
                gen = sim::simulation_a_run;
            } else if (design == "b") {
                gen = sim::simulation_b_run;
            } else if (design == "c") {
                gen = [spans](std::uint64_t s) { return sim::simulation_c_run(s, spans); };
            } else {
                throw py::value_error("design must be 'a', 'b' or 'c'");
            }
            sim::ComparisonResult result;
            {
                py::gil_scoped_release release;
                result = sim::compare_methods(gen, runs, seed);
            }
            return comparison_dict(result);
        },
        py::arg("design"), py::arg("runs") = 200, py::arg("seed") = 7, py::arg("spans") = std::vector<std::size_t>{9, 9},
        "Band vs Euclidean k-medoids Rand-index comparison over seeded runs.");
}
