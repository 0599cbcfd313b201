#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "banddist/core.hpp"

namespace banddist::csv {

/// Parsed numeric table. A header row and a leading label column are
/// detected from non-numeric content.
struct Table {
    std::vector<std::string> header;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
};

Table parse(std::string_view text);
Table read(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest form that round-trips: 17 significant digits.
std::string format_double(double value);

/// Writes one observation per row; the label column is emitted when the set
/// carries labels. `column_prefix` names the header columns (t1, t2, ...).
void write_set(std::ostream& out, const TimeSeriesSet& set, bool header = true,
               std::string_view column_prefix = "t");
TimeSeriesSet read_set(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const DistanceMatrix& dist);
DistanceMatrix read_matrix(const std::filesystem::path& path, DistanceMethod method);

/// Columns: observation, cluster, is_medoid.
void write_partition(std::ostream& out, const Partition& partition, const std::vector<std::string>& labels = {});

}  // namespace banddist::csv
