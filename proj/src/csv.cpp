#include "banddist/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace banddist::csv {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_number(std::string_view cell) {
    cell = trim(cell);
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

Table parse(std::string_view text) {
    std::vector<std::vector<std::string_view>> lines;
    std::vector<std::size_t> line_numbers;
    std::size_t start = 0;
    std::size_t line_no = 0;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") start = 3;
    while (start <= text.size()) {
        auto pos = text.find('\n', start);
        auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        ++line_no;
        if (!trim(line).empty()) {
            lines.push_back(split(line));
            line_numbers.push_back(line_no);
        }
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }

    Table table;
    if (lines.empty()) return table;

    auto numeric_from = [](const std::vector<std::string_view>& cells, std::size_t first) {
        for (std::size_t c = first; c < cells.size(); ++c) {
            if (!parse_number(cells[c])) return false;
        }
        return true;
    };

    // Header: non-numeric cell past the first column, or a non-numeric first
    // cell above rows whose first cell is numeric.
    bool has_header = false;
    if (!numeric_from(lines[0], 1)) {
        has_header = true;
    } else if (!parse_number(lines[0][0])) {
        has_header = true;
        for (std::size_t r = 1; r < lines.size(); ++r) {
            if (!parse_number(lines[r][0])) {
                has_header = false;
                break;
            }
        }
    }
    const std::size_t first_data = has_header ? 1 : 0;

    bool has_labels = false;
    for (std::size_t r = first_data; r < lines.size(); ++r) {
        if (!parse_number(lines[r][0])) {
            has_labels = true;
            break;
        }
    }
    if (has_header) {
        for (auto cell : lines[0]) table.header.emplace_back(cell);
    }
    const std::size_t first_col = has_labels ? 1 : 0;
    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const auto& cells = lines[r];
        std::vector<double> values;
        values.reserve(cells.size());
        for (std::size_t c = first_col; c < cells.size(); ++c) {
            auto v = parse_number(cells[c]);
            if (!v) {
                throw Error(Errc::parse_error, "line " + std::to_string(line_numbers[r]) + ", column " +
                                                   std::to_string(c + 1) + ": not a number: '" +
                                                   std::string(cells[c]) + "'");
            }
            values.push_back(*v);
        }
        if (has_labels) table.labels.emplace_back(cells[0]);
        table.rows.push_back(std::move(values));
    }
    return table;
}

Table read(const std::filesystem::path& path) { return parse(read_file(path)); }

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_set(std::ostream& out, const TimeSeriesSet& set, bool header, std::string_view column_prefix) {
    if (header) {
        if (set.has_labels()) out << "label,";
        for (std::size_t t = 0; t < set.length(); ++t) out << (t ? "," : "") << column_prefix << t + 1;
        out << '\n';
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.has_labels()) out << set.labels()[i] << ',';
        auto row = set.row(i);
        for (std::size_t t = 0; t < row.size(); ++t) out << (t ? "," : "") << format_double(row[t]);
        out << '\n';
    }
}

TimeSeriesSet read_set(const std::filesystem::path& path) {
    auto table = read(path);
    return validate_set(table.rows, std::move(table.labels));
}

void write_matrix(std::ostream& out, const DistanceMatrix& dist) {
    for (std::size_t i = 0; i < dist.size(); ++i) {
        for (std::size_t j = 0; j < dist.size(); ++j) out << (j ? "," : "") << format_double(dist(i, j));
        out << '\n';
    }
}

DistanceMatrix read_matrix(const std::filesystem::path& path, DistanceMethod method) {
    auto table = read(path);
    const std::size_t n = table.rows.size();
    std::vector<double> entries;
    entries.reserve(n * n);
    for (const auto& row : table.rows) {
        if (row.size() != n) throw Error(Errc::ragged_rows, "distance matrix must be square");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return DistanceMatrix(n, std::move(entries), method);
}

void write_partition(std::ostream& out, const Partition& partition, const std::vector<std::string>& labels) {
    std::vector<bool> is_medoid(partition.size(), false);
    for (auto m : partition.medoids()) is_medoid[m] = true;
    out << "observation,cluster,is_medoid\n";
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (labels.empty()) {
            out << i + 1;
        } else {
            out << labels[i];
        }
        out << ',' << partition.labels()[i] << ',' << (is_medoid[i] ? 1 : 0) << '\n';
    }
}

}  // namespace banddist::csv
