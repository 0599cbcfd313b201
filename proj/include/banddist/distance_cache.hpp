#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "banddist/core.hpp"

namespace banddist {

/// Lowercase hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 over N, T and the raw little-endian values of a set (labels are
/// not part of the content).
std::string content_hash(const TimeSeriesSet& set);

/// Binary cache of distance matrices keyed by content hash plus a method key
/// such as "band" or "lp:2". File layout: 8-byte magic "BDCACHE1", u32 method
/// tag, u64 N, 32-byte digest of (content hash, method key), N*N f64 entries.
class DistanceCache {
public:
    explicit DistanceCache(std::filesystem::path directory);

    std::filesystem::path path_for(const TimeSeriesSet& set, std::string_view method_key) const;
    std::optional<DistanceMatrix> load(const TimeSeriesSet& set, std::string_view method_key) const;
    void store(const TimeSeriesSet& set, std::string_view method_key, const DistanceMatrix& dist) const;

private:
    std::filesystem::path directory_;
};

}  // namespace banddist
