#include "banddist/distance_cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace banddist {
namespace {

constexpr char kMagic[8] = {'B', 'D', 'C', 'A', 'C', 'H', 'E', '1'};

static_assert(std::endian::native == std::endian::little, "cache files are written little-endian");

std::array<unsigned char, 32> sha256(std::string_view bytes) {
    std::array<unsigned char, 32> digest{};
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw Error(Errc::io_error, "SHA-256 computation failed");
    }
    return digest;
}

template <typename T>
void append_raw(std::string& buf, const T& value) {
    buf.append(reinterpret_cast<const char*>(&value), sizeof value);
}

std::string key_digest(const TimeSeriesSet& set, std::string_view method_key) {
    std::string key = content_hash(set);
    key.push_back('\n');
    key.append(method_key);
    const auto d = sha256(key);
    return {reinterpret_cast<const char*>(d.data()), d.size()};
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned char b : sha256(bytes)) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xF]);
    }
    return out;
}

std::string content_hash(const TimeSeriesSet& set) {
    std::string buf;
    append_raw(buf, static_cast<std::uint64_t>(set.size()));
    append_raw(buf, static_cast<std::uint64_t>(set.length()));
    for (double v : set.values()) append_raw(buf, v);
    return sha256_hex(buf);
}

DistanceCache::DistanceCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path DistanceCache::path_for(const TimeSeriesSet& set, std::string_view method_key) const {
    std::string name(method_key);
    for (auto& c : name) {
        if (c == ':' || c == ',' || c == '/') c = '_';
    }
    return directory_ / (content_hash(set).substr(0, 16) + "_" + name + ".bdc");
}

std::optional<DistanceMatrix> DistanceCache::load(const TimeSeriesSet& set, std::string_view method_key) const {
    std::ifstream in(path_for(set, method_key), std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    std::uint32_t tag = 0;
    std::uint64_t n = 0;
    char digest[32];
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&tag), sizeof tag);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(digest, sizeof digest);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0 || n != set.size() || tag > 2) return std::nullopt;
    if (key_digest(set, method_key) != std::string_view(digest, sizeof digest)) return std::nullopt;
    std::vector<double> entries(n * n);
    in.read(reinterpret_cast<char*>(entries.data()), static_cast<std::streamsize>(entries.size() * sizeof(double)));
    if (!in) return std::nullopt;
    return DistanceMatrix(n, std::move(entries), static_cast<DistanceMethod>(tag));
}

void DistanceCache::store(const TimeSeriesSet& set, std::string_view method_key, const DistanceMatrix& dist) const {
    std::filesystem::create_directories(directory_);
    std::string buf(kMagic, sizeof kMagic);
    append_raw(buf, static_cast<std::uint32_t>(dist.method()));
    append_raw(buf, static_cast<std::uint64_t>(dist.size()));
    buf += key_digest(set, method_key);
    for (double v : dist.entries()) append_raw(buf, v);
    std::ofstream out(path_for(set, method_key), std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write cache file " + path_for(set, method_key).string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace banddist
