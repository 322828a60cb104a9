#include "cache_store.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "critline/error.hpp"

namespace critline::cli {

namespace {

// Windows starting below this are always scanned from the real axis.
constexpr double kFullScanLimit = 20000.0;

std::string window_name(const ZeroCache& c) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "zeros_%.0f_%.0f.zeros", c.t_min_verified, c.t_max_verified);
    return buf;
}

std::vector<std::filesystem::path> cache_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec))
        if (e.is_regular_file() && e.path().extension() == ".zeros") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CacheStore::CacheStore(std::filesystem::path dir, bool allow_build, ScanOptions scan)
    : dir_(std::move(dir)), allow_build_(allow_build), scan_(scan) {}

std::filesystem::path CacheStore::default_dir() {
    if (const char* env = std::getenv("CRITLINE_CACHE_DIR"); env && *env) return env;
    return "critline-cache";
}

std::filesystem::path CacheStore::store(const ZeroCache& cache) {
    std::filesystem::create_directories(dir_);
    const auto path = dir_ / window_name(cache);
    write_cache(cache, path);
    last_file_ = path;
    return path;
}

ZeroCache CacheStore::require(double lo, double hi) {
    // Windows low enough are scanned from the axis; an existing file that
    // reaches the start of the scan is extended instead of rescanned.
    const double start = lo < kFullScanLimit ? 0.0 : lo;
    std::filesystem::path extendable;
    ZeroCache base;
    for (const auto& p : cache_files(dir_)) {
        ZeroCache c = read_cache(p);
        if (c.covers(lo, hi)) {
            last_file_ = p;
            return c;
        }
        if (c.t_min_verified <= start && c.t_max_verified >= start && c.t_max_verified > base.t_max_verified) {
            extendable = p;
            base = std::move(c);
        }
    }
    critline::require(allow_build_, ErrorKind::Coverage,
                      "no cached zeros cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "] in " +
                          dir_.string() + " (building disabled)");
    ZeroCache built;
    if (!extendable.empty()) {
        built = merge_caches(base, build_cache(base.t_max_verified, hi, scan_));
        std::fprintf(stderr, "note: extending %s to t = %.10g\n", extendable.c_str(), hi);
    } else {
        built = build_cache(start, hi, scan_);
        std::fprintf(stderr, "note: scanning zeros on [%.10g, %.10g]\n", start, hi);
    }
    const auto path = store(built);
    if (!extendable.empty() && extendable != path) std::filesystem::remove(extendable);
    last_file_ = path;
    return built;
}

}  // namespace critline::cli
