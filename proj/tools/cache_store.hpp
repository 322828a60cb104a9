#pragma once

#include <filesystem>
#include <string>

#include "critline/zero_cache.hpp"
#include "critline/zeros.hpp"

namespace critline::cli {

/// Directory of zero caches (`*.zeros`). Requests are served from any file
/// whose verified window covers them; otherwise a scan extends or adds one.
class CacheStore {
public:
    CacheStore(std::filesystem::path dir, bool allow_build, ScanOptions scan = {});

    /// Cache covering [lo, hi]. Coverage error when building is disabled.
    ZeroCache require(double lo, double hi);
    /// Stores a cache under a name derived from its window.
    std::filesystem::path store(const ZeroCache& cache);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    /// File that served the last request (empty before any).
    const std::filesystem::path& last_file() const noexcept { return last_file_; }

    /// CRITLINE_CACHE_DIR, else ./critline-cache.
    static std::filesystem::path default_dir();

private:
    std::filesystem::path dir_;
    bool allow_build_;
    ScanOptions scan_;
    std::filesystem::path last_file_;
};

}  // namespace critline::cli
