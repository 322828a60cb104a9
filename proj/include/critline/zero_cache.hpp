#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace critline {

/// One critical-line zero.
struct ZeroRecord {
    std::int64_t index = 0;    // rank among all zeros with positive ordinate
    double gamma = 0.0;
    double tol = 0.0;          // Z changes sign on [gamma - tol, gamma + tol]
    double z_prime_abs = 0.0;  // |Z'(gamma)|
};

enum class CacheSource { Scanned, Ingested };

/// Sorted zero ordinates that are complete on [t_min_verified, t_max_verified].
/// Records carry their global index, so N(t) is available for a window that
/// does not start at the real axis.
struct ZeroCache {
    std::vector<ZeroRecord> records;
    double t_min_verified = 0.0;
    double t_max_verified = 0.0;
    CacheSource source = CacheSource::Scanned;
    /// N(t_min_verified).
    std::int64_t base_count = 0;

    bool covers(double lo, double hi) const noexcept {
        return lo >= t_min_verified && hi <= t_max_verified;
    }

    /// N(t) = #{gamma <= t}; Coverage error outside the verified window.
    std::int64_t count_upto(double t) const;

    /// Records with lo < gamma <= hi; Coverage error if not covered.
    std::span<const ZeroRecord> in_range(double lo, double hi) const;

    /// Ordinates with lo < gamma < hi, for panel splitting.
    std::vector<double> ordinates_between(double lo, double hi) const;

    /// Distance from t to the nearest cached ordinate (infinity if empty).
    double distance_to_nearest(double t) const noexcept;

    /// Throws Consistency if ordering or index invariants are violated.
    void validate() const;
};

/// `# zeta-zeros v1 t_max=<value>` header, then `index gamma tol z_prime_abs`.
/// Written to a temporary file and renamed into place.
void write_cache(const ZeroCache& cache, const std::filesystem::path& path);
ZeroCache read_cache(const std::filesystem::path& path);

/// Merge two caches whose verified windows touch or overlap.
ZeroCache merge_caches(const ZeroCache& a, const ZeroCache& b);

}  // namespace critline
