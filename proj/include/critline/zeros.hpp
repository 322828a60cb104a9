#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "critline/argument.hpp"
#include "critline/kernels.hpp"
#include "critline/zero_cache.hpp"

namespace critline {

/// t with theta(t) = n pi, n >= -1 (Newton on the exact phase).
double gram_point(int n);

struct ZeroCount {
    double raw = 0.0;        // theta(T)/pi + 1 + S(T)
    std::int64_t count = 0;  // nearest integer
};

/// N(T) from the counting identity with S by the path method.
/// Consistency error if raw is farther than 1e-3 from an integer.
ZeroCount count_zeros_nt(double T, const ArgPath& path = {});

struct ScanOptions {
    double grid_factor = 0.2;  // grid step <= grid_factor / theta'(t)
    double tol = 1e-9;         // refinement half-width
    int max_rescans = 4;
    Exec exec = Exec::Parallel;
};

/// All zeros with t_lo < gamma <= t_hi, complete by the N(T) audit.
std::vector<ZeroRecord> scan_zeros(double t_lo, double t_hi, const ScanOptions& opts = {});

/// Scan and package as a cache verified on [t_lo, t_hi].
ZeroCache build_cache(double t_lo, double t_hi, const ScanOptions& opts = {});

/// One ordinate per line, `#` comments allowed, strictly increasing.
/// Every 100th ordinate (at least one) is spot-checked with |Z| < 1e-3.
ZeroCache ingest_zero_table(const std::filesystem::path& path);

}  // namespace critline
