#include "critline/zero_cache.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>

#include "critline/error.hpp"

namespace critline {

namespace {

auto first_above(const std::vector<ZeroRecord>& recs, double t) {
    return std::upper_bound(recs.begin(), recs.end(), t,
                            [](double v, const ZeroRecord& r) { return v < r.gamma; });
}

std::string format_coverage(double lo, double hi, const ZeroCache& c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "[%.10g, %.10g] outside verified window [%.10g, %.10g]", lo, hi,
                  c.t_min_verified, c.t_max_verified);
    return buf;
}

}  // namespace

std::int64_t ZeroCache::count_upto(double t) const {
    require(covers(t, t), ErrorKind::Coverage, "count_upto: " + format_coverage(t, t, *this));
    const auto it = first_above(records, t);
    return base_count + static_cast<std::int64_t>(it - records.begin());
}

std::span<const ZeroRecord> ZeroCache::in_range(double lo, double hi) const {
    require(covers(lo, hi), ErrorKind::Coverage, "in_range: " + format_coverage(lo, hi, *this));
    const auto b = first_above(records, lo);
    const auto e = first_above(records, hi);
    if (e <= b) return {};
    return {&*b, static_cast<std::size_t>(e - b)};
}

std::vector<double> ZeroCache::ordinates_between(double lo, double hi) const {
    std::vector<double> out;
    for (auto it = first_above(records, lo); it != records.end() && it->gamma < hi; ++it) out.push_back(it->gamma);
    return out;
}

double ZeroCache::distance_to_nearest(double t) const noexcept {
    if (records.empty()) return std::numeric_limits<double>::infinity();
    const auto it = first_above(records, t);
    double best = std::numeric_limits<double>::infinity();
    if (it != records.end()) best = it->gamma - t;
    if (it != records.begin()) best = std::min(best, t - std::prev(it)->gamma);
    return best;
}

void ZeroCache::validate() const {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        require(r.index == base_count + static_cast<std::int64_t>(i) + 1, ErrorKind::Consistency,
                "zero cache: index sequence broken at record " + std::to_string(i));
        if (i > 0)
            require(r.gamma > records[i - 1].gamma, ErrorKind::Consistency,
                    "zero cache: ordinates not strictly increasing at index " + std::to_string(r.index));
        require(r.gamma > t_min_verified && r.gamma <= t_max_verified, ErrorKind::Consistency,
                "zero cache: ordinate outside verified window at index " + std::to_string(r.index));
    }
}

void write_cache(const ZeroCache& cache, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::FILE* f = std::fopen(tmp.c_str(), "w");
        require(f != nullptr, ErrorKind::Parameter, "write_cache: cannot open " + tmp.string());
        std::fprintf(f, "# zeta-zeros v1 t_max=%.17g", cache.t_max_verified);
        if (cache.t_min_verified != 0.0 || cache.base_count != 0)
            std::fprintf(f, " t_min=%.17g base=%" PRId64, cache.t_min_verified, cache.base_count);
        std::fprintf(f, "\n");
        for (const auto& r : cache.records)
            std::fprintf(f, "%" PRId64 " %.17g %.17g %.17g\n", r.index, r.gamma, r.tol, r.z_prime_abs);
        const bool ok = std::fflush(f) == 0;
        std::fclose(f);
        require(ok, ErrorKind::Parameter, "write_cache: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    require(!ec, ErrorKind::Parameter, "write_cache: rename failed: " + ec.message());
}

ZeroCache read_cache(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Format, "read_cache: cannot open " + path.string());
    ZeroCache cache;
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!header) {
                require(line.rfind("# zeta-zeros v1", 0) == 0, ErrorKind::Format,
                        "read_cache: line 1: missing '# zeta-zeros v1' header");
                std::istringstream hs(line.substr(15));
                std::string kv;
                bool have_tmax = false;
                while (hs >> kv) {
                    const auto eq = kv.find('=');
                    require(eq != std::string::npos, ErrorKind::Format, "read_cache: bad header field '" + kv + "'");
                    const std::string key = kv.substr(0, eq);
                    const std::string val = kv.substr(eq + 1);
                    try {
                        if (key == "t_max") {
                            cache.t_max_verified = std::stod(val);
                            have_tmax = true;
                        } else if (key == "t_min") {
                            cache.t_min_verified = std::stod(val);
                        } else if (key == "base") {
                            cache.base_count = std::stoll(val);
                        }
                    } catch (const std::exception&) {
                        fail(ErrorKind::Format, "read_cache: bad header value '" + kv + "'");
                    }
                }
                require(have_tmax, ErrorKind::Format, "read_cache: header lacks t_max");
                header = true;
            }
            continue;
        }
        require(header, ErrorKind::Format, "read_cache: line " + std::to_string(lineno) + ": data before header");
        std::istringstream ls(line);
        ZeroRecord r;
        require(static_cast<bool>(ls >> r.index >> r.gamma >> r.tol >> r.z_prime_abs), ErrorKind::Format,
                "read_cache: line " + std::to_string(lineno) + ": expected 'index gamma tol z_prime_abs'");
        cache.records.push_back(r);
    }
    require(header, ErrorKind::Format, "read_cache: empty file");
    try {
        cache.validate();
    } catch (const Error& e) {
        fail(ErrorKind::Format, std::string("read_cache: ") + e.what());
    }
    return cache;
}

ZeroCache merge_caches(const ZeroCache& a, const ZeroCache& b) {
    const ZeroCache& lo = a.t_min_verified <= b.t_min_verified ? a : b;
    const ZeroCache& hi = a.t_min_verified <= b.t_min_verified ? b : a;
    require(hi.t_min_verified <= lo.t_max_verified, ErrorKind::Coverage, "merge_caches: windows do not touch");
    ZeroCache out;
    out.t_min_verified = lo.t_min_verified;
    out.base_count = lo.base_count;
    out.t_max_verified = std::max(lo.t_max_verified, hi.t_max_verified);
    out.source = (a.source == CacheSource::Ingested || b.source == CacheSource::Ingested) ? CacheSource::Ingested
                                                                                          : CacheSource::Scanned;
    out.records = lo.records;
    for (const auto& r : hi.records)
        if (r.gamma > lo.t_max_verified) out.records.push_back(r);
    out.validate();
    return out;
}

}  // namespace critline
