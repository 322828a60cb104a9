#include "critline/kernels.hpp"

#include "critline/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace critline {

void hardy_z_grid(std::span<const double> ts, std::span<double> out, EvalOptions opts, Exec exec) {
    require(out.size() >= ts.size(), ErrorKind::Size, "hardy_z_grid: output span too short");
    map_indexed(ts.size(), [&](std::size_t i) { return hardy_z(ts[i], opts); }, out, exec);
}

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace critline
