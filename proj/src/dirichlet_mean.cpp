#include "critline/dirichlet_mean.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "critline/error.hpp"
#include "critline/summation.hpp"
#include "critline/zeta_engine.hpp"

namespace critline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxMainTermM = 10'000;

double compute_euler_constant() {
    // gamma = H_n - log n - 1/(2n) + sum_k B_2k / (2k n^2k).
    constexpr int n = 1000;
    long double h = 0.0L;
    for (int k = n; k >= 1; --k) h += 1.0L / k;
    const long double x = n;
    const long double x2 = x * x;
    const long double tail = 1.0L / (12.0L * x2) - 1.0L / (120.0L * x2 * x2) + 1.0L / (252.0L * x2 * x2 * x2);
    return static_cast<double>(h - std::log(x) - 1.0L / (2.0L * x) + tail);
}

}  // namespace

double euler_constant() {
    static const double c0 = compute_euler_constant();
    return c0;
}

std::complex<double> DirichletPoly::eval_halfline(double t) const {
    CompensatedComplexSum s;
    for (int m = 1; m <= M(); ++m) {
        const auto c = a(m);
        if (c == 0.0) continue;
        const double lm = std::log(static_cast<double>(m));
        s.add(c * std::polar(1.0 / std::sqrt(static_cast<double>(m)), -t * lm));
    }
    return s.value();
}

void DirichletPoly::validate() const {
    require(M() >= 1, ErrorKind::Parameter, "dirichlet poly: M must be >= 1");
    for (const auto& c : coeffs)
        require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorKind::Parameter,
                "dirichlet poly: non-finite coefficient");
}

DirichletPoly DirichletPoly::unit(int M) {
    require(M >= 1, ErrorKind::Parameter, "dirichlet poly: M must be >= 1");
    return {std::vector<std::complex<double>>(static_cast<std::size_t>(M), 1.0)};
}

DirichletPoly DirichletPoly::primes_weighted(double y, bool log_weight, const PrimeTable& primes) {
    require(y >= 2.0 && std::floor(y) <= static_cast<double>(primes.limit), ErrorKind::Parameter,
            "dirichlet poly: need 2 <= y <= prime table limit");
    DirichletPoly A;
    A.coeffs.assign(static_cast<std::size_t>(std::floor(y)), 0.0);
    for (auto p : primes.primes) {
        if (static_cast<double>(p) > y) break;
        A.coeffs[static_cast<std::size_t>(p - 1)] = log_weight ? std::log(static_cast<double>(p)) : 1.0;
    }
    while (!A.coeffs.empty() && A.coeffs.back() == 0.0) A.coeffs.pop_back();
    return A;
}

DirichletPoly DirichletPoly::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Format, "dirichlet poly: cannot open " + path.string());
    std::map<long long, std::complex<double>> entries;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::istringstream ss(line);
        long long m = 0;
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        const bool ok = static_cast<bool>(ss >> m >> re >> im) && !(ss >> extra);
        require(ok && m >= 1 && m <= kMaxMainTermM, ErrorKind::Format,
                "dirichlet poly: line " + std::to_string(lineno) + ": expected `m re im` with 1 <= m <= 10000");
        require(!entries.contains(m), ErrorKind::Format,
                "dirichlet poly: line " + std::to_string(lineno) + ": duplicate m");
        entries[m] = {re, im};
    }
    require(!entries.empty(), ErrorKind::Format, "dirichlet poly: no coefficients in " + path.string());
    DirichletPoly A;
    A.coeffs.assign(static_cast<std::size_t>(entries.rbegin()->first), 0.0);
    for (const auto& [m, c] : entries) A.coeffs[static_cast<std::size_t>(m - 1)] = c;
    A.validate();
    return A;
}

MainTermBreakdown main_term(double T, const DirichletPoly& A) {
    require(std::isfinite(T) && T >= 10.0, ErrorKind::Parameter, "main_term: T must be >= 10");
    A.validate();
    require(A.M() <= kMaxMainTermM, ErrorKind::Size, "main_term: M exceeds 10000");
    std::vector<int> support;
    for (int m = 1; m <= A.M(); ++m)
        if (A.a(m) != 0.0) support.push_back(m);

    const double c0 = euler_constant();
    const double shift = 2.0 * c0 - 1.0;
    const double log_t = std::log(T / kTwoPi);
    const std::size_t n = support.size();
    std::vector<double> diag(n);
    std::vector<double> off_re(n);
    std::vector<double> off_im(n);
    for_each_index(
        n,
        [&](std::size_t i) {
            const int k = support[i];
            const auto ak = A.a(k);
            diag[i] = std::norm(ak) / k * (log_t + shift);
            CompensatedComplexSum row;
            for (std::size_t j = 0; j < n; ++j) {
                const int l = support[j];
                if (l == k) continue;
                const long long g = std::gcd(k, l);
                const double lcm = static_cast<double>(k) / static_cast<double>(g) * l;
                const double lg = log_t + 2.0 * std::log(static_cast<double>(g)) - std::log(static_cast<double>(k)) -
                                  std::log(static_cast<double>(l));
                row.add(ak * std::conj(A.a(l)) / lcm * (lg + shift));
            }
            off_re[i] = row.value().real();
            off_im[i] = row.value().imag();
        },
        Exec::Parallel);
    MainTermBreakdown out;
    out.euler_C0 = c0;
    out.diagonal = T * compensated_total(diag);
    out.off_diagonal = T * compensated_total(off_re);
    out.total = out.diagonal + out.off_diagonal;
    out.imag_residue = T * compensated_total(off_im);
    return out;
}

MainTermBreakdown prime_main_term(double T, double y, PrimeMainWeight weight, const PrimeTable& primes) {
    require(std::isfinite(T) && T >= 10.0, ErrorKind::Parameter, "prime_main_term: T must be >= 10");
    require(std::isfinite(y) && y >= 1.0 && std::floor(y) <= static_cast<double>(primes.limit),
            ErrorKind::Parameter, "prime_main_term: need 1 <= y <= prime table limit");
    std::vector<double> p;
    std::vector<double> w;
    for (auto q : primes.primes) {
        if (static_cast<double>(q) > y) break;
        p.push_back(static_cast<double>(q));
        w.push_back(weight == PrimeMainWeight::LogP ? std::log(static_cast<double>(q)) : 1.0);
    }
    const double c0 = euler_constant();
    const double shift = 2.0 * c0 - 1.0;
    const double log_t = std::log(T / kTwoPi);
    CompensatedSum diag;
    CompensatedSum off;
    for (std::size_t i = 0; i < p.size(); ++i) {
        diag += w[i] * w[i] / p[i] * (log_t + shift);
        for (std::size_t j = 0; j < p.size(); ++j)
            if (j != i) off += w[i] * w[j] / (p[i] * p[j]) * (std::log(T / (kTwoPi * p[i] * p[j])) + shift);
    }
    MainTermBreakdown out;
    out.euler_C0 = c0;
    out.diagonal = diag.value();
    out.off_diagonal = off.value();
    out.total = out.diagonal + out.off_diagonal;
    return out;
}

namespace {

void require_runtime_guard(double T, const DirichletPoly& A) {
    require(A.M() <= 50, ErrorKind::Size, "empirical integral: M must be <= 50");
    const double cap = 5000.0 * std::pow(10.0 / A.M(), 2);
    require(T <= std::max(cap, 5000.0), ErrorKind::Size, "empirical integral: T exceeds the runtime guard");
}

QuadResult weighted_integral(double a, double b, const DirichletPoly& A, const QuadratureSpec& quad) {
    // A(1/2+it) oscillates at frequency up to log M.
    QuadratureSpec q = quad;
    if (A.M() >= 2) {
        const double cap = 0.5 / std::log(static_cast<double>(A.M()));
        q.max_panel = q.max_panel > 0.0 ? std::min(q.max_panel, cap) : cap;
    }
    const EvalOptions ev{1e-10, EvalMethod::Auto};
    return integrate([&](double t) { return zeta_abs2_halfline(t, ev) * std::norm(A.eval_halfline(t)); }, a, b, q);
}

}  // namespace

EmpiricalComparison empirical_weighted_integral(double T, const DirichletPoly& A, const QuadratureSpec& quad) {
    A.validate();
    require_runtime_guard(T, A);
    EmpiricalComparison out;
    const auto q = weighted_integral(0.0, T, A, quad);
    out.empirical = q.value;
    out.level = q.level;
    out.main = main_term(T, A).total;
    out.E = out.empirical - out.main;
    return out;
}

ShortIntervalDifference short_interval_difference(double T, double H, const DirichletPoly& A,
                                                  const QuadratureSpec& quad, bool with_empirical) {
    require(std::isfinite(H) && H > 0.0, ErrorKind::Parameter, "short_interval_difference: H must be > 0");
    ShortIntervalDifference out;
    out.main_difference = main_term(T + H, A).total - main_term(T, A).total;
    if (with_empirical) {
        require_runtime_guard(T + H, A);
        out.empirical = weighted_integral(T, T + H, A, quad).value;
    }
    return out;
}

}  // namespace critline
