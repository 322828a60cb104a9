#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace critline {

/// Neumaier-compensated accumulator. Order of add() calls fixes the result
/// bit-for-bit, which is what the parallel kernels rely on.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    CompensatedComplexSum& operator+=(std::complex<double> z) noexcept {
        add(z);
        return *this;
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

inline double compensated_total(std::span<const double> xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

}  // namespace critline
