#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wolff {

/// Running compensated accumulator (Neumaier variant of Kahan summation).
/// The correction term is folded in only when `value()` is read, so the
/// accumulator itself is an error-free transformation of the partial sums.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated sum of a contiguous range, left to right.
double compensated_sum(std::span<const double> xs);

/// Deterministic pairwise (tree) reduction with compensated leaves.
/// The split points depend only on the length, so the result is a pure
/// function of the input sequence regardless of how callers chunk work.
double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

/// Pairwise-compensated sum of f(i) for i in [0, n).
template <typename F>
std::complex<double> pairwise_transform_sum(std::size_t n, F&& f) {
    // Base case small enough that compensation noise stays negligible.
    constexpr std::size_t kLeaf = 32;
    struct Rec {
        F& fn;
        std::complex<double> run(std::size_t lo, std::size_t hi) {
            if (hi - lo <= kLeaf) {
                CompensatedSum re, im;
                for (std::size_t i = lo; i < hi; ++i) {
                    std::complex<double> v = fn(i);
                    re.add(v.real());
                    im.add(v.imag());
                }
                return {re.value(), im.value()};
            }
            std::size_t mid = lo + (hi - lo) / 2;
            return run(lo, mid) + run(mid, hi);
        }
    };
    Rec rec{f};
    return n == 0 ? std::complex<double>{0.0, 0.0} : rec.run(0, n);
}

}  // namespace wolff
