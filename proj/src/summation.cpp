#include "wolff/summation.hpp"

namespace wolff {

double compensated_sum(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

namespace {

constexpr std::size_t kLeaf = 32;

double pairwise_real(std::span<const double> xs) {
    if (xs.size() <= kLeaf) {
        CompensatedSum acc;
        for (double x : xs) acc.add(x);
        return acc.value();
    }
    std::size_t mid = xs.size() / 2;
    return pairwise_real(xs.first(mid)) + pairwise_real(xs.subspan(mid));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_real(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
    return pairwise_transform_sum(xs.size(), [&](std::size_t i) { return xs[i]; });
}

}  // namespace wolff
