#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wolff/functions.hpp"
#include "wolff/measure.hpp"
#include "wolff/packing.hpp"

namespace wolff {

enum class IdentityKind {
    moment,
    exponential,
    cauchy,
    harmonic,
    functional_norm,
    dominating,
    mc_oracle,
};

std::string to_string(IdentityKind kind);

/// One truncation-error certificate: the observed deviation of an
/// annihilation sum against its theoretical bound residual * sup-norm.
struct VerificationReport {
    IdentityKind kind = IdentityKind::moment;
    std::string descriptor;
    std::size_t truncation = 0;  // number of atoms
    double deviation = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// The pass rule is a pure function of deviation and bound:
/// deviation <= bound * (1 + 1e-9) + 1e-12.
bool bound_check(double deviation, double bound);

VerificationReport make_report(IdentityKind kind, std::string descriptor,
                               std::size_t truncation, double deviation,
                               double bound);

/// sum_n weight_n point_n^k (pairwise-compensated). Bound: residual * 1.
Complex moment_sum(const AnnihilatingMeasure& measure, unsigned k);

/// sum_n weight_n exp(point_n z). Bound: residual * e^{|z|}.
Complex exp_sum(const AnnihilatingMeasure& measure, Complex z);

/// sum_n weight_n / (z - point_n) for |z| > 1 strictly.
/// Bound: residual / (|z| - 1). Throws std::invalid_argument for |z| <= 1.
Complex cauchy_sum(const AnnihilatingMeasure& measure, Complex z);

/// sum_n weight_n f(point_n). Bound: residual * sup_norm_estimate(f).
double harmonic_sum(const AnnihilatingMeasure& measure,
                    const HarmonicTestFunction& f);

/// Worst bound ratio over `trials` random polynomials of the given degree
/// (coefficients with both components uniform on [0,1), drawn from
/// mt19937_64 streams derived from `seed` and the trial index).
/// Requires trials >= 1.
VerificationReport functional_norm_check(const AnnihilatingMeasure& measure,
                                         int trials, int degree,
                                         std::uint64_t seed);

/// Spatial index over the discs of a packing for point-membership queries.
/// The hash-grid fast path and the naive scan must agree exactly.
class DiscIndex {
public:
    explicit DiscIndex(const Packing& packing);

    bool covered(double x, double y) const;
    bool covered_naive(double x, double y) const;

private:
    std::vector<double> cx_, cy_, r2_;
    std::vector<std::vector<std::uint32_t>> cells_;
    int grid_ = 0;
    double cell_size_ = 0.0;
};

struct McEstimate {
    Complex estimate;
    double stderr_combined = 0.0;
    double acceptance_rate = 0.0;
};

/// Monte-Carlo estimate of the integral of f over the uncovered part of the
/// unit disc, by uniform rejection sampling (samples >= 1e4). Sampling is
/// chunked with counter-based per-chunk seeds, so the result does not depend
/// on how chunks are scheduled. Throws InfeasibleScale when the acceptance
/// rate drops below 1e-3.
McEstimate mc_residual_integral(const Packing& packing,
                                const std::function<Complex(Complex)>& f,
                                std::size_t samples, std::uint64_t seed);

/// sup over atom points (n >= 2) of |B| for the finite Blaschke product with
/// the given zeros; sup over the whole disc is 1, so values near 1 indicate a
/// dominating sequence. `boundary_samples` (>= 64) drives an internal
/// max-modulus sanity check of the evaluator on the unit circle.
/// Throws std::invalid_argument if any zero has modulus >= 1.
double dominating_check(const AnnihilatingMeasure& measure,
                        const std::vector<Complex>& blaschke_zeros,
                        int boundary_samples);

/// Reconstructs the packing whose discs generated a measure (radius from
/// weight = pi r^2); used when only the measure file is at hand.
Packing packing_from_measure(const AnnihilatingMeasure& measure);

struct VerifyConfig {
    int moment_kmax = 50;
    double exp_radius = 3.0;
    std::vector<double> cauchy_moduli = {1.5, 2.0, 10.0};
    int harmonic_kmax = 10;
    int poly_degree = 10;
    int poly_trials = 100;
    std::uint64_t seed = 42;
    std::size_t mc_samples = 100000;  // 0 disables the Monte-Carlo cross-check
    int blaschke_zero_count = 3;
    int sup_samples = 4096;
};

/// Nine-point evaluation grid for the exponential identity: the origin plus
/// eight polar points at radii R/2 and R, all with |z| <= R.
std::vector<Complex> exp_grid(double radius);

/// Runs the whole verification suite and returns one report per check.
std::vector<VerificationReport> run_verification(const AnnihilatingMeasure& measure,
                                                 const VerifyConfig& config);

}  // namespace wolff
