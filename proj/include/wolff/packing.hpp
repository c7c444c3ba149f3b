#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wolff/summation.hpp"

namespace wolff {

using Complex = std::complex<double>;

/// Closed disc strictly inside the open unit disc.
struct Disc {
    Complex center;
    double radius = 0.0;
};

/// Stop rule for the greedy packer: exactly one of the two must be set.
struct StopRule {
    std::optional<std::size_t> max_discs;
    std::optional<double> target_residual;

    static StopRule after_discs(std::size_t n) { return {n, std::nullopt}; }
    static StopRule at_residual(double r) { return {std::nullopt, r}; }
};

/// Ordered family of pairwise-disjoint closed discs inside the open unit
/// disc, with an exact area ledger: covered = pi * sum r_n^2 accumulated
/// with compensated summation, residual = pi - covered.
class Packing {
public:
    Packing(double shrink, double tolerance, std::string stop_rule = "");

    /// Builds a packing from explicit discs, validating every invariant
    /// (containment, strict pairwise disjointness). Used by the JSON loader
    /// and by tests that need hand-made configurations.
    static Packing from_discs(const std::vector<Disc>& discs, double shrink,
                              double tolerance);

    /// Inserts a disc, revalidating disjointness and containment against the
    /// current family. Throws std::invalid_argument on violation, with the
    /// offending pair named.
    void insert(const Disc& disc);

    const std::vector<Disc>& discs() const { return discs_; }
    std::size_t size() const { return discs_.size(); }
    bool empty() const { return discs_.empty(); }

    double covered_area() const { return covered_.value(); }
    double residual_area() const;

    double shrink() const { return shrink_; }
    double tolerance() const { return tolerance_; }
    const std::string& stop_rule() const { return stop_rule_; }

    /// First `count` discs as a packing of their own. Greedy construction is
    /// incremental, so the prefix of an N-disc run equals the count-disc run.
    Packing prefix(std::size_t count) const;

private:
    std::vector<Disc> discs_;
    CompensatedSum covered_;
    double shrink_;
    double tolerance_;
    std::string stop_rule_;
};

/// Candidate returned by the largest-empty-disc search: a point and its
/// exact clearance value.
struct DiscCandidate {
    Complex center;
    double value = 0.0;
};

/// g(c) = min(1 - |c|, min_n(|c - center_n| - radius_n)). 1-Lipschitz;
/// negative inside a placed disc or outside the unit disc.
double clearance(Complex point, const Packing& packing);

/// Global near-maximizer of clearance via branch-and-bound on an axis-aligned
/// quadtree over [-1,1]^2. A cell is pruned when
///   clearance(cell center) + cell half-diagonal <= best + tolerance,
/// sound because clearance is 1-Lipschitz. Cells are visited depth-first with
/// children in row-major order (y ascending, then x), so ties resolve to the
/// first maximizer in that scan order and results are bit-reproducible.
///
/// Returns (c*, v*) with v* = clearance(c*) >= global max - tolerance.
/// Throws RegionExhausted when the certified maximum is <= tolerance.
DiscCandidate largest_empty_disc(const Packing& packing, double tolerance);

/// Greedy near-largest-empty-disc packing. Each step inserts
/// Disc(c*, shrink * v*); a candidate at the exact origin is displaced by
/// `tolerance` along the positive real axis (the origin is reserved) and its
/// clearance recomputed. Stops when the rule fires; propagates
/// RegionExhausted if the residual becomes too thin first.
Packing pack_greedy(const StopRule& stop, double shrink, double tolerance);

}  // namespace wolff
