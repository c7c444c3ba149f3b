#pragma once

#include <complex>
#include <vector>

#include "wolff/packing.hpp"

namespace wolff {

struct Atom {
    Complex point;
    double weight = 0.0;
};

/// Truncated annihilating measure for the disc algebra: a leading atom of
/// weight -pi at the origin followed by one atom of weight pi * r_n^2 at each
/// disc centre. The residual area of the source packing is carried along so
/// every annihilation identity can be stated exactly at finite stage.
struct AnnihilatingMeasure {
    std::vector<Atom> atoms;
    double residual_area = 0.0;
};

/// Builds the measure from a non-empty packing. Weights are recomputed from
/// the radii, so the measure rebuilds bit-identically from a persisted
/// packing. Throws DegenerateInput for an empty packing.
AnnihilatingMeasure wolff_measure(const Packing& packing);

/// sum |weight_n| by compensated summation; equals
/// 2 pi - residual_area up to the ledger tolerance.
double total_variation(const AnnihilatingMeasure& measure);

/// Structural validation shared by the builder and the JSON loader: leading
/// atom exactly (0, -pi), positive weights elsewhere, pairwise-distinct points
/// inside the open unit disc, and (when check_ledger is set) the
/// weight/residual ledger identity. Throws DegenerateInput naming the
/// violated condition.
void validate_measure(const AnnihilatingMeasure& measure, bool check_ledger = true);

}  // namespace wolff
