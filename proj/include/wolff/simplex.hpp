#pragma once

#include <vector>

namespace wolff {

/// Dense tableau simplex for
///     maximize c^T x  subject to  A x <= b,  x free,
/// with b >= 0 (the slack basis is then feasible). Free variables are split
/// internally into positive and negative parts. Pivoting is Dantzig's rule
/// with deterministic index tie-breaks, falling back to Bland's rule after a
/// degenerate streak so cycling cannot occur.
struct SimplexResult {
    enum class Status { optimal, unbounded, iteration_limit };
    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<double> x;    // primal point (optimal, or base point when unbounded)
    std::vector<double> ray;  // improving ray with A ray <= 0, c^T ray > 0 (unbounded only)
    long iterations = 0;
};

SimplexResult simplex_maximize(const std::vector<double>& c,
                               const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b,
                               long max_iterations = 200000);

}  // namespace wolff
