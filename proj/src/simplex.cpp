#include "wolff/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace wolff {

namespace {
constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-9;
constexpr long kStallLimit = 200;  // degenerate pivots before switching to Bland
}  // namespace

SimplexResult simplex_maximize(const std::vector<double>& c,
                               const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b,
                               long max_iterations) {
    const std::size_t nx = c.size();
    const std::size_t m = A.size();
    if (b.size() != m) throw std::invalid_argument("simplex: b size mismatch");
    for (const auto& row : A) {
        if (row.size() != nx) throw std::invalid_argument("simplex: A row size mismatch");
    }
    for (double bi : b) {
        if (bi < 0.0) throw std::invalid_argument("simplex: requires b >= 0");
    }

    // Columns: 2*nx split variables (x_j = t_{2j} - t_{2j+1}) then m slacks.
    const std::size_t ncols = 2 * nx + m;
    // Tableau rows 0..m-1 are constraints, row m is the objective (negated
    // reduced costs convention: row m holds c_j for nonbasic improving > 0).
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(ncols + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < nx; ++j) {
            T[i][2 * j] = A[i][j];
            T[i][2 * j + 1] = -A[i][j];
        }
        T[i][2 * nx + i] = 1.0;
        T[i][ncols] = b[i];
    }
    for (std::size_t j = 0; j < nx; ++j) {
        T[m][2 * j] = c[j];
        T[m][2 * j + 1] = -c[j];
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = 2 * nx + i;

    SimplexResult result;
    long stall = 0;
    bool bland = false;

    auto recover_x = [&]() {
        std::vector<double> x(nx, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t v = basis[i];
            if (v < 2 * nx) {
                double val = T[i][ncols];
                if (v % 2 == 0) {
                    x[v / 2] += val;
                } else {
                    x[v / 2] -= val;
                }
            }
        }
        return x;
    };

    for (result.iterations = 0; result.iterations < max_iterations; ++result.iterations) {
        // Entering column.
        std::size_t enter = ncols;
        if (!bland) {
            double best = kCostEps;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (T[m][j] > best) {
                    best = T[m][j];
                    enter = j;
                }
            }
        } else {
            for (std::size_t j = 0; j < ncols; ++j) {
                if (T[m][j] > kCostEps) {
                    enter = j;
                    break;
                }
            }
        }
        if (enter == ncols) {
            result.status = SimplexResult::Status::optimal;
            result.objective = -T[m][ncols];
            result.x = recover_x();
            return result;
        }

        // Ratio test; smallest index on ties keeps the walk deterministic.
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] > kPivotEps) {
                double ratio = T[i][ncols] / T[i][enter];
                if (ratio < best_ratio - 1e-15 ||
                    (ratio < best_ratio + 1e-15 && (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) {
            // Unbounded: moving along `enter` increases the objective forever.
            result.status = SimplexResult::Status::unbounded;
            result.objective = std::numeric_limits<double>::infinity();
            result.x = recover_x();
            std::vector<double> ray(nx, 0.0);
            if (enter < 2 * nx) {
                ray[enter / 2] = (enter % 2 == 0) ? 1.0 : -1.0;
            }
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t v = basis[i];
                if (v < 2 * nx) {
                    double delta = -T[i][enter];
                    if (v % 2 == 0) {
                        ray[v / 2] += delta;
                    } else {
                        ray[v / 2] -= delta;
                    }
                }
            }
            result.ray = ray;
            return result;
        }

        // Bland's rule is slow, so it only takes over (for good) once a long
        // degenerate streak makes cycling plausible.
        if (best_ratio <= 1e-15) {
            if (++stall > kStallLimit) bland = true;
        } else {
            stall = 0;
        }

        // Pivot on (leave, enter).
        double piv = T[leave][enter];
        for (std::size_t j = 0; j <= ncols; ++j) T[leave][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double factor = T[i][enter];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) {
                T[i][j] -= factor * T[leave][j];
            }
            T[i][enter] = 0.0;
        }
        basis[leave] = enter;
    }

    result.status = SimplexResult::Status::iteration_limit;
    result.objective = -T[m][ncols];
    result.x = recover_x();
    return result;
}

}  // namespace wolff
