#include "wolff/independence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wolff/errors.hpp"
#include "wolff/measure.hpp"
#include "wolff/rng.hpp"
#include "wolff/simplex.hpp"
#include "wolff/summation.hpp"

namespace wolff {

namespace {

constexpr int kDirections = 32;
constexpr std::size_t kMaxPoints = 64;
constexpr int kMaxDegree = 64;

double direction_angle(int l) {
    return 2.0 * std::numbers::pi * l / kDirections;
}

/// Regular 32-gon gauge: max over directions of the rotated real part.
/// Satisfies cos(pi/32) |w| <= gauge(w) <= |w|.
double polygon_gauge(Complex w) {
    double best = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < kDirections; ++l) {
        double theta = direction_angle(l);
        best = std::max(best, w.real() * std::cos(theta) + w.imag() * std::sin(theta));
    }
    return best;
}

int best_direction(Complex w) {
    int arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < kDirections; ++l) {
        double theta = direction_angle(l);
        double v = w.real() * std::cos(theta) + w.imag() * std::sin(theta);
        if (v > best) {
            best = v;
            arg = l;
        }
    }
    return arg;
}

void validate_problem(const IndependenceProblem& problem) {
    const auto& pts = problem.points;
    if (pts.size() < 2) {
        throw std::invalid_argument("independence problem needs at least 2 points");
    }
    if (pts.size() > kMaxPoints || problem.degree_cap > kMaxDegree) {
        throw InfeasibleScale("independence problem beyond desk scale (<= 64 points, K <= 64)");
    }
    if (problem.degree_cap < 0) {
        throw std::invalid_argument("degree cap must be nonnegative");
    }
    for (const Complex& p : pts) {
        if (!(std::abs(p) <= 1.0)) {
            throw std::invalid_argument("points must satisfy |point| <= 1");
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i] == pts[j]) {
                throw DegenerateInput("repeated point in independence problem");
            }
        }
    }
}

double l1_norm(const std::vector<Complex>& w) {
    CompensatedSum acc;
    for (const Complex& x : w) acc.add(std::abs(x));
    return acc.value();
}

}  // namespace

double max_moment(const std::vector<Complex>& points,
                  const std::vector<Complex>& weights, int degree_cap) {
    if (points.size() != weights.size()) {
        throw std::invalid_argument("max_moment: points/weights size mismatch");
    }
    if (degree_cap < 0) {
        throw std::invalid_argument("max_moment: degree cap must be nonnegative");
    }
    std::vector<Complex> powers(points.size(), Complex(1.0, 0.0));
    double worst = 0.0;
    for (int k = 0; k <= degree_cap; ++k) {
        Complex m = pairwise_transform_sum(points.size(), [&](std::size_t n) {
            return weights[n] * powers[n];
        });
        worst = std::max(worst, std::abs(m));
        for (std::size_t n = 0; n < points.size(); ++n) powers[n] *= points[n];
    }
    return worst;
}

IndependenceCertificate min_l1_annihilator(const IndependenceProblem& problem) {
    validate_problem(problem);
    const std::size_t n_pts = problem.points.size();
    const int cap = problem.degree_cap;
    const double polygon_cos = std::cos(std::numbers::pi / kDirections);

    // Moment powers a_n^k for k = 0..K.
    std::vector<std::vector<Complex>> pw(cap + 1, std::vector<Complex>(n_pts));
    for (std::size_t n = 0; n < n_pts; ++n) pw[0][n] = Complex(1.0, 0.0);
    for (int k = 1; k <= cap; ++k) {
        for (std::size_t n = 0; n < n_pts; ++n) pw[k][n] = pw[k - 1][n] * problem.points[n];
    }

    // Constraint polytope: gauge(moment_k) <= 1 for every k, expanded into 32
    // rotated-real-part rows per moment. Variables are interleaved (Re, Im)
    // parts of the weights.
    const std::size_t n_vars = 2 * n_pts;
    std::vector<std::vector<double>> A;
    A.reserve(static_cast<std::size_t>(cap + 1) * kDirections);
    for (int k = 0; k <= cap; ++k) {
        for (int l = 0; l < kDirections; ++l) {
            Complex rot = std::polar(1.0, -direction_angle(l));
            std::vector<double> row(n_vars, 0.0);
            for (std::size_t n = 0; n < n_pts; ++n) {
                Complex v = pw[k][n] * rot;
                row[2 * n] = v.real();
                row[2 * n + 1] = -v.imag();
            }
            A.push_back(std::move(row));
        }
    }
    // Tiny graded offsets break the massive degeneracy of the 32-gon polytope
    // (adjacent direction rows are nearly parallel); the relative distortion
    // is far below the polygon error already accounted for in the brackets.
    std::vector<double> b(A.size(), 1.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        b[i] += 1e-9 * static_cast<double>(i + 1) / static_cast<double>(b.size());
    }

    auto weights_from_x = [&](const std::vector<double>& x) {
        std::vector<Complex> w(n_pts);
        for (std::size_t n = 0; n < n_pts; ++n) w[n] = Complex(x[2 * n], x[2 * n + 1]);
        return w;
    };

    SolverInfo info;
    info.method = "reciprocal 32-gon LP, direction-assignment iteration, dense simplex";
    info.polygon_cos = polygon_cos;

    double best_norm = -1.0;
    std::vector<Complex> best_weights;
    bool unbounded = false;
    std::vector<Complex> ray_weights;

    auto run_start = [&](std::vector<int> assignment) {
        for (int outer = 0; outer < 40 && !unbounded; ++outer) {
            ++info.outer_iterations;
            std::vector<double> c(n_vars, 0.0);
            for (std::size_t n = 0; n < n_pts; ++n) {
                double theta = direction_angle(assignment[n]);
                c[2 * n] = std::cos(theta);
                c[2 * n + 1] = std::sin(theta);
            }
            SimplexResult lp = simplex_maximize(c, A, b, 30000);
            info.lp_iterations += lp.iterations;
            if (lp.status == SimplexResult::Status::unbounded) {
                unbounded = true;
                ray_weights = weights_from_x(lp.ray);
                return;
            }
            if (lp.status == SimplexResult::Status::iteration_limit) {
                // Near-coincident points at high degree caps make the moment
                // polytope a numerical needle the dense simplex cannot walk.
                throw InfeasibleScale(
                    "simplex stalled on this problem (value spread beyond "
                    "desk-scale conditioning); reduce the degree cap or the "
                    "point count");
            }
            std::vector<Complex> w = weights_from_x(lp.x);
            double norm = 0.0;
            std::vector<int> next(n_pts);
            for (std::size_t n = 0; n < n_pts; ++n) {
                next[n] = best_direction(w[n]);
                norm += polygon_gauge(w[n]);
            }
            if (norm > best_norm) {
                best_norm = norm;
                best_weights = w;
            }
            if (next == assignment) return;
            assignment = std::move(next);
        }
    };

    // Deterministic starts: uniform, sign-alternating (real), then seeded
    // random assignments. The iteration is monotone in the polygonal norm, so
    // every start terminates; the best final norm wins.
    std::vector<std::vector<int>> starts;
    starts.emplace_back(n_pts, 0);
    {
        std::vector<int> alt(n_pts, 0);
        for (std::size_t n = 0; n < n_pts; ++n) alt[n] = (n % 2 == 0) ? 0 : kDirections / 2;
        starts.push_back(std::move(alt));
    }
    for (int s = 0; s < 8; ++s) {
        Rng rng(mix_seed(0x5EED5EEDULL, static_cast<std::uint64_t>(s)));
        std::vector<int> a(n_pts);
        for (std::size_t n = 0; n < n_pts; ++n) {
            a[n] = static_cast<int>(rng.uniform01() * kDirections) % kDirections;
        }
        starts.push_back(std::move(a));
    }
    info.starts = static_cast<int>(starts.size());

    for (const auto& s : starts) {
        run_start(s);
        if (unbounded) break;
    }

    IndependenceCertificate cert;
    cert.problem = problem;
    cert.solver = info;

    if (unbounded) {
        // The improving ray drives every 32-gon moment gauge to <= 0, which
        // forces the moments themselves to zero: an exact annihilator.
        double norm = l1_norm(ray_weights);
        for (Complex& w : ray_weights) w /= norm;
        cert.optimal_weights = ray_weights;
        cert.optimal_value = max_moment(problem.points, ray_weights, cap);
        cert.lower_bracket = 0.0;
        cert.upper_bracket = cert.optimal_value;
        return cert;
    }

    double norm = l1_norm(best_weights);
    std::vector<Complex> w = best_weights;
    for (Complex& x : w) x /= norm;
    cert.optimal_weights = w;
    cert.optimal_value = max_moment(problem.points, w, cap);
    // Reciprocal of the achieved polygonal norm, shrunk by the polygon factor,
    // is below the true optimum; the achieved value sits above it by at most
    // 1/cos^2 relative.
    cert.lower_bracket = polygon_cos / best_norm;
    cert.upper_bracket = cert.optimal_value;
    return cert;
}

ContrastReport contrast_experiment(int segment_count, const Packing& packing,
                                   int degree_cap) {
    if (segment_count < 2) {
        throw std::invalid_argument("contrast_experiment requires segment_count >= 2");
    }
    if (packing.size() + 1 < static_cast<std::size_t>(segment_count)) {
        throw std::invalid_argument(
            "packing too small for a prefix of " + std::to_string(segment_count) + " atoms");
    }

    IndependenceProblem segment;
    segment.degree_cap = degree_cap;
    for (int j = 1; j <= segment_count; ++j) {
        segment.points.push_back(Complex(static_cast<double>(j) / (segment_count + 1), 0.0));
    }

    AnnihilatingMeasure prefix = wolff_measure(packing.prefix(segment_count - 1));
    IndependenceProblem wolff;
    wolff.degree_cap = degree_cap;
    for (const Atom& a : prefix.atoms) wolff.points.push_back(a.point);

    ContrastReport report;
    report.segment = min_l1_annihilator(segment);
    report.wolff_prefix = min_l1_annihilator(wolff);
    report.ratio = report.segment.optimal_value / report.wolff_prefix.optimal_value;
    return report;
}

}  // namespace wolff
