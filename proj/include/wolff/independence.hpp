#pragma once

#include <complex>
#include <string>
#include <vector>

#include "wolff/packing.hpp"

namespace wolff {

/// Finite point set and moment degree cap for the min-max annihilator search.
struct IndependenceProblem {
    std::vector<Complex> points;  // pairwise distinct, |point| <= 1
    int degree_cap = 1;           // K
};

struct SolverInfo {
    std::string method;
    long lp_iterations = 0;
    int outer_iterations = 0;
    int starts = 0;
    double polygon_cos = 0.0;  // cos(pi/32), the polygonal approximation factor
};

/// Certified outcome of min over ||w||_1 = 1 of max_{k<=K} |sum w_n a_n^k|.
/// optimal_value re-evaluates the objective at optimal_weights; the brackets
/// enclose it with relative width at most 1/cos^2(pi/32) - 1 (< 1%).
struct IndependenceCertificate {
    IndependenceProblem problem;
    double optimal_value = 0.0;
    double lower_bracket = 0.0;
    double upper_bracket = 0.0;
    std::vector<Complex> optimal_weights;
    SolverInfo solver;
};

/// max over k in {0..degree_cap} of |sum_n weight_n point_n^k|.
double max_moment(const std::vector<Complex>& points,
                  const std::vector<Complex>& weights, int degree_cap);

/// Solves the min-max problem through its reciprocal: maximize the polygonal
/// l1 norm of the weights over the polytope where every moment's 32-gon gauge
/// is at most 1. The separable convex objective is handled by iterating a
/// direction assignment per weight, each step a dense-simplex LP, from a fixed
/// family of deterministic and seeded starts. Desk-scale caps: at most 64
/// points and degree 64.
IndependenceCertificate min_l1_annihilator(const IndependenceProblem& problem);

struct ContrastReport {
    IndependenceCertificate segment;
    IndependenceCertificate wolff_prefix;
    double ratio = 0.0;  // segment optimal value / prefix optimal value
};

/// Runs min_l1_annihilator on `segment_count` equispaced points of (0,1) and
/// on the same-size prefix of the measure generated by `packing` (origin atom
/// plus the first segment_count - 1 disc centres), at the same degree cap.
ContrastReport contrast_experiment(int segment_count, const Packing& packing,
                                   int degree_cap);

}  // namespace wolff
