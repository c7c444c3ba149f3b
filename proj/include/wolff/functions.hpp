#pragma once

#include <complex>
#include <vector>

#include "wolff/packing.hpp"

namespace wolff {

/// Real harmonic polynomial sum_k a_k Re(z^k) + b_k Im(z^k).
struct HarmonicTestFunction {
    std::vector<double> re_coeffs;  // a_k, coefficient of Re(z^k)
    std::vector<double> im_coeffs;  // b_k, coefficient of Im(z^k)

    double operator()(Complex z) const;

    /// |f(e^{i theta})|.
    double boundary_abs(double theta) const;

    /// sum_k hypot(a_k, b_k): a sup bound on |f| over the closed disc.
    double coeff_bound() const;

    /// Bound on |d/dtheta f(e^{i theta})|.
    double derivative_bound() const;

    static HarmonicTestFunction constant(double c);
    static HarmonicTestFunction re_power(unsigned k, double coeff = 1.0);
    static HarmonicTestFunction im_power(unsigned k, double coeff = 1.0);
};

/// Polynomial c_0 + c_1 z + ... + c_d z^d with complex coefficients.
struct ComplexPolynomial {
    std::vector<Complex> coeffs;

    Complex operator()(Complex z) const;
    double boundary_abs(double theta) const;
    double coeff_bound() const;       // sum_k |c_k|
    double derivative_bound() const;  // sum_k k |c_k|
};

/// Over-approximation of sup |f| over the closed unit disc (the max is
/// attained on the boundary circle for both function families). Computed as
///   min( coefficient bound,  max over equispaced samples + pi * L / samples )
/// where L is the declared boundary derivative bound. Both components bound
/// the true sup from above, so the estimate never under-approximates; the
/// coefficient bound makes monomials come out exactly 1. Requires
/// samples >= 64.
double sup_norm_estimate(const HarmonicTestFunction& f, int samples);
double sup_norm_estimate(const ComplexPolynomial& p, int samples);

}  // namespace wolff
