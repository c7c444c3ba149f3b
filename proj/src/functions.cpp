#include "wolff/functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wolff {

double HarmonicTestFunction::operator()(Complex z) const {
    std::size_t k_count = std::max(re_coeffs.size(), im_coeffs.size());
    double value = 0.0;
    Complex zk(1.0, 0.0);
    for (std::size_t k = 0; k < k_count; ++k) {
        if (k < re_coeffs.size()) value += re_coeffs[k] * zk.real();
        if (k < im_coeffs.size()) value += im_coeffs[k] * zk.imag();
        zk *= z;
    }
    return value;
}

double HarmonicTestFunction::boundary_abs(double theta) const {
    return std::abs((*this)(std::polar(1.0, theta)));
}

double HarmonicTestFunction::coeff_bound() const {
    double s = 0.0;
    std::size_t k_count = std::max(re_coeffs.size(), im_coeffs.size());
    for (std::size_t k = 0; k < k_count; ++k) {
        double a = k < re_coeffs.size() ? re_coeffs[k] : 0.0;
        double b = k < im_coeffs.size() ? im_coeffs[k] : 0.0;
        s += std::hypot(a, b);
    }
    return s;
}

double HarmonicTestFunction::derivative_bound() const {
    double s = 0.0;
    std::size_t k_count = std::max(re_coeffs.size(), im_coeffs.size());
    for (std::size_t k = 1; k < k_count; ++k) {
        double a = k < re_coeffs.size() ? re_coeffs[k] : 0.0;
        double b = k < im_coeffs.size() ? im_coeffs[k] : 0.0;
        s += static_cast<double>(k) * std::hypot(a, b);
    }
    return s;
}

HarmonicTestFunction HarmonicTestFunction::constant(double c) {
    return {{c}, {}};
}

HarmonicTestFunction HarmonicTestFunction::re_power(unsigned k, double coeff) {
    HarmonicTestFunction f;
    f.re_coeffs.assign(k + 1, 0.0);
    f.re_coeffs[k] = coeff;
    return f;
}

HarmonicTestFunction HarmonicTestFunction::im_power(unsigned k, double coeff) {
    HarmonicTestFunction f;
    f.im_coeffs.assign(k + 1, 0.0);
    f.im_coeffs[k] = coeff;
    return f;
}

Complex ComplexPolynomial::operator()(Complex z) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

double ComplexPolynomial::boundary_abs(double theta) const {
    return std::abs((*this)(std::polar(1.0, theta)));
}

double ComplexPolynomial::coeff_bound() const {
    double s = 0.0;
    for (const Complex& c : coeffs) s += std::abs(c);
    return s;
}

double ComplexPolynomial::derivative_bound() const {
    double s = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        s += static_cast<double>(k) * std::abs(coeffs[k]);
    }
    return s;
}

namespace {

template <typename F>
double sup_norm_impl(const F& f, int samples) {
    if (samples < 64) {
        throw std::invalid_argument("sup_norm_estimate requires samples >= 64");
    }
    double max_sampled = 0.0;
    double step = 2.0 * std::numbers::pi / samples;
    for (int j = 0; j < samples; ++j) {
        max_sampled = std::max(max_sampled, f.boundary_abs(j * step));
    }
    double slack = std::numbers::pi * f.derivative_bound() / samples;
    return std::min(f.coeff_bound(), max_sampled + slack);
}

}  // namespace

double sup_norm_estimate(const HarmonicTestFunction& f, int samples) {
    return sup_norm_impl(f, samples);
}

double sup_norm_estimate(const ComplexPolynomial& p, int samples) {
    return sup_norm_impl(p, samples);
}

}  // namespace wolff
