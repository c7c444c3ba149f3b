#include "wolff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wolff/errors.hpp"
#include "wolff/rng.hpp"
#include "wolff/summation.hpp"

namespace wolff {

namespace {
constexpr double kPi = std::numbers::pi;

Complex int_pow(Complex base, unsigned k) {
    Complex acc(1.0, 0.0);
    for (unsigned i = 0; i < k; ++i) acc *= base;
    return acc;
}
}  // namespace

std::string to_string(IdentityKind kind) {
    switch (kind) {
        case IdentityKind::moment: return "moment";
        case IdentityKind::exponential: return "exponential";
        case IdentityKind::cauchy: return "cauchy";
        case IdentityKind::harmonic: return "harmonic";
        case IdentityKind::functional_norm: return "functional_norm";
        case IdentityKind::dominating: return "dominating";
        case IdentityKind::mc_oracle: return "mc_oracle";
    }
    return "unknown";
}

bool bound_check(double deviation, double bound) {
    return deviation <= bound * (1.0 + 1e-9) + 1e-12;
}

VerificationReport make_report(IdentityKind kind, std::string descriptor,
                               std::size_t truncation, double deviation,
                               double bound) {
    VerificationReport r;
    r.kind = kind;
    r.descriptor = std::move(descriptor);
    r.truncation = truncation;
    r.deviation = deviation;
    r.bound = bound;
    r.pass = bound_check(deviation, bound);
    return r;
}

Complex moment_sum(const AnnihilatingMeasure& measure, unsigned k) {
    return pairwise_transform_sum(measure.atoms.size(), [&](std::size_t i) {
        const Atom& a = measure.atoms[i];
        return a.weight * int_pow(a.point, k);
    });
}

Complex exp_sum(const AnnihilatingMeasure& measure, Complex z) {
    return pairwise_transform_sum(measure.atoms.size(), [&](std::size_t i) {
        const Atom& a = measure.atoms[i];
        return a.weight * std::exp(a.point * z);
    });
}

Complex cauchy_sum(const AnnihilatingMeasure& measure, Complex z) {
    if (!(std::abs(z) > 1.0)) {
        throw std::invalid_argument("cauchy_sum requires |z| > 1");
    }
    return pairwise_transform_sum(measure.atoms.size(), [&](std::size_t i) {
        const Atom& a = measure.atoms[i];
        return a.weight / (z - a.point);
    });
}

double harmonic_sum(const AnnihilatingMeasure& measure,
                    const HarmonicTestFunction& f) {
    Complex s = pairwise_transform_sum(measure.atoms.size(), [&](std::size_t i) {
        const Atom& a = measure.atoms[i];
        return Complex(a.weight * f(a.point), 0.0);
    });
    return s.real();
}

VerificationReport functional_norm_check(const AnnihilatingMeasure& measure,
                                         int trials, int degree,
                                         std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("functional_norm_check requires trials >= 1");
    }
    if (degree < 0) {
        throw std::invalid_argument("polynomial degree must be nonnegative");
    }

    double worst_ratio = -1.0;
    double worst_dev = 0.0;
    double worst_bound = 0.0;
    int worst_trial = 0;

    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        ComplexPolynomial p;
        p.coeffs.reserve(degree + 1);
        for (int k = 0; k <= degree; ++k) p.coeffs.push_back(rng.unit_square());

        Complex s = pairwise_transform_sum(measure.atoms.size(), [&](std::size_t i) {
            const Atom& a = measure.atoms[i];
            return a.weight * p(a.point);
        });
        double deviation = std::abs(s);
        double bound = measure.residual_area * sup_norm_estimate(p, 4096);
        double ratio = bound > 0.0 ? deviation / bound
                                   : (deviation > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_dev = deviation;
            worst_bound = bound;
            worst_trial = t;
        }
    }

    return make_report(IdentityKind::functional_norm,
                       "degree<=" + std::to_string(degree) + " trials=" +
                           std::to_string(trials) + " worst trial " +
                           std::to_string(worst_trial),
                       measure.atoms.size(), worst_dev, worst_bound);
}

DiscIndex::DiscIndex(const Packing& packing) {
    std::size_t n = packing.size();
    cx_.reserve(n);
    cy_.reserve(n);
    r2_.reserve(n);
    for (const Disc& d : packing.discs()) {
        cx_.push_back(d.center.real());
        cy_.push_back(d.center.imag());
        r2_.push_back(d.radius * d.radius);
    }
    grid_ = std::max<int>(8, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n + 1)))));
    cell_size_ = 2.0 / grid_;
    cells_.assign(static_cast<std::size_t>(grid_) * grid_, {});
    for (std::uint32_t i = 0; i < n; ++i) {
        const Disc& d = packing.discs()[i];
        double r = d.radius;
        int lo_x = static_cast<int>(std::floor((d.center.real() - r + 1.0) / cell_size_));
        int hi_x = static_cast<int>(std::floor((d.center.real() + r + 1.0) / cell_size_));
        int lo_y = static_cast<int>(std::floor((d.center.imag() - r + 1.0) / cell_size_));
        int hi_y = static_cast<int>(std::floor((d.center.imag() + r + 1.0) / cell_size_));
        lo_x = std::clamp(lo_x, 0, grid_ - 1);
        hi_x = std::clamp(hi_x, 0, grid_ - 1);
        lo_y = std::clamp(lo_y, 0, grid_ - 1);
        hi_y = std::clamp(hi_y, 0, grid_ - 1);
        for (int gy = lo_y; gy <= hi_y; ++gy) {
            for (int gx = lo_x; gx <= hi_x; ++gx) {
                // Keep the disc only if it actually meets the cell rectangle.
                double rx0 = -1.0 + gx * cell_size_;
                double ry0 = -1.0 + gy * cell_size_;
                double px = std::clamp(d.center.real(), rx0, rx0 + cell_size_);
                double py = std::clamp(d.center.imag(), ry0, ry0 + cell_size_);
                double dx = px - d.center.real();
                double dy = py - d.center.imag();
                if (dx * dx + dy * dy <= r * r) {
                    cells_[static_cast<std::size_t>(gy) * grid_ + gx].push_back(i);
                }
            }
        }
    }
}

bool DiscIndex::covered(double x, double y) const {
    int gx = std::clamp(static_cast<int>(std::floor((x + 1.0) / cell_size_)), 0, grid_ - 1);
    int gy = std::clamp(static_cast<int>(std::floor((y + 1.0) / cell_size_)), 0, grid_ - 1);
    for (std::uint32_t i : cells_[static_cast<std::size_t>(gy) * grid_ + gx]) {
        double dx = x - cx_[i];
        double dy = y - cy_[i];
        if (dx * dx + dy * dy <= r2_[i]) return true;
    }
    return false;
}

bool DiscIndex::covered_naive(double x, double y) const {
    for (std::size_t i = 0; i < cx_.size(); ++i) {
        double dx = x - cx_[i];
        double dy = y - cy_[i];
        if (dx * dx + dy * dy <= r2_[i]) return true;
    }
    return false;
}

McEstimate mc_residual_integral(const Packing& packing,
                                const std::function<Complex(Complex)>& f,
                                std::size_t samples, std::uint64_t seed) {
    if (samples < 10000) {
        throw std::invalid_argument("mc_residual_integral requires samples >= 1e4");
    }
    DiscIndex index(packing);

    constexpr std::size_t kChunk = 4096;
    CompensatedSum sum_re, sum_im, sum_re2, sum_im2;
    std::size_t kept = 0;

    std::size_t chunks = (samples + kChunk - 1) / kChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t count = std::min(kChunk, samples - c * kChunk);
        Rng rng(mix_seed(seed, c));
        CompensatedSum c_re, c_im, c_re2, c_im2;
        std::size_t c_kept = 0;
        for (std::size_t s = 0; s < count; ++s) {
            Complex p = rng.in_disc(1.0);
            if (index.covered(p.real(), p.imag())) continue;
            ++c_kept;
            Complex v = f(p);
            c_re.add(v.real());
            c_im.add(v.imag());
            c_re2.add(v.real() * v.real());
            c_im2.add(v.imag() * v.imag());
        }
        kept += c_kept;
        sum_re.add(c_re.value());
        sum_im.add(c_im.value());
        sum_re2.add(c_re2.value());
        sum_im2.add(c_im2.value());
    }

    double n = static_cast<double>(samples);
    double rate = static_cast<double>(kept) / n;
    if (rate < 1e-3) {
        throw InfeasibleScale(
            "Monte-Carlo acceptance rate " + std::to_string(rate) +
            " below 1e-3: residual too thin for naive rejection at this size");
    }

    double mean_re = sum_re.value() / n;
    double mean_im = sum_im.value() / n;
    double var_re = std::max(0.0, (sum_re2.value() / n - mean_re * mean_re)) * n / (n - 1.0);
    double var_im = std::max(0.0, (sum_im2.value() / n - mean_im * mean_im)) * n / (n - 1.0);

    McEstimate out;
    out.estimate = kPi * Complex(mean_re, mean_im);
    out.stderr_combined = kPi * std::sqrt((var_re + var_im) / n);
    out.acceptance_rate = rate;
    return out;
}

double dominating_check(const AnnihilatingMeasure& measure,
                        const std::vector<Complex>& blaschke_zeros,
                        int boundary_samples) {
    for (const Complex& zero : blaschke_zeros) {
        if (!(std::abs(zero) < 1.0)) {
            throw std::invalid_argument("Blaschke zeros must lie strictly inside the unit disc");
        }
    }
    if (boundary_samples < 64) {
        throw std::invalid_argument("dominating_check requires boundary_samples >= 64");
    }
    if (blaschke_zeros.empty()) return 1.0;  // empty product, B == 1

    auto blaschke_abs = [&](Complex z) {
        double v = 1.0;
        for (const Complex& a : blaschke_zeros) {
            v *= std::abs((z - a) / (1.0 - std::conj(a) * z));
        }
        return v;
    };

    // Max-modulus sanity check on the unit circle, where |B| = 1 identically.
    for (int j = 0; j < boundary_samples; ++j) {
        double theta = 2.0 * kPi * j / boundary_samples;
        double b = blaschke_abs(std::polar(1.0, theta));
        if (std::abs(b - 1.0) > 1e-9) {
            throw std::runtime_error("Blaschke evaluator lost unimodularity on the circle");
        }
    }

    double sup = 0.0;
    for (std::size_t n = 1; n < measure.atoms.size(); ++n) {
        sup = std::max(sup, blaschke_abs(measure.atoms[n].point));
    }
    return sup;
}

Packing packing_from_measure(const AnnihilatingMeasure& measure) {
    std::vector<Disc> discs;
    discs.reserve(measure.atoms.size() - 1);
    for (std::size_t n = 1; n < measure.atoms.size(); ++n) {
        const Atom& a = measure.atoms[n];
        discs.push_back(Disc{a.point, std::sqrt(a.weight / kPi)});
    }
    return Packing::from_discs(discs, 0.0, 0.0);
}

std::vector<Complex> exp_grid(double radius) {
    std::vector<Complex> grid;
    grid.push_back(Complex(0.0, 0.0));
    for (int j = 0; j < 4; ++j) {
        grid.push_back(std::polar(radius / 2.0, kPi * j / 2.0));
    }
    for (int j = 0; j < 4; ++j) {
        grid.push_back(std::polar(radius, kPi * (2 * j + 1) / 4.0));
    }
    return grid;
}

namespace {

std::string complex_label(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "z=%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

}  // namespace

std::vector<VerificationReport> run_verification(const AnnihilatingMeasure& measure,
                                                 const VerifyConfig& config) {
    std::vector<VerificationReport> reports;
    const std::size_t n_atoms = measure.atoms.size();
    const double residual = measure.residual_area;

    // Exact k = 0 anchor: the sum of weights must cancel the residual to
    // ledger precision, not merely to the truncation bound.
    {
        Complex m0 = moment_sum(measure, 0);
        reports.push_back(make_report(IdentityKind::moment, "k=0 exact anchor",
                                      n_atoms, std::abs(m0 + residual), 0.0));
    }

    for (int k = 0; k <= config.moment_kmax; ++k) {
        Complex m = moment_sum(measure, static_cast<unsigned>(k));
        reports.push_back(make_report(IdentityKind::moment,
                                      "k=" + std::to_string(k), n_atoms,
                                      std::abs(m), residual));
    }

    for (Complex z : exp_grid(config.exp_radius)) {
        Complex s = exp_sum(measure, z);
        reports.push_back(make_report(IdentityKind::exponential, complex_label(z),
                                      n_atoms, std::abs(s),
                                      residual * std::exp(std::abs(z))));
    }

    for (double r : config.cauchy_moduli) {
        Complex z(r, 0.0);
        Complex s = cauchy_sum(measure, z);
        reports.push_back(make_report(IdentityKind::cauchy, complex_label(z),
                                      n_atoms, std::abs(s),
                                      residual / (std::abs(z) - 1.0)));
    }

    for (int k = 0; k <= config.harmonic_kmax; ++k) {
        auto add_harmonic = [&](const HarmonicTestFunction& f, const std::string& name) {
            double s = harmonic_sum(measure, f);
            double bound = residual * sup_norm_estimate(f, config.sup_samples);
            reports.push_back(make_report(IdentityKind::harmonic, name, n_atoms,
                                          std::abs(s), bound));
        };
        add_harmonic(HarmonicTestFunction::re_power(k), "Re z^" + std::to_string(k));
        if (k >= 1) {
            add_harmonic(HarmonicTestFunction::im_power(k), "Im z^" + std::to_string(k));
        }
    }

    reports.push_back(functional_norm_check(measure, config.poly_trials,
                                            config.poly_degree, config.seed));

    if (config.mc_samples > 0) {
        Packing packing = packing_from_measure(measure);
        struct NamedF {
            std::string name;
            HarmonicTestFunction f;
        };
        const NamedF oracle_fs[] = {
            {"f=1", HarmonicTestFunction::constant(1.0)},
            {"f=Re z", HarmonicTestFunction::re_power(1)},
            {"f=Re z^2", HarmonicTestFunction::re_power(2)},
            {"f=Im z^2", HarmonicTestFunction::im_power(2)},
        };
        for (const NamedF& nf : oracle_fs) {
            McEstimate est = mc_residual_integral(
                packing,
                [&](Complex z) { return Complex(nf.f(z), 0.0); },
                config.mc_samples, config.seed);
            double hsum = harmonic_sum(measure, nf.f);
            reports.push_back(make_report(IdentityKind::mc_oracle, nf.name, n_atoms,
                                          std::abs(est.estimate - Complex(-hsum, 0.0)),
                                          4.0 * est.stderr_combined));
        }
    }

    if (config.blaschke_zero_count > 0) {
        Rng rng(mix_seed(config.seed, 0xB1A5C4E5ULL));
        std::vector<Complex> zeros;
        zeros.reserve(config.blaschke_zero_count);
        for (int i = 0; i < config.blaschke_zero_count; ++i) {
            zeros.push_back(rng.in_disc(0.9));
        }
        double sup = dominating_check(measure, zeros, 256);
        // |B| <= 1 on the disc is the maximum principle; the sup itself is the
        // dominating-ratio diagnostic and is reported, not thresholded.
        VerificationReport r = make_report(
            IdentityKind::dominating,
            "zeros=" + std::to_string(zeros.size()) + " sup|B(atoms)|=" + std::to_string(sup),
            n_atoms, sup, 1.0);
        reports.push_back(r);
    }

    return reports;
}

}  // namespace wolff
