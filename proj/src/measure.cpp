#include "wolff/measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wolff/errors.hpp"
#include "wolff/summation.hpp"

namespace wolff {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLedgerTol = 1e-12;
}  // namespace

AnnihilatingMeasure wolff_measure(const Packing& packing) {
    if (packing.empty()) {
        throw DegenerateInput(
            "measure requires a non-empty packing: the bare origin atom is not "
            "a truncation of anything");
    }
    AnnihilatingMeasure m;
    m.atoms.reserve(packing.size() + 1);
    m.atoms.push_back(Atom{Complex(0.0, 0.0), -kPi});
    for (const Disc& d : packing.discs()) {
        m.atoms.push_back(Atom{d.center, kPi * d.radius * d.radius});
    }
    m.residual_area = packing.residual_area();
    validate_measure(m);
    return m;
}

double total_variation(const AnnihilatingMeasure& measure) {
    CompensatedSum acc;
    for (const Atom& a : measure.atoms) acc.add(std::abs(a.weight));
    return acc.value();
}

void validate_measure(const AnnihilatingMeasure& measure, bool check_ledger) {
    if (measure.atoms.size() < 2) {
        throw DegenerateInput("measure must have the origin atom plus at least one disc atom");
    }
    const Atom& head = measure.atoms.front();
    if (head.point != Complex(0.0, 0.0) || head.weight != -kPi) {
        throw DegenerateInput("leading atom must be exactly (0, -pi)");
    }
    CompensatedSum total;
    total.add(head.weight);
    for (std::size_t n = 1; n < measure.atoms.size(); ++n) {
        const Atom& a = measure.atoms[n];
        if (!(a.weight > 0.0)) {
            throw DegenerateInput("atom " + std::to_string(n) + ": weight must be positive");
        }
        if (!(std::abs(a.point) < 1.0)) {
            throw DegenerateInput("atom " + std::to_string(n) + ": point outside the open unit disc");
        }
        total.add(a.weight);
    }
    for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < measure.atoms.size(); ++j) {
            if (measure.atoms[i].point == measure.atoms[j].point) {
                throw DegenerateInput("atoms " + std::to_string(i) + " and " +
                                      std::to_string(j) + " share a point");
            }
        }
    }
    // Ledger: sum of weights + residual = 0 exactly up to compensation noise.
    if (check_ledger &&
        std::abs(total.value() + measure.residual_area) > kLedgerTol * kPi) {
        throw DegenerateInput("weight/residual ledger violated: sum of weights " +
                              std::to_string(total.value()) + " with residual " +
                              std::to_string(measure.residual_area));
    }
}

}  // namespace wolff
