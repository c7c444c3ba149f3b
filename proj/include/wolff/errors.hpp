#pragma once

#include <stdexcept>
#include <string>

namespace wolff {

/// The certified maximum clearance fell at or below the search tolerance:
/// the uncovered region is too thin to keep packing at this resolution.
class RegionExhausted : public std::runtime_error {
public:
    RegionExhausted(double certified_max, double tolerance)
        : std::runtime_error("region exhausted: certified max clearance " +
                             std::to_string(certified_max) + " <= tolerance " +
                             std::to_string(tolerance)),
          certified_max_(certified_max) {}

    double certified_max() const { return certified_max_; }

private:
    double certified_max_;
};

/// Input that is syntactically fine but mathematically unusable
/// (empty packing handed to the measure builder, repeated points, ...).
class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

/// Problem size beyond the documented desk-scale caps of a solver.
class InfeasibleScale : public std::runtime_error {
public:
    explicit InfeasibleScale(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wolff
