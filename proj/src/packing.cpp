#include "wolff/packing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "wolff/errors.hpp"

namespace wolff {

namespace {

constexpr double kPi = std::numbers::pi;

void check_disc(const Disc& d, std::size_t index) {
    if (!(d.radius > 0.0)) {
        throw std::invalid_argument("disc " + std::to_string(index) +
                                    ": radius must be positive");
    }
    if (!(std::abs(d.center) + d.radius < 1.0)) {
        throw std::invalid_argument("disc " + std::to_string(index) +
                                    ": not strictly inside the open unit disc");
    }
}

}  // namespace

Packing::Packing(double shrink, double tolerance, std::string stop_rule)
    : shrink_(shrink), tolerance_(tolerance), stop_rule_(std::move(stop_rule)) {}

Packing Packing::from_discs(const std::vector<Disc>& discs, double shrink,
                            double tolerance) {
    Packing p(shrink, tolerance);
    for (const Disc& d : discs) p.insert(d);
    return p;
}

void Packing::insert(const Disc& disc) {
    std::size_t index = discs_.size();
    check_disc(disc, index);
    for (std::size_t n = 0; n < discs_.size(); ++n) {
        double gap = std::abs(disc.center - discs_[n].center) -
                     (disc.radius + discs_[n].radius);
        if (!(gap > 0.0)) {
            throw std::invalid_argument("discs " + std::to_string(n) + " and " +
                                        std::to_string(index) +
                                        " overlap (closed discs must be disjoint)");
        }
    }
    discs_.push_back(disc);
    covered_.add(kPi * disc.radius * disc.radius);
}

double Packing::residual_area() const { return kPi - covered_area(); }

Packing Packing::prefix(std::size_t count) const {
    if (count > discs_.size()) {
        throw std::invalid_argument("prefix length exceeds packing size");
    }
    Packing p(shrink_, tolerance_, stop_rule_);
    for (std::size_t n = 0; n < count; ++n) p.insert(discs_[n]);
    return p;
}

double clearance(Complex point, const Packing& packing) {
    double g = 1.0 - std::abs(point);
    for (const Disc& d : packing.discs()) {
        g = std::min(g, std::abs(point - d.center) - d.radius);
    }
    return g;
}

namespace {

// Disc data in struct-of-arrays form for the hot search loop.
struct DiscSoA {
    std::vector<double> x, y, r;
    std::size_t size() const { return x.size(); }
};

struct SearchResult {
    double value = -std::numeric_limits<double>::infinity();
    double x = 0.0;
    double y = 0.0;
};

// Worker threads for the subtree searches. The decomposition is fixed, so the
// result is bit-identical for every worker count; the override only moves the
// wall-clock needle.
unsigned worker_count() {
    if (const char* env = std::getenv("WOLFF_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 64) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 16u);
}

struct SearchState {
    const DiscSoA& discs;
    double tolerance;
    double best;
    double best_x, best_y;
    std::vector<uint32_t> pool;  // stack of active-list segments
    std::vector<double> dist;    // distances scratch, parallel to pool segment
};

// Evaluates clearance at (x, y) against the active list [begin, begin+len) of
// st.pool and writes per-disc distances to st.dist[0..len). Returns the full
// clearance including the unit-circle term.
double eval_clearance(SearchState& st, double x, double y, uint32_t begin,
                      uint32_t len) {
    double g = 1.0 - std::sqrt(x * x + y * y);
    for (uint32_t i = 0; i < len; ++i) {
        uint32_t n = st.pool[begin + i];
        double dx = x - st.discs.x[n];
        double dy = y - st.discs.y[n];
        double d = std::sqrt(dx * dx + dy * dy) - st.discs.r[n];
        st.dist[i] = d;
        if (d < g) g = d;
    }
    return g;
}

// Depth-first expansion of the cell centred at (x, y) with half-size h and
// active list [begin, begin+len) of st.pool. The segment pool grows and
// shrinks stack-like with the recursion, so memory stays O(depth * list size).
void expand(SearchState& st, double x, double y, double h, uint32_t begin,
            uint32_t len) {
    const double child_h = 0.5 * h;
    const double child_hd = child_h * std::numbers::sqrt2;

    // Children in row-major order: y ascending, then x ascending.
    const double off = child_h;
    const double cx[4] = {x - off, x + off, x - off, x + off};
    const double cy[4] = {y - off, y - off, y + off, y + off};

    for (int k = 0; k < 4; ++k) {
        double v = eval_clearance(st, cx[k], cy[k], begin, len);
        if (v > st.best) {
            st.best = v;
            st.best_x = cx[k];
            st.best_y = cy[k];
        }
        if (v + child_hd <= st.best + st.tolerance) continue;

        // Child active list: a disc farther than v + 2 * half-diagonal at the
        // centre stays above the binding constraint everywhere in the cell
        // (1-Lipschitz in both directions), so it can be dropped.
        double keep = v + 2.0 * child_hd;
        uint32_t child_begin = static_cast<uint32_t>(st.pool.size());
        for (uint32_t i = 0; i < len; ++i) {
            if (st.dist[i] <= keep) st.pool.push_back(st.pool[begin + i]);
        }
        uint32_t child_len = static_cast<uint32_t>(st.pool.size()) - child_begin;
        expand(st, cx[k], cy[k], child_h, child_begin, child_len);
        st.pool.resize(child_begin);
    }
}

// Runs a self-contained search of the quadtree cell centred at (x, y) with
// half-size h, seeded with the best clearance certified so far. Returns a
// -infinity sentinel when the subtree cannot improve on the seed.
SearchResult search_subtree(const DiscSoA& soa, double tolerance, double x,
                            double y, double h, double seed) {
    SearchState st{soa, tolerance, seed, 0.0, 0.0, {}, {}};
    st.dist.resize(soa.size());
    st.pool.reserve(64 + 2 * soa.size());
    for (uint32_t n = 0; n < soa.size(); ++n) st.pool.push_back(n);

    uint32_t full_len = static_cast<uint32_t>(st.pool.size());
    double value = eval_clearance(st, x, y, 0, full_len);
    bool improved = value > st.best;
    if (improved) {
        st.best = value;
        st.best_x = x;
        st.best_y = y;
    }

    double hd = h * std::numbers::sqrt2;
    if (value + hd > st.best + tolerance) {
        // Filter the root list once; descendants filter incrementally.
        double keep = value + 2.0 * hd;
        uint32_t begin = full_len;
        for (uint32_t i = 0; i < full_len; ++i) {
            if (st.dist[i] <= keep) st.pool.push_back(st.pool[i]);
        }
        double before = st.best;
        expand(st, x, y, h, begin,
               static_cast<uint32_t>(st.pool.size()) - begin);
        improved = improved || st.best > before;
    }
    if (!improved) return SearchResult{};
    return SearchResult{st.best, st.best_x, st.best_y};
}

// Deterministic schedule: the root centre and the four depth-1 centres are
// evaluated first, then the sixteen depth-2 subtrees in row-major order, in
// fixed waves of two. Each wave is seeded with the best value of everything
// before it, and waves may run their two subtrees on separate workers; the
// wave partition is a constant of the algorithm, so results are bit-identical
// for every thread count. Ties resolve to the earliest task in this order.
std::vector<SearchResult> run_subtrees(const DiscSoA& soa, double tolerance) {
    std::vector<SearchResult> results;

    auto bare_eval = [&](double x, double y) {
        SearchState st{soa, tolerance, 0.0, 0.0, 0.0, {}, {}};
        st.dist.resize(soa.size());
        for (uint32_t n = 0; n < soa.size(); ++n) st.pool.push_back(n);
        double v =
            eval_clearance(st, x, y, 0, static_cast<uint32_t>(st.pool.size()));
        results.push_back(SearchResult{v, x, y});
    };
    bare_eval(0.0, 0.0);
    for (int qy = 0; qy < 2; ++qy) {
        for (int qx = 0; qx < 2; ++qx) bare_eval(-0.5 + qx, -0.5 + qy);
    }

    double seed = -std::numeric_limits<double>::infinity();
    for (const SearchResult& r : results) seed = std::max(seed, r.value);

    struct Cell {
        double x, y;
    };
    std::vector<Cell> cells;
    for (int gy = 0; gy < 4; ++gy) {
        for (int gx = 0; gx < 4; ++gx) {
            cells.push_back({-0.75 + 0.5 * gx, -0.75 + 0.5 * gy});
        }
    }

    const bool parallel = worker_count() > 1;
    for (std::size_t w = 0; w < cells.size(); w += 2) {
        SearchResult a, b;
        if (parallel) {
            std::thread peer([&] {
                b = search_subtree(soa, tolerance, cells[w + 1].x, cells[w + 1].y,
                                   0.25, seed);
            });
            a = search_subtree(soa, tolerance, cells[w].x, cells[w].y, 0.25, seed);
            peer.join();
        } else {
            a = search_subtree(soa, tolerance, cells[w].x, cells[w].y, 0.25, seed);
            b = search_subtree(soa, tolerance, cells[w + 1].x, cells[w + 1].y,
                               0.25, seed);
        }
        results.push_back(a);
        results.push_back(b);
        seed = std::max(seed, std::max(a.value, b.value));
    }
    return results;
}

}  // namespace

DiscCandidate largest_empty_disc(const Packing& packing, double tolerance) {
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }

    DiscSoA soa;
    soa.x.reserve(packing.size());
    soa.y.reserve(packing.size());
    soa.r.reserve(packing.size());
    for (const Disc& d : packing.discs()) {
        soa.x.push_back(d.center.real());
        soa.y.push_back(d.center.imag());
        soa.r.push_back(d.radius);
    }

    std::vector<SearchResult> results = run_subtrees(soa, tolerance);
    SearchResult best = results.front();
    for (const SearchResult& r : results) {
        if (r.value > best.value) best = r;
    }

    if (best.value <= tolerance) {
        throw RegionExhausted(best.value, tolerance);
    }
    return DiscCandidate{Complex(best.x, best.y), best.value};
}

Packing pack_greedy(const StopRule& stop, double shrink, double tolerance) {
    if (!(shrink > 0.0 && shrink < 1.0)) {
        throw std::invalid_argument("shrink factor must lie strictly in (0,1)");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (stop.max_discs.has_value() == stop.target_residual.has_value()) {
        throw std::invalid_argument("stop rule: set exactly one of max_discs, target_residual");
    }
    if (stop.max_discs && *stop.max_discs == 0) {
        throw std::invalid_argument("stop rule: max_discs must be at least 1");
    }
    if (stop.target_residual && !(*stop.target_residual > 0.0)) {
        throw std::invalid_argument("stop rule: target_residual must be positive");
    }

    std::string rule = stop.max_discs
                           ? "max_discs=" + std::to_string(*stop.max_discs)
                           : "target_residual=" + std::to_string(*stop.target_residual);
    Packing packing(shrink, tolerance, rule);

    auto done = [&] {
        if (stop.max_discs) return packing.size() >= *stop.max_discs;
        return packing.residual_area() <= *stop.target_residual;
    };

    while (!done()) {
        DiscCandidate cand = largest_empty_disc(packing, tolerance);
        Complex center = cand.center;
        double value = cand.value;
        if (center == Complex(0.0, 0.0)) {
            // The origin is reserved for the leading atom of the measure.
            center = Complex(tolerance, 0.0);
            value = clearance(center, packing);
        }
        packing.insert(Disc{center, shrink * value});
    }
    return packing;
}

}  // namespace wolff
