// validation.hpp -- independent oracles: Monte-Carlo estimators against
// the expected-count quadratures, O(n^2) thinning checkers, and an
// exhaustive optimal-placement search for tiny instances.
//
// The checkers deliberately re-derive distances and counts with their own
// loops instead of calling the implementation helpers they verify.

#ifndef STOCHTOPO_VALIDATION_HPP
#define STOCHTOPO_VALIDATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stochtopo/matern.hpp"
#include "stochtopo/parallel.hpp"
#include "stochtopo/placement.hpp"
#include "stochtopo/rng.hpp"

namespace stochtopo {

struct MonteCarloReport {
    std::size_t replications = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double analytic = 0.0;
    double z_score = 0.0;
};

namespace oracle {

// Oracle-local distance; intentionally not the geometry helper.
inline double dist2(const Point2D& a, const Point2D& b) {
    return (a.x1 - b.x1) * (a.x1 - b.x1) + (a.x2 - b.x2) * (a.x2 - b.x2);
}

inline double torus_dist2(const Point2D& a, const Point2D& b, double w, double h) {
    double d1 = a.x1 > b.x1 ? a.x1 - b.x1 : b.x1 - a.x1;
    double d2 = a.x2 > b.x2 ? a.x2 - b.x2 : b.x2 - a.x2;
    if (d1 > w / 2) d1 = w - d1;
    if (d2 > h / 2) d2 = h - d2;
    return d1 * d1 + d2 * d2;
}

}  // namespace oracle

struct PairCheck {
    bool pass = true;
    std::size_t first_i = 0;
    std::size_t first_j = 0;
    explicit operator bool() const { return pass; }
};

/// Pairwise hard-core check: every pair strictly further apart than r.
inline PairCheck check_hardcore(const std::vector<MarkedPoint>& points, double r,
                                std::optional<Rect> torus = std::nullopt) {
    const double r2 = r * r;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d2 = torus ? oracle::torus_dist2(points[i].location, points[j].location,
                                                          torus->width(), torus->height())
                                    : oracle::dist2(points[i].location, points[j].location);
            if (d2 <= r2) return PairCheck{false, i, j};
        }
    }
    return PairCheck{};
}

/// Matern II witness check against the marked raw sample:
///  - every survivor has the lexicographically minimal (mark, tie_mark)
///    within its closed r-ball among raw points;
///  - every removed raw point has a strictly smaller-marked raw
///    neighbour within r.
/// Survivors are matched to raw points by identical coordinates.
inline PairCheck check_matern2_witness(const std::vector<MarkedPoint>& raw,
                                       const std::vector<MarkedPoint>& survivors, double r,
                                       std::optional<Rect> torus = std::nullopt) {
    const double r2 = r * r;
    auto d2 = [&](const Point2D& a, const Point2D& b) {
        return torus ? oracle::torus_dist2(a, b, torus->width(), torus->height())
                     : oracle::dist2(a, b);
    };
    auto lex_less = [](const MarkedPoint& a, const MarkedPoint& b) {
        return a.mark < b.mark || (a.mark == b.mark && a.tie_mark < b.tie_mark);
    };

    std::vector<char> survived(raw.size(), 0);
    for (const auto& s : survivors) {
        bool found = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (!survived[i] && raw[i].location.x1 == s.location.x1 &&
                raw[i].location.x2 == s.location.x2) {
                survived[i] = 1;
                found = true;
                break;
            }
        }
        if (!found) return PairCheck{false, 0, 0};  // survivor not in raw set
    }

    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (survived[i]) {
            for (std::size_t j = 0; j < raw.size(); ++j) {
                if (j == i) continue;
                if (d2(raw[i].location, raw[j].location) <= r2 && !lex_less(raw[i], raw[j]))
                    return PairCheck{false, i, j};
            }
        } else {
            bool witness = false;
            for (std::size_t j = 0; j < raw.size() && !witness; ++j) {
                if (j == i) continue;
                if (d2(raw[i].location, raw[j].location) <= r2 && lex_less(raw[j], raw[i]))
                    witness = true;
            }
            if (!witness) return PairCheck{false, i, i};
        }
    }
    return PairCheck{};
}

/// Monte-Carlo mean surviving count over split replication streams,
/// reported against the matching quadrature (same border mode).
inline MonteCarloReport mc_expected_count(const IntensityField& field, const Cell& cell, double r,
                                          ProcessKind process, std::size_t replications,
                                          std::uint64_t seed, const QuadratureOptions& opt = {}) {
    if (replications < 100)
        throw std::invalid_argument("mc_expected_count: need at least 100 replications");

    const Rect window = cell.bounds();
    const TorusMetric torus{window};
    const Rng root(seed);

    std::vector<double> counts(replications, 0.0);
    parallel_for(replications, [&](std::size_t rep) {
        const Rng sample_rng = root.derive({rep, 0});
        const Rng mark_rng = root.derive({rep, 1});
        const PointSample raw = sample_inhomogeneous_ppp(field, cell, sample_rng);
        PointSample thinned;
        if (opt.border == BorderMode::wrap) {
            thinned = process == ProcessKind::matern1
                          ? matern1_thin(raw, r, torus)
                          : matern2_thin(raw, r, field, mark_rng, torus);
        } else {
            thinned = process == ProcessKind::matern1 ? matern1_thin(raw, r)
                                                      : matern2_thin(raw, r, field, mark_rng);
        }
        counts[rep] = static_cast<double>(thinned.points.size());
    });

    MonteCarloReport report;
    report.replications = replications;
    double sum = 0.0;
    for (double c : counts) sum += c;
    report.mean = sum / static_cast<double>(replications);
    double ss = 0.0;
    for (double c : counts) ss += (c - report.mean) * (c - report.mean);
    const double variance = ss / static_cast<double>(replications - 1);
    report.std_error = std::sqrt(variance / static_cast<double>(replications));

    report.analytic = process == ProcessKind::matern1
                          ? expected_count_matern1(field, window, r, opt)
                          : expected_count_matern2(field, window, r, opt);
    if (report.std_error > 0.0)
        report.z_score = std::fabs(report.mean - report.analytic) / report.std_error;
    else
        report.z_score = report.mean == report.analytic ? 0.0
                                                        : std::numeric_limits<double>::infinity();
    return report;
}

// ---------------------------------------------------------------------------
// Exhaustive minimal placement for tiny instances (greedy-gap oracle).

struct BruteForcePlan {
    int pop_count = 0;
    std::vector<std::pair<int, std::size_t>> pops;  // (candidate index, ring index)
};

namespace oracle {

// Capacity-respecting feasibility: can every station be matched to one of
// the chosen (candidate, ring) PoPs within its ring reach? Augmenting-path
// matching with PoP capacities; instance sizes are single digits.
inline bool assignment_feasible(const std::vector<std::vector<int>>& in_range,
                                const std::vector<int>& capacity) {
    const std::size_t n_bs = in_range.size();
    std::vector<std::vector<int>> taken(capacity.size());
    std::vector<int> owner_pop(n_bs, -1);

    // DFS augmentation: free capacity or displace a neighbour.
    std::vector<char> visited;
    std::function<bool(int)> assign = [&](int bs) -> bool {
        for (int pop : in_range[bs]) {
            if (visited[pop]) continue;
            visited[pop] = 1;
            if (static_cast<int>(taken[pop].size()) < capacity[pop]) {
                taken[pop].push_back(bs);
                owner_pop[bs] = pop;
                return true;
            }
            for (std::size_t t = 0; t < taken[pop].size(); ++t) {
                const int other = taken[pop][t];
                if (assign(other)) {
                    taken[pop][t] = bs;
                    owner_pop[bs] = pop;
                    return true;
                }
            }
        }
        return false;
    };

    for (std::size_t bs = 0; bs < n_bs; ++bs) {
        visited.assign(capacity.size(), 0);
        if (!assign(static_cast<int>(bs))) return false;
    }
    return true;
}

}  // namespace oracle

/// Minimal number of PoPs that can feasibly serve every station, by
/// exhaustive search over multisets of (candidate, ring) pairs. Pairs are
/// first collapsed to distinct (coverage set, capacity) signatures and
/// dominated pairs dropped. Refuses instances beyond the stated bounds.
inline BruteForcePlan brute_force_placement(const std::vector<BaseStation>& stations,
                                            const std::vector<NetworkRing>& rings,
                                            const Rect& region, double rtt_budget, double t_r,
                                            const DelayModel& model, double resolution_per_km) {
    if (stations.size() > 8) throw std::invalid_argument("brute_force_placement: > 8 stations");
    if (rings.size() > 3) throw std::invalid_argument("brute_force_placement: > 3 rings");

    CandidateGrid grid(region, resolution_per_km);
    if (grid.size() > 400) throw std::invalid_argument("brute_force_placement: > 400 candidates");

    const std::size_t n_bs = stations.size();

    struct Pair {
        std::uint32_t coverage = 0;  // bitmask over stations
        int capacity = 0;
        int candidate = -1;
        std::size_t ring = 0;
    };
    std::vector<Pair> pool;
    for (std::size_t m = 0; m < rings.size(); ++m) {
        const auto reach = max_assignment_distance(rings[m], rtt_budget, t_r, model);
        if (!reach) continue;
        const double r2 = *reach * *reach;
        for (int x = 0; x < grid.size(); ++x) {
            Pair p;
            p.candidate = x;
            p.ring = m;
            p.capacity = rings[m].max_bss;
            for (std::size_t b = 0; b < n_bs; ++b)
                if (oracle::dist2(stations[b].location, grid.location(x)) <= r2)
                    p.coverage |= (1u << b);
            if (p.coverage != 0) pool.push_back(p);
        }
    }

    // Only (coverage set, capacity) matters for feasibility; drop any pair
    // another one can always stand in for. Ties keep the earliest pair.
    auto covers_for = [](const Pair& q, const Pair& p) {
        return (p.coverage & q.coverage) == p.coverage && q.capacity >= p.capacity;
    };
    std::vector<Pair> reduced;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pool.size() && !dominated; ++j) {
            if (j == i) continue;
            if (covers_for(pool[j], pool[i]) && (!covers_for(pool[i], pool[j]) || j < i))
                dominated = true;
        }
        if (!dominated) reduced.push_back(pool[i]);
    }

    BruteForcePlan plan;
    if (n_bs == 0) return plan;
    const std::uint32_t all = (1u << n_bs) - 1;

    std::uint32_t coverable = 0;
    for (const auto& p : reduced) coverable |= p.coverage;
    if (coverable != all) {
        plan.pop_count = -1;  // some station out of everyone's reach
        return plan;
    }

    // Iterative deepening over multisets (non-decreasing pool index).
    std::vector<std::size_t> chosen;
    long long budget = 5'000'000;  // search nodes; refuse beyond this
    std::function<bool(std::size_t, std::size_t, std::uint32_t)> search =
        [&](std::size_t depth, std::size_t start, std::uint32_t covered) -> bool {
        if (--budget < 0) throw std::invalid_argument("brute_force_placement: instance too large");
        if (depth == 0) {
            if (covered != all) return false;
            std::vector<std::vector<int>> in_range(n_bs);
            std::vector<int> capacity(chosen.size());
            for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
                const Pair& p = reduced[chosen[ci]];
                capacity[ci] = p.capacity;
                for (std::size_t b = 0; b < n_bs; ++b)
                    if (p.coverage & (1u << b)) in_range[b].push_back(static_cast<int>(ci));
            }
            return oracle::assignment_feasible(in_range, capacity);
        }
        // Prune: remaining picks cannot cover or carry the leftover load.
        for (std::size_t i = start; i < reduced.size(); ++i) {
            chosen.push_back(i);
            if (search(depth - 1, i, covered | reduced[i].coverage)) return true;
            chosen.pop_back();
        }
        return false;
    };

    for (std::size_t k = 1; k <= n_bs; ++k) {
        chosen.clear();
        if (search(k, 0, 0)) {
            plan.pop_count = static_cast<int>(k);
            for (std::size_t i : chosen)
                plan.pops.emplace_back(reduced[i].candidate, reduced[i].ring);
            return plan;
        }
    }
    // Coverage is possible but capacities cannot carry the load even with
    // one PoP per station; cannot happen while every capacity is >= 1.
    plan.pop_count = -1;
    return plan;
}

}  // namespace stochtopo

#endif  // STOCHTOPO_VALIDATION_HPP
