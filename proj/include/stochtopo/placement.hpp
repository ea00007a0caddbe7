// placement.hpp -- greedy ring-aware MEC PoP deployment in three stages:
// candidate-grid initialisation, per-ring coverage matrices, and the
// selection loop that repeatedly places the PoP covering the most
// unassigned base stations.
//
// Selection comparator: higher coverage wins; coverage ties go to the
// ring with the smaller processing delay; remaining ties to the smaller
// candidate index (row-major order). Each new PoP takes its nearest
// unassigned stations up to the ring capacity, then every matrix is
// decremented over the assigned stations' reach balls, which keeps each
// entry equal to the from-scratch count of unassigned stations in range.

#ifndef STOCHTOPO_PLACEMENT_HPP
#define STOCHTOPO_PLACEMENT_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stochtopo/delay.hpp"
#include "stochtopo/generation.hpp"
#include "stochtopo/geometry.hpp"

namespace stochtopo {

/// Candidate PoP locations: a uniform grid over the region, row-major
/// (row 0 at the bottom edge, column 0 at the left edge), plus one
/// coverage-count matrix per network ring.
class CandidateGrid {
public:
    CandidateGrid(const Rect& region, double resolution_per_km) : region_(region) {
        if (!(resolution_per_km > 0.0))
            throw std::invalid_argument("CandidateGrid: resolution must be > 0");
        spacing_ = 1.0 / resolution_per_km;
        cols_ = static_cast<int>(std::floor(region.width() / spacing_)) + 1;
        rows_ = static_cast<int>(std::floor(region.height() / spacing_)) + 1;
    }

    int size() const { return rows_ * cols_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double spacing() const { return spacing_; }
    const Rect& region() const { return region_; }

    Point2D location(int index) const {
        const int row = index / cols_;
        const int col = index % cols_;
        return Point2D{region_.x1_lo + col * spacing_, region_.x2_lo + row * spacing_};
    }

    /// Indices of all candidates within the closed ball B(center, radius).
    /// The bounding box is widened by one step each side; the exact
    /// distance check decides membership, including boundary ties.
    template <class Fn>
    void for_each_in_ball(const Point2D& center, double radius, Fn fn) const {
        const int col_lo = std::max(0, static_cast<int>(std::floor((center.x1 - radius - region_.x1_lo) / spacing_)));
        const int col_hi = std::min(cols_ - 1, static_cast<int>(std::ceil((center.x1 + radius - region_.x1_lo) / spacing_)));
        const int row_lo = std::max(0, static_cast<int>(std::floor((center.x2 - radius - region_.x2_lo) / spacing_)));
        const int row_hi = std::min(rows_ - 1, static_cast<int>(std::ceil((center.x2 + radius - region_.x2_lo) / spacing_)));
        const double r2 = radius * radius;
        for (int row = row_lo; row <= row_hi; ++row) {
            for (int col = col_lo; col <= col_hi; ++col) {
                const int index = row * cols_ + col;
                if (distance2(location(index), center) <= r2) fn(index);
            }
        }
    }

    std::vector<std::optional<double>> ring_reach;  // m_M per ring, nullopt = infeasible
    std::vector<std::vector<int>> counts;           // counts[ring][candidate]
};

/// Stage 1 + 2 of the deployment: per-ring reach distances and coverage
/// counts (how many stations a PoP at each candidate could serve).
inline CandidateGrid build_candidate_matrices(const std::vector<BaseStation>& stations,
                                              const std::vector<NetworkRing>& rings,
                                              const Rect& region, double rtt_budget, double t_r,
                                              const DelayModel& model, double resolution_per_km) {
    CandidateGrid grid(region, resolution_per_km);
    grid.ring_reach.reserve(rings.size());
    for (const auto& ring : rings)
        grid.ring_reach.push_back(max_assignment_distance(ring, rtt_budget, t_r, model));
    grid.counts.assign(rings.size(), std::vector<int>(grid.size(), 0));

    for (std::size_t m = 0; m < rings.size(); ++m) {
        if (!grid.ring_reach[m]) continue;  // infeasible ring: matrix stays zero
        auto& matrix = grid.counts[m];
        for (const auto& bs : stations)
            grid.for_each_in_ball(bs.location, *grid.ring_reach[m], [&](int index) { ++matrix[index]; });
    }
    return grid;
}

struct PoP {
    int id = 0;
    Point2D location;
    std::size_t ring_index = 0;
};

struct Assignment {
    int bs_id = 0;
    int pop_id = 0;
    double distance_km = 0.0;
    double rtt_ms = 0.0;
};

struct PlacementResult {
    std::vector<PoP> pops;
    std::vector<Assignment> assignments;
    std::vector<int> unassignable;  // station ids no candidate/ring can reach
};

/// One record per selection-loop iteration, for independent re-checking.
struct PlacementStep {
    std::vector<int> unassigned_before;  // station ids
    int candidate = -1;
    std::size_t ring_index = 0;
    int claimed_coverage = 0;
    std::vector<int> assigned;  // station ids taken this iteration
};
using PlacementTrace = std::vector<PlacementStep>;

/// Stage 3, the selection loop. Runs until every station is assigned or
/// no candidate covers any unassigned station; leftovers are reported,
/// never looped on.
inline PlacementResult place_mec_pops(const std::vector<BaseStation>& stations,
                                      const std::vector<NetworkRing>& rings, const Rect& region,
                                      double rtt_budget, double t_r, const DelayModel& model,
                                      double resolution_per_km, PlacementTrace* trace = nullptr) {
    model.validate();
    CandidateGrid grid =
        build_candidate_matrices(stations, rings, region, rtt_budget, t_r, model, resolution_per_km);

    PlacementResult result;
    std::vector<char> unassigned(stations.size(), 1);
    std::size_t remaining = stations.size();

    while (remaining > 0) {
        // Phase a: best (candidate, ring) across all rings.
        int best_cov = -1;
        int best_candidate = -1;
        std::size_t best_ring = 0;
        for (std::size_t m = 0; m < rings.size(); ++m) {
            if (!grid.ring_reach[m]) continue;
            const auto& matrix = grid.counts[m];
            int cov = -1, candidate = -1;
            for (int x = 0; x < grid.size(); ++x) {
                if (matrix[x] > cov) {
                    cov = matrix[x];
                    candidate = x;
                }
            }
            const bool more_covered = cov > best_cov;
            const bool tie_better =
                cov == best_cov &&
                (rings[m].processing_delay_ms < rings[best_ring].processing_delay_ms ||
                 (rings[m].processing_delay_ms == rings[best_ring].processing_delay_ms &&
                  candidate < best_candidate));
            if (more_covered || tie_better) {
                best_cov = cov;
                best_candidate = candidate;
                best_ring = m;
            }
        }
        if (best_cov <= 0) break;  // nobody reachable any more

        PlacementStep step;
        if (trace) {
            for (std::size_t i = 0; i < stations.size(); ++i)
                if (unassigned[i]) step.unassigned_before.push_back(stations[i].id);
            step.candidate = best_candidate;
            step.ring_index = best_ring;
            step.claimed_coverage = best_cov;
        }

        const Point2D pop_location = grid.location(best_candidate);
        const NetworkRing& ring = rings[best_ring];
        const double reach = *grid.ring_reach[best_ring];

        PoP pop;
        pop.id = static_cast<int>(result.pops.size());
        pop.location = pop_location;
        pop.ring_index = best_ring;

        // Phase b: nearest unassigned stations in reach, up to capacity.
        std::vector<std::size_t> eligible;
        const double reach2 = reach * reach;
        for (std::size_t i = 0; i < stations.size(); ++i)
            if (unassigned[i] && distance2(stations[i].location, pop_location) <= reach2)
                eligible.push_back(i);
        if (eligible.empty())
            throw std::logic_error("place_mec_pops: coverage matrix disagrees with recount");
        std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
            const double da = distance2(stations[a].location, pop_location);
            const double db = distance2(stations[b].location, pop_location);
            return da < db || (da == db && stations[a].id < stations[b].id);
        });
        if (eligible.size() > static_cast<std::size_t>(ring.max_bss))
            eligible.resize(static_cast<std::size_t>(ring.max_bss));

        for (std::size_t i : eligible) {
            const BaseStation& bs = stations[i];
            Assignment a;
            a.bs_id = bs.id;
            a.pop_id = pop.id;
            a.distance_km = distance(bs.location, pop_location);
            a.rtt_ms = rtt_ms(bs.location, pop_location, ring, t_r, model);
            result.assignments.push_back(a);
            unassigned[i] = 0;
            --remaining;
            if (trace) step.assigned.push_back(bs.id);

            // Remove this station's contribution from every ring matrix.
            for (std::size_t m = 0; m < rings.size(); ++m) {
                if (!grid.ring_reach[m]) continue;
                auto& matrix = grid.counts[m];
                grid.for_each_in_ball(bs.location, *grid.ring_reach[m], [&](int index) {
                    --matrix[index];
                    assert(matrix[index] >= 0);
                    if (matrix[index] < 0) matrix[index] = 0;
                });
            }
        }

        result.pops.push_back(pop);
        if (trace) trace->push_back(std::move(step));
    }

    for (std::size_t i = 0; i < stations.size(); ++i)
        if (unassigned[i]) result.unassignable.push_back(stations[i].id);
    return result;
}

}  // namespace stochtopo

#endif  // STOCHTOPO_PLACEMENT_HPP
