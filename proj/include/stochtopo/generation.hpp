// generation.hpp -- per-cell base-station pipeline: calibrate the
// intensity scale, derive the repulsion radius from the cell target,
// sample the inhomogeneous PPP, thin, emit survivors.
//
// Thinning is per cell: repulsion balls never reach across cell borders,
// so cells generate independently and in parallel. Station coordinates
// are quantised to 1e-6 km on emission so the CSV round-trip is exact
// and downstream placement sees the same values on every path.

#ifndef STOCHTOPO_GENERATION_HPP
#define STOCHTOPO_GENERATION_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "stochtopo/calibration.hpp"
#include "stochtopo/geometry.hpp"
#include "stochtopo/intensity.hpp"
#include "stochtopo/matern.hpp"
#include "stochtopo/parallel.hpp"
#include "stochtopo/rng.hpp"

namespace stochtopo {

struct BaseStation {
    int id = 0;
    Point2D location;
    std::size_t cell_index = 0;
};

struct GenerationOptions {
    ProcessKind process = ProcessKind::matern2;
    RadiusFormula radius_formula = RadiusFormula::tiling;
    CalibrationMode calibration = CalibrationMode::post_thin;
    double fixed_k = 1.0;  // used when calibration == fixed
    QuadratureOptions quadrature;
};

inline double quantize_coordinate(double v) { return std::round(v * 1e6) / 1e6; }

/// Stations for every cell listed in `targets` (cell index -> target N).
/// Deterministic for a given seed: cell sub-streams are derived as
/// {cell_index, 0} for sampling and {cell_index, 1} for tie-marks, and
/// ids are assigned in cell-index order.
inline std::vector<BaseStation> generate_base_stations(const IntensityField& field,
                                                       const Region& region,
                                                       const std::map<std::size_t, int>& targets,
                                                       std::uint64_t seed,
                                                       const GenerationOptions& options = {}) {
    region.validate();
    const std::vector<Cell> cells = grid_region(region);
    for (const auto& [index, n] : targets) {
        if (index >= cells.size())
            throw std::invalid_argument("generate_base_stations: cell index out of range");
        if (n < 1) throw std::invalid_argument("generate_base_stations: targets must be >= 1");
    }

    std::vector<std::size_t> cell_indices;
    cell_indices.reserve(targets.size());
    for (const auto& [index, n] : targets) cell_indices.push_back(index);

    const Rng root(seed);
    std::vector<std::vector<Point2D>> survivors(cell_indices.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;

    parallel_for(cell_indices.size(), [&](std::size_t slot) {
        try {
            const Cell& cell = cells[cell_indices[slot]];
            const int target = targets.at(cell.index);
            const double r = repulsion_radius(cell, target, options.radius_formula);

            double k = options.fixed_k;
            if (options.calibration == CalibrationMode::pre_thin)
                k = calibrate_k_pre_thin(field, cell, target, options.quadrature.outer_nodes);
            else if (options.calibration == CalibrationMode::post_thin)
                k = calibrate_k_post_thin(field, cell, target, r, options.process, options.quadrature);
            const IntensityField cell_field = field.with_scale(k);

            const PointSample raw =
                sample_inhomogeneous_ppp(cell_field, cell, root.derive({cell.index, 0}));
            const PointSample thinned =
                options.process == ProcessKind::matern1
                    ? matern1_thin(raw, r)
                    : matern2_thin(raw, r, cell_field, root.derive({cell.index, 1}));

            survivors[slot].reserve(thinned.points.size());
            for (const auto& p : thinned.points) survivors[slot].push_back(p.location);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    std::vector<BaseStation> stations;
    int next_id = 0;
    for (std::size_t slot = 0; slot < cell_indices.size(); ++slot) {
        for (const Point2D& p : survivors[slot]) {
            BaseStation bs;
            bs.id = next_id++;
            bs.location = Point2D{quantize_coordinate(p.x1), quantize_coordinate(p.x2)};
            bs.cell_index = cell_indices[slot];
            stations.push_back(bs);
        }
    }
    return stations;
}

}  // namespace stochtopo

#endif  // STOCHTOPO_GENERATION_HPP
