// pipeline.hpp -- orchestration of the full run and its stage-isolated
// variants. Exit codes: 0 success, 2 config/input validation, 3 run
// finished but some stations are unassignable (outputs still written),
// 4 internal invariant failure.

#ifndef STOCHTOPO_PIPELINE_HPP
#define STOCHTOPO_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "stochtopo/config.hpp"
#include "stochtopo/io.hpp"
#include "stochtopo/placement.hpp"
#include "stochtopo/validation.hpp"

namespace stochtopo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnassignable = 3;
inline constexpr int kExitInternal = 4;

inline std::vector<BaseStation> run_generate(const RunConfig& cfg) {
    const IntensityField field = build_field(cfg);
    return generate_base_stations(field, cfg.region, cfg.resolved_targets(), cfg.seed,
                                  cfg.generation_options());
}

inline PlacementResult run_place(const RunConfig& cfg, const std::vector<BaseStation>& stations,
                                 PlacementTrace* trace = nullptr) {
    return place_mec_pops(stations, cfg.rings, cfg.region.bounds(), cfg.rtt_budget_ms,
                          cfg.radio_delay_ms, cfg.delay_model, cfg.candidate_resolution_per_km,
                          trace);
}

/// Generate stations, place PoPs, write the four output files (and the
/// map when asked). Identical (config, seed) gives byte-identical files.
inline int run_full(const RunConfig& cfg, bool svg = false) {
    std::filesystem::create_directories(cfg.output_dir);
    const std::filesystem::path out(cfg.output_dir);

    const std::vector<BaseStation> stations = run_generate(cfg);
    write_bs_csv((out / "bs.csv").string(), stations);

    const PlacementResult result = run_place(cfg, stations);
    write_pops_csv((out / "pops.csv").string(), result, cfg.rings);
    write_assignments_csv((out / "assignments.csv").string(), result);
    write_summary_json((out / "summary.json").string(), stations, result, cfg.rings);

    if (svg) {
        std::vector<std::optional<double>> reach;
        for (const auto& ring : cfg.rings)
            reach.push_back(max_assignment_distance(ring, cfg.rtt_budget_ms, cfg.radio_delay_ms,
                                                    cfg.delay_model));
        write_map_svg((out / "map.svg").string(), cfg.region.bounds(), stations, result, cfg.rings,
                      reach);
    }
    return result.unassignable.empty() ? kExitOk : kExitUnassignable;
}

/// Monte-Carlo validation of the expected-count quadratures on the
/// config's field: cell 0 of the grid, radius from its target, both
/// processes (Matern II only when the field is not constant over the
/// cell, see the report flags). Emits a JSON report; exit 0 iff every
/// z-score is within 3.
inline int run_validate(const RunConfig& cfg, std::size_t replications, const std::string& report_path) {
    const IntensityField base = build_field(cfg);
    const auto targets = cfg.resolved_targets();
    if (targets.empty()) throw ConfigError("validate: no cell targets configured");
    const auto [cell_index, target] = *targets.begin();
    const Cell cell = grid_region(cfg.region)[cell_index];
    const double r = repulsion_radius(cell, target, cfg.radius_formula);

    IntensityField field = base;
    if (cfg.calibration == CalibrationMode::pre_thin)
        field = base.with_scale(calibrate_k_pre_thin(base, cell, target, cfg.quadrature.outer_nodes));
    else if (cfg.calibration == CalibrationMode::post_thin)
        field = base.with_scale(
            calibrate_k_post_thin(base, cell, target, r, cfg.process, cfg.quadrature));

    nlohmann::ordered_json report;
    report["cell"] = cell_index;
    report["radius_km"] = r;
    report["replications"] = replications;
    bool all_ok = true;

    auto run_check = [&](const char* name, ProcessKind process, std::uint64_t seed) {
        const MonteCarloReport mc =
            mc_expected_count(field, cell, r, process, replications, seed, cfg.quadrature);
        nlohmann::ordered_json entry;
        entry["mean"] = mc.mean;
        entry["std_error"] = mc.std_error;
        entry["analytic"] = mc.analytic;
        entry["z_score"] = mc.z_score;
        entry["pass"] = mc.z_score <= 3.0;
        report[name] = entry;
        all_ok = all_ok && mc.z_score <= 3.0;
    };
    run_check("matern1", ProcessKind::matern1, cfg.seed ^ 0x11);
    run_check("matern2", ProcessKind::matern2, cfg.seed ^ 0x22);

    // Hard-core witness sweep over derived seeds.
    std::size_t violations = 0;
    const Rng root(cfg.seed);
    for (std::uint64_t s = 0; s < 64; ++s) {
        const PointSample raw = sample_inhomogeneous_ppp(field, cell, root.derive({s, 0}));
        const PointSample marked = assign_matern2_marks(raw, field, root.derive({s, 1}));
        const PointSample thinned = matern2_thin_marked(marked, r);
        if (!check_hardcore(thinned.points, r)) ++violations;
        if (!check_matern2_witness(marked.points, thinned.points, r)) ++violations;
    }
    report["hardcore_violations"] = violations;
    all_ok = all_ok && violations == 0;
    report["pass"] = all_ok;

    detail::write_text(report_path, report.dump(2) + "\n");
    return all_ok ? kExitOk : kExitInternal;
}

}  // namespace stochtopo

#endif  // STOCHTOPO_PIPELINE_HPP
