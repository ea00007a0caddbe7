// config.hpp -- run configuration: JSON schema, parsing, and total
// validation. Every invariant violation is rejected with a path-tagged
// message before any computation starts. Seeds must come from the
// config or the command line; there is no wall-clock fallback.

#ifndef STOCHTOPO_CONFIG_HPP
#define STOCHTOPO_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stochtopo/calibration.hpp"
#include "stochtopo/delay.hpp"
#include "stochtopo/generation.hpp"
#include "stochtopo/geometry.hpp"
#include "stochtopo/intensity.hpp"

namespace stochtopo {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RunConfig {
    Region region;
    std::vector<PopulationCircle> circles;

    CalibrationMode calibration = CalibrationMode::post_thin;
    double fixed_k = 1.0;
    std::optional<int> default_target;        // applied to every cell when set
    std::map<std::size_t, int> cell_targets;  // overrides / explicit cells

    ProcessKind process = ProcessKind::matern2;
    RadiusFormula radius_formula = RadiusFormula::tiling;
    QuadratureOptions quadrature;

    std::vector<NetworkRing> rings;  // sorted by hierarchy_rank
    DelayModel delay_model;
    double rtt_budget_ms = 0.0;
    double radio_delay_ms = 0.0;  // t_r
    double candidate_resolution_per_km = 4.0;

    std::uint64_t seed = 0;
    std::string output_dir = "out";

    /// Targets resolved per cell index, in index order.
    std::map<std::size_t, int> resolved_targets() const {
        std::map<std::size_t, int> targets;
        if (default_target) {
            const std::size_t n = region.rows() * region.columns();
            for (std::size_t i = 0; i < n; ++i) targets[i] = *default_target;
        }
        for (const auto& [index, n] : cell_targets) targets[index] = n;
        return targets;
    }

    GenerationOptions generation_options() const {
        GenerationOptions opt;
        opt.process = process;
        opt.radius_formula = radius_formula;
        opt.calibration = calibration;
        opt.fixed_k = fixed_k;
        opt.quadrature = quadrature;
        return opt;
    }
};

namespace detail {

using json = nlohmann::json;

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path + "." + key + ": missing required field");
    return *it;
}

template <class T>
T as(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + ": wrong type");
    }
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
    using detail::as;
    using detail::require;
    RunConfig cfg;

    const auto& region = require(j, "region", "config");
    cfg.region.x1_left = as<double>(require(region, "x1_left", "region"), "region.x1_left");
    cfg.region.x1_right = as<double>(require(region, "x1_right", "region"), "region.x1_right");
    cfg.region.x2_bottom = as<double>(require(region, "x2_bottom", "region"), "region.x2_bottom");
    cfg.region.x2_top = as<double>(require(region, "x2_top", "region"), "region.x2_top");
    cfg.region.cell_width = as<double>(require(region, "cell_width", "region"), "region.cell_width");
    cfg.region.cell_height = as<double>(require(region, "cell_height", "region"), "region.cell_height");
    try {
        cfg.region.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("region: ") + e.what());
    }

    const auto& circles = require(j, "population_circles", "config");
    if (!circles.is_array()) throw ConfigError("population_circles: must be an array");
    for (std::size_t ci = 0; ci < circles.size(); ++ci) {
        const std::string path = "population_circles[" + std::to_string(ci) + "]";
        const auto& c = circles[ci];
        PopulationCircle circle;
        const auto& center = require(c, "center", path);
        if (!center.is_array() || center.size() != 2)
            throw ConfigError(path + ".center: must be [x1, x2]");
        circle.center = Point2D{as<double>(center[0], path + ".center[0]"),
                                as<double>(center[1], path + ".center[1]")};
        const auto& lobes = require(c, "lobes", path);
        if (!lobes.is_array() || lobes.empty())
            throw ConfigError(path + ".lobes: must be a non-empty array");
        for (std::size_t li = 0; li < lobes.size(); ++li) {
            const std::string lpath = path + ".lobes[" + std::to_string(li) + "]";
            const auto& l = lobes[li];
            GaussianLobe lobe;
            lobe.amplitude = as<double>(require(l, "amplitude", lpath), lpath + ".amplitude");
            lobe.radial_offset = l.value("radial_offset", 0.0);
            lobe.sigma = as<double>(require(l, "sigma", lpath), lpath + ".sigma");
            if (lobe.amplitude < 0.0) throw ConfigError(lpath + ".amplitude: must be >= 0");
            if (lobe.radial_offset < 0.0) throw ConfigError(lpath + ".radial_offset: must be >= 0");
            if (!(lobe.sigma > 0.0)) throw ConfigError(lpath + ".sigma: must be > 0");
            circle.revolution.lobes.push_back(lobe);
        }
        circle.support_radius = c.value("support_radius", 0.0);
        if (c.contains("support_radius") && !(circle.support_radius > 0.0))
            throw ConfigError(path + ".support_radius: must be > 0");
        cfg.circles.push_back(circle);
    }

    const auto& intensity = require(j, "intensity", "config");
    const std::string mode = as<std::string>(require(intensity, "mode", "intensity"), "intensity.mode");
    if (mode == "fixed")
        cfg.calibration = CalibrationMode::fixed;
    else if (mode == "pre_thin")
        cfg.calibration = CalibrationMode::pre_thin;
    else if (mode == "post_thin")
        cfg.calibration = CalibrationMode::post_thin;
    else
        throw ConfigError("intensity.mode: expected fixed | pre_thin | post_thin");
    cfg.fixed_k = intensity.value("k", 1.0);
    if (cfg.fixed_k < 0.0) throw ConfigError("intensity.k: must be >= 0");
    if (cfg.calibration == CalibrationMode::fixed && !intensity.contains("k"))
        throw ConfigError("intensity.k: required in fixed mode");

    const std::size_t n_cells = cfg.region.rows() * cfg.region.columns();
    if (intensity.contains("default_target")) {
        const int t = as<int>(intensity["default_target"], "intensity.default_target");
        if (t < 1) throw ConfigError("intensity.default_target: must be >= 1");
        cfg.default_target = t;
    }
    if (intensity.contains("cell_targets")) {
        const auto& targets = intensity["cell_targets"];
        if (!targets.is_object()) throw ConfigError("intensity.cell_targets: must be an object");
        for (const auto& [key, value] : targets.items()) {
            std::size_t index = 0;
            try {
                index = static_cast<std::size_t>(std::stoull(key));
            } catch (...) {
                throw ConfigError("intensity.cell_targets: key '" + key + "' is not a cell index");
            }
            if (index >= n_cells)
                throw ConfigError("intensity.cell_targets: cell " + key + " out of range (grid has " +
                                  std::to_string(n_cells) + " cells)");
            const int t = as<int>(value, "intensity.cell_targets." + key);
            if (t < 1) throw ConfigError("intensity.cell_targets." + key + ": must be >= 1");
            cfg.cell_targets[index] = t;
        }
    }
    if (!cfg.default_target && cfg.cell_targets.empty())
        throw ConfigError("intensity: needs default_target and/or cell_targets");

    if (j.contains("process")) {
        const auto& process = j["process"];
        const std::string kind = process.value("kind", "matern2");
        if (kind == "matern1")
            cfg.process = ProcessKind::matern1;
        else if (kind == "matern2")
            cfg.process = ProcessKind::matern2;
        else
            throw ConfigError("process.kind: expected matern1 | matern2");
        const std::string formula = process.value("radius_formula", "tiling");
        if (formula == "paper")
            cfg.radius_formula = RadiusFormula::paper;
        else if (formula == "tiling")
            cfg.radius_formula = RadiusFormula::tiling;
        else
            throw ConfigError("process.radius_formula: expected paper | tiling");
    }

    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        cfg.quadrature.outer_nodes = q.value("outer_nodes", cfg.quadrature.outer_nodes);
        cfg.quadrature.inner_radial = q.value("inner_radial", cfg.quadrature.inner_radial);
        cfg.quadrature.inner_angular = q.value("inner_angular", cfg.quadrature.inner_angular);
        if (cfg.quadrature.outer_nodes < 1 || cfg.quadrature.inner_radial < 1 ||
            cfg.quadrature.inner_angular < 1)
            throw ConfigError("quadrature: node counts must be >= 1");
    }

    const auto& rings = require(j, "rings", "config");
    if (!rings.is_array() || rings.empty()) throw ConfigError("rings: must be a non-empty array");
    for (std::size_t ri = 0; ri < rings.size(); ++ri) {
        const std::string path = "rings[" + std::to_string(ri) + "]";
        const auto& r = rings[ri];
        NetworkRing ring;
        ring.name = as<std::string>(require(r, "name", path), path + ".name");
        ring.hierarchy_rank = as<int>(require(r, "rank", path), path + ".rank");
        ring.processing_delay_ms =
            as<double>(require(r, "processing_delay_ms", path), path + ".processing_delay_ms");
        ring.max_bss = as<int>(require(r, "max_bss", path), path + ".max_bss");
        if (ring.processing_delay_ms < 0.0) throw ConfigError(path + ".processing_delay_ms: must be >= 0");
        if (ring.max_bss < 1) throw ConfigError(path + ".max_bss: must be >= 1");
        cfg.rings.push_back(ring);
    }
    std::sort(cfg.rings.begin(), cfg.rings.end(),
              [](const NetworkRing& a, const NetworkRing& b) { return a.hierarchy_rank < b.hierarchy_rank; });
    for (std::size_t i = 1; i < cfg.rings.size(); ++i) {
        if (cfg.rings[i].hierarchy_rank == cfg.rings[i - 1].hierarchy_rank)
            throw ConfigError("rings: duplicate hierarchy rank " +
                              std::to_string(cfg.rings[i].hierarchy_rank));
        if (!(cfg.rings[i].processing_delay_ms > cfg.rings[i - 1].processing_delay_ms))
            throw ConfigError("rings: processing delays must strictly increase with rank (" +
                              cfg.rings[i - 1].name + " vs " + cfg.rings[i].name + ")");
    }
    for (std::size_t i = 0; i < cfg.rings.size(); ++i)
        for (std::size_t k = i + 1; k < cfg.rings.size(); ++k)
            if (cfg.rings[i].name == cfg.rings[k].name)
                throw ConfigError("rings: duplicate name '" + cfg.rings[i].name + "'");

    if (j.contains("delay_model")) {
        const auto& d = j["delay_model"];
        const std::string kind = d.value("kind", "linear");
        if (kind != "linear") throw ConfigError("delay_model.kind: only 'linear' is supported");
        cfg.delay_model.km_per_ms = d.value("km_per_ms", 200.0);
        if (!(cfg.delay_model.km_per_ms > 0.0)) throw ConfigError("delay_model.km_per_ms: must be > 0");
    }

    cfg.rtt_budget_ms = as<double>(require(j, "rtt_budget_ms", "config"), "rtt_budget_ms");
    if (cfg.rtt_budget_ms < 0.0) throw ConfigError("rtt_budget_ms: must be >= 0");
    cfg.radio_delay_ms = j.value("radio_delay_ms", 0.0);
    if (cfg.radio_delay_ms < 0.0) throw ConfigError("radio_delay_ms: must be >= 0");
    cfg.candidate_resolution_per_km = j.value("candidate_resolution_per_km", 4.0);
    if (!(cfg.candidate_resolution_per_km > 0.0))
        throw ConfigError("candidate_resolution_per_km: must be > 0");

    const auto& seed = require(j, "seed", "config");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw ConfigError("seed: must be an integer");
    cfg.seed = detail::as<std::uint64_t>(seed, "seed");

    cfg.output_dir = j.value("output_dir", std::string("out"));
    if (cfg.output_dir.empty()) throw ConfigError("output_dir: must not be empty");

    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(j);
}

inline IntensityField build_field(const RunConfig& cfg) {
    return IntensityField(cfg.circles, cfg.calibration == CalibrationMode::fixed ? cfg.fixed_k : 1.0);
}

}  // namespace stochtopo

#endif  // STOCHTOPO_CONFIG_HPP
