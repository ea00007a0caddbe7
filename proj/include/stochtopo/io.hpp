// io.hpp -- deterministic serialization: CSV tables for stations, PoPs
// and assignments, the run summary JSON, and the SVG map. Floats are
// written with 6 decimal places so identical runs are byte-identical and
// the bs.csv round-trip is exact.

#ifndef STOCHTOPO_IO_HPP
#define STOCHTOPO_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stochtopo/delay.hpp"
#include "stochtopo/generation.hpp"
#include "stochtopo/placement.hpp"

namespace stochtopo {

struct CsvError : std::runtime_error {
    CsvError(const std::string& file, std::size_t row, const std::string& column,
             const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(row) + ": column '" + column + "': " + msg) {}
};

namespace detail {

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << text;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace detail

inline void write_bs_csv(const std::string& path, const std::vector<BaseStation>& stations) {
    std::string text = "id,x1_km,x2_km,cell\n";
    for (const auto& bs : stations) {
        text += std::to_string(bs.id) + ',' + detail::fixed6(bs.location.x1) + ',' +
                detail::fixed6(bs.location.x2) + ',' + std::to_string(bs.cell_index) + '\n';
    }
    detail::write_text(path, text);
}

inline std::vector<BaseStation> read_bs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError(path, 0, "-", "cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw CsvError(path, 1, "-", "missing header");
    if (line == "id,x1_km,x2_km,cell\r") line.pop_back();
    if (line != "id,x1_km,x2_km,cell")
        throw CsvError(path, 1, "-", "expected header 'id,x1_km,x2_km,cell'");

    std::vector<BaseStation> stations;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 4) throw CsvError(path, row, "-", "expected 4 fields");
        BaseStation bs;
        try {
            std::size_t pos = 0;
            bs.id = std::stoi(fields[0], &pos);
            if (pos != fields[0].size()) throw std::invalid_argument("");
        } catch (...) {
            throw CsvError(path, row, "id", "not an integer");
        }
        try {
            std::size_t pos = 0;
            bs.location.x1 = std::stod(fields[1], &pos);
            if (pos != fields[1].size()) throw std::invalid_argument("");
        } catch (...) {
            throw CsvError(path, row, "x1_km", "not a number");
        }
        try {
            std::size_t pos = 0;
            bs.location.x2 = std::stod(fields[2], &pos);
            if (pos != fields[2].size()) throw std::invalid_argument("");
        } catch (...) {
            throw CsvError(path, row, "x2_km", "not a number");
        }
        try {
            std::size_t pos = 0;
            bs.cell_index = std::stoull(fields[3], &pos);
            if (pos != fields[3].size()) throw std::invalid_argument("");
        } catch (...) {
            throw CsvError(path, row, "cell", "not a non-negative integer");
        }
        stations.push_back(bs);
    }
    return stations;
}

inline void write_pops_csv(const std::string& path, const PlacementResult& result,
                           const std::vector<NetworkRing>& rings) {
    std::string text = "id,x1_km,x2_km,ring\n";
    for (const auto& pop : result.pops) {
        text += std::to_string(pop.id) + ',' + detail::fixed6(pop.location.x1) + ',' +
                detail::fixed6(pop.location.x2) + ',' + rings[pop.ring_index].name + '\n';
    }
    detail::write_text(path, text);
}

inline void write_assignments_csv(const std::string& path, const PlacementResult& result) {
    std::string text = "bs_id,pop_id,distance_km,rtt_ms\n";
    for (const auto& a : result.assignments) {
        text += std::to_string(a.bs_id) + ',' + std::to_string(a.pop_id) + ',' +
                detail::fixed6(a.distance_km) + ',' + detail::fixed6(a.rtt_ms) + '\n';
    }
    detail::write_text(path, text);
}

inline void write_summary_json(const std::string& path, const std::vector<BaseStation>& stations,
                               const PlacementResult& result,
                               const std::vector<NetworkRing>& rings) {
    nlohmann::ordered_json summary;
    summary["n_bs"] = stations.size();
    summary["n_pops"] = result.pops.size();

    nlohmann::ordered_json per_ring = nlohmann::ordered_json::object();
    for (const auto& ring : rings) per_ring[ring.name] = 0;
    for (const auto& pop : result.pops)
        per_ring[rings[pop.ring_index].name] = per_ring[rings[pop.ring_index].name].get<int>() + 1;
    summary["pops_per_ring"] = per_ring;

    double rtt_max = 0.0, rtt_sum = 0.0;
    for (const auto& a : result.assignments) {
        rtt_max = std::max(rtt_max, a.rtt_ms);
        rtt_sum += a.rtt_ms;
    }
    summary["n_assigned"] = result.assignments.size();
    summary["rtt_max_ms"] =
        result.assignments.empty() ? 0.0 : detail::round6(rtt_max);
    summary["rtt_mean_ms"] =
        result.assignments.empty() ? 0.0
                                   : detail::round6(rtt_sum / static_cast<double>(result.assignments.size()));
    summary["unassignable"] = result.unassignable;

    detail::write_text(path, summary.dump(2) + "\n");
}

/// SVG map rendered purely from the run outputs: station crosses, PoP
/// circles coloured by ring with their reach radius, region border.
inline void write_map_svg(const std::string& path, const Rect& region,
                          const std::vector<BaseStation>& stations, const PlacementResult& result,
                          const std::vector<NetworkRing>& rings,
                          const std::vector<std::optional<double>>& ring_reach) {
    static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};
    const double scale = 100.0;  // px per km
    const double pad = 0.05 * std::max(region.width(), region.height()) * scale;
    const double w = region.width() * scale + 2 * pad;
    const double h = region.height() * scale + 2 * pad;
    auto px = [&](double x1) { return pad + (x1 - region.x1_lo) * scale; };
    auto py = [&](double x2) { return pad + (region.x2_hi - x2) * scale; };  // SVG y grows down

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fixed6(w) +
           "\" height=\"" + detail::fixed6(h) + "\" viewBox=\"0 0 " + detail::fixed6(w) + " " +
           detail::fixed6(h) + "\">\n";
    svg += "<rect x=\"" + detail::fixed6(px(region.x1_lo)) + "\" y=\"" + detail::fixed6(py(region.x2_hi)) +
           "\" width=\"" + detail::fixed6(region.width() * scale) + "\" height=\"" +
           detail::fixed6(region.height() * scale) + "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (const auto& pop : result.pops) {
        const char* color = palette[pop.ring_index % 8];
        if (ring_reach[pop.ring_index]) {
            svg += "<circle cx=\"" + detail::fixed6(px(pop.location.x1)) + "\" cy=\"" +
                   detail::fixed6(py(pop.location.x2)) + "\" r=\"" +
                   detail::fixed6(*ring_reach[pop.ring_index] * scale) + "\" fill=\"" + color +
                   "\" fill-opacity=\"0.08\" stroke=\"" + color + "\" stroke-dasharray=\"4 3\"/>\n";
        }
    }
    for (const auto& bs : stations) {
        const double x = px(bs.location.x1), y = py(bs.location.x2);
        svg += "<path d=\"M" + detail::fixed6(x - 3) + " " + detail::fixed6(y - 3) + " L" +
               detail::fixed6(x + 3) + " " + detail::fixed6(y + 3) + " M" + detail::fixed6(x - 3) +
               " " + detail::fixed6(y + 3) + " L" + detail::fixed6(x + 3) + " " +
               detail::fixed6(y - 3) + "\" stroke=\"#444\" stroke-width=\"1.2\"/>\n";
    }
    for (const auto& pop : result.pops) {
        const char* color = palette[pop.ring_index % 8];
        svg += "<circle cx=\"" + detail::fixed6(px(pop.location.x1)) + "\" cy=\"" +
               detail::fixed6(py(pop.location.x2)) + "\" r=\"5\" fill=\"" + color +
               "\" stroke=\"#000\"/>\n";
    }
    for (std::size_t m = 0; m < rings.size(); ++m) {
        svg += "<text x=\"" + detail::fixed6(pad) + "\" y=\"" + detail::fixed6(14.0 * (m + 1)) +
               "\" font-size=\"12\" fill=\"" + palette[m % 8] + "\">" + rings[m].name + "</text>\n";
    }
    svg += "</svg>\n";
    detail::write_text(path, svg);
}

}  // namespace stochtopo

#endif  // STOCHTOPO_IO_HPP
