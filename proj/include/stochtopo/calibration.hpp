// calibration.hpp -- choosing the intensity scale k so a cell generates a
// target number of points. Pre-thin mode hits the target before thinning
// (k = target / int G); post-thin mode inverts the expected-count
// quadrature of the selected process.

#ifndef STOCHTOPO_CALIBRATION_HPP
#define STOCHTOPO_CALIBRATION_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "stochtopo/intensity.hpp"
#include "stochtopo/matern.hpp"

namespace stochtopo {

enum class CalibrationMode { fixed, pre_thin, post_thin };

struct CalibrationError : std::runtime_error {
    CalibrationError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg + " (last bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "])"),
          bracket_lo(lo),
          bracket_hi(hi) {}
    double bracket_lo, bracket_hi;
};

inline double calibrate_k_pre_thin(const IntensityField& field, const Cell& cell, int target_count,
                                   int quad_nodes = 64) {
    if (target_count < 1) throw std::invalid_argument("calibrate_k: target must be >= 1");
    const double integral = integrate_gentrification(field, cell.bounds(), quad_nodes);
    if (!(integral > 0.0))
        throw CalibrationError("calibrate_k: gentrification integrates to zero over the cell", 0.0, 0.0);
    return static_cast<double>(target_count) / integral;
}

/// Root-find k so the thinned expected count matches the target within 1%
/// relative. The expected count rises with k up to a maximum achievable
/// density and then falls; the search brackets the rising branch and
/// reports targets beyond the peak as unreachable.
inline double calibrate_k_post_thin(const IntensityField& field, const Cell& cell, int target_count,
                                    double r, ProcessKind process = ProcessKind::matern2,
                                    const QuadratureOptions& opt = {}, int max_iterations = 60) {
    if (target_count < 1) throw std::invalid_argument("calibrate_k: target must be >= 1");
    const Rect window = cell.bounds();
    const double integral = integrate_gentrification(field, window, opt.outer_nodes);
    if (!(integral > 0.0))
        throw CalibrationError("calibrate_k: gentrification integrates to zero over the cell", 0.0, 0.0);

    const MaternCountProfile profile(field, window, r, process, opt);
    const double target = static_cast<double>(target_count);
    const double tolerance = 0.01;

    // Expand upward from the pre-thin guess until the target is bracketed
    // or the curve has visibly passed its peak.
    double k_lo = 0.0;
    double k_hi = target / integral;
    double e_hi = profile.expected_count(k_hi);
    double best_e = e_hi;
    for (int step = 0; e_hi < target; ++step) {
        if (step >= 60 || e_hi < 0.999 * best_e)
            throw CalibrationError("calibrate_k: target count unreachable for this radius", k_lo, k_hi);
        best_e = std::max(best_e, e_hi);
        k_lo = k_hi;
        k_hi *= 2.0;
        e_hi = profile.expected_count(k_hi);
    }

    // Bisect the rising branch.
    for (int it = 0; it < max_iterations; ++it) {
        const double k_mid = 0.5 * (k_lo + k_hi);
        const double e_mid = profile.expected_count(k_mid);
        if (std::fabs(e_mid - target) <= tolerance * target) return k_mid;
        if (e_mid < target)
            k_lo = k_mid;
        else
            k_hi = k_mid;
    }
    throw CalibrationError("calibrate_k: root-find did not converge", k_lo, k_hi);
}

}  // namespace stochtopo

#endif  // STOCHTOPO_CALIBRATION_HPP
