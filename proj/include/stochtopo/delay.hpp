// delay.hpp -- network ring hierarchy and the RTT budget arithmetic.
//
// RTT between a user behind a base station and a MEC PoP:
//   rtt = 2 * l(distance) + 2 * p(ring) + t_r
// with l the propagation delay of the link and t_r the radio delay.
// Inverting the budget gives the maximum BS-to-PoP distance a ring can
// serve; a negative argument means the ring can never meet the budget.

#ifndef STOCHTOPO_DELAY_HPP
#define STOCHTOPO_DELAY_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "stochtopo/geometry.hpp"

namespace stochtopo {

/// Linear propagation delay; 200 km/ms is a common fibre figure.
struct DelayModel {
    double km_per_ms = 200.0;

    double delay_ms(double km) const { return km / km_per_ms; }
    double inverse_km(double ms) const { return ms * km_per_ms; }

    void validate() const {
        if (!(km_per_ms > 0.0)) throw std::invalid_argument("DelayModel: km_per_ms must be > 0");
    }
};

struct NetworkRing {
    std::string name;
    int hierarchy_rank = 0;         // lower = closer to the RAN
    double processing_delay_ms = 0.0;  // p(M)
    int max_bss = 1;                // capacity of one PoP on this ring
};

inline double rtt_ms(const Point2D& bs, const Point2D& pop, const NetworkRing& ring, double t_r,
                     const DelayModel& model) {
    if (t_r < 0.0) throw std::invalid_argument("rtt_ms: t_r must be >= 0");
    return 2.0 * model.delay_ms(distance(bs, pop)) + 2.0 * ring.processing_delay_ms + t_r;
}

/// m_M: largest distance at which a PoP on this ring still meets the RTT
/// budget. nullopt when the ring is infeasible under the budget.
inline std::optional<double> max_assignment_distance(const NetworkRing& ring, double rtt_budget,
                                                     double t_r, const DelayModel& model) {
    const double argument = (rtt_budget - 2.0 * ring.processing_delay_ms - t_r) / 2.0;
    if (argument < 0.0) return std::nullopt;
    return model.inverse_km(argument);
}

}  // namespace stochtopo

#endif  // STOCHTOPO_DELAY_HPP
