// intensity.hpp -- population model: circles carrying Gaussian-like
// surfaces of revolution, the gentrification function G(x) summing them,
// and the process intensity lambda(x) = k * G(x).

#ifndef STOCHTOPO_INTENSITY_HPP
#define STOCHTOPO_INTENSITY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stochtopo/geometry.hpp"

namespace stochtopo {

/// One radial Gaussian lobe A * exp(-(rho - rho0)^2 / (2 sigma^2)).
struct GaussianLobe {
    double amplitude = 0.0;      // persons, >= 0
    double radial_offset = 0.0;  // km, >= 0; nonzero offsets make ring-shaped lobes
    double sigma = 1.0;          // km, > 0
};

/// Radially symmetric profile around a circle center; one lobe gives the
/// plain Gaussian hill, several lobes give the multi-lobed shapes.
struct RevolutionFunction {
    std::vector<GaussianLobe> lobes;

    double operator()(double rho) const {
        double v = 0.0;
        for (const auto& l : lobes) {
            const double d = (rho - l.radial_offset) / l.sigma;
            v += l.amplitude * std::exp(-0.5 * d * d);
        }
        return v;
    }

    /// Radius beyond which the profile is negligible: max offset plus
    /// five of the widest sigma (relative truncation error < 4e-6).
    double default_support_radius() const {
        double off = 0.0, sig = 0.0;
        for (const auto& l : lobes) {
            off = std::max(off, l.radial_offset);
            sig = std::max(sig, l.sigma);
        }
        return off + 5.0 * sig;
    }

    void validate() const {
        if (lobes.empty()) throw std::invalid_argument("RevolutionFunction: needs at least one lobe");
        for (const auto& l : lobes) {
            if (l.amplitude < 0.0) throw std::invalid_argument("RevolutionFunction: negative amplitude");
            if (l.radial_offset < 0.0) throw std::invalid_argument("RevolutionFunction: negative radial offset");
            if (!(l.sigma > 0.0)) throw std::invalid_argument("RevolutionFunction: sigma must be > 0");
        }
    }
};

struct PopulationCircle {
    Point2D center;
    RevolutionFunction revolution;
    double support_radius = 0.0;  // evaluation cutoff; 0 = use default

    double effective_support() const {
        return support_radius > 0.0 ? support_radius : revolution.default_support_radius();
    }
};

/// Immutable population field. Evaluations are pure; share freely.
class IntensityField {
public:
    IntensityField() = default;
    IntensityField(std::vector<PopulationCircle> circles, double k)
        : circles_(std::move(circles)), k_(k) {
        if (k < 0.0) throw std::invalid_argument("IntensityField: k must be >= 0");
        for (const auto& c : circles_) {
            c.revolution.validate();
            if (!(c.effective_support() > 0.0))
                throw std::invalid_argument("IntensityField: support_radius must be > 0");
        }
    }

    const std::vector<PopulationCircle>& circles() const { return circles_; }
    double scale() const { return k_; }

    /// Same circles, different scale k.
    IntensityField with_scale(double k) const { return IntensityField(circles_, k); }

    /// G(x): superposition of all circle profiles whose support reaches x.
    double gentrification(const Point2D& x) const {
        double g = 0.0;
        for (const auto& c : circles_) {
            const double rho2 = distance2(x, c.center);
            const double s = c.effective_support();
            if (rho2 > s * s) continue;
            g += c.revolution(std::sqrt(rho2));
        }
        return g;
    }

    /// lambda(x) = k * G(x).
    double intensity(const Point2D& x) const { return k_ * gentrification(x); }

private:
    std::vector<PopulationCircle> circles_;
    double k_ = 1.0;
};

/// Midpoint-rule integral of G over a rectangle on an n x n sub-grid.
inline double integrate_gentrification(const IntensityField& field, const Rect& window, int n = 64) {
    if (n < 1) throw std::invalid_argument("integrate_gentrification: n must be >= 1");
    const double hx = window.width() / n;
    const double hy = window.height() / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x1 = window.x1_lo + (i + 0.5) * hx;
        for (int j = 0; j < n; ++j) {
            const double x2 = window.x2_lo + (j + 0.5) * hy;
            sum += field.gentrification(Point2D{x1, x2});
        }
    }
    return sum * hx * hy;
}

/// Upper bound for sup over the window of lambda, computed by dense grid
/// evaluation times a 1.05 safety factor. Over-estimation only costs
/// rejection-sampler time, never correctness.
inline double lambda_max_over(const IntensityField& field, const Rect& window, int grid = 64,
                              double safety = 1.05) {
    if (grid < 1) throw std::invalid_argument("lambda_max_over: grid must be >= 1");
    const double hx = window.width() / grid;
    const double hy = window.height() / grid;
    double best = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double x1 = std::min(window.x1_hi, window.x1_lo + i * hx);
        for (int j = 0; j <= grid; ++j) {
            const double x2 = std::min(window.x2_hi, window.x2_lo + j * hy);
            best = std::max(best, field.intensity(Point2D{x1, x2}));
        }
    }
    return best * safety;
}

inline double lambda_max_over(const IntensityField& field, const Cell& cell, int grid = 64,
                              double safety = 1.05) {
    return lambda_max_over(field, cell.bounds(), grid, safety);
}

}  // namespace stochtopo

#endif  // STOCHTOPO_INTENSITY_HPP
