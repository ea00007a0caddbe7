// matern.hpp -- inhomogeneous Poisson sampling, Matern I/II hard-core
// thinnings, expected-count quadratures for both processes, and the
// repulsion radius tied to a per-cell point target.

#ifndef STOCHTOPO_MATERN_HPP
#define STOCHTOPO_MATERN_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stochtopo/geometry.hpp"
#include "stochtopo/intensity.hpp"
#include "stochtopo/rng.hpp"

namespace stochtopo {

// ---------------------------------------------------------------------------
// Metrics. Thinning and the quadratures are parametrised over the metric so
// the same code serves per-cell (plane) and toroidal (wrap) validation runs.

struct EuclideanMetric {
    double distance2(const Point2D& a, const Point2D& b) const { return stochtopo::distance2(a, b); }
};

/// Distances wrap around the rectangle, turning it into a flat torus.
struct TorusMetric {
    Rect domain;

    double distance2(const Point2D& a, const Point2D& b) const {
        const double w = domain.width();
        const double h = domain.height();
        double d1 = std::fabs(a.x1 - b.x1);
        double d2 = std::fabs(a.x2 - b.x2);
        if (d1 > w / 2.0) d1 = w - d1;
        if (d2 > h / 2.0) d2 = h - d2;
        return d1 * d1 + d2 * d2;
    }

    Point2D wrap(Point2D p) const {
        const double w = domain.width();
        const double h = domain.height();
        p.x1 = domain.x1_lo + std::fmod(std::fmod(p.x1 - domain.x1_lo, w) + w, w);
        p.x2 = domain.x2_lo + std::fmod(std::fmod(p.x2 - domain.x2_lo, h) + h, h);
        return p;
    }
};

// ---------------------------------------------------------------------------
// Samples.

struct MarkedPoint {
    Point2D location;
    double mark = 1.0;      // Matern II mark, 1/lambda at the point
    double tie_mark = 0.0;  // uniform tie-break, assigned with the marks
};

enum class SampleStage { raw, thinned };

struct PointSample {
    std::vector<MarkedPoint> points;
    Cell cell;
    std::uint64_t seed = 0;
    SampleStage stage = SampleStage::raw;

    std::size_t size() const { return points.size(); }
};

/// Mark used when lambda is zero at a sample point: largest, so the point
/// loses every contest it is part of.
inline constexpr double kZeroIntensityMark = std::numeric_limits<double>::max();

// ---------------------------------------------------------------------------
// Inhomogeneous PPP via rejection against the per-window bound.
//
// Draw order (fixed for reproducibility): one Poisson count from
// M-hat * area, then per candidate u(x1), u(x2), u(accept).

inline PointSample sample_inhomogeneous_ppp(const IntensityField& field, const Cell& cell, Rng rng) {
    PointSample sample;
    sample.cell = cell;
    sample.seed = rng.seed();
    sample.stage = SampleStage::raw;

    const Rect window = cell.bounds();
    const double bound = lambda_max_over(field, window);
    if (bound <= 0.0) return sample;

    const std::uint64_t n = rng.poisson(bound * window.area());
    sample.points.reserve(static_cast<std::size_t>(n / 2 + 1));
    for (std::uint64_t i = 0; i < n; ++i) {
        Point2D p;
        p.x1 = rng.uniform(window.x1_lo, window.x1_hi);
        p.x2 = rng.uniform(window.x2_lo, window.x2_hi);
        const double u = rng.uniform01();
        const double lambda = field.intensity(p);
        if (u * bound < lambda) {
            MarkedPoint mp;
            mp.location = p;
            mp.mark = lambda > 0.0 ? 1.0 / lambda : kZeroIntensityMark;
            sample.points.push_back(mp);
        }
    }
    return sample;
}

// ---------------------------------------------------------------------------
// Matern I thinning: a point survives iff no other raw point lies in its
// closed r-ball. Removal is simultaneous, so mutual annihilation happens.

template <class Metric = EuclideanMetric>
PointSample matern1_thin(const PointSample& sample, double r, Metric metric = {}) {
    if (sample.stage != SampleStage::raw)
        throw std::invalid_argument("matern1_thin: sample already thinned");
    if (!(r > 0.0)) throw std::invalid_argument("matern1_thin: r must be > 0");

    PointSample out;
    out.cell = sample.cell;
    out.seed = sample.seed;
    out.stage = SampleStage::thinned;

    const double r2 = r * r;
    const std::size_t n = sample.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool lonely = true;
        for (std::size_t j = 0; j < n && lonely; ++j) {
            if (j == i) continue;
            if (metric.distance2(sample.points[i].location, sample.points[j].location) <= r2)
                lonely = false;
        }
        if (lonely) out.points.push_back(sample.points[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matern II thinning. Marks are deterministic m = 1/lambda(x) -- the point
// with the highest intensity wins its neighbourhood -- with an independent
// uniform tie-mark so exact intensity ties still thin to one survivor.

inline PointSample assign_matern2_marks(const PointSample& raw, const IntensityField& field, Rng rng) {
    if (raw.stage != SampleStage::raw)
        throw std::invalid_argument("assign_matern2_marks: sample already thinned");
    PointSample marked = raw;
    for (auto& p : marked.points) {
        const double lambda = field.intensity(p.location);
        p.mark = lambda > 0.0 ? 1.0 / lambda : kZeroIntensityMark;
        p.tie_mark = rng.uniform01();
    }
    return marked;
}

/// Thin an already-marked sample: a point survives iff its (mark, tie_mark)
/// pair is strictly lexicographically minimal within its closed r-ball.
template <class Metric = EuclideanMetric>
PointSample matern2_thin_marked(const PointSample& marked, double r, Metric metric = {}) {
    if (!(r > 0.0)) throw std::invalid_argument("matern2_thin_marked: r must be > 0");

    PointSample out;
    out.cell = marked.cell;
    out.seed = marked.seed;
    out.stage = SampleStage::thinned;

    const double r2 = r * r;
    const std::size_t n = marked.points.size();
    auto beats = [](const MarkedPoint& a, const MarkedPoint& b) {
        return a.mark < b.mark || (a.mark == b.mark && a.tie_mark < b.tie_mark);
    };
    for (std::size_t i = 0; i < n; ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < n && minimal; ++j) {
            if (j == i) continue;
            if (metric.distance2(marked.points[i].location, marked.points[j].location) <= r2 &&
                !beats(marked.points[i], marked.points[j]))
                minimal = false;
        }
        if (minimal) out.points.push_back(marked.points[i]);
    }
    return out;
}

template <class Metric = EuclideanMetric>
PointSample matern2_thin(const PointSample& raw, double r, const IntensityField& field, Rng rng,
                         Metric metric = {}) {
    return matern2_thin_marked(assign_matern2_marks(raw, field, rng), r, metric);
}

// ---------------------------------------------------------------------------
// Expected-count quadratures.
//
// Both processes share the shape E[N] = int_C k G(x) exp(-k J(x)) dx where
// lambda = k G and J is the inner ball integral (of G for Matern I, of
// G restricted to {G(u) > G(x)} for Matern II). The per-node values
// (G(x), J(x)) do not depend on k, so a precomputed profile evaluates the
// expectation for any k -- which is what the post-thin calibration needs.
//
// Outer rule: midpoint grid over the window. Inner rule: polar midpoint
// grid over the ball (integrates constants exactly). Border modes:
//   truncate  inner nodes outside the window are dropped; matches the
//             per-cell simulation where no points exist outside the cell.
//   wrap      inner nodes wrap around the window torus; matches the
//             homogeneous closed forms.

enum class BorderMode { truncate, wrap };

enum class ProcessKind { matern1, matern2 };

struct QuadratureOptions {
    int outer_nodes = 128;  // per axis
    int inner_radial = 32;
    int inner_angular = 32;
    BorderMode border = BorderMode::truncate;
};

class MaternCountProfile {
public:
    MaternCountProfile(const IntensityField& field, const Rect& window, double r, ProcessKind kind,
                       const QuadratureOptions& opt = {})
        : node_weight_((window.width() / opt.outer_nodes) * (window.height() / opt.outer_nodes)) {
        if (!(r > 0.0)) throw std::invalid_argument("MaternCountProfile: r must be > 0");
        if (opt.outer_nodes < 1 || opt.inner_radial < 1 || opt.inner_angular < 1)
            throw std::invalid_argument("MaternCountProfile: quadrature nodes must be >= 1");

        const int n = opt.outer_nodes;
        const double hx = window.width() / n;
        const double hy = window.height() / n;
        const double dr = r / opt.inner_radial;
        const double dt = 2.0 * M_PI / opt.inner_angular;
        const TorusMetric torus{window};

        // Precompute inner node offsets and polar area weights.
        struct InnerNode {
            double off1, off2, weight;
        };
        std::vector<InnerNode> ring;
        ring.reserve(static_cast<std::size_t>(opt.inner_radial) * opt.inner_angular);
        for (int a = 0; a < opt.inner_radial; ++a) {
            const double rho = (a + 0.5) * dr;
            const double w = rho * dr * dt;
            for (int b = 0; b < opt.inner_angular; ++b) {
                const double theta = (b + 0.5) * dt;
                ring.push_back({rho * std::cos(theta), rho * std::sin(theta), w});
            }
        }

        g_.reserve(static_cast<std::size_t>(n) * n);
        inner_.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            const double x1 = window.x1_lo + (i + 0.5) * hx;
            for (int j = 0; j < n; ++j) {
                const Point2D x{x1, window.x2_lo + (j + 0.5) * hy};
                const double gx = field.gentrification(x);
                double acc = 0.0;
                for (const auto& node : ring) {
                    Point2D u{x.x1 + node.off1, x.x2 + node.off2};
                    if (opt.border == BorderMode::wrap) {
                        u = torus.wrap(u);
                    } else if (!window.contains(u)) {
                        continue;
                    }
                    const double gu = field.gentrification(u);
                    if (kind == ProcessKind::matern2 && !(gu > gx)) continue;
                    acc += gu * node.weight;
                }
                g_.push_back(gx);
                inner_.push_back(acc);
            }
        }
    }

    /// E[N] when the intensity is k * G.
    double expected_count(double k) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < g_.size(); ++i)
            sum += k * g_[i] * std::exp(-k * inner_[i]);
        return sum * node_weight_;
    }

private:
    std::vector<double> g_, inner_;
    double node_weight_;
};

inline double expected_count_matern1(const IntensityField& field, const Rect& window, double r,
                                     const QuadratureOptions& opt = {}) {
    return MaternCountProfile(field, window, r, ProcessKind::matern1, opt)
        .expected_count(field.scale());
}

inline double expected_count_matern2(const IntensityField& field, const Rect& window, double r,
                                     const QuadratureOptions& opt = {}) {
    return MaternCountProfile(field, window, r, ProcessKind::matern2, opt)
        .expected_count(field.scale());
}

// ---------------------------------------------------------------------------
// Repulsion radius for a target of N points in a cell.
//
// `paper` is the verbatim formula r = 2 sqrt(w h) / ceil(sqrt(N)).
// `tiling` solves (2r)^2 ceil(sqrt(N))^2 = w h, so the ceil(sqrt(N))^2
// subcells of side 2r exactly tile the cell; this is the self-consistent
// value and the default used by generation.

enum class RadiusFormula { paper, tiling };

inline double repulsion_radius(const Cell& cell, int target_count,
                               RadiusFormula formula = RadiusFormula::tiling) {
    if (target_count < 1) throw std::invalid_argument("repulsion_radius: target must be >= 1");
    const double side = std::sqrt(cell.width() * cell.height());
    const double root = std::ceil(std::sqrt(static_cast<double>(target_count)));
    return formula == RadiusFormula::paper ? 2.0 * side / root : side / (2.0 * root);
}

}  // namespace stochtopo

#endif  // STOCHTOPO_MATERN_HPP
