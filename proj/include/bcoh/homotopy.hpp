// The measurable cocycle gamma(g,x) in F2, read off a traced based loop by
// signed crossings of two cut rays, plus the closed-form piecewise oracle.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bcoh/eightmodel.hpp"
#include "bcoh/words.hpp"

namespace bcoh {

struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One ray per hole, from the hole center out to the ambient boundary.
// Crossing the ray counterclockwise about its center reads the generator.
struct CutRay {
    Point2 origin;
    Point2 dir;  // unit
    double length;
    Gen gen;
};

struct CutSystem {
    CutRay ray_a, ray_b;

    // Default cuts: each ray points away from the other hole center.
    static CutSystem standard(const ModelGeometry& g) {
        auto make = [&](const Point2& from, const Point2& away_from, Gen gen) {
            double nx = from.x - away_from.x, ny = from.y - away_from.y;
            double n = std::hypot(nx, ny);
            Point2 d{nx / n, ny / n};
            // extend to the ambient circle: |origin + s d| = R
            double b = from.x * d.x + from.y * d.y;
            double c = from.x * from.x + from.y * from.y -
                       g.ambient_radius * g.ambient_radius;
            double s = -b + std::sqrt(b * b - c);
            return CutRay{from, d, s, gen};
        };
        CutSystem cs{make(g.c_alpha, g.c_beta, Gen::a),
                     make(g.c_beta, g.c_alpha, Gen::b)};
        auto on_ray = [](const CutRay& r, const Point2& p) {
            Point2 v{p.x - r.origin.x, p.y - r.origin.y};
            double along = v.x * r.dir.x + v.y * r.dir.y;
            return std::fabs(cross2(r.dir, v)) < 1e-9 && along >= 0.0 &&
                   along <= r.length;
        };
        if (on_ray(cs.ray_a, g.basepoint) || on_ray(cs.ray_b, g.basepoint))
            throw GeometryError("cut ray passes through the basepoint");
        return cs;
    }
};

namespace detail {

struct Crossing {
    double t;  // traversal position: segment index + local parameter
    Letter letter;
};

// Signed crossings of one segment with one ray, appended to out.
inline void segment_ray_crossings(const Point2& p, const Point2& q,
                                  const CutRay& ray, double seg_index,
                                  std::vector<Crossing>& out) {
    Point2 vp{p.x - ray.origin.x, p.y - ray.origin.y};
    Point2 vq{q.x - ray.origin.x, q.y - ray.origin.y};
    double dp = cross2(ray.dir, vp);
    double dq = cross2(ray.dir, vq);
    if (dp == 0.0 && dq == 0.0) {
        // segment collinear with the ray line; degenerate only if it
        // actually touches the ray
        double ap = vp.x * ray.dir.x + vp.y * ray.dir.y;
        double aq = vq.x * ray.dir.x + vq.y * ray.dir.y;
        if (std::max(ap, aq) >= 0.0 && std::min(ap, aq) <= ray.length)
            throw DegeneracyError("segment collinear with a cut ray");
        return;
    }
    if ((dp > 0.0 && dq > 0.0) || (dp < 0.0 && dq < 0.0)) return;
    if (dp == 0.0 || dq == 0.0)
        throw DegeneracyError("polyline vertex on a cut ray");
    double t = dp / (dp - dq);  // in (0,1)
    Point2 hit{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    Point2 vh{hit.x - ray.origin.x, hit.y - ray.origin.y};
    double along = vh.x * ray.dir.x + vh.y * ray.dir.y;
    if (along <= 1e-12 || along >= ray.length - 1e-12) {
        if (along > -1e-9 && along < ray.length + 1e-9)
            throw DegeneracyError("crossing at a cut ray endpoint");
        return;
    }
    int sign = dq > dp ? 1 : -1;  // counterclockwise about the center reads +
    out.push_back({seg_index + t, Letter{ray.gen, sign}});
}

// Word of an (open or closed) polyline: crossings in traversal order,
// composed in reverse order per the multiplication convention.
inline Word polyline_word(const std::vector<Point2>& line, const CutSystem& cuts) {
    std::vector<Crossing> xs;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        if (line[i] == line[i + 1]) continue;
        segment_ray_crossings(line[i], line[i + 1], cuts.ray_a,
                              static_cast<double>(i), xs);
        segment_ray_crossings(line[i], line[i + 1], cuts.ray_b,
                              static_cast<double>(i), xs);
    }
    std::sort(xs.begin(), xs.end(),
              [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
    Word w;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        w.push_reduced(it->letter);
    return w;
}

}  // namespace detail

struct BasedLoop {
    std::vector<Point2> points;  // first == last == basepoint
};

inline Word loop_class(const CutSystem& cuts, const BasedLoop& loop) {
    if (loop.points.size() < 2 || !(loop.points.front() == loop.points.back()))
        throw std::invalid_argument("loop_class: polyline is not a based loop");
    return detail::polyline_word(loop.points, cuts);
}

namespace detail {

inline Point2 perturbed(const Point2& x, int k) {
    return {x.x + k * 1e-9, x.y + k * 1.3e-9};
}

}  // namespace detail

// gamma(g,x): class of (z -> x chord) + isotopy trace + (g(x) -> z chord).
// Degenerate ray incidences are retried on a deterministic perturbation
// sequence of x.
inline Word gamma(const ModelGeometry& geom, const CutSystem& cuts,
                  const TransformationElement& g, const Point2& x,
                  int samples_per_letter = 32) {
    for (int k = 0; k <= 8; ++k) {
        Point2 xk = detail::perturbed(x, k);
        try {
            std::vector<Point2> line{geom.basepoint};
            auto traj = geom.trajectory(g, xk, samples_per_letter);
            line.insert(line.end(), traj.begin(), traj.end());
            line.push_back(geom.basepoint);
            return detail::polyline_word(line, cuts);
        } catch (const DegeneracyError&) {
            if (k == 8) throw;
        }
    }
    throw DegeneracyError("gamma: unreachable");
}

// Conjugator contributed by the chord z -> x: inverse of the chord's
// crossing word.
inline Word chord_conjugator(const ModelGeometry& geom, const CutSystem& cuts,
                             const Point2& x) {
    for (int k = 0; k <= 8; ++k) {
        Point2 xk = detail::perturbed(x, k);
        try {
            std::vector<Point2> chord{geom.basepoint, xk};
            return invert(detail::polyline_word(chord, cuts));
        } catch (const DegeneracyError&) {
            if (k == 8) throw;
        }
    }
    throw DegeneracyError("chord_conjugator: unreachable");
}

// Closed-form value of gamma(rho_eps(w), x) off the collar:
//   Outside -> e,  CoreBoth -> u w u^-1,
//   CoreAOnly -> u h_a(w) u^-1,  CoreBOnly -> u h_b(w) u^-1.
inline Word gamma_piecewise(const ModelGeometry& geom, const CutSystem& cuts,
                            const Word& w, const Point2& x) {
    RegionLabel l = geom.classify(x);
    switch (l) {
        case RegionLabel::Outside:
            return Word{};
        case RegionLabel::Collar:
            throw std::invalid_argument(
                "gamma_piecewise: no closed form on the collar");
        case RegionLabel::CoreBoth:
            return conjugate(chord_conjugator(geom, cuts, x), w);
        case RegionLabel::CoreAOnly:
            return conjugate(chord_conjugator(geom, cuts, x),
                             retract(w, Gen::a));
        case RegionLabel::CoreBOnly:
            return conjugate(chord_conjugator(geom, cuts, x),
                             retract(w, Gen::b));
    }
    throw std::logic_error("gamma_piecewise: bad region");
}

}  // namespace bcoh
