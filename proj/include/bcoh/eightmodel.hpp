// The planar model manifold: ambient disk minus two small holes, two circular
// tubes through the basepoint, finger-pushing generators, exact region
// classification and closed-form region measures.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bcoh/rng.hpp"
#include "bcoh/words.hpp"

namespace bcoh {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
    double x = 0.0, y = 0.0;

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    bool operator==(const Point2& o) const = default;
};

inline double dist(const Point2& p, const Point2& q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}
inline double cross2(const Point2& a, const Point2& b) {
    return a.x * b.y - a.y * b.x;
}

enum class RegionLabel { Outside, CoreBoth, CoreAOnly, CoreBOnly, Collar };

inline const char* region_name(RegionLabel l) {
    switch (l) {
        case RegionLabel::Outside: return "Outside";
        case RegionLabel::CoreBoth: return "CoreBoth";
        case RegionLabel::CoreAOnly: return "CoreAOnly";
        case RegionLabel::CoreBOnly: return "CoreBOnly";
        case RegionLabel::Collar: return "Collar";
    }
    return "?";
}

// A composition word in the push generators; letter a <-> P(alpha), b <->
// P(beta).  Free reduction is valid because each generator is a bijection.
using TransformationElement = Word;

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smooth radial profile: 1 on [0, 1-eps], cubic smoothstep down to 0 at 1.
inline double finger_profile(double t, double eps) {
    if (t <= 1.0 - eps) return 1.0;
    if (t >= 1.0) return 0.0;
    double s = (t - (1.0 - eps)) / eps;
    return 1.0 - s * s * (3.0 - 2.0 * s);
}

namespace detail {

// Area of the intersection of two disks.
inline double lens_area(double d, double r1, double r2) {
    if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
    if (d >= r1 + r2) return 0.0;
    if (d <= std::fabs(r1 - r2)) {
        double r = std::min(r1, r2);
        return kPi * r * r;
    }
    double a1 = std::acos((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1));
    double a2 = std::acos((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2));
    double t = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(t, 0.0));
}

struct RadialBand {
    double lo, hi;
    double area() const { return kPi * (hi * hi - lo * lo); }
};

// Area of {dist(x,c1) in A} cap {dist(x,c2) in B}, centers distance d apart.
inline double band_band_area(double d, const RadialBand& A, const RadialBand& B) {
    return lens_area(d, A.hi, B.hi) - lens_area(d, A.hi, B.lo) -
           lens_area(d, A.lo, B.hi) + lens_area(d, A.lo, B.lo);
}

}  // namespace detail

class ModelGeometry {
public:
    double ambient_radius;
    Point2 c_alpha, c_beta;
    double r_alpha, r_beta;
    double w_alpha, w_beta;
    double hole_alpha, hole_beta;
    double epsilon;
    Point2 basepoint;

    ModelGeometry(double R, Point2 ca, Point2 cb, double ra, double rb,
                  double wa, double wb, double eps, Point2 z,
                  double hole_a = 0.3, double hole_b = 0.3)
        : ambient_radius(R),
          c_alpha(ca),
          c_beta(cb),
          r_alpha(ra),
          r_beta(rb),
          w_alpha(wa),
          w_beta(wb),
          hole_alpha(hole_a),
          hole_beta(hole_b),
          epsilon(eps),
          basepoint(z) {
        validate();
        compute_measures();
    }

    static ModelGeometry standard(double eps) {
        return ModelGeometry(6.0, {-1.0, 0.0}, {1.0, 0.0}, std::sqrt(2.0),
                             std::sqrt(2.0), 0.25, 0.25, eps, {0.0, 1.0});
    }

    ModelGeometry with_epsilon(double eps) const {
        return ModelGeometry(ambient_radius, c_alpha, c_beta, r_alpha, r_beta,
                             w_alpha, w_beta, eps, basepoint, hole_alpha,
                             hole_beta);
    }

    bool in_M(const Point2& p) const {
        if (std::hypot(p.x, p.y) > ambient_radius) return false;
        if (dist(p, c_alpha) < hole_alpha) return false;
        if (dist(p, c_beta) < hole_beta) return false;
        return true;
    }

    // normalized radial tube coordinate: 0 on the core circle, 1 on the tube
    // boundary, >1 outside the tube
    double tube_coordinate(Gen g, const Point2& p) const {
        const Point2& c = (g == Gen::a) ? c_alpha : c_beta;
        double r = (g == Gen::a) ? r_alpha : r_beta;
        double w = (g == Gen::a) ? w_alpha : w_beta;
        return std::fabs(dist(p, c) - r) / w;
    }

    RegionLabel classify(const Point2& p) const {
        double ua = tube_coordinate(Gen::a, p);
        double ub = tube_coordinate(Gen::b, p);
        bool in_a = ua <= 1.0, in_b = ub <= 1.0;
        bool core_a = ua <= 1.0 - epsilon, core_b = ub <= 1.0 - epsilon;
        if (core_a && core_b) return RegionLabel::CoreBoth;
        if (core_a && !in_b) return RegionLabel::CoreAOnly;
        if (core_b && !in_a) return RegionLabel::CoreBOnly;
        if (in_a || in_b) return RegionLabel::Collar;
        return RegionLabel::Outside;
    }

    double region_measure(RegionLabel l) const { return measures_.at(l); }
    double area_M() const { return area_M_; }
    double tube_overlap_measure() const { return mu_tubes_overlap_; }

    // One push generator, evaluated as a point map.  Exact identity outside
    // the tube, on the tube boundary, and on the core band (full rotation).
    Point2 apply_letter(const Letter& l, const Point2& p) const {
        const Point2& c = (l.gen == Gen::a) ? c_alpha : c_beta;
        double r = (l.gen == Gen::a) ? r_alpha : r_beta;
        double w = (l.gen == Gen::a) ? w_alpha : w_beta;
        double d = dist(p, c);
        double u = std::fabs(d - r) / w;
        if (u >= 1.0) return p;
        double f = finger_profile(u, epsilon);
        if (f == 1.0 || f == 0.0) return p;
        return rotate_about(c, p, l.sign * kTwoPi * f);
    }

    Point2 apply(const TransformationElement& g, const Point2& p) const {
        Point2 q = p;
        const auto& ls = g.letters();
        for (auto it = ls.rbegin(); it != ls.rend(); ++it)
            q = apply_letter(*it, q);
        return q;
    }

    // Isotopy trace: per-letter circular arcs, letters applied right to left.
    std::vector<Point2> trajectory(const TransformationElement& g,
                                   const Point2& p,
                                   int samples_per_letter = 32) const {
        if (samples_per_letter < 8)
            throw std::invalid_argument("trajectory: samples_per_letter < 8");
        std::vector<Point2> line{p};
        Point2 q = p;
        const auto& ls = g.letters();
        for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
            const Letter& l = *it;
            const Point2& c = (l.gen == Gen::a) ? c_alpha : c_beta;
            double r = (l.gen == Gen::a) ? r_alpha : r_beta;
            double w = (l.gen == Gen::a) ? w_alpha : w_beta;
            double d = dist(q, c);
            double u = std::fabs(d - r) / w;
            double f = (u >= 1.0) ? 0.0 : finger_profile(u, epsilon);
            if (f == 0.0) {
                line.push_back(q);  // constant arc
                continue;
            }
            double total = l.sign * kTwoPi * f;
            Point2 end = apply_letter(l, q);
            for (int j = 1; j <= samples_per_letter; ++j) {
                double ang = total * j / samples_per_letter;
                Point2 s = (j == samples_per_letter) ? end
                                                     : rotate_about(c, q, ang);
                line.push_back(s);
            }
            q = end;
        }
        return line;
    }

    // The two intersection points of the core circles; basepoint first.
    std::array<Point2, 2> core_intersections() const {
        double d = dist(c_alpha, c_beta);
        double a = (d * d + r_alpha * r_alpha - r_beta * r_beta) / (2.0 * d);
        double h2 = r_alpha * r_alpha - a * a;
        if (h2 <= 0.0)
            throw GeometryError("core circles do not cross transversally");
        double h = std::sqrt(h2);
        Point2 u{(c_beta.x - c_alpha.x) / d, (c_beta.y - c_alpha.y) / d};
        Point2 mid{c_alpha.x + a * u.x, c_alpha.y + a * u.y};
        Point2 p1{mid.x - h * u.y, mid.y + h * u.x};
        Point2 p2{mid.x + h * u.y, mid.y - h * u.x};
        if (dist(p1, basepoint) > dist(p2, basepoint)) std::swap(p1, p2);
        return {p1, p2};
    }

    // Uniform point of M by rejection from the ambient disk.
    Point2 sample_point(CounterRng& rng) const {
        for (;;) {
            double r = ambient_radius * std::sqrt(rng.next_double());
            double t = kTwoPi * rng.next_double();
            Point2 p{r * std::cos(t), r * std::sin(t)};
            if (in_M(p)) return p;
        }
    }

    // Uniform point of the collar region B_eps.
    Point2 sample_collar_point(CounterRng& rng) const {
        for (;;) {
            // proposal: area-weighted choice among the four collar bands
            double pick = rng.next_double() * band_area_total_;
            std::size_t k = 0;
            while (k + 1 < bands_.size() && pick > band_area_cum_[k]) ++k;
            const auto& [cen, band] = bands_[k];
            double r2 = band.lo * band.lo +
                        rng.next_double() * (band.hi * band.hi - band.lo * band.lo);
            double r = std::sqrt(r2);
            double t = kTwoPi * rng.next_double();
            Point2 p{cen.x + r * std::cos(t), cen.y + r * std::sin(t)};
            if (classify(p) != RegionLabel::Collar) continue;
            int m = collar_multiplicity(p);
            if (m > 1 && rng.next_double() * m >= 1.0) continue;
            return p;
        }
    }

    // Uniform point of a core region (rejection within the core band).
    Point2 sample_region_point(RegionLabel want, CounterRng& rng) const {
        if (want == RegionLabel::Collar) return sample_collar_point(rng);
        for (;;) {
            Point2 p;
            if (want == RegionLabel::Outside) {
                p = sample_point(rng);
            } else {
                bool use_b = (want == RegionLabel::CoreBOnly);
                const Point2& cen = use_b ? c_beta : c_alpha;
                double r = use_b ? r_beta : r_alpha;
                double w = use_b ? w_beta : w_alpha;
                double lo = r - (1.0 - epsilon) * w, hi = r + (1.0 - epsilon) * w;
                double r2 = lo * lo + rng.next_double() * (hi * hi - lo * lo);
                double t = kTwoPi * rng.next_double();
                double rr = std::sqrt(r2);
                p = {cen.x + rr * std::cos(t), cen.y + rr * std::sin(t)};
            }
            if (classify(p) == want) return p;
        }
    }

private:
    static Point2 rotate_about(const Point2& c, const Point2& p, double ang) {
        double cs = std::cos(ang), sn = std::sin(ang);
        double dx = p.x - c.x, dy = p.y - c.y;
        return {c.x + cs * dx - sn * dy, c.y + sn * dx + cs * dy};
    }

    int collar_multiplicity(const Point2& p) const {
        double ua = tube_coordinate(Gen::a, p);
        double ub = tube_coordinate(Gen::b, p);
        int m = 0;
        if (ua <= 1.0 && ua > 1.0 - epsilon) ++m;
        if (ub <= 1.0 && ub > 1.0 - epsilon) ++m;
        return m;
    }

    void validate() const {
        if (epsilon <= 0.0 || epsilon >= 1.0)
            throw GeometryError("epsilon must lie in (0,1)");
        if (w_alpha <= 0.0 || w_beta <= 0.0 || w_alpha >= r_alpha ||
            w_beta >= r_beta)
            throw GeometryError("tube halfwidths must lie in (0, r)");
        if (std::fabs(dist(basepoint, c_alpha) - r_alpha) > 1e-9 ||
            std::fabs(dist(basepoint, c_beta) - r_beta) > 1e-9)
            throw GeometryError("core circles must pass through the basepoint");
        double oa = std::hypot(c_alpha.x, c_alpha.y) + r_alpha + w_alpha;
        double ob = std::hypot(c_beta.x, c_beta.y) + r_beta + w_beta;
        if (oa >= ambient_radius || ob >= ambient_radius)
            throw GeometryError("tubes must lie inside the ambient disk");
        // tubes must avoid both removed holes
        auto tube_hole_ok = [](double d, double rin, double rout, double hole) {
            double mind;
            if (d > rout)
                mind = d - rout;
            else if (d < rin)
                mind = rin - d;
            else
                mind = 0.0;
            return mind >= hole;
        };
        double D = dist(c_alpha, c_beta);
        if (hole_alpha > r_alpha - w_alpha || hole_beta > r_beta - w_beta)
            throw GeometryError("hole radius exceeds inner tube radius");
        if (!tube_hole_ok(D, r_alpha - w_alpha, r_alpha + w_alpha, hole_beta) ||
            !tube_hole_ok(D, r_beta - w_beta, r_beta + w_beta, hole_alpha))
            throw GeometryError("a tube meets the other removed hole");
        // overlap of the tubes must stay near the two core crossing points
        auto xs = core_intersections();
        double rad = 3.0 * std::max(w_alpha, w_beta);
        CounterRng rng(0xfacade, 0);
        int found = 0;
        for (int i = 0; i < 20000; ++i) {
            double lo = r_alpha - w_alpha, hi = r_alpha + w_alpha;
            double r2 = lo * lo + rng.next_double() * (hi * hi - lo * lo);
            double t = kTwoPi * rng.next_double();
            double rr = std::sqrt(r2);
            Point2 p{c_alpha.x + rr * std::cos(t), c_alpha.y + rr * std::sin(t)};
            if (tube_coordinate(Gen::b, p) > 1.0) continue;
            ++found;
            if (dist(p, xs[0]) > rad && dist(p, xs[1]) > rad)
                throw GeometryError("tube overlap escapes the crossing discs");
        }
        if (found == 0)
            throw GeometryError("tubes do not overlap; model is not a figure eight");
    }

    void compute_measures() {
        using detail::RadialBand;
        using detail::band_band_area;
        double D = dist(c_alpha, c_beta);
        RadialBand tube_a{r_alpha - w_alpha, r_alpha + w_alpha};
        RadialBand tube_b{r_beta - w_beta, r_beta + w_beta};
        RadialBand core_a{r_alpha - (1.0 - epsilon) * w_alpha,
                          r_alpha + (1.0 - epsilon) * w_alpha};
        RadialBand core_b{r_beta - (1.0 - epsilon) * w_beta,
                          r_beta + (1.0 - epsilon) * w_beta};
        area_M_ = kPi * (ambient_radius * ambient_radius -
                         hole_alpha * hole_alpha - hole_beta * hole_beta);
        mu_tubes_overlap_ = band_band_area(D, tube_a, tube_b);
        double mu_core_both = band_band_area(D, core_a, core_b);
        double mu_core_a = core_a.area() - band_band_area(D, core_a, tube_b);
        double mu_core_b = core_b.area() - band_band_area(D, tube_a, core_b);
        // collar = (tube_a - core_a) U (tube_b - core_b); each difference is
        // two thin annular bands
        RadialBand a_in{tube_a.lo, core_a.lo}, a_out{core_a.hi, tube_a.hi};
        RadialBand b_in{tube_b.lo, core_b.lo}, b_out{core_b.hi, tube_b.hi};
        double col_a = tube_a.area() - core_a.area();
        double col_b = tube_b.area() - core_b.area();
        double col_ab = 0.0;
        for (const auto& ba : {a_in, a_out})
            for (const auto& bb : {b_in, b_out})
                col_ab += band_band_area(D, ba, bb);
        double mu_collar = col_a + col_b - col_ab;
        double mu_tubes_union =
            tube_a.area() + tube_b.area() - mu_tubes_overlap_;
        measures_[RegionLabel::CoreBoth] = mu_core_both;
        measures_[RegionLabel::CoreAOnly] = mu_core_a;
        measures_[RegionLabel::CoreBOnly] = mu_core_b;
        measures_[RegionLabel::Collar] = mu_collar;
        measures_[RegionLabel::Outside] = area_M_ - mu_tubes_union;
        bands_ = {{c_alpha, a_in}, {c_alpha, a_out}, {c_beta, b_in},
                  {c_beta, b_out}};
        band_area_total_ = 0.0;
        band_area_cum_.clear();
        for (const auto& [c, b] : bands_) {
            band_area_total_ += b.area();
            band_area_cum_.push_back(band_area_total_);
        }
    }

    std::map<RegionLabel, double> measures_;
    double area_M_ = 0.0;
    double mu_tubes_overlap_ = 0.0;
    std::vector<std::pair<Point2, detail::RadialBand>> bands_;
    std::vector<double> band_area_cum_;
    double band_area_total_ = 0.0;
};

}  // namespace bcoh
