// Klein-ball model of H^3, Lorentz isometries acting through the hyperboloid,
// signed volumes of geodesic simplices and the degree-3 volume cocycle.
#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "bcoh/cochains.hpp"
#include "bcoh/quadrature.hpp"
#include "bcoh/words.hpp"

namespace bcoh {

struct KleinPoint {
    Vec3 x{0.0, 0.0, 0.0};

    double radius2() const { return norm2(x); }
};

// 4x4 matrix preserving diag(-1,1,1,1) and the upper hyperboloid sheet.
struct Isometry {
    // row-major, coordinates (t, x1, x2, x3)
    std::array<double, 16> m{};

    static Isometry identity() {
        Isometry r;
        for (int i = 0; i < 4; ++i) r.m[i * 4 + i] = 1.0;
        return r;
    }

    double& at(int i, int j) { return m[i * 4 + j]; }
    double at(int i, int j) const { return m[i * 4 + j]; }
};

inline Isometry compose(const Isometry& a, const Isometry& b) {
    Isometry r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

inline Isometry boost(int axis, double rapidity) {
    Isometry r = Isometry::identity();
    double c = std::cosh(rapidity), s = std::sinh(rapidity);
    r.at(0, 0) = c;
    r.at(0, axis) = s;
    r.at(axis, 0) = s;
    r.at(axis, axis) = c;
    return r;
}

inline Isometry rotation(int axis1, int axis2, double angle) {
    Isometry r = Isometry::identity();
    double c = std::cos(angle), s = std::sin(angle);
    r.at(axis1, axis1) = c;
    r.at(axis1, axis2) = -s;
    r.at(axis2, axis1) = s;
    r.at(axis2, axis2) = c;
    return r;
}

inline Isometry lorentz_inverse(const Isometry& g) {
    // g^-1 = eta g^T eta for Lorentz matrices
    Isometry r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double e = g.at(j, i);
            if ((i == 0) != (j == 0)) e = -e;
            r.at(i, j) = e;
        }
    return r;
}

// max |g^T eta g - eta|
inline double lorentz_defect(const Isometry& g) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) {
                double e = (k == 0) ? -1.0 : 1.0;
                s += g.at(k, i) * e * g.at(k, j);
            }
            double target = (i == j) ? (i == 0 ? -1.0 : 1.0) : 0.0;
            worst = std::max(worst, std::fabs(s - target));
        }
    return worst;
}

inline std::array<double, 4> lift(const KleinPoint& p) {
    double r2 = p.radius2();
    if (r2 >= 1.0)
        throw std::invalid_argument("KleinPoint outside the unit ball");
    double t = 1.0 / std::sqrt(1.0 - r2);
    return {t, t * p.x[0], t * p.x[1], t * p.x[2]};
}

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline KleinPoint apply(const Isometry& g, const KleinPoint& p) {
    auto X = lift(p);
    std::array<double, 4> Y{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) Y[i] += g.at(i, j) * X[j];
    KleinPoint q;
    q.x = {Y[1] / Y[0], Y[2] / Y[0], Y[3] / Y[0]};
    if (std::sqrt(q.radius2()) >= 1.0 - 1e-14)
        throw NumericError("isometry image too close to the ball boundary");
    return q;
}

inline double hyperbolic_distance(const KleinPoint& p, const KleinPoint& q) {
    auto P = lift(p), Q = lift(q);
    double inner = -P[0] * Q[0] + P[1] * Q[1] + P[2] * Q[2] + P[3] * Q[3];
    double c = -inner;
    if (c < 1.0) c = 1.0;
    return std::acosh(c);
}

// Isometric F2 action with memoized word evaluation.
class GroupAction {
public:
    GroupAction(const Isometry& gen_a, const Isometry& gen_b)
        : gen_a_(gen_a), gen_b_(gen_b) {}

    // copyable (fresh cache and lock); the memo is only an accelerator
    GroupAction(const GroupAction& o) : gen_a_(o.gen_a_), gen_b_(o.gen_b_) {}
    GroupAction& operator=(const GroupAction&) = delete;

    const Isometry& gen(Gen g) const { return g == Gen::a ? gen_a_ : gen_b_; }

    Isometry operator()(const Word& w) const {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        Isometry r = Isometry::identity();
        for (const Letter& l : w.letters()) {
            Isometry g = gen(l.gen);
            if (l.sign < 0) g = lorentz_inverse(g);
            r = compose(r, g);
        }
        std::lock_guard<std::mutex> lk(mu_);
        memo_.emplace(w, r);
        return r;
    }

private:
    Isometry gen_a_, gen_b_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Word, Isometry, WordHash> memo_;
};

// gen_a: screw motion along the x1-axis geodesic through the origin;
// gen_b: screw motion along the x2-direction geodesic, conjugated out to
// distance axis_separation along x1.
inline GroupAction loxodromic_pair(double translation_length,
                                   double rotation_angle,
                                   double axis_separation) {
    if (translation_length <= 0.0)
        throw std::invalid_argument("loxodromic_pair: translation_length <= 0");
    Isometry a = compose(boost(1, translation_length),
                         rotation(2, 3, rotation_angle));
    Isometry b0 = compose(boost(2, translation_length),
                          rotation(1, 3, rotation_angle));
    Isometry t = boost(1, axis_separation);
    Isometry b = compose(compose(t, b0), lorentz_inverse(t));
    return GroupAction(a, b);
}

// Supremum of geodesic simplex volumes in H^3 (ideal regular tetrahedron).
inline constexpr double kMaxSimplexVolume = 1.0149416064096537;

// Signed hyperbolic volume of the geodesic simplex on four Klein points.
// Geodesic simplices are Euclidean in the Klein model; the volume element is
// (1-|x|^2)^-2 dx.
inline double simplex_signed_volume(const std::array<KleinPoint, 4>& v,
                                    double tol,
                                    QuadratureResult* diag = nullptr) {
    if (tol <= 0.0) throw std::invalid_argument("simplex_signed_volume: tol <= 0");
    for (const auto& p : v)
        if (p.radius2() >= 1.0)
            throw std::invalid_argument("simplex vertex outside the ball");
    Vec3 e1 = v[1].x - v[0].x, e2 = v[2].x - v[0].x, e3 = v[3].x - v[0].x;
    double d = det3(e1, e2, e3);
    if (d == 0.0) return 0.0;
    double sign = d > 0.0 ? 1.0 : -1.0;
    std::array<Vec3, 4> verts{v[0].x, v[1].x, v[2].x, v[3].x};
    auto res = integrate_tetrahedron(
        verts,
        [](const Vec3& x) {
            double s = 1.0 - norm2(x);
            return 1.0 / (s * s);
        },
        tol);
    if (diag) *diag = res;
    return sign * res.value;
}

// Degree-3 homogeneous cochain c(a1..a4) = signed volume of the simplex on
// rho(a_i^-1) x.  Values memoized per word tuple.
inline Cochain volume_cocycle(std::shared_ptr<GroupAction> action,
                              const KleinPoint& basepoint, double tol) {
    if (basepoint.radius2() >= 1.0)
        throw std::invalid_argument("volume_cocycle: basepoint outside ball");
    Cochain c;
    c.degree = 3;
    c.sup_bound = 1.0150;
    auto memo = std::make_shared<std::unordered_map<std::string, double>>();
    auto mu = std::make_shared<std::mutex>();
    c.eval = [action, basepoint, tol, memo, mu](const std::vector<Word>& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (t[i] == t[j]) return 0.0;
        std::string key;
        for (const auto& w : t) {
            key += w.str();
            key += '|';
        }
        {
            std::lock_guard<std::mutex> lk(*mu);
            auto it = memo->find(key);
            if (it != memo->end()) return it->second;
        }
        std::array<KleinPoint, 4> verts;
        for (int i = 0; i < 4; ++i)
            verts[i] = apply((*action)(invert(t[i])), basepoint);
        double val = simplex_signed_volume(verts, tol);
        std::lock_guard<std::mutex> lk(*mu);
        memo->emplace(key, val);
        return val;
    };
    return c;
}

}  // namespace bcoh
