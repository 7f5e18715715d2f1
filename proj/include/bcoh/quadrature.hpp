// Adaptive quadrature over Euclidean tetrahedra: tensor Gauss-Legendre on the
// Duffy-collapsed cube, with greedy bisection of the worst cell.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bcoh {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& a) { return dot(a, a); }

inline double det3(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) -
           c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
           c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
    bool converged = true;
    std::size_t cells = 0;
};

namespace detail {

struct GL {
    std::vector<double> x;  // nodes on [0,1]
    std::vector<double> w;
};

inline const GL& gl4() {
    static const GL g = [] {
        GL r;
        const double n[2] = {0.3399810435848563, 0.8611363115940526};
        const double w[2] = {0.6521451548625461, 0.3478548451374538};
        for (int i = 1; i >= 0; --i) {
            r.x.push_back(0.5 * (1.0 - n[i]));
            r.w.push_back(0.5 * w[i]);
        }
        for (int i = 0; i < 2; ++i) {
            r.x.push_back(0.5 * (1.0 + n[i]));
            r.w.push_back(0.5 * w[i]);
        }
        return r;
    }();
    return g;
}

inline const GL& gl7() {
    static const GL g = [] {
        GL r;
        const double n[4] = {0.0, 0.4058451513773972, 0.7415311855993945,
                             0.9491079123427585};
        const double w[4] = {0.4179591836734694, 0.3818300505051189,
                             0.2797053914892766, 0.1294849661688697};
        for (int i = 3; i >= 1; --i) {
            r.x.push_back(0.5 * (1.0 - n[i]));
            r.w.push_back(0.5 * w[i]);
        }
        r.x.push_back(0.5);
        r.w.push_back(0.5 * w[0]);
        for (int i = 1; i <= 3; ++i) {
            r.x.push_back(0.5 * (1.0 + n[i]));
            r.w.push_back(0.5 * w[i]);
        }
        return r;
    }();
    return g;
}

struct Tet {
    std::array<Vec3, 4> v;
};

// Tensor rule on the cube (a,b,c) with the Duffy collapse
//   u = a, v = b(1-a), w = c(1-a)(1-b),   J = (1-a)^2 (1-b).
template <typename F>
double tet_rule(const Tet& t, const GL& g, F&& f) {
    const Vec3 e1 = t.v[1] - t.v[0];
    const Vec3 e2 = t.v[2] - t.v[0];
    const Vec3 e3 = t.v[3] - t.v[0];
    const double jac = std::fabs(det3(e1, e2, e3));
    if (jac == 0.0) return 0.0;
    double s = 0.0;
    const std::size_t n = g.x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = g.x[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double b = g.x[j];
            double row = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double c = g.x[k];
                const double u = a;
                const double v = b * (1.0 - a);
                const double w = c * (1.0 - a) * (1.0 - b);
                Vec3 p = t.v[0] + u * e1 + v * e2 + w * e3;
                row += g.w[k] * f(p);
            }
            s += g.w[i] * g.w[j] * row * (1.0 - a) * (1.0 - a) * (1.0 - b);
        }
    }
    return s * jac;
}

struct Cell {
    Tet t;
    double value;
    double err;
    bool operator<(const Cell& o) const { return err < o.err; }
};

template <typename F>
Cell make_cell(const Tet& t, F&& f) {
    Cell c;
    c.t = t;
    double coarse = tet_rule(t, gl4(), f);
    c.value = tet_rule(t, gl7(), f);
    c.err = std::fabs(c.value - coarse);
    return c;
}

inline std::pair<Tet, Tet> bisect_longest_edge(const Tet& t) {
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double l = norm2(t.v[i] - t.v[j]);
            if (l > best) {
                best = l;
                bi = i;
                bj = j;
            }
        }
    Vec3 mid = 0.5 * (t.v[bi] + t.v[bj]);
    Tet l = t, r = t;
    l.v[bj] = mid;
    r.v[bi] = mid;
    return {l, r};
}

}  // namespace detail

// Adaptive integral of f over the tetrahedron (v0..v3), absolute tolerance.
template <typename F>
QuadratureResult integrate_tetrahedron(const std::array<Vec3, 4>& verts, F&& f,
                                       double tol,
                                       std::size_t max_cells = 400000) {
    if (tol <= 0.0) throw std::invalid_argument("integrate_tetrahedron: tol <= 0");
    using namespace detail;
    std::priority_queue<Cell> heap;
    heap.push(make_cell(Tet{verts}, f));
    double total = heap.top().value;
    double toterr = heap.top().err;
    std::size_t cells = 1;
    while (toterr > tol && cells < max_cells && heap.top().err > 0.0) {
        Cell worst = heap.top();
        heap.pop();
        auto [a, b] = bisect_longest_edge(worst.t);
        Cell ca = make_cell(a, f);
        Cell cb = make_cell(b, f);
        total += ca.value + cb.value - worst.value;
        toterr += ca.err + cb.err - worst.err;
        heap.push(ca);
        heap.push(cb);
        ++cells;
    }
    QuadratureResult r;
    r.value = total;
    r.err_estimate = toterr;
    r.converged = toterr <= tol;
    r.cells = cells;
    return r;
}

}  // namespace bcoh
