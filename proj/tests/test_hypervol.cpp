#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "bcoh/cochains.hpp"
#include "bcoh/hypervol.hpp"
#include "oracles.hpp"

using namespace bcoh;

namespace {

GroupAction default_action() { return loxodromic_pair(1.0, 0.7, 1.0); }

KleinPoint random_point(CounterRng& rng, double max_r = 0.8) {
    for (;;) {
        KleinPoint p;
        for (int i = 0; i < 3; ++i) p.x[i] = rng.uniform(-max_r, max_r);
        if (p.radius2() < max_r * max_r) return p;
    }
}

}  // namespace

TEST_CASE("constructed isometries preserve the Lorentz form and orientation") {
    GroupAction act = default_action();
    for (std::uint64_t i = 0; i < 50; ++i) {
        CounterRng rng(20, i);
        Word w = random_word_up_to(rng, 6);
        Isometry g = act(w);
        CHECK(lorentz_defect(g) <= 1e-10);
        // determinant via column expansion on the 4x4
        double det = 0.0;
        {
            // Laplace along row 0
            for (int j = 0; j < 4; ++j) {
                double m[9];
                int mi = 0;
                for (int r = 1; r < 4; ++r)
                    for (int c = 0; c < 4; ++c)
                        if (c != j) m[mi++] = g.at(r, c);
                double minor3 = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                                m[1] * (m[3] * m[8] - m[5] * m[6]) +
                                m[2] * (m[3] * m[7] - m[4] * m[6]);
                det += ((j % 2 == 0) ? 1.0 : -1.0) * g.at(0, j) * minor3;
            }
        }
        CHECK(det == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(g.at(0, 0) > 0.0);  // preserves the upper sheet
    }
}

TEST_CASE("action is a homomorphism") {
    GroupAction act = default_action();
    CHECK(act(Word{}).m == Isometry::identity().m);
    for (std::uint64_t i = 0; i < 50; ++i) {
        CounterRng rng(21, i);
        Word u = random_word_up_to(rng, 5);
        Word v = random_word_up_to(rng, 5);
        Isometry lhs = act(multiply(u, v));
        Isometry rhs = compose(act(u), act(v));
        for (int k = 0; k < 16; ++k)
            CHECK(lhs.m[k] == doctest::Approx(rhs.m[k]).epsilon(1e-10));
    }
    Isometry aa = compose(act(Word::parse("a")), act(Word::parse("A")));
    for (int k = 0; k < 16; ++k)
        CHECK(aa.m[k] == doctest::Approx(Isometry::identity().m[k]).epsilon(1e-12));
}

TEST_CASE("gen_a has eigenvalues exp(+-lambda) on its axis plane") {
    // the axis plane (t,x1) is invariant; restricted matrix is the boost
    double lambda = 1.3;
    GroupAction act = loxodromic_pair(lambda, 0.5, 1.0);
    const Isometry& a = act.gen(Gen::a);
    // eigenvalues of [[m00,m01],[m10,m11]]
    double tr = a.at(0, 0) + a.at(1, 1);
    double det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    double disc = std::sqrt(tr * tr / 4.0 - det);
    double e1 = tr / 2.0 + disc, e2 = tr / 2.0 - disc;
    CHECK(e1 == doctest::Approx(std::exp(lambda)).epsilon(1e-12));
    CHECK(e2 == doctest::Approx(std::exp(-lambda)).epsilon(1e-12));
    // off-plane coupling vanishes
    for (int j : {2, 3}) {
        CHECK(a.at(0, j) == 0.0);
        CHECK(a.at(1, j) == 0.0);
    }
    CHECK_THROWS_AS(loxodromic_pair(0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("apply: identity, action law, distance preservation") {
    GroupAction act = default_action();
    for (std::uint64_t i = 0; i < 50; ++i) {
        CounterRng rng(22, i);
        KleinPoint p = random_point(rng);
        KleinPoint q = random_point(rng);
        KleinPoint ip = apply(Isometry::identity(), p);
        for (int k = 0; k < 3; ++k)
            CHECK(ip.x[k] == doctest::Approx(p.x[k]).epsilon(1e-14));
        Word u = random_word_up_to(rng, 3);
        Word v = random_word_up_to(rng, 3);
        KleinPoint lhs = apply(act(multiply(u, v)), p);
        KleinPoint rhs = apply(act(u), apply(act(v), p));
        for (int k = 0; k < 3; ++k)
            CHECK(lhs.x[k] == doctest::Approx(rhs.x[k]).epsilon(1e-10));
        double d0 = hyperbolic_distance(p, q);
        double d1 = hyperbolic_distance(apply(act(u), p), apply(act(u), q));
        CHECK(d1 == doctest::Approx(d0).epsilon(1e-10));
    }
}

TEST_CASE("simplex volume: degeneracy, orientation, ideal-simplex bound") {
    std::array<KleinPoint, 4> flat{KleinPoint{{0.1, 0.0, 0.0}},
                                   KleinPoint{{0.4, 0.2, 0.0}},
                                   KleinPoint{{-0.3, 0.5, 0.0}},
                                   KleinPoint{{0.2, -0.4, 0.0}}};
    CHECK(simplex_signed_volume(flat, 1e-8) == 0.0);

    std::array<KleinPoint, 4> t{KleinPoint{{0.0, 0.0, 0.0}},
                                KleinPoint{{0.5, 0.0, 0.0}},
                                KleinPoint{{0.0, 0.5, 0.0}},
                                KleinPoint{{0.0, 0.0, 0.5}}};
    double v = simplex_signed_volume(t, 1e-9);
    std::swap(t[0], t[1]);
    double vswap = simplex_signed_volume(t, 1e-9);
    CHECK(vswap == doctest::Approx(-v).epsilon(1e-7));

    for (std::uint64_t i = 0; i < 1000; ++i) {
        CounterRng rng(23, i);
        std::array<KleinPoint, 4> s;
        for (auto& p : s) p = random_point(rng, 0.95);
        CHECK(std::fabs(simplex_signed_volume(s, 1e-5)) <= 1.015);
    }
}

TEST_CASE("near-ideal regular tetrahedron matches the Lobachevsky oracle") {
    double r = 1.0 - 1e-4;
    double s = r / std::sqrt(3.0);
    std::array<KleinPoint, 4> t{
        KleinPoint{{s, s, s}}, KleinPoint{{s, -s, -s}}, KleinPoint{{-s, s, -s}},
        KleinPoint{{-s, -s, s}}};
    QuadratureResult diag;
    double v = simplex_signed_volume(t, 1e-4, &diag);
    double oracle = oracles::ideal_tetrahedron_volume();
    CHECK(oracle == doctest::Approx(1.0149416).epsilon(1e-5));
    CHECK(std::fabs(std::fabs(v) - 1.0149) <= 0.01);
    CHECK(std::fabs(std::fabs(v) - oracle) <= 0.011);
}

TEST_CASE("volume is invariant under isometries applied to all vertices") {
    GroupAction act = default_action();
    for (std::uint64_t i = 0; i < 20; ++i) {
        CounterRng rng(24, i);
        std::array<KleinPoint, 4> s, gs;
        for (auto& p : s) p = random_point(rng, 0.7);
        Word u = random_word_up_to(rng, 3);
        for (int k = 0; k < 4; ++k) gs[k] = apply(act(u), s[k]);
        double tol = 1e-7;
        double v1 = simplex_signed_volume(s, tol);
        double v2 = simplex_signed_volume(gs, tol);
        CHECK(std::fabs(v1 - v2) <= 10.0 * tol);
    }
}

TEST_CASE("volume cocycle: repeated entries, homogeneity, cocycle identity") {
    auto act = std::make_shared<GroupAction>(default_action());
    double tol = 1e-6;
    Cochain c = volume_cocycle(act, KleinPoint{}, tol);
    CHECK(c({Word::parse("a"), Word::parse("b"), Word::parse("a"),
             Word::parse("ab")}) == 0.0);

    for (std::uint64_t i = 0; i < 25; ++i) {
        CounterRng rng(25, i);
        std::vector<Word> t(4), th(4);
        for (auto& w : t) w = random_word_up_to(rng, 3);
        Word h = random_word_up_to(rng, 2);
        for (int k = 0; k < 4; ++k) th[k] = multiply(t[k], h);
        CHECK(std::fabs(c(t) - c(th)) <= 20.0 * tol);
    }

    Cochain dc = coboundary(c);
    for (std::uint64_t i = 0; i < 50; ++i) {
        CounterRng rng(26, i);
        std::vector<Word> t(5);
        for (auto& w : t) w = random_word_up_to(rng, 4);
        CHECK(std::fabs(dc(t)) <= 5.0 * tol);
    }
}
