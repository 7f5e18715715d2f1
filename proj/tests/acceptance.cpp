// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "bcoh/induce.hpp"
#include "bcoh/lab.hpp"

using namespace bcoh;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

Word rand_word(std::uint64_t seed, std::uint64_t i, std::size_t max_len) {
    CounterRng rng(seed, i);
    return random_word_up_to(rng, max_len);
}

std::vector<Word> rand_tuple(std::uint64_t seed, std::uint64_t i, int arity,
                             std::size_t max_len) {
    CounterRng rng(seed, i);
    std::vector<Word> t(arity);
    for (auto& w : t) w = random_word_up_to(rng, max_len);
    return t;
}

// 1. gamma(g1 g2, x) = gamma(g1, g2 x) * gamma(g2, x), exact words, 1000 trials
void criterion1(const ModelGeometry& geom, const CutSystem& cuts) {
    int bad = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        CounterRng rng(0xac1, i);
        Point2 x = geom.sample_point(rng);
        Word g1 = rand_word(0xac1a, i, 4);
        Word g2 = rand_word(0xac1b, i, 4);
        Word lhs = gamma(geom, cuts, multiply(g1, g2), x);
        Word rhs = multiply(gamma(geom, cuts, g1, geom.apply(g2, x)),
                            gamma(geom, cuts, g2, x));
        if (!(lhs == rhs)) ++bad;
    }
    report(1, "cocycle identity for traced gamma (1000 triples, exact)",
           bad == 0, "mismatches=" + std::to_string(bad));
}

// 2. traced gamma == closed form off the collar, 10000 points, zero mismatch
void criterion2(const ModelGeometry& geom, const CutSystem& cuts) {
    int bad = 0, checked = 0;
    for (std::uint64_t i = 0; checked < 10000; ++i) {
        CounterRng rng(0xac2, i);
        Point2 x = geom.sample_point(rng);
        if (geom.classify(x) == RegionLabel::Collar) continue;
        Word g = rand_word(0xac2a, i, 5);
        if (!(gamma(geom, cuts, g, x) == gamma_piecewise(geom, cuts, g, x)))
            ++bad;
        ++checked;
    }
    report(2, "piecewise closed form matches traced gamma (10000 points)",
           bad == 0, "mismatches=" + std::to_string(bad));
}

// 3. induced 2-cochain: homogeneity and the cocycle relation, both pipelines
void criterion3(const ModelGeometry& geom, const CutSystem& cuts) {
    Cochain c = qm_to_two_cocycle(brooks_homogeneous(Word::parse("ab")));
    bool ok = true;
    std::string why;
    for (auto mode : {Integrator::Mode::MonteCarlo, Integrator::Mode::Regions}) {
        Integrator in;
        in.mode = mode;
        in.mc_samples = 20000;
        for (std::uint64_t i = 0; i < 3 && ok; ++i) {
            in.seed = 0xac30 + i;
            auto t = rand_tuple(0xac31, i, 3, 4);
            Word h = rand_word(0xac32, i, 3);
            std::vector<Word> th;
            for (const auto& g : t) th.push_back(multiply(g, h));
            auto v1 = induce(geom, cuts, c, t, in);
            auto v2 = induce(geom, cuts, c, th, in);
            double s = std::hypot(v1.stat_error, v2.stat_error);
            if (std::fabs(v1.value - v2.value) > 3.0 * s + 1e-9) {
                ok = false;
                why = "homogeneity off at tuple " + std::to_string(i);
            }
            auto q4 = rand_tuple(0xac33, i, 4, 3);
            double d = 0.0, e2 = 0.0;
            for (int omit = 0; omit < 4; ++omit) {
                std::vector<Word> face;
                for (int k = 0; k < 4; ++k)
                    if (k != omit) face.push_back(q4[k]);
                auto v = induce(geom, cuts, c, face, in);
                d += ((omit % 2 == 0) ? 1.0 : -1.0) * v.value;
                e2 += v.stat_error * v.stat_error;
            }
            if (std::fabs(d) > 3.0 * std::sqrt(e2) + 1e-9) {
                ok = false;
                why = "coboundary nonzero at tuple " + std::to_string(i);
            }
        }
    }
    report(3, "induced cochain is a homogeneous cocycle (both pipelines, 3 sigma)",
           ok, why);
}

// 4. essential image is stable under doubling the sample count, and traced
// word lengths obey |gamma(g,x)| <= 4 |g|
void criterion4(const ModelGeometry& geom, const CutSystem& cuts) {
    bool ok = true;
    std::string why;
    for (std::uint64_t k = 0; k < 10 && ok; ++k) {
        Word g;
        for (std::uint64_t j = 0;; ++j) {
            g = rand_word(0xac40 + k, j, 8);
            if (!g.empty()) break;
        }
        auto img1 = essential_image(geom, cuts, g, 100000, 0xac41 + k);
        auto img2 = essential_image(geom, cuts, g, 200000, 0xac42 + k);
        for (const auto& [w, f1] : img1.values) {
            if (f1 < 5e-4) continue;  // below resolution at this sample count
            double f2 = img2.frequency(w);
            double s = std::sqrt(f1 * (1 - f1) / 100000.0 +
                                 f2 * (1 - f2) / 200000.0);
            if (std::fabs(f1 - f2) > 5.0 * s + 1e-4) {
                ok = false;
                why = "frequency of " + w.str() + " drifted for g=" + g.str();
            }
            if (w.size() > 4 * g.size()) {
                ok = false;
                why = "length bound violated: " + w.str() + " for g=" + g.str();
            }
        }
    }
    report(4, "essential image stable under sample doubling; |gamma| <= 4|g|",
           ok, why);
}

// 5. epsilon ladder: discrepancy within the collar envelope, contracts by
// 4x from eps=0.4 to eps=0.05, and the collar measure is monotone
void criterion5() {
    nlohmann::json cfgj{
        {"cochain", {{"kind", "brooks2"}, {"pattern", "ab"}}},
        {"words", {"ab"}},
        {"epsilons", {0.4, 0.2, 0.1, 0.05}},
        {"integrator",
         {{"mode", "regions"}, {"seed", 0xac5}, {"samples", 1000000}}}};
    ExperimentConfig cfg = ExperimentConfig::from_json(cfgj);
    auto rows = converge_sweep(cfg);
    bool ok = rows.size() == 4;
    std::string why;
    for (std::size_t i = 0; ok && i < rows.size(); ++i) {
        if (rows[i].discrepancy >
            rows[i].collar_bound + 3.0 * rows[i].stat_error + 1e-9) {
            ok = false;
            why = "envelope broken at eps=" + std::to_string(rows[i].epsilon);
        }
        if (i > 0 && !(rows[i].mu_collar < rows[i - 1].mu_collar)) {
            ok = false;
            why = "collar measure not monotone";
        }
    }
    if (ok) {
        double d0 = rows.front().discrepancy + 3.0 * rows.front().stat_error;
        double d3 = rows.back().discrepancy - 3.0 * rows.back().stat_error;
        // compare the small-eps row against a quarter of the large-eps row
        if (!(rows.back().discrepancy <= 0.25 * rows.front().discrepancy +
                                             3.0 * (rows.front().stat_error +
                                                    rows.back().stat_error))) {
            ok = false;
            why = "no 4x contraction: " + std::to_string(rows.back().discrepancy) +
                  " vs " + std::to_string(rows.front().discrepancy);
        }
        (void)d0;
        (void)d3;
    }
    report(5, "epsilon ladder: collar envelope holds and contracts 4x", ok, why);
}

// 6. the induced quasimorphism at eps=0.05 retains at least half of the
// tube-overlap measure on the commutator-type element
void criterion6() {
    ModelGeometry geom = ModelGeometry::standard(0.05);
    CutSystem cuts = CutSystem::standard(geom);
    Quasimorphism q = brooks_homogeneous(Word::parse("ab"));
    Integrator in;
    in.mode = Integrator::Mode::Regions;
    in.mc_samples = 100000;
    in.seed = 0xac6;
    auto v = induced_quasimorphism(geom, cuts, q, Word::parse("ab"), in, 4);
    double target = 0.5 * geom.tube_overlap_measure();
    bool ok = v.value - 3.0 * v.stat_error >= target;
    report(6, "induced value at eps=0.05 >= half the tube overlap", ok,
           "value=" + std::to_string(v.value) +
               " target=" + std::to_string(target));
}

// 7. hyperbolic volume kernel: near-ideal value vs the series oracle,
// closedness of the volume cocycle, uniform bound
void criterion7() {
    bool ok = true;
    std::string why;
    {
        double r = 1.0 - 1e-4, s = r / std::sqrt(3.0);
        std::array<KleinPoint, 4> t{
            KleinPoint{{s, s, s}}, KleinPoint{{s, -s, -s}},
            KleinPoint{{-s, s, -s}}, KleinPoint{{-s, -s, s}}};
        double v = std::fabs(simplex_signed_volume(t, 1e-4));
        // series value of the ideal regular simplex volume
        double theta = std::acos(-1.0) / 6.0, series = 0.0;
        for (long n = 200000; n >= 1; --n)
            series += std::sin(2.0 * n * theta) / (static_cast<double>(n) * n);
        series *= 0.5 * 2.0;
        if (std::fabs(v - series) > 0.01) {
            ok = false;
            why = "near-ideal volume " + std::to_string(v) + " vs series " +
                  std::to_string(series);
        }
    }
    auto act = std::make_shared<GroupAction>(loxodromic_pair(1.0, 0.7, 1.0));
    double tol = 1e-5;
    Cochain vol = volume_cocycle(act, KleinPoint{}, tol);
    Cochain dvol = coboundary(vol);
    for (std::uint64_t i = 0; i < 20 && ok; ++i) {
        auto t = rand_tuple(0xac7, i, 5, 3);
        if (std::fabs(dvol(t)) > 5.0 * tol * 5.0) {
            ok = false;
            why = "d(vol) = " + std::to_string(dvol(t));
        }
    }
    for (std::uint64_t i = 0; i < 200 && ok; ++i) {
        auto t = rand_tuple(0xac7a, i, 4, 4);
        if (std::fabs(vol(t)) > 1.015) {
            ok = false;
            why = "volume bound broken: " + std::to_string(vol(t));
        }
    }
    report(7, "volume kernel: oracle match, closed, uniformly bounded", ok, why);
}

// 8. pipelines agree tuple by tuple within 3 sigma for both kernels, and
// results are bit-identical across worker counts
void criterion8(const ModelGeometry& geom, const CutSystem& cuts) {
    bool ok = true;
    std::string why;
    Cochain c2 = qm_to_two_cocycle(brooks_homogeneous(Word::parse("ab")));
    auto act = std::make_shared<GroupAction>(loxodromic_pair(1.0, 0.7, 1.0));
    Cochain c3 = volume_cocycle(act, KleinPoint{}, 1e-4);
    struct Cfg {
        const Cochain* c;
        int arity;
        std::uint64_t seed;
        std::uint64_t samples;
        int tuples;
    };
    const Cfg cfgs[] = {{&c2, 3, 0xac80, 8000, 25}, {&c3, 4, 0xac81, 4000, 25}};
    for (const Cfg& cfg : cfgs) {
        for (int i = 0; i < cfg.tuples && ok; ++i) {
            auto t = rand_tuple(cfg.seed, i, cfg.arity, 3);
            Integrator mc;
            mc.mode = Integrator::Mode::MonteCarlo;
            mc.mc_samples = cfg.samples;
            mc.seed = cfg.seed + 100 + i;
            Integrator rg = mc;
            rg.mode = Integrator::Mode::Regions;
            rg.seed = cfg.seed + 500 + i;
            auto vm = induce(geom, cuts, *cfg.c, t, mc);
            auto vr = induce(geom, cuts, *cfg.c, t, rg);
            double s = std::hypot(vm.stat_error, vr.stat_error);
            if (std::fabs(vm.value - vr.value) > 3.0 * s + 1e-6) {
                ok = false;
                why = "pipelines disagree on tuple " + std::to_string(i) +
                      " (arity " + std::to_string(cfg.arity) + ")";
            }
        }
    }
    if (ok) {
        auto t = rand_tuple(0xac82, 0, 3, 3);
        double ref = 0.0;
        for (int workers : {1, 4, 16}) {
            Integrator in;
            in.mode = Integrator::Mode::MonteCarlo;
            in.mc_samples = 20000;
            in.seed = 0xac83;
            in.threads = workers;
            double v = induce(geom, cuts, c2, t, in).value;
            if (workers == 1)
                ref = v;
            else if (v != ref) {
                ok = false;
                why = "worker count changed the result";
            }
        }
    }
    report(8, "pipeline agreement and worker determinism", ok, why);
}

// 9. the closed-form region measures partition area(M)
void criterion9() {
    bool ok = true;
    std::string why;
    std::vector<ModelGeometry> geoms;
    geoms.push_back(ModelGeometry::standard(0.2));
    geoms.push_back(ModelGeometry::standard(0.05));
    geoms.push_back(ModelGeometry::standard(0.4));
    geoms.emplace_back(7.0, Point2{-1.1, 0.1}, Point2{0.9, -0.05},
                       std::hypot(1.1, 0.9), std::hypot(0.9, 1.05), 0.22, 0.27,
                       0.25, Point2{0.0, 1.0}, 0.25, 0.28);
    geoms.emplace_back(6.5, Point2{-1.0, 0.0}, Point2{1.0, 0.0}, std::sqrt(2.0),
                       std::sqrt(2.0), 0.2, 0.3, 0.15, Point2{0.0, 1.0}, 0.28,
                       0.32);
    geoms.emplace_back(8.0, Point2{-1.2, 0.0}, Point2{1.2, 0.0},
                       std::hypot(1.2, 1.0), std::hypot(1.2, 1.0), 0.3, 0.3,
                       0.3, Point2{0.0, 1.0}, 0.35, 0.35);
    for (const auto& g : geoms) {
        double sum = 0.0;
        for (RegionLabel l : {RegionLabel::Outside, RegionLabel::CoreBoth,
                              RegionLabel::CoreAOnly, RegionLabel::CoreBOnly,
                              RegionLabel::Collar})
            sum += g.region_measure(l);
        if (std::fabs(sum - g.area_M()) > 5e-8) {
            ok = false;
            why = "partition defect " + std::to_string(sum - g.area_M());
        }
    }
    report(9, "region measures partition area(M) to 5e-8 (6 geometries)", ok,
           why);
}

}  // namespace

int main() {
    ModelGeometry geom = ModelGeometry::standard(0.2);
    CutSystem cuts = CutSystem::standard(geom);
    criterion1(geom, cuts);
    criterion2(geom, cuts);
    criterion3(geom, cuts);
    criterion4(geom, cuts);
    criterion5();
    criterion6();
    criterion7();
    criterion8(geom, cuts);
    criterion9();
    std::printf("%d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
