// The induction operator: evaluate induced cochains on tuples of
// transformation elements, by region-exact integration or Monte Carlo.
#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "bcoh/cochains.hpp"
#include "bcoh/eightmodel.hpp"
#include "bcoh/homotopy.hpp"
#include "bcoh/rng.hpp"

namespace bcoh {

struct IntegratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Integrator {
    enum class Mode { Regions, MonteCarlo };
    Mode mode = Mode::MonteCarlo;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int threads = 0;  // 0: BCOH_THREADS env var, else hardware
};

struct InducedValue {
    double value = 0.0;
    double stat_error = 0.0;
    double collar_bound = 0.0;
    std::map<std::string, double> region_breakdown;
};

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BCOH_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// values[i] = f(i); each slot is an independent pure evaluation, so the
// result is identical for any worker count.
template <typename F>
std::vector<double> parallel_values(std::uint64_t n, int threads, F&& f) {
    std::vector<double> v(n);
    int t = effective_threads(threads);
    if (t <= 1 || n < 1024) {
        for (std::uint64_t i = 0; i < n; ++i) v[i] = f(i);
        return v;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        std::uint64_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&v, lo, hi, &f] {
            for (std::uint64_t i = lo; i < hi; ++i) v[i] = f(i);
        });
    }
    for (auto& th : pool) th.join();
    return v;
}

namespace detail {

inline std::vector<Word> gamma_tuple(const ModelGeometry& geom,
                                     const CutSystem& cuts,
                                     const std::vector<TransformationElement>& gs,
                                     const Point2& x) {
    std::vector<Word> ws;
    ws.reserve(gs.size());
    for (const auto& g : gs) ws.push_back(gamma(geom, cuts, g, x));
    return ws;
}

}  // namespace detail

// Ind'(gamma)(c)(g_0,...,g_n) = integral over M of c(gamma(g_0,x),...).
inline InducedValue induce(const ModelGeometry& geom, const CutSystem& cuts,
                           const Cochain& c,
                           const std::vector<TransformationElement>& tuple,
                           const Integrator& integ) {
    if (static_cast<int>(tuple.size()) != c.degree + 1)
        throw IntegratorError("induce: tuple arity != degree+1");
    if (integ.mc_samples < 1) throw IntegratorError("induce: mc_samples < 1");

    InducedValue out;
    if (integ.mode == Integrator::Mode::MonteCarlo) {
        auto vals = parallel_values(
            integ.mc_samples, integ.threads, [&](std::uint64_t i) {
                CounterRng rng(integ.seed, i);
                Point2 x = geom.sample_point(rng);
                return c(detail::gamma_tuple(geom, cuts, tuple, x));
            });
        MeanVar mv = mean_var(vals);
        out.value = geom.area_M() * mv.mean;
        out.stat_error = geom.area_M() * mv.sem;
        out.collar_bound =
            geom.region_measure(RegionLabel::Collar) * c.sup_bound.value_or(0.0);
        return out;
    }

    // Regions mode: closed-form core regions + measured collar.
    const RegionLabel cores[] = {RegionLabel::CoreBoth, RegionLabel::CoreAOnly,
                                 RegionLabel::CoreBOnly};
    constexpr int kValidate = 24;
    double stat2 = 0.0;
    for (RegionLabel reg : cores) {
        double mu = geom.region_measure(reg);
        if (mu <= 0.0) continue;
        bool constant = true;
        std::optional<std::vector<Word>> words;
        for (int i = 0; i < kValidate && constant; ++i) {
            CounterRng rng(integ.seed ^ (0xbeef00 + static_cast<int>(reg)), i);
            Point2 x = geom.sample_region_point(reg, rng);
            std::vector<Word> ws;
            ws.reserve(tuple.size());
            for (const auto& g : tuple)
                ws.push_back(gamma_piecewise(geom, cuts, g, x));
            if (!words)
                words = ws;
            else if (*words != ws)
                constant = false;
        }
        double contrib;
        if (constant) {
            contrib = mu * c(*words);
        } else {
            // conjugated words vary within the region: measure it instead
            auto vals = parallel_values(
                integ.mc_samples, integ.threads, [&](std::uint64_t i) {
                    CounterRng rng(integ.seed ^ (0xfa11 + static_cast<int>(reg)),
                                   i);
                    Point2 x = geom.sample_region_point(reg, rng);
                    return c(detail::gamma_tuple(geom, cuts, tuple, x));
                });
            MeanVar mv = mean_var(vals);
            contrib = mu * mv.mean;
            stat2 += (mu * mv.sem) * (mu * mv.sem);
        }
        out.region_breakdown[region_name(reg)] = contrib;
        out.value += contrib;
    }
    double mu_collar = geom.region_measure(RegionLabel::Collar);
    double max_abs = 0.0;
    auto vals = parallel_values(
        integ.mc_samples, integ.threads, [&](std::uint64_t i) {
            CounterRng rng(integ.seed ^ 0xc011a5, i);
            Point2 x = geom.sample_collar_point(rng);
            return c(detail::gamma_tuple(geom, cuts, tuple, x));
        });
    for (double v : vals) max_abs = std::max(max_abs, std::fabs(v));
    MeanVar mv = mean_var(vals);
    double collar_contrib = mu_collar * mv.mean;
    out.region_breakdown["Collar"] = collar_contrib;
    out.value += collar_contrib;
    stat2 += (mu_collar * mv.sem) * (mu_collar * mv.sem);
    out.stat_error = std::sqrt(stat2);
    out.collar_bound = mu_collar * c.sup_bound.value_or(max_abs);
    return out;
}

// Polterovich-style induced quasimorphism, homogenized through g^powers.
inline InducedValue induced_quasimorphism(const ModelGeometry& geom,
                                          const CutSystem& cuts,
                                          const Quasimorphism& q,
                                          const TransformationElement& g,
                                          const Integrator& integ, int powers) {
    if (powers < 4)
        throw IntegratorError("induced_quasimorphism: powers < 4");
    if (!q.homogeneous)
        throw IntegratorError("induced_quasimorphism: q must be homogeneous");
    TransformationElement gp = pow(g, powers);
    InducedValue out;
    if (integ.mode == Integrator::Mode::MonteCarlo) {
        auto vals = parallel_values(
            integ.mc_samples, integ.threads, [&](std::uint64_t i) {
                CounterRng rng(integ.seed, i);
                Point2 x = geom.sample_point(rng);
                return q(gamma(geom, cuts, gp, x)) / powers;
            });
        MeanVar mv = mean_var(vals);
        out.value = geom.area_M() * mv.mean;
        out.stat_error = geom.area_M() * mv.sem;
        out.collar_bound = geom.region_measure(RegionLabel::Collar) *
                           q.defect_bound.value_or(0.0);
        return out;
    }
    // Regions: the core contribution is exact and independent of `powers`
    // (homogeneous quasimorphisms are conjugation-invariant).
    const Word& w = g;
    double core = geom.region_measure(RegionLabel::CoreBoth) * q(w) +
                  geom.region_measure(RegionLabel::CoreAOnly) *
                      q(retract(w, Gen::a)) +
                  geom.region_measure(RegionLabel::CoreBOnly) *
                      q(retract(w, Gen::b));
    out.region_breakdown["core"] = core;
    double mu_collar = geom.region_measure(RegionLabel::Collar);
    auto vals = parallel_values(
        integ.mc_samples, integ.threads, [&](std::uint64_t i) {
            CounterRng rng(integ.seed ^ 0xc011a5, i);
            Point2 x = geom.sample_collar_point(rng);
            return q(gamma(geom, cuts, gp, x)) / powers;
        });
    double max_abs = 0.0;
    for (double v : vals) max_abs = std::max(max_abs, std::fabs(v));
    MeanVar mv = mean_var(vals);
    out.region_breakdown["Collar"] = mu_collar * mv.mean;
    out.value = core + mu_collar * mv.mean;
    out.stat_error = mu_collar * mv.sem;
    out.collar_bound = mu_collar * max_abs;
    return out;
}

struct EssentialImage {
    // distinct gamma values with empirical frequencies, sum = 1
    std::vector<std::pair<Word, double>> values;

    double frequency(const Word& w) const {
        for (const auto& [v, f] : values)
            if (v == w) return f;
        return 0.0;
    }
    double max_abs(const Quasimorphism& q) const {
        double m = 0.0;
        for (const auto& [v, f] : values) m = std::max(m, std::fabs(q(v)));
        return m;
    }
};

inline EssentialImage essential_image(const ModelGeometry& geom,
                                      const CutSystem& cuts,
                                      const TransformationElement& g,
                                      std::uint64_t samples,
                                      std::uint64_t seed) {
    if (samples < 1000)
        throw IntegratorError("essential_image: samples < 1000");
    std::unordered_map<Word, std::uint64_t, WordHash> counts;
    for (std::uint64_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        Point2 x = geom.sample_point(rng);
        ++counts[gamma(geom, cuts, g, x)];
    }
    EssentialImage img;
    for (const auto& [w, n] : counts)
        img.values.emplace_back(w, static_cast<double>(n) / samples);
    std::sort(img.values.begin(), img.values.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    return img;
}

}  // namespace bcoh
