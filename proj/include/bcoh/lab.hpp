// Experiment orchestration: configuration, the epsilon-ladder convergence
// study, the volume-class evaluation, and CSV/JSON report emission.
#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcoh/cochains.hpp"
#include "bcoh/eightmodel.hpp"
#include "bcoh/homotopy.hpp"
#include "bcoh/hypervol.hpp"
#include "bcoh/induce.hpp"

namespace bcoh {

inline constexpr int kReportSchemaVersion = 1;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::json geometry_to_json(const ModelGeometry& g) {
    return {{"R", g.ambient_radius},
            {"c_alpha", {g.c_alpha.x, g.c_alpha.y}},
            {"c_beta", {g.c_beta.x, g.c_beta.y}},
            {"r_alpha", g.r_alpha},
            {"r_beta", g.r_beta},
            {"w_alpha", g.w_alpha},
            {"w_beta", g.w_beta},
            {"hole_alpha", g.hole_alpha},
            {"hole_beta", g.hole_beta},
            {"epsilon", g.epsilon},
            {"z", {g.basepoint.x, g.basepoint.y}}};
}

inline ModelGeometry geometry_from_json(const nlohmann::json& j) {
    try {
        auto pt = [&](const char* key, Point2 dflt) {
            if (!j.contains(key)) return dflt;
            return Point2{j[key][0].get<double>(), j[key][1].get<double>()};
        };
        ModelGeometry dflt = ModelGeometry::standard(j.value("epsilon", 0.2));
        return ModelGeometry(
            j.value("R", dflt.ambient_radius), pt("c_alpha", dflt.c_alpha),
            pt("c_beta", dflt.c_beta), j.value("r_alpha", dflt.r_alpha),
            j.value("r_beta", dflt.r_beta), j.value("w_alpha", dflt.w_alpha),
            j.value("w_beta", dflt.w_beta), j.value("epsilon", 0.2),
            pt("z", dflt.basepoint), j.value("hole_alpha", 0.3),
            j.value("hole_beta", 0.3));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad geometry config: ") + e.what());
    }
}

struct CochainSpec {
    std::string kind;       // "brooks2", "vol3", "zero"
    std::string pattern;    // brooks2
    int degree = 2;         // zero
    double translation_length = 1.0, rotation_angle = 0.7, axis_separation = 1.0;
    double tol = 1e-6;

    static CochainSpec from_json(const nlohmann::json& j) {
        CochainSpec s;
        try {
            s.kind = j.at("kind").get<std::string>();
            if (s.kind == "brooks2") {
                s.pattern = j.value("pattern", "ab");
            } else if (s.kind == "vol3") {
                auto rho = j.value("rho", nlohmann::json::object());
                s.translation_length = rho.value("translation_length", 1.0);
                s.rotation_angle = rho.value("rotation_angle", 0.7);
                s.axis_separation = rho.value("axis_separation", 1.0);
                s.tol = rho.value("tol", 1e-6);
            } else if (s.kind == "zero") {
                s.degree = j.value("degree", 2);
            } else {
                throw ConfigError("unknown cochain kind: " + s.kind);
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad cochain config: ") + e.what());
        }
        return s;
    }

    nlohmann::json to_json() const {
        if (kind == "brooks2") return {{"kind", kind}, {"pattern", pattern}};
        if (kind == "vol3")
            return {{"kind", kind},
                    {"rho",
                     {{"translation_length", translation_length},
                      {"rotation_angle", rotation_angle},
                      {"axis_separation", axis_separation},
                      {"tol", tol}}}};
        return {{"kind", kind}, {"degree", degree}};
    }

    Cochain build() const {
        if (kind == "brooks2")
            return qm_to_two_cocycle(brooks_homogeneous(Word::parse(pattern)));
        if (kind == "vol3") {
            auto action = std::make_shared<GroupAction>(loxodromic_pair(
                translation_length, rotation_angle, axis_separation));
            return volume_cocycle(action, KleinPoint{}, tol);
        }
        if (kind == "zero") return zero_cochain(degree);
        throw ConfigError("unknown cochain kind: " + kind);
    }
};

inline Integrator integrator_from_json(const nlohmann::json& j) {
    Integrator in;
    try {
        std::string mode = j.value("mode", "mc");
        if (mode == "regions")
            in.mode = Integrator::Mode::Regions;
        else if (mode == "mc")
            in.mode = Integrator::Mode::MonteCarlo;
        else
            throw ConfigError("unknown integrator mode: " + mode);
        in.mc_samples = j.value("samples", std::uint64_t{100000});
        if (!j.contains("seed"))
            throw ConfigError("integrator config requires a seed");
        in.seed = j.at("seed").get<std::uint64_t>();
        in.tolerance = j.value("tolerance", 1e-6);
        in.threads = j.value("threads", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad integrator config: ") + e.what());
    }
    return in;
}

inline nlohmann::json integrator_to_json(const Integrator& in) {
    return {{"mode", in.mode == Integrator::Mode::Regions ? "regions" : "mc"},
            {"samples", in.mc_samples},
            {"seed", in.seed},
            {"tolerance", in.tolerance},
            {"threads", in.threads}};
}

struct ExperimentConfig {
    nlohmann::json geometry;  // without epsilon; the ladder supplies it
    CochainSpec cochain;
    std::vector<std::string> words;
    std::vector<double> epsilons;
    Integrator integrator;
    int powers = 4;
    std::size_t max_word_len = 8;
    std::string output;

    static ExperimentConfig from_json(const nlohmann::json& j) {
        ExperimentConfig c;
        try {
            c.geometry = j.value("geometry", nlohmann::json::object());
            c.cochain = CochainSpec::from_json(
                j.value("cochain", nlohmann::json{{"kind", "brooks2"},
                                                  {"pattern", "ab"}}));
            c.words = j.value("words", std::vector<std::string>{"ab"});
            c.epsilons =
                j.value("epsilons", std::vector<double>{0.4, 0.2, 0.1, 0.05});
            c.integrator = integrator_from_json(
                j.value("integrator", nlohmann::json::object()));
            c.powers = j.value("powers", 4);
            c.max_word_len = j.value("max_word_len", std::size_t{8});
            c.output = j.value("output", "");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad experiment config: ") + e.what());
        }
        for (std::size_t i = 1; i < c.epsilons.size(); ++i)
            if (!(c.epsilons[i] < c.epsilons[i - 1]))
                throw ConfigError("epsilon ladder must be strictly decreasing");
        for (double e : c.epsilons)
            if (e <= 0.0 || e >= 1.0)
                throw ConfigError("epsilon ladder entries must lie in (0,1)");
        for (const auto& w : c.words)
            if (Word::parse(w).size() > c.max_word_len)
                throw ConfigError("word exceeds configured length cap: " + w);
        return c;
    }

    nlohmann::json to_json() const {
        return {{"geometry", geometry},
                {"cochain", cochain.to_json()},
                {"words", words},
                {"epsilons", epsilons},
                {"integrator", integrator_to_json(integrator)},
                {"powers", powers},
                {"max_word_len", max_word_len},
                {"output", output}};
    }
};

struct ConvergenceRow {
    double epsilon;
    double mu_core_both, mu_core_a, mu_core_b, mu_collar;
    double induced_value;
    double core_closed_form;
    double discrepancy;
    double collar_bound;
    double stat_error;
};

// One row per ladder epsilon for the first configured word; quasimorphism
// pipeline only.
inline std::vector<ConvergenceRow> converge_sweep(const ExperimentConfig& cfg) {
    if (cfg.cochain.kind != "brooks2")
        throw ConfigError("converge_sweep requires a brooks2 cochain");
    if (cfg.words.empty()) throw ConfigError("converge_sweep: no word given");
    Quasimorphism q = brooks_homogeneous(Word::parse(cfg.cochain.pattern));
    Word w = Word::parse(cfg.words.front());
    std::vector<ConvergenceRow> rows;
    for (double eps : cfg.epsilons) {
        nlohmann::json gj = cfg.geometry;
        gj["epsilon"] = eps;
        ModelGeometry geom = geometry_from_json(gj);
        CutSystem cuts = CutSystem::standard(geom);
        InducedValue phi =
            induced_quasimorphism(geom, cuts, q, w, cfg.integrator, cfg.powers);
        ConvergenceRow r;
        r.epsilon = eps;
        r.mu_core_both = geom.region_measure(RegionLabel::CoreBoth);
        r.mu_core_a = geom.region_measure(RegionLabel::CoreAOnly);
        r.mu_core_b = geom.region_measure(RegionLabel::CoreBOnly);
        r.mu_collar = geom.region_measure(RegionLabel::Collar);
        r.induced_value = phi.value;
        r.core_closed_form = r.mu_core_both * q(w) +
                             r.mu_core_a * q(retract(w, Gen::a)) +
                             r.mu_core_b * q(retract(w, Gen::b));
        r.discrepancy = std::fabs(r.induced_value - r.core_closed_form);
        r.collar_bound = phi.collar_bound;
        r.stat_error = phi.stat_error;
        rows.push_back(r);
    }
    return rows;
}

// Note: norms on cohomology classes are infima over representatives and are
// not computed here; the columns compare cochain-level surrogates (exact core
// closed form vs measured total).
inline std::string convergence_csv(const ExperimentConfig& cfg,
                                   const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "# schema_version=" << kReportSchemaVersion << "\n";
    os << "# config=" << cfg.to_json().dump() << "\n";
    os << "epsilon,mu_core_both,mu_core_a,mu_core_b,mu_collar,"
          "induced_value,core_closed_form,discrepancy,collar_bound,stat_error\n";
    for (const auto& r : rows)
        os << r.epsilon << ',' << r.mu_core_both << ',' << r.mu_core_a << ','
           << r.mu_core_b << ',' << r.mu_collar << ',' << r.induced_value << ','
           << r.core_closed_form << ',' << r.discrepancy << ','
           << r.collar_bound << ',' << r.stat_error << "\n";
    return os.str();
}

struct VolumeClassReport {
    struct Entry {
        std::vector<Word> words;
        double weight;   // region measure
        double volume;   // simplex volume of the word tuple
        std::string region;
    };
    std::vector<Entry> entries;
    double total = 0.0;          // weighted sum + measured collar
    double collar_value = 0.0;
    double stat_error = 0.0;
    double mc_value = 0.0;       // independent Monte Carlo cross-check
    double mc_error = 0.0;
};

inline VolumeClassReport volume_class_eval(const ExperimentConfig& cfg,
                                           const std::vector<Word>& tuple,
                                           bool with_mc_cross_check = true) {
    if (cfg.cochain.kind != "vol3")
        throw ConfigError("volume_class_eval requires a vol3 cochain");
    if (tuple.size() != 4)
        throw ConfigError("volume_class_eval: tuple must have 4 elements");
    nlohmann::json gj = cfg.geometry;
    gj["epsilon"] = cfg.epsilons.empty() ? 0.2 : cfg.epsilons.front();
    ModelGeometry geom = geometry_from_json(gj);
    CutSystem cuts = CutSystem::standard(geom);
    Cochain c = cfg.cochain.build();

    Integrator reg = cfg.integrator;
    reg.mode = Integrator::Mode::Regions;
    InducedValue rv = induce(geom, cuts, c, tuple, reg);

    VolumeClassReport rep;
    const RegionLabel cores[] = {RegionLabel::CoreBoth, RegionLabel::CoreAOnly,
                                 RegionLabel::CoreBOnly};
    for (RegionLabel l : cores) {
        CounterRng rng(cfg.integrator.seed ^ 0x9a9a, static_cast<int>(l));
        Point2 x = geom.sample_region_point(l, rng);
        VolumeClassReport::Entry e;
        for (const auto& g : tuple)
            e.words.push_back(gamma_piecewise(geom, cuts, g, x));
        e.weight = geom.region_measure(l);
        e.volume = c(e.words);
        e.region = region_name(l);
        rep.entries.push_back(e);
    }
    rep.total = rv.value;
    rep.collar_value = rv.region_breakdown.count("Collar")
                           ? rv.region_breakdown.at("Collar")
                           : 0.0;
    rep.stat_error = rv.stat_error;
    if (with_mc_cross_check) {
        Integrator mc = cfg.integrator;
        mc.mode = Integrator::Mode::MonteCarlo;
        InducedValue mv = induce(geom, cuts, c, tuple, mc);
        rep.mc_value = mv.value;
        rep.mc_error = mv.stat_error;
    }
    return rep;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << body;
}

}  // namespace bcoh
