// Command line front end: trace gamma, evaluate induced cochains and
// quasimorphisms, run the epsilon ladder, and dump region data.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcoh/lab.hpp"

using namespace bcoh;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 2 bad configuration, 3 bad geometry, 4 integrator or
// numeric failure
constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitIntegrator = 4;

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

struct GeomOpts {
    std::string file;
    double epsilon = 0.2;

    ModelGeometry build() const {
        json j = file.empty() ? json::object() : load_json(file);
        if (!j.contains("epsilon")) j["epsilon"] = epsilon;
        return geometry_from_json(j);
    }
};

void add_geom_opts(CLI::App* cmd, GeomOpts& g) {
    cmd->add_option("--geometry", g.file, "geometry JSON file");
    cmd->add_option("--epsilon", g.epsilon, "collar parameter in (0,1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
}

Integrator make_integrator(const std::string& mode, std::uint64_t samples,
                           std::optional<std::uint64_t> seed, int threads) {
    Integrator in;
    if (mode == "regions")
        in.mode = Integrator::Mode::Regions;
    else if (mode == "mc")
        in.mode = Integrator::Mode::MonteCarlo;
    else
        throw ConfigError("unknown mode: " + mode);
    if (!seed) throw ConfigError("--seed is required for sampled evaluation");
    in.seed = *seed;
    in.mc_samples = samples;
    in.threads = threads;
    return in;
}

void emit(const json& j, const std::string& output) {
    std::string body = j.dump(2) + "\n";
    if (output.empty())
        std::cout << body;
    else
        write_text_file(output, body);
}

int run(int argc, char** argv) {
    CLI::App app{"induced bounded cochains on the planar figure-eight model"};
    app.require_subcommand(1);

    // ---- gamma ----
    auto* c_gamma = app.add_subcommand("gamma", "trace gamma(g, x)");
    GeomOpts gg;
    add_geom_opts(c_gamma, gg);
    std::string gamma_word;
    double gx = 0.0, gy = 0.0;
    c_gamma->add_option("--word,-g", gamma_word, "element, e.g. abA")->required();
    c_gamma->add_option("--x", gx, "point x coordinate")->required();
    c_gamma->add_option("--y", gy, "point y coordinate")->required();
    c_gamma->callback([&] {
        ModelGeometry geom = gg.build();
        CutSystem cuts = CutSystem::standard(geom);
        Point2 x{gx, gy};
        if (!geom.in_M(x)) throw GeometryError("point lies outside M");
        Word w = gamma(geom, cuts, Word::parse(gamma_word), x);
        json out{{"schema_version", kReportSchemaVersion},
                 {"word", gamma_word},
                 {"x", {gx, gy}},
                 {"region", region_name(geom.classify(x))},
                 {"gamma", w.str()}};
        emit(out, "");
    });

    // ---- regions ----
    auto* c_regions = app.add_subcommand("regions", "closed-form region measures");
    GeomOpts rg;
    add_geom_opts(c_regions, rg);
    std::string regions_out;
    c_regions->add_option("--output,-o", regions_out, "output file (JSON)");
    c_regions->callback([&] {
        ModelGeometry geom = rg.build();
        json meas;
        double sum = 0.0;
        for (RegionLabel l : {RegionLabel::Outside, RegionLabel::CoreBoth,
                              RegionLabel::CoreAOnly, RegionLabel::CoreBOnly,
                              RegionLabel::Collar}) {
            meas[region_name(l)] = geom.region_measure(l);
            sum += geom.region_measure(l);
        }
        json out{{"schema_version", kReportSchemaVersion},
                 {"geometry", geometry_to_json(geom)},
                 {"measures", meas},
                 {"area_M", geom.area_M()},
                 {"partition_defect", sum - geom.area_M()},
                 {"tube_overlap", geom.tube_overlap_measure()}};
        emit(out, regions_out);
    });

    // ---- qm ----
    auto* c_qm = app.add_subcommand(
        "qm", "induced quasimorphism of a counting quasimorphism");
    GeomOpts qg;
    add_geom_opts(c_qm, qg);
    std::string qm_pattern = "ab", qm_word, qm_mode = "regions", qm_out;
    std::uint64_t qm_samples = 100000;
    std::optional<std::uint64_t> qm_seed;
    int qm_threads = 0, qm_powers = 4;
    c_qm->add_option("--pattern", qm_pattern, "counting pattern (default ab)");
    c_qm->add_option("--word,-g", qm_word, "element to evaluate at")->required();
    c_qm->add_option("--mode", qm_mode, "regions | mc");
    c_qm->add_option("--samples", qm_samples, "Monte Carlo sample count");
    c_qm->add_option("--seed", qm_seed, "RNG seed (required)");
    c_qm->add_option("--threads", qm_threads, "worker count (0 = auto)");
    c_qm->add_option("--powers", qm_powers, "homogenization power (>= 4)");
    c_qm->add_option("--output,-o", qm_out, "output file (JSON)");
    c_qm->callback([&] {
        ModelGeometry geom = qg.build();
        CutSystem cuts = CutSystem::standard(geom);
        Quasimorphism q = brooks_homogeneous(Word::parse(qm_pattern));
        Integrator in = make_integrator(qm_mode, qm_samples, qm_seed, qm_threads);
        InducedValue v = induced_quasimorphism(geom, cuts, q,
                                               Word::parse(qm_word), in,
                                               qm_powers);
        json out{{"schema_version", kReportSchemaVersion},
                 {"pattern", qm_pattern},
                 {"word", qm_word},
                 {"epsilon", geom.epsilon},
                 {"value", v.value},
                 {"stat_error", v.stat_error},
                 {"collar_bound", v.collar_bound},
                 {"breakdown", v.region_breakdown}};
        emit(out, qm_out);
    });

    // ---- induce ----
    auto* c_induce =
        app.add_subcommand("induce", "evaluate an induced cochain on a tuple");
    GeomOpts ig;
    add_geom_opts(c_induce, ig);
    std::string ind_kind = "brooks2", ind_pattern = "ab", ind_mode = "mc",
                ind_out;
    std::vector<std::string> ind_tuple;
    std::uint64_t ind_samples = 100000;
    std::optional<std::uint64_t> ind_seed;
    int ind_threads = 0;
    double ind_tol = 1e-5;
    c_induce->add_option("--kind", ind_kind, "cochain kind: brooks2 | vol3 | zero");
    c_induce->add_option("--pattern", ind_pattern, "brooks2 pattern");
    c_induce->add_option("--tol", ind_tol, "vol3 quadrature tolerance");
    c_induce->add_option("--tuple,-t", ind_tuple, "group elements")->required();
    c_induce->add_option("--mode", ind_mode, "regions | mc");
    c_induce->add_option("--samples", ind_samples, "Monte Carlo sample count");
    c_induce->add_option("--seed", ind_seed, "RNG seed (required)");
    c_induce->add_option("--threads", ind_threads, "worker count (0 = auto)");
    c_induce->add_option("--output,-o", ind_out, "output file (JSON)");
    c_induce->callback([&] {
        ModelGeometry geom = ig.build();
        CutSystem cuts = CutSystem::standard(geom);
        CochainSpec spec;
        spec.kind = ind_kind;
        spec.pattern = ind_pattern;
        spec.tol = ind_tol;
        spec.degree = static_cast<int>(ind_tuple.size()) - 1;
        Cochain c = spec.build();
        std::vector<Word> tuple;
        for (const auto& s : ind_tuple) tuple.push_back(Word::parse(s));
        Integrator in =
            make_integrator(ind_mode, ind_samples, ind_seed, ind_threads);
        InducedValue v = induce(geom, cuts, c, tuple, in);
        json out{{"schema_version", kReportSchemaVersion},
                 {"cochain", spec.to_json()},
                 {"tuple", ind_tuple},
                 {"epsilon", geom.epsilon},
                 {"value", v.value},
                 {"stat_error", v.stat_error},
                 {"collar_bound", v.collar_bound},
                 {"breakdown", v.region_breakdown}};
        emit(out, ind_out);
    });

    // ---- converge ----
    auto* c_conv = app.add_subcommand(
        "converge", "epsilon-ladder convergence study (CSV)");
    std::string conv_config, conv_out;
    c_conv->add_option("--config,-c", conv_config, "experiment JSON file")
        ->required();
    c_conv->add_option("--output,-o", conv_out, "output CSV file");
    c_conv->callback([&] {
        ExperimentConfig cfg = ExperimentConfig::from_json(load_json(conv_config));
        auto rows = converge_sweep(cfg);
        std::string csv = convergence_csv(cfg, rows);
        std::string dest = conv_out.empty() ? cfg.output : conv_out;
        if (dest.empty())
            std::cout << csv;
        else
            write_text_file(dest, csv);
    });

    // ---- volume ----
    auto* c_vol = app.add_subcommand(
        "volume", "hyperbolic volume class evaluated on a 4-tuple");
    std::string vol_config, vol_out;
    std::vector<std::string> vol_tuple;
    bool vol_no_mc = false;
    c_vol->add_option("--config,-c", vol_config, "experiment JSON file")
        ->required();
    c_vol->add_option("--tuple,-t", vol_tuple, "four group elements")
        ->expected(4);
    c_vol->add_flag("--no-cross-check", vol_no_mc,
                    "skip the Monte Carlo cross-check");
    c_vol->add_option("--output,-o", vol_out, "output file (JSON)");
    c_vol->callback([&] {
        ExperimentConfig cfg = ExperimentConfig::from_json(load_json(vol_config));
        std::vector<Word> tuple;
        if (vol_tuple.empty()) {
            for (const auto& s : cfg.words) tuple.push_back(Word::parse(s));
            if (tuple.size() != 4)
                throw ConfigError("volume: need a 4-element tuple");
        } else {
            for (const auto& s : vol_tuple) tuple.push_back(Word::parse(s));
        }
        VolumeClassReport rep = volume_class_eval(cfg, tuple, !vol_no_mc);
        json entries = json::array();
        for (const auto& e : rep.entries) {
            json ws = json::array();
            for (const auto& w : e.words) ws.push_back(w.str());
            entries.push_back({{"region", e.region},
                               {"weight", e.weight},
                               {"volume", e.volume},
                               {"words", ws}});
        }
        json out{{"schema_version", kReportSchemaVersion},
                 {"entries", entries},
                 {"total", rep.total},
                 {"collar_value", rep.collar_value},
                 {"stat_error", rep.stat_error}};
        if (!vol_no_mc) {
            out["mc_value"] = rep.mc_value;
            out["mc_error"] = rep.mc_error;
        }
        emit(out, vol_out.empty() ? cfg.output : vol_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return kExitGeometry;
    } catch (const IntegratorError& e) {
        std::cerr << "integrator error: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const DegeneracyError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
