#include "cli.hpp"

#include "studies.hpp"

#include <layerdiff/config.hpp>
#include <layerdiff/errors.hpp>
#include <layerdiff/presets.hpp>
#include <layerdiff/semianalytic.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace layerdiff::tools {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string num(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Options shared by every solving subcommand.
struct Source {
    std::string config;
    std::string preset;
    std::string out;
    int N = 0, Np = 0, points = 0;
    std::vector<double> times;
    CLI::Option *N_opt = nullptr, *Np_opt = nullptr, *points_opt = nullptr, *times_opt = nullptr;

    void attach(CLI::App& cmd) {
        auto* c = cmd.add_option("--config", config, "JSON run configuration");
        auto* p = cmd.add_option("--preset", preset, "compiled-in preset (see preset-dump --list)");
        c->excludes(p);
        N_opt = cmd.add_option("--eigenvalues", N, "eigenvalues per layer")->check(CLI::PositiveNumber);
        Np_opt = cmd.add_option("--inversion-order", Np, "rational inversion order (12, 14 or 16)")
                     ->check(CLI::IsMember({12, 14, 16}));
        times_opt = cmd.add_option("--times", times, "output times, comma separated")->delimiter(',');
        points_opt = cmd.add_option("--points-per-layer", points, "evaluation points per layer")
                         ->check(CLI::Range(2, 1000000));
        cmd.add_option("--out", out, "output CSV path (stdout when omitted)");
    }

    RunConfig resolve() const {
        if (config.empty() && preset.empty()) throw ConfigError("<command line>", "one of --config or --preset is required");
        RunConfig cfg = config.empty() ? layerdiff::preset(preset) : load_config(config);
        if (N_opt->count()) cfg.solver.N = N;
        if (Np_opt->count()) cfg.solver.Np = Np;
        if (points_opt->count()) cfg.points_per_layer = points;
        if (times_opt->count()) cfg.times = times;
        for (double t : cfg.times)
            if (!(t >= 0.0)) throw ConfigError("times", "times must be non-negative");
        if (cfg.times.empty()) throw ConfigError("times", "no output times (set them in the config or pass --times)");
        return cfg;
    }
};

struct FdmFlags {
    int cells = 0;
    double dt = 0.0;
    CLI::Option *cells_opt = nullptr, *dt_opt = nullptr;

    void attach(CLI::App& cmd) {
        cells_opt = cmd.add_option("--fdm-cells", cells, "finite-difference cells per layer (coarse grid)")
                        ->check(CLI::Range(4, 1000000));
        dt_opt = cmd.add_option("--fdm-dt", dt, "finite-difference time step (coarse grid)")->check(CLI::PositiveNumber);
    }
    FdmSettings apply(FdmSettings s) const {
        if (cells_opt->count()) s.cells_per_layer = cells;
        if (dt_opt->count()) s.dt = dt;
        return s;
    }
};

fs::path manifest_path(const fs::path& csv) {
    fs::path m = csv;
    return m.replace_extension(".manifest.json");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("failed writing " + path.string());
}

// CSV to --out (plus manifest) or to stdout.
void emit(const Source& src, const RunConfig& cfg, const std::string& subcommand, json extra, const std::string& csv,
          std::ostream& out) {
    if (src.out.empty() || src.out == "-") {
        out << csv;
        return;
    }
    const fs::path path = src.out;
    const fs::path mpath = manifest_path(path);
    json m;
    m["subcommand"] = subcommand;
    m["preset"] = src.preset.empty() ? json(nullptr) : json(src.preset);
    m["config_path"] = src.config.empty() ? json(nullptr) : json(src.config);
    m["config"] = json::parse(to_json(cfg));
    m["solver"] = {{"N", cfg.solver.N}, {"Np", cfg.solver.Np}};
    m["grid"] = {{"points_per_layer", cfg.points_per_layer}, {"times", cfg.times}};
    m["outputs"] = {{"csv", path.string()}, {"manifest", mpath.string()}};
    if (!extra.is_null()) m[subcommand] = std::move(extra);
    write_text(path, csv);
    write_text(mpath, m.dump(2) + "\n");
}

std::string solve_csv(const RunConfig& cfg) {
    const auto p = cfg.diffusion_problem();
    const auto grid = Grid::uniform(p, cfg.points_per_layer, cfg.times);
    const auto field = evaluate(p, cfg.solver, grid);
    const bool total = cfg.postprocess && cfg.postprocess->kind == "total-concentration";
    std::ostringstream os;
    os << "layer,x,t,u" << (total ? ",total_concentration" : "") << "\n";
    for (std::size_t k = 0; k < grid.t.size(); ++k) {
        const double scale = cfg.output_scale(grid.t[k]);
        for (int i = 1; i <= p.layers(); ++i) {
            const auto& xs = grid.x[static_cast<std::size_t>(i - 1)];
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const double u = scale * field.at(k, i, j);
                os << i << ',' << num(xs[j]) << ',' << num(grid.t[k]) << ',' << num(u);
                if (total) os << ',' << num(u * cfg.postprocess->factor[static_cast<std::size_t>(i - 1)]);
                os << '\n';
            }
        }
    }
    return os.str();
}

void print_violations(const ValidationError& e, std::ostream& err) {
    err << "error: invalid problem\n";
    for (const auto& v : e.violations()) {
        err << "  - " << v.constraint;
        if (v.index >= 0) err << " (index " << v.index << ")";
        err << '\n';
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transient diffusion in layered media: semi-analytical solver, classical and finite-difference oracles",
                 "layerdiff"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "layerdiff 0.1.0");

    std::function<void()> action;

    // solve
    Source solve_src;
    auto* solve = app.add_subcommand("solve", "evaluate the semi-analytical field and write layer,x,t,u rows");
    solve_src.attach(*solve);
    solve->callback([&] {
        action = [&] {
            const auto cfg = solve_src.resolve();
            emit(solve_src, cfg, "solve", nullptr, solve_csv(cfg), out);
        };
    });

    // converge
    Source conv_src;
    FdmFlags conv_fdm;
    std::vector<int> n_list;
    std::string reference = "classical", method = "semi";
    int reference_eigenvalues = 80, slope_window = 3;
    auto* conv = app.add_subcommand("converge", "relative error against a reference as N grows");
    conv_src.attach(*conv);
    conv_fdm.attach(*conv);
    conv->add_option("--n-list", n_list, "eigenvalue counts, comma separated")->delimiter(',')->required()
        ->check(CLI::PositiveNumber);
    conv->add_option("--reference", reference, "classical or fdm")->check(CLI::IsMember({"classical", "fdm"}));
    conv->add_option("--method", method, "field under test: semi or classical")->check(CLI::IsMember({"semi", "classical"}));
    conv->add_option("--reference-eigenvalues", reference_eigenvalues, "eigenvalues in the classical reference")
        ->check(CLI::PositiveNumber);
    conv->add_option("--slope-window", slope_window, "trailing points in each slope fit")->check(CLI::Range(2, 1000));
    conv->callback([&] {
        action = [&] {
            const auto cfg = conv_src.resolve();
            const auto p = cfg.diffusion_problem();
            const auto grid = Grid::uniform(p, cfg.points_per_layer, cfg.times);
            ConvergenceOptions opt;
            opt.N = n_list;
            opt.method = method == "classical" ? Method::Classical : Method::SemiAnalytic;
            opt.reference = reference == "classical" ? Reference::Classical : Reference::Fdm;
            opt.reference_eigenvalues = reference_eigenvalues;
            opt.fdm = conv_fdm.apply(cfg.fdm);
            opt.slope_window = slope_window;
            const auto rep = convergence_study(p, grid, cfg.solver, opt);
            for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
            std::ostringstream os;
            os << "t,N,epsilon" << (rep.has_slope ? ",slope" : "") << '\n';
            for (const auto& r : rep.rows) {
                os << num(r.t) << ',' << r.N << ',' << num(r.epsilon);
                if (rep.has_slope) os << ',' << num(r.slope);
                os << '\n';
            }
            json extra = {{"N", n_list},
                          {"method", method},
                          {"reference", reference},
                          {"slope_window", slope_window}};
            if (opt.reference == Reference::Classical)
                extra["reference_eigenvalues"] = reference_eigenvalues;
            else
                extra["fdm"] = {{"cells_per_layer", opt.fdm.cells_per_layer}, {"dt", opt.fdm.dt}, {"extrapolated", true}};
            emit(conv_src, cfg, "converge", std::move(extra), os.str(), out);
        };
    });

    // compare
    Source cmp_src;
    FdmFlags cmp_fdm;
    auto* cmp = app.add_subcommand("compare", "semi-analytical field against the finite-difference oracle");
    cmp_src.attach(*cmp);
    cmp_fdm.attach(*cmp);
    cmp->callback([&] {
        action = [&] {
            const auto cfg = cmp_src.resolve();
            const auto p = cfg.diffusion_problem();
            const auto grid = Grid::uniform(p, cfg.points_per_layer, cfg.times);
            const auto fdm = cmp_fdm.apply(cfg.fdm);
            const auto rep = compare_study(p, grid, cfg.solver, fdm);
            std::ostringstream os;
            os << "t,max_rel_diff,richardson,tolerance,verdict" << (rep.conservation ? ",mass,mass_drift" : "") << '\n';
            int passed = 0;
            for (const auto& r : rep.rows) {
                os << num(r.t) << ',' << num(r.max_rel_diff) << ',' << num(r.richardson) << ',' << num(r.tolerance) << ','
                   << (r.pass ? "pass" : "fail");
                if (rep.conservation) os << ',' << num(*r.mass) << ',' << (r.mass_drift ? num(*r.mass_drift) : "");
                os << '\n';
                passed += r.pass;
            }
            err << "compare: " << passed << " of " << rep.rows.size() << " times within tolerance";
            if (cfg.reaction_rate) err << " (diffusion-only field, before the e^{rate t} rescale)";
            err << '\n';
            json extra = {{"fdm", {{"cells_per_layer", fdm.cells_per_layer}, {"dt", fdm.dt}, {"refined_once", true}}},
                          {"tolerance_floor", kAgreementFloor}};
            emit(cmp_src, cfg, "compare", std::move(extra), os.str(), out);
        };
    });

    // preset-dump
    std::string dump_name, dump_out;
    bool dump_list = false;
    auto* dump = app.add_subcommand("preset-dump", "write a preset as an editable JSON config");
    auto* dump_preset = dump->add_option("--preset", dump_name, "preset name");
    dump->add_flag("--list", dump_list, "list preset names")->excludes(dump_preset);
    dump->add_option("--out", dump_out, "output path (stdout when omitted)");
    dump->callback([&] {
        action = [&] {
            if (dump_list || dump_name.empty()) {
                for (const auto& p : list_presets()) out << p.name << "  " << p.summary << '\n';
                return;
            }
            const auto text = to_json(preset(dump_name));
            if (dump_out.empty() || dump_out == "-")
                out << text;
            else
                write_text(dump_out, text);
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (action) action();
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ValidationError& e) {
        print_violations(e, err);
        return kExitValidation;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace layerdiff::tools
