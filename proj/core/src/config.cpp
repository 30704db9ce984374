#include <layerdiff/config.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace layerdiff {

namespace {

using json = nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join(path, key), "missing required key");
    return *it;
}

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError(join(path, it.key()), "unknown key");
    }
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], item(path, i)));
    return out;
}

std::string kind_of(const json& j, const std::string& path) {
    const auto& k = require(j, "kind", path);
    if (!k.is_string()) throw ConfigError(join(path, "kind"), "expected a string");
    return k.get<std::string>();
}

BoundaryFunction read_g(const json& j, const std::string& path) {
    if (j.is_number()) return BoundaryFunction::constant(j.get<double>());
    const auto kind = kind_of(j, path);
    auto p = [&](const char* key) { return number(require(j, key, path), join(path, key)); };
    if (kind == "constant") {
        expect_object(j, path, {"kind", "value"});
        return BoundaryFunction::constant(p("value"));
    }
    if (kind == "linear") {
        expect_object(j, path, {"kind", "intercept", "slope"});
        return BoundaryFunction::linear(p("intercept"), p("slope"));
    }
    if (kind == "exp-rise") {
        expect_object(j, path, {"kind", "amplitude", "rate"});
        return BoundaryFunction::exp_rise(p("amplitude"), p("rate"));
    }
    if (kind == "gaussian") {
        expect_object(j, path, {"kind", "peak", "mu", "sigma"});
        const double sigma = p("sigma");
        if (!(sigma > 0.0)) throw ConfigError(join(path, "sigma"), "sigma must be positive");
        return BoundaryFunction::gaussian(p("peak"), p("mu"), sigma);
    }
    throw ConfigError(join(path, "kind"), "unknown boundary function '" + kind +
                                              "' (expected constant, linear, exp-rise or gaussian)");
}

json write_g(const BoundaryFunction& g, const std::string& what) {
    const auto& v = g.parameters();
    switch (g.kind()) {
        case BoundaryFunction::Kind::Constant: return {{"kind", "constant"}, {"value", v[0]}};
        case BoundaryFunction::Kind::Linear: return {{"kind", "linear"}, {"intercept", v[0]}, {"slope", v[1]}};
        case BoundaryFunction::Kind::ExpRise: return {{"kind", "exp-rise"}, {"amplitude", v[0]}, {"rate", v[1]}};
        case BoundaryFunction::Kind::Gaussian:
            return {{"kind", "gaussian"}, {"peak", v[0]}, {"mu", v[1]}, {"sigma", v[2]}};
        case BoundaryFunction::Kind::Custom: break;
    }
    throw UnsupportedError(what + ": custom boundary functions cannot be written to a config file");
}

InitialCondition read_initial(const json& j, const std::string& path) {
    if (j.is_number()) return InitialCondition::constant(j.get<double>());
    const auto kind = kind_of(j, path);
    if (kind == "constant") {
        expect_object(j, path, {"kind", "value"});
        return InitialCondition::constant(number(require(j, "value", path), join(path, "value")));
    }
    if (kind == "polynomial") {
        expect_object(j, path, {"kind", "coefficients"});
        auto c = numbers(require(j, "coefficients", path), join(path, "coefficients"));
        if (c.empty()) throw ConfigError(join(path, "coefficients"), "expected at least one coefficient");
        return InitialCondition::polynomial(std::move(c));
    }
    if (kind == "dirac") {
        expect_object(j, path, {"kind", "center", "width"});
        const double width = number(require(j, "width", path), join(path, "width"));
        if (!(width > 0.0)) throw ConfigError(join(path, "width"), "width must be positive");
        return InitialCondition::dirac_pulse(number(require(j, "center", path), join(path, "center")), width);
    }
    throw ConfigError(join(path, "kind"), "unknown initial condition '" + kind +
                                              "' (expected constant, polynomial or dirac)");
}

json write_initial(const InitialCondition& f, int layer) {
    switch (f.kind()) {
        case InitialCondition::Kind::Polynomial:
            if (f.is_constant()) return f.coefficients()[0];
            return {{"kind", "polynomial"}, {"coefficients", f.coefficients()}};
        case InitialCondition::Kind::DiracPulse:
            return {{"kind", "dirac"}, {"center", f.center()}, {"width", f.width()}};
        case InitialCondition::Kind::Custom: break;
    }
    throw UnsupportedError("layer " + std::to_string(layer) +
                           ": custom initial conditions cannot be written to a config file");
}

std::optional<double> read_H(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "infinite") return std::numeric_limits<double>::infinity();
        throw ConfigError(path, "expected a positive number or \"infinite\"");
    }
    return number(j, path);
}

InterfaceDescription read_interface(const json& j, const std::string& path) {
    expect_object(j, path, {"kind", "H", "theta"});
    const auto name = kind_of(j, path);
    auto kind = interface_kind_from_string(name);
    if (!kind)
        throw ConfigError(join(path, "kind"),
                          "unknown interface kind '" + name + "' (expected implicit, perfect, jump, partition or general)");
    InterfaceDescription d;
    d.kind = *kind;
    const bool wants_H = d.kind == InterfaceKind::Jump || d.kind == InterfaceKind::General;
    const bool wants_theta = d.kind == InterfaceKind::Partition || d.kind == InterfaceKind::General;
    if (j.contains("H")) {
        if (!wants_H) throw ConfigError(join(path, "H"), "H is not used by a '" + name + "' interface");
        d.H = read_H(j["H"], join(path, "H"));
    } else if (d.kind == InterfaceKind::Jump) {
        throw ConfigError(join(path, "H"), "missing required key");
    }
    if (j.contains("theta")) {
        if (!wants_theta) throw ConfigError(join(path, "theta"), "theta is not used by a '" + name + "' interface");
        d.theta = number(j["theta"], join(path, "theta"));
    } else if (d.kind == InterfaceKind::Partition) {
        throw ConfigError(join(path, "theta"), "missing required key");
    }
    return d;
}

json write_interface(const InterfaceDescription& d) {
    json j = {{"kind", to_string(d.kind)}};
    if (d.H) {
        if (std::isinf(*d.H))
            j["H"] = "infinite";
        else
            j["H"] = *d.H;
    }
    if (d.theta) j["theta"] = *d.theta;
    return j;
}

ExternalBoundary read_boundary(const json& j, const std::string& path, const char* a, const char* b) {
    expect_object(j, path, {a, b, "g"});
    ExternalBoundary out;
    out.a = number(require(j, a, path), join(path, a));
    out.b = number(require(j, b, path), join(path, b));
    out.g = read_g(require(j, "g", path), join(path, "g"));
    return out;
}

}  // namespace

ValidatedProblem RunConfig::diffusion_problem() const {
    if (!reaction_rate) return validate(problem);
    ReactionDiffusionSpec raw{problem, std::vector<double>(problem.diffusivity.size(), *reaction_rate)};
    return validate(reaction_substitution_wrap(raw).problem);
}

double RunConfig::output_scale(double t) const {
    if (!reaction_rate || *reaction_rate == 0.0) return 1.0;
    return std::exp(*reaction_rate * t);
}

RunConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    expect_object(root, "", {"name", "layers", "interfaces", "boundary_left", "boundary_right", "solver", "fdm",
                              "times", "points_per_layer", "reaction", "postprocess"});
    RunConfig cfg;
    if (root.contains("name")) {
        if (!root["name"].is_string()) throw ConfigError("name", "expected a string");
        cfg.name = root["name"].get<std::string>();
    }

    const auto& layers = require(root, "layers", "");
    if (!layers.is_array() || layers.empty()) throw ConfigError("layers", "expected a non-empty array");
    auto& P = cfg.problem;
    std::vector<double> gamma;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto path = item("layers", i);
        const auto& L = layers[i];
        expect_object(L, path, {"left", "right", "diffusivity", "gamma", "initial"});
        const double left = number(require(L, "left", path), join(path, "left"));
        const double right = number(require(L, "right", path), join(path, "right"));
        if (i == 0)
            P.breakpoints.push_back(left);
        else if (left != P.breakpoints.back())
            throw ConfigError(join(path, "left"), "must equal the previous layer's right end");
        P.breakpoints.push_back(right);
        P.diffusivity.push_back(number(require(L, "diffusivity", path), join(path, "diffusivity")));
        gamma.push_back(L.contains("gamma") ? number(L["gamma"], join(path, "gamma")) : P.diffusivity.back());
        P.initial.push_back(read_initial(require(L, "initial", path), join(path, "initial")));
    }
    P.gamma = std::move(gamma);

    const std::size_t m = layers.size();
    if (root.contains("interfaces")) {
        const auto& ifs = root["interfaces"];
        if (!ifs.is_array()) throw ConfigError("interfaces", "expected an array");
        for (std::size_t i = 0; i < ifs.size(); ++i) cfg.interfaces.push_back(read_interface(ifs[i], item("interfaces", i)));
    } else if (m > 1) {
        throw ConfigError("interfaces", "missing required key");
    }
    if (cfg.interfaces.size() != m - 1)
        throw ConfigError("interfaces", "expected " + std::to_string(m - 1) + " entries (one per interior breakpoint), got " +
                                            std::to_string(cfg.interfaces.size()));
    P.apply_interfaces(cfg.interfaces);

    P.left = read_boundary(require(root, "boundary_left", ""), "boundary_left", "aL", "bL");
    P.right = read_boundary(require(root, "boundary_right", ""), "boundary_right", "aR", "bR");

    if (root.contains("solver")) {
        const auto& s = root["solver"];
        expect_object(s, "solver", {"N", "Np"});
        if (s.contains("N")) cfg.solver.N = integer(s["N"], "solver.N");
        if (s.contains("Np")) cfg.solver.Np = integer(s["Np"], "solver.Np");
    }
    if (root.contains("fdm")) {
        const auto& f = root["fdm"];
        expect_object(f, "fdm", {"cells_per_layer", "dt"});
        if (f.contains("cells_per_layer")) cfg.fdm.cells_per_layer = integer(f["cells_per_layer"], "fdm.cells_per_layer");
        if (f.contains("dt")) cfg.fdm.dt = number(f["dt"], "fdm.dt");
        if (cfg.fdm.cells_per_layer < 4) throw ConfigError("fdm.cells_per_layer", "must be at least 4");
        if (!(cfg.fdm.dt > 0.0)) throw ConfigError("fdm.dt", "must be positive");
    }
    if (root.contains("times")) cfg.times = numbers(root["times"], "times");
    for (std::size_t k = 0; k < cfg.times.size(); ++k)
        if (!(cfg.times[k] >= 0.0)) throw ConfigError(item("times", k), "times must be non-negative");
    if (root.contains("points_per_layer")) {
        cfg.points_per_layer = integer(root["points_per_layer"], "points_per_layer");
        if (cfg.points_per_layer < 2) throw ConfigError("points_per_layer", "must be at least 2");
    }
    if (root.contains("reaction")) {
        const auto& r = root["reaction"];
        expect_object(r, "reaction", {"rate"});
        cfg.reaction_rate = number(require(r, "rate", "reaction"), "reaction.rate");
    }
    if (root.contains("postprocess")) {
        const auto& pp = root["postprocess"];
        expect_object(pp, "postprocess", {"kind", "factor"});
        Postprocess post{kind_of(pp, "postprocess"), numbers(require(pp, "factor", "postprocess"), "postprocess.factor")};
        if (post.kind != "total-concentration")
            throw ConfigError("postprocess.kind", "unknown postprocess '" + post.kind + "' (expected total-concentration)");
        if (post.factor.size() != m) throw ConfigError("postprocess.factor", "expected one factor per layer");
        cfg.postprocess = std::move(post);
    }

    // Surface model violations now rather than at solve time.
    if (cfg.reaction_rate) {
        ReactionDiffusionSpec raw{P, std::vector<double>(m, *cfg.reaction_rate)};
        (void)reaction_substitution_wrap(raw);
    }
    validate(P);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

std::string to_json(const RunConfig& cfg) {
    const auto& P = cfg.problem;
    const int m = P.layer_count();
    json root;
    if (!cfg.name.empty()) root["name"] = cfg.name;
    json layers = json::array();
    for (int i = 0; i < m; ++i) {
        const auto k = static_cast<std::size_t>(i);
        json L = {{"left", P.breakpoints[k]}, {"right", P.breakpoints[k + 1]}, {"diffusivity", P.diffusivity[k]}};
        L["gamma"] = P.gamma.empty() ? P.diffusivity[k] : P.gamma[k];
        L["initial"] = write_initial(P.initial[k], i + 1);
        layers.push_back(std::move(L));
    }
    root["layers"] = std::move(layers);

    json ifs = json::array();
    if (!cfg.interfaces.empty()) {
        for (const auto& d : cfg.interfaces) ifs.push_back(write_interface(d));
    } else {
        for (int i = 0; i + 1 < m; ++i) {
            const auto k = static_cast<std::size_t>(i);
            InterfaceDescription d{InterfaceKind::General, std::nullopt, P.partition[k]};
            d.H = P.contact[k].is_infinite() ? std::numeric_limits<double>::infinity() : P.contact[k].value();
            ifs.push_back(write_interface(d));
        }
    }
    root["interfaces"] = std::move(ifs);
    root["boundary_left"] = {{"aL", P.left.a}, {"bL", P.left.b}, {"g", write_g(P.left.g, "boundary_left.g")}};
    root["boundary_right"] = {{"aR", P.right.a}, {"bR", P.right.b}, {"g", write_g(P.right.g, "boundary_right.g")}};
    root["solver"] = {{"N", cfg.solver.N}, {"Np", cfg.solver.Np}};
    root["fdm"] = {{"cells_per_layer", cfg.fdm.cells_per_layer}, {"dt", cfg.fdm.dt}};
    root["times"] = cfg.times;
    root["points_per_layer"] = cfg.points_per_layer;
    if (cfg.reaction_rate) root["reaction"] = {{"rate", *cfg.reaction_rate}};
    if (cfg.postprocess) root["postprocess"] = {{"kind", cfg.postprocess->kind}, {"factor", cfg.postprocess->factor}};
    return root.dump(2) + "\n";
}

}  // namespace layerdiff
