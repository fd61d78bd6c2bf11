#include "loclab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "loclab/errors.hpp"

namespace loclab {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!obj.is_object()) throw config_error(where + ": expected a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw config_error(where + ": unknown key '" + key + "'");
}

double get_num(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw config_error(where + ": missing key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) throw config_error(where + "." + key + ": expected a number");
    return v.get<double>();
}

long get_int(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw config_error(where + ": missing key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw config_error(where + "." + key + ": expected an integer");
    return v.get<long>();
}

std::vector<double> get_vec(const json& v, const std::string& where) {
    if (!v.is_array()) throw config_error(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) throw config_error(where + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

GridParams parse_grid(const json& obj, const std::string& where) {
    require_keys(obj, {"x_min", "x_max", "n_points"}, where);
    GridParams g;
    g.x_min = get_num(obj, "x_min", where);
    g.x_max = get_num(obj, "x_max", where);
    const long n = get_int(obj, "n_points", where);
    if (n <= 0) throw config_error(where + ".n_points: must be positive");
    g.n_points = static_cast<std::size_t>(n);
    // Fail at parse time, not mid-run: same rules as make_grid.
    if (g.n_points < 16 || (g.n_points & (g.n_points - 1)) != 0)
        throw config_error(where + ".n_points: must be a power of two >= 16");
    if (!(g.x_max > g.x_min)) throw config_error(where + ": x_max must exceed x_min");
    return g;
}

StateSpec parse_state(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("type"))
        throw config_error(where + ": state needs a 'type' key");
    const std::string type = obj.at("type").get<std::string>();
    StateSpec spec;
    if (obj.contains("normalize")) {
        if (!obj.at("normalize").is_boolean())
            throw config_error(where + ".normalize: expected a boolean");
        spec.normalize = obj.at("normalize").get<bool>();
    }
    if (type == "gaussian") {
        require_keys(obj, {"type", "normalize", "x0", "p0", "sigma"}, where);
        spec.shape = GaussianState{get_num(obj, "x0", where), get_num(obj, "p0", where),
                                   get_num(obj, "sigma", where)};
    } else if (type == "bump") {
        require_keys(obj, {"type", "normalize", "center", "radius"}, where);
        spec.shape = BumpState{get_num(obj, "center", where), get_num(obj, "radius", where)};
    } else if (type == "truncated_gaussian") {
        require_keys(obj, {"type", "normalize", "x0", "sigma", "cutoff"}, where);
        spec.shape = TruncatedGaussianState{get_num(obj, "x0", where),
                                            get_num(obj, "sigma", where),
                                            get_num(obj, "cutoff", where)};
    } else if (type == "power_tail") {
        require_keys(obj, {"type", "normalize", "p"}, where);
        spec.shape = PowerTailState{get_num(obj, "p", where)};
    } else if (type == "delta") {
        require_keys(obj, {"type", "normalize", "x0", "epsilon"}, where);
        spec.shape = DeltaApproxState{get_num(obj, "x0", where), get_num(obj, "epsilon", where)};
    } else if (type == "hermite") {
        require_keys(obj, {"type", "normalize", "n", "sigma"}, where);
        spec.shape = HermiteGaussianState{static_cast<int>(get_int(obj, "n", where)),
                                          get_num(obj, "sigma", where)};
    } else {
        throw config_error(where + ": unknown state type '" + type + "'");
    }
    validate_state(spec);
    return spec;
}

PotentialSpec parse_potential(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("type"))
        throw config_error(where + ": potential needs a 'type' key");
    const std::string type = obj.at("type").get<std::string>();
    PotentialSpec spec;
    if (type == "free") {
        require_keys(obj, {"type"}, where);
        spec = Free{};
    } else if (type == "barrier") {
        require_keys(obj, {"type", "a", "b", "v0"}, where);
        spec = RectangularBarrier{get_num(obj, "a", where), get_num(obj, "b", where),
                                  get_num(obj, "v0", where)};
    } else if (type == "double_wall") {
        require_keys(obj, {"type", "a1", "a2", "a3", "a4", "v_wall"}, where);
        DoubleWallTrap t;
        t.a1 = get_num(obj, "a1", where);
        t.a2 = get_num(obj, "a2", where);
        t.a3 = get_num(obj, "a3", where);
        t.a4 = get_num(obj, "a4", where);
        t.v_wall = get_num(obj, "v_wall", where);
        spec = t;
    } else if (type == "smooth") {
        require_keys(obj, {"type", "form", "amplitude", "center", "width"}, where);
        SmoothBounded s;
        const std::string form = obj.at("form").get<std::string>();
        if (form == "gaussian_bump")
            s.form = SmoothForm::GaussianBump;
        else if (form == "sech2")
            s.form = SmoothForm::Sech2;
        else
            throw config_error(where + ".form: unknown smooth form '" + form + "'");
        s.amplitude = get_num(obj, "amplitude", where);
        s.center = get_num(obj, "center", where);
        s.width = get_num(obj, "width", where);
        spec = s;
    } else if (type == "tabulated") {
        require_keys(obj, {"type", "x", "v"}, where);
        spec = Tabulated{get_vec(obj.at("x"), where + ".x"), get_vec(obj.at("v"), where + ".v")};
    } else {
        throw config_error(where + ": unknown potential type '" + type + "'");
    }
    validate_potential(spec);
    return spec;
}

PropagatorConfig parse_propagator(const json& obj, const std::string& where) {
    require_keys(obj, {"scheme", "dt", "mass", "boundary"}, where);
    PropagatorConfig c;
    const std::string scheme = obj.at("scheme").get<std::string>();
    if (scheme == "exact_free")
        c.scheme = Scheme::ExactFree;
    else if (scheme == "split_operator")
        c.scheme = Scheme::SplitOperator;
    else if (scheme == "crank_nicolson")
        c.scheme = Scheme::CrankNicolson;
    else
        throw config_error(where + ".scheme: unknown scheme '" + scheme + "'");
    c.dt = get_num(obj, "dt", where);
    c.mass = get_num(obj, "mass", where);
    const std::string boundary = obj.at("boundary").get<std::string>();
    if (boundary == "periodic")
        c.boundary = Boundary::Periodic;
    else if (boundary == "dirichlet")
        c.boundary = Boundary::Dirichlet;
    else
        throw config_error(where + ".boundary: unknown boundary '" + boundary + "'");
    return c;
}

AnalysisParams parse_analysis(const json& obj, const std::string& where) {
    require_keys(obj,
                 {"window", "control_window", "floor_rel", "bins", "margin", "tail_radii",
                  "n_max", "epsilons", "probe_time", "core_half_width", "support_radius"},
                 where);
    AnalysisParams a;
    auto pair_of = [&](const std::string& key) {
        const auto v = get_vec(obj.at(key), where + "." + key);
        if (v.size() != 2) throw config_error(where + "." + key + ": expected [lo, hi]");
        return std::array<double, 2>{v[0], v[1]};
    };
    if (obj.contains("window")) a.window = pair_of("window");
    if (obj.contains("control_window")) a.control_window = pair_of("control_window");
    if (obj.contains("floor_rel")) a.floor_rel = get_num(obj, "floor_rel", where);
    if (obj.contains("bins")) a.bins = static_cast<int>(get_int(obj, "bins", where));
    if (obj.contains("margin")) a.margin = get_num(obj, "margin", where);
    if (obj.contains("tail_radii")) a.tail_radii = get_vec(obj.at("tail_radii"), where);
    if (obj.contains("n_max")) a.n_max = static_cast<int>(get_int(obj, "n_max", where));
    if (obj.contains("epsilons")) a.epsilons = get_vec(obj.at("epsilons"), where);
    if (obj.contains("probe_time")) a.probe_time = get_num(obj, "probe_time", where);
    if (obj.contains("core_half_width")) a.core_half_width = get_num(obj, "core_half_width", where);
    if (obj.contains("support_radius")) a.support_radius = get_num(obj, "support_radius", where);
    if (a.tail_radii.size() != 2)
        throw config_error(where + ".tail_radii: exactly two radii are reported");
    return a;
}

const std::set<std::string>& allowed_thresholds(const std::string& id) {
    static const std::map<std::string, std::set<std::string>> table = {
        {"E1", {"spreading_floor"}},
        {"E2", {"ratio_max"}},
        {"E3", {"outside_mass_max", "region3_mass_max"}},
        {"E4", {"exponent_n1_max", "exponent_n2_max"}},
        {"E5", {"s1_exponent_max", "s2_exponent_max"}},
        {"E6", {}},
        {"E7", {"poly_order_min", "poly_order_max", "exp_order_tol"}},
    };
    return table.at(id);
}

// Objects merge key-by-key, except a differing "type" replaces the object
// wholesale (you cannot meaningfully inherit a barrier's fields into a
// bump). Arrays and scalars replace.
json deep_merge(const json& base, const json& over) {
    if (!base.is_object() || !over.is_object()) return over;
    if (base.contains("type") && over.contains("type") && base["type"] != over["type"])
        return over;
    json out = base;
    for (const auto& [key, value] : over.items()) {
        if (out.contains(key))
            out[key] = deep_merge(out[key], value);
        else
            out[key] = value;
    }
    return out;
}

ExperimentSpec parse_experiment(const json& obj) {
    const std::string id = obj.at("id").get<std::string>();
    const std::string where = "experiments." + id;
    require_keys(obj,
                 {"id", "grid", "state", "state_b", "potential", "potential_b", "propagator",
                  "sample_times", "analysis", "thresholds"},
                 where);
    ExperimentSpec spec;
    spec.id = id;
    spec.grid = parse_grid(obj.at("grid"), where + ".grid");
    spec.state = parse_state(obj.at("state"), where + ".state");
    if (obj.contains("state_b")) {
        spec.state_b = parse_state(obj.at("state_b"), where + ".state_b");
        spec.has_state_b = true;
    }
    spec.potential = parse_potential(obj.at("potential"), where + ".potential");
    if (obj.contains("potential_b")) {
        spec.potential_b = parse_potential(obj.at("potential_b"), where + ".potential_b");
        spec.has_potential_b = true;
    }
    spec.propagator = parse_propagator(obj.at("propagator"), where + ".propagator");
    spec.sample_times = get_vec(obj.at("sample_times"), where + ".sample_times");
    if (spec.sample_times.empty())
        throw config_error(where + ".sample_times: must not be empty");
    spec.analysis = parse_analysis(obj.at("analysis"), where + ".analysis");
    const auto& allowed = allowed_thresholds(id);
    const json& th = obj.at("thresholds");
    require_keys(th, allowed, where + ".thresholds");
    for (const auto& [key, value] : th.items())
        spec.thresholds[key] = value.get<double>();
    for (const std::string& name : allowed)
        if (!spec.thresholds.count(name))
            throw config_error(where + ".thresholds: missing '" + name + "'");
    if (const char* env = std::getenv("LOCLAB_FLOOR")) {
        try {
            spec.analysis.floor_rel = std::stod(env);
        } catch (const std::exception&) {
            throw config_error("LOCLAB_FLOOR: not a number: " + std::string(env));
        }
    }
    return spec;
}

}  // namespace

nlohmann::json default_experiment_json(const std::string& id) {
    const json grid_small = {{"x_min", -30.0}, {"x_max", 30.0}, {"n_points", 4096}};
    const json exact_free = {
        {"scheme", "exact_free"}, {"dt", 1e-3}, {"mass", 1.0}, {"boundary", "periodic"}};
    const json analysis_common = {{"floor_rel", 1e-13}, {"bins", 16},
                                  {"tail_radii", json::array({2.0, 5.0})}, {"n_max", 2}};
    if (id == "E1") {
        json a = analysis_common;
        a["support_radius"] = 1.0;
        a["margin"] = 1.0;
        return {{"id", "E1"},
                {"grid", grid_small},
                {"state", {{"type", "bump"}, {"center", 0.0}, {"radius", 1.0}}},
                {"potential", {{"type", "free"}}},
                {"propagator", exact_free},
                {"sample_times", json::array({0.01, 0.1, 0.5, 1.0})},
                {"analysis", a},
                {"thresholds", {{"spreading_floor", 1e-12}}}};
    }
    if (id == "E2") {
        json a = analysis_common;
        a["epsilons"] = json::array({0.5, 0.25, 0.125, 0.0625});
        a["probe_time"] = 1.0;
        a["core_half_width"] = 2.0;
        return {{"id", "E2"},
                {"grid", {{"x_min", -80.0}, {"x_max", 80.0}, {"n_points", 16384}}},
                {"state", {{"type", "delta"}, {"x0", 0.0}, {"epsilon", 0.5}}},
                {"potential", {{"type", "free"}}},
                {"propagator", exact_free},
                {"sample_times", json::array({1.0})},
                {"analysis", a},
                {"thresholds", {{"ratio_max", 1.05}}}};
    }
    if (id == "E3") {
        return {{"id", "E3"},
                {"grid", grid_small},
                {"state", {{"type", "bump"}, {"center", 0.0}, {"radius", 1.5}}},
                {"state_b", {{"type", "gaussian"}, {"x0", -9.0}, {"p0", 2.0}, {"sigma", 1.0}}},
                {"potential",
                 {{"type", "double_wall"},
                  {"a1", -3.0},
                  {"a2", -2.0},
                  {"a3", 2.0},
                  {"a4", 3.0},
                  {"v_wall", 1e4}}},
                {"propagator",
                 {{"scheme", "crank_nicolson"},
                  {"dt", 1e-3},
                  {"mass", 1.0},
                  {"boundary", "dirichlet"}}},
                {"sample_times", json::array({0.5, 2.0, 5.0, 10.0, 20.0})},
                {"analysis", analysis_common},
                {"thresholds", {{"outside_mass_max", 1e-10}, {"region3_mass_max", 1e-10}}}};
    }
    if (id == "E4" || id == "E5") {
        json out = {
            {"id", id},
            {"grid", {{"x_min", -260.0}, {"x_max", 260.0}, {"n_points", 8192}}},
            {"state", {{"type", "gaussian"}, {"x0", 3.0}, {"p0", 2.0}, {"sigma", 1.0}}},
            {"potential", {{"type", "barrier"}, {"a", 5.0}, {"b", 8.0}, {"v0", 5.0}}},
            {"potential_b",
             {{"type", "smooth"},
              {"form", "gaussian_bump"},
              {"amplitude", 1.0},
              {"center", 5.0},
              {"width", 2.0}}},
            {"propagator",
             {{"scheme", "split_operator"},
              {"dt", 1e-3},
              {"mass", 1.0},
              {"boundary", "periodic"}}},
            // Log-spaced, and multiples of 2e-3 so dt sweeps over
            // {2e-3, 1e-3, 5e-4} keep every sample on the step lattice.
            {"sample_times",
             json::array({1.0, 1.428, 2.038, 2.908, 4.148, 5.92, 8.45, 12.058, 17.21, 24.562,
                          35.052, 50.0})},
            {"analysis", analysis_common},
        };
        if (id == "E4")
            out["thresholds"] = {{"exponent_n1_max", 1.2}, {"exponent_n2_max", 2.2}};
        else
            out["thresholds"] = {{"s1_exponent_max", 1.2}, {"s2_exponent_max", 2.2}};
        return out;
    }
    if (id == "E6") {
        json a = analysis_common;
        a["window"] = json::array({3.0, 8.0});
        return {{"id", "E6"},
                {"grid", grid_small},
                {"state", {{"type", "gaussian"}, {"x0", 0.0}, {"p0", 0.0}, {"sigma", 1.0}}},
                {"potential", {{"type", "free"}}},
                {"potential_b",
                 {{"type", "smooth"},
                  {"form", "gaussian_bump"},
                  {"amplitude", 0.25},
                  {"center", 0.0},
                  {"width", 1.0}}},
                {"propagator",
                 {{"scheme", "split_operator"},
                  {"dt", 1e-3},
                  {"mass", 1.0},
                  {"boundary", "periodic"}}},
                {"sample_times", json::array({0.0, 0.5, 1.0, 2.0})},
                {"analysis", a},
                {"thresholds", json::object()}};
    }
    if (id == "E7") {
        json a = analysis_common;
        a["window"] = json::array({10.0, 40.0});
        a["control_window"] = json::array({3.0, 6.0});
        return {{"id", "E7"},
                {"grid", {{"x_min", -200.0}, {"x_max", 200.0}, {"n_points", 16384}}},
                {"state",
                 {{"type", "truncated_gaussian"}, {"x0", 0.0}, {"sigma", 1.0}, {"cutoff", 2.0}}},
                {"state_b", {{"type", "gaussian"}, {"x0", 0.0}, {"p0", 0.0}, {"sigma", 1.0}}},
                {"potential", {{"type", "free"}}},
                {"propagator", exact_free},
                {"sample_times", json::array({1.0})},
                {"analysis", a},
                {"thresholds",
                 {{"poly_order_min", 1.0}, {"poly_order_max", 3.0}, {"exp_order_tol", 0.2}}}};
    }
    throw config_error("unknown experiment id: " + id);
}

RunConfig parse_config(const nlohmann::json& doc) {
    require_keys(doc, {"grid", "experiments"}, "config");
    RunConfig out;
    const bool has_top_grid = doc.contains("grid");
    if (has_top_grid) out.grid = parse_grid(doc.at("grid"), "config.grid");
    if (!doc.contains("experiments") || !doc.at("experiments").is_array())
        throw config_error("config: 'experiments' must be an array");
    json resolved = json::object();
    if (has_top_grid) resolved["grid"] = doc.at("grid");
    resolved["experiments"] = json::array();
    for (const json& entry : doc.at("experiments")) {
        if (!entry.is_object() || !entry.contains("id"))
            throw config_error("config.experiments: each entry needs an 'id'");
        const std::string id = entry.at("id").get<std::string>();
        json merged = default_experiment_json(id);
        // A user-supplied potential replaces the default second scenario
        // unless an explicit potential_b accompanies it.
        if (entry.contains("potential") && !entry.contains("potential_b"))
            merged.erase("potential_b");
        // Top-level grid overrides the per-experiment default; a
        // per-experiment grid wins over both.
        if (has_top_grid) merged["grid"] = doc.at("grid");
        merged = deep_merge(merged, entry);
        out.experiments.push_back(parse_experiment(merged));
        resolved["experiments"].push_back(merged);
    }
    out.resolved = std::move(resolved);
    return out;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("config parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

nlohmann::json state_to_json(const StateSpec& s) {
    json out;
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, GaussianState>)
                out = {{"type", "gaussian"}, {"x0", shape.x0}, {"p0", shape.p0},
                       {"sigma", shape.sigma}};
            else if constexpr (std::is_same_v<T, BumpState>)
                out = {{"type", "bump"}, {"center", shape.center}, {"radius", shape.radius}};
            else if constexpr (std::is_same_v<T, TruncatedGaussianState>)
                out = {{"type", "truncated_gaussian"}, {"x0", shape.x0}, {"sigma", shape.sigma},
                       {"cutoff", shape.cutoff}};
            else if constexpr (std::is_same_v<T, PowerTailState>)
                out = {{"type", "power_tail"}, {"p", shape.p}};
            else if constexpr (std::is_same_v<T, DeltaApproxState>)
                out = {{"type", "delta"}, {"x0", shape.x0}, {"epsilon", shape.epsilon}};
            else
                out = {{"type", "hermite"}, {"n", shape.n}, {"sigma", shape.sigma}};
        },
        s.shape);
    out["normalize"] = s.normalize;
    return out;
}

nlohmann::json potential_to_json(const PotentialSpec& v) {
    json out;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Free>)
                out = {{"type", "free"}};
            else if constexpr (std::is_same_v<T, RectangularBarrier>)
                out = {{"type", "barrier"}, {"a", p.a}, {"b", p.b}, {"v0", p.v0}};
            else if constexpr (std::is_same_v<T, DoubleWallTrap>)
                out = {{"type", "double_wall"}, {"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3},
                       {"a4", p.a4}, {"v_wall", p.v_wall}};
            else if constexpr (std::is_same_v<T, SmoothBounded>)
                out = {{"type", "smooth"},
                       {"form", p.form == SmoothForm::GaussianBump ? "gaussian_bump" : "sech2"},
                       {"amplitude", p.amplitude},
                       {"center", p.center},
                       {"width", p.width}};
            else
                out = {{"type", "tabulated"}, {"x", p.x}, {"v", p.v}};
        },
        v);
    return out;
}

}  // namespace loclab
