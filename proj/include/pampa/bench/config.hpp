#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pampa/bench/experiment.hpp"

namespace pampa::bench {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Experiment experiment;
    OutputOptions output;
    std::vector<std::size_t> meshes;  ///< optional mesh sequence for `converge`
};

namespace detail {

using nlohmann::json;

inline std::size_t field_index(const std::string& name) {
    if (name == "h") return 0;
    if (name == "hu") return 1;
    if (name == "hv") return 2;
    throw ConfigError("unknown field '" + name + "' (expected h, hu or hv)");
}

inline BoundarySide parse_side(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "periodic") return BoundarySide::periodic();
        if (s == "extrapolation") return BoundarySide::extrapolation();
        throw ConfigError("unknown boundary kind '" + s + "'");
    }
    if (j.is_object() && j.contains("dirichlet")) {
        std::vector<std::pair<std::size_t, double>> values;
        for (const auto& [k, v] : j.at("dirichlet").items()) values.emplace_back(field_index(k), v.get<double>());
        return BoundarySide::fixed(std::move(values));
    }
    throw ConfigError("boundary side must be \"periodic\", \"extrapolation\" or {\"dirichlet\": {...}}");
}

inline ScalarFn parse_bathymetry(const json& j) {
    if (j.is_number()) return [b = j.get<double>()](double) { return b; };
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "flat") return [](double) { return 0.0; };
        if (s == "twin_bumps") return shapes::twin_bumps;
        if (s == "parabolic_bump") return shapes::parabolic_bump;
        if (s == "cosine_bump") return shapes::cosine_bump;
        throw ConfigError("unknown bathymetry '" + s + "'");
    }
    if (j.is_object() && j.value("type", "") == "bowl") {
        const double h0 = j.value("h0", 10.0), a = j.value("a", 3000.0);
        return [h0, a](double x) { return h0 * (x / a) * (x / a); };
    }
    throw ConfigError("bathymetry must be a number, a named profile or {\"type\": \"bowl\"}");
}

inline std::vector<double> read_vector(const json& j, std::size_t n, const char* what) {
    auto v = j.get<std::vector<double>>();
    if (v.size() != n) throw ConfigError(std::string(what) + " needs " + std::to_string(n) + " components");
    return v;
}

template <std::size_t N>
std::function<AnyState(const Grid&)> make_initial(const json& j, const ScalarFn& bathymetry) {
    const auto type = j.at("type").get<std::string>();
    std::array<ScalarFn, N> f;
    if (type == "constant") {
        const auto s = read_vector(j.at("state"), N, "initial.state");
        for (std::size_t k = 0; k < N; ++k) f[k] = [v = s[k]](double) { return v; };
    } else if (type == "riemann") {
        const double x0 = j.value("x0", 0.0);
        const auto l = read_vector(j.at("left"), N, "initial.left");
        const auto r = read_vector(j.at("right"), N, "initial.right");
        for (std::size_t k = 0; k < N; ++k)
            f[k] = [x0, a = l[k], b = r[k]](double x) { return x <= x0 ? a : b; };
    } else if (type == "lake_at_rest") {
        const double w = j.at("surface").get<double>();
        f[0] = [w, bathymetry](double x) { return std::max(0.0, w - bathymetry(x)); };
        for (std::size_t k = 1; k < N; ++k) f[k] = [](double) { return 0.0; };
    } else {
        throw ConfigError("unknown initial type '" + type + "'");
    }
    return [f, bathymetry](const Grid& g) { return AnyState{project_initial_data<N>(g, f, bathymetry)}; };
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    using detail::json;
    ExperimentConfig cfg;
    Experiment& e = cfg.experiment;
    try {
        const bool preset = j.contains("example");
        if (preset) e = make_example(j.at("example").get<std::string>());
        if (j.contains("name")) e.name = j.at("name").get<std::string>();
        if (!preset && !j.contains("name")) e.name = "custom";

        if (j.contains("model")) {
            const auto& m = j.at("model");
            const auto type = m.value("type", std::string("saint_venant"));
            if (type == "saint_venant") {
                e.model = SaintVenant{m.value("g", 9.812), m.value("manning", 0.0)};
            } else if (type == "rotating") {
                e.model = RotatingShallowWater{m.value("g", 9.812), m.value("f0", 0.0), m.value("beta", 0.0)};
            } else {
                throw ConfigError("unknown model type '" + type + "'");
            }
        } else if (!preset) {
            throw ConfigError("missing 'model'");
        }

        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            e.x_min = g.value("x_min", e.x_min);
            e.x_max = g.value("x_max", e.x_max);
            e.cells = g.value("cells", e.cells);
        } else if (!preset) {
            throw ConfigError("missing 'grid'");
        }

        if (j.contains("bathymetry")) e.bathymetry = detail::parse_bathymetry(j.at("bathymetry"));
        if (j.contains("initial")) {
            const bool rotating = std::holds_alternative<RotatingShallowWater>(e.model);
            e.initial = rotating ? detail::make_initial<3>(j.at("initial"), e.bathymetry)
                                 : detail::make_initial<2>(j.at("initial"), e.bathymetry);
            e.reference = {};
            e.boundary_from_initial = {};
        } else if (!preset) {
            throw ConfigError("missing 'initial'");
        }

        if (j.contains("boundary")) {
            const auto& b = j.at("boundary");
            e.bc = {detail::parse_side(b.at("left")), detail::parse_side(b.at("right"))};
            e.boundary_from_initial = {};
        } else if (!preset) {
            throw ConfigError("missing 'boundary'");
        }

        if (j.contains("controls")) {
            const auto& c = j.at("controls");
            e.controls.cfl = c.value("cfl", e.controls.cfl);
            e.controls.t_final = c.value("t_final", e.controls.t_final);
            e.controls.max_steps = c.value("max_steps", e.controls.max_steps);
            if (c.contains("quadrature")) e.controls.quadrature = parse_quadrature(c.at("quadrature").get<std::string>());
            if (c.contains("order")) e.controls.order = parse_order(c.at("order").get<std::string>());
        } else if (!preset) {
            throw ConfigError("missing 'controls'");
        }

        if (j.contains("run")) {
            const auto& r = j.at("run");
            if (r.contains("snapshots")) e.settings.snapshot_times = r.at("snapshots").get<std::vector<double>>();
            e.settings.record_every = r.value("record_every", e.settings.record_every);
            e.settings.steady_tolerance = r.value("steady_tolerance", e.settings.steady_tolerance);
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            cfg.output.directory = o.value("directory", std::string());
            cfg.output.svg = o.value("svg", true);
        }
        if (j.contains("meshes")) cfg.meshes = j.at("meshes").get<std::vector<std::size_t>>();

        e.controls.validate();
        e.bc.validate<3>();
        make_grid(e.x_min, e.x_max, e.cells);
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("config: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("config: ") + ex.what());
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError("config '" + path.string() + "': " + ex.what());
    }
    return parse_config(j);
}

/// Run manifest as JSON.
inline nlohmann::json summary_json(const RunSummary& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["cells"] = s.cells;
    j["time"] = s.time;
    j["steps"] = s.steps;
    j["rejected_steps"] = s.rejected_steps;
    j["reached_steady"] = s.reached_steady;
    j["min_stage_h"] = s.min_stage_h;
    j["clipped_heights"] = s.clipped;
    j["mass_initial"] = s.mass_initial;
    j["mass_final"] = s.mass_final;
    j["g_spread"] = s.g_spread;
    j["g2_left"] = s.g2_left;
    j["wall_seconds"] = s.wall_seconds;
    j["files"] = s.files;
    if (s.errors) {
        auto norms = [](const std::vector<FieldNorms>& v) {
            nlohmann::json a = nlohmann::json::array();
            for (std::size_t k = 0; k < v.size(); ++k)
                a.push_back({{"field", field_name(k)}, {"l1", v[k].l1}, {"l2", v[k].l2}, {"linf", v[k].linf}});
            return a;
        };
        j["errors"] = {{"points", norms(s.errors->points)}, {"averages", norms(s.errors->averages)}};
    }
    return j;
}

}  // namespace pampa::bench
