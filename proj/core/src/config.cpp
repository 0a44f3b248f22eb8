#include "inspsim/config.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace inspsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

// Line-oriented TOML subset: [table] / [table.sub] headers, `key = value`
// pairs with string, bool, number, or flat-array values, and # comments.
json toml_subset_to_json(std::istream& in) {
    json root = json::object();
    json* table = &root;
    std::string line;
    std::size_t lineno = 0;

    auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    auto parse_scalar = [&](std::string tok) -> json {
        tok = strip(tok);
        if (tok.empty()) fail("toml line " + std::to_string(lineno), "empty value");
        if (tok.front() == '"') {
            if (tok.size() < 2 || tok.back() != '"') {
                fail("toml line " + std::to_string(lineno), "unterminated string");
            }
            return tok.substr(1, tok.size() - 2);
        }
        if (tok == "true") return true;
        if (tok == "false") return false;
        try {
            std::size_t used = 0;
            if (tok.find_first_of(".eE") == std::string::npos) {
                const long long v = std::stoll(tok, &used);
                if (used == tok.size()) return v;
            }
            const double v = std::stod(tok, &used);
            if (used == tok.size()) return v;
        } catch (const std::exception&) {
        }
        fail("toml line " + std::to_string(lineno), "cannot parse value '" + tok + "'");
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                fail("toml line " + std::to_string(lineno), "malformed table header");
            }
            table = &root;
            std::stringstream ss(line.substr(1, line.size() - 2));
            std::string part;
            while (std::getline(ss, part, '.')) {
                part = strip(part);
                if (part.empty()) {
                    fail("toml line " + std::to_string(lineno), "empty table name");
                }
                table = &(*table)[part];
                if (!table->is_object() && !table->is_null()) {
                    fail("toml line " + std::to_string(lineno), "table redefines a value");
                }
                if (table->is_null()) *table = json::object();
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail("toml line " + std::to_string(lineno), "expected key = value");
        }
        const std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty()) fail("toml line " + std::to_string(lineno), "empty key");

        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') {
                fail("toml line " + std::to_string(lineno), "unterminated array");
            }
            json arr = json::array();
            std::stringstream ss(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (strip(item).empty()) continue;
                arr.push_back(parse_scalar(item));
            }
            (*table)[key] = std::move(arr);
        } else {
            (*table)[key] = parse_scalar(value);
        }
    }
    return root;
}

/// Tracks key consumption within one JSON object so typos surface as errors.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(path_, "expected a table/object");
    }

    ~Section() = default;

    void finish() const {
        for (const auto& [key, _] : node_.items()) {
            if (!used_.count(key)) fail(path_ + "." + key, "unknown key");
        }
    }

    bool has(const std::string& key) {
        used_.insert(key);
        return node_.contains(key);
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = node_.at(key).get<T>();
        } catch (const json::exception& e) {
            fail(path_ + "." + key, e.what());
        }
    }

    const json& raw(const std::string& key) {
        used_.insert(key);
        return node_.at(key);
    }

    json sub(const std::string& key) {
        used_.insert(key);
        return node_.contains(key) ? node_.at(key) : json::object();
    }

    const std::string& path() const { return path_; }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> used_;
};

RsoMode parse_mode(const std::string& s, const std::string& path) {
    if (s == "static" || s == "StaticCWH") return RsoMode::StaticCWH;
    if (s == "tumble" || s == "StableTumble") return RsoMode::StableTumble;
    fail(path, "unknown mode '" + s + "' (expected static|tumble)");
}

StrategyKind parse_policy(const std::string& s, const std::string& path) {
    if (s == "PH" || s == "point_hold") return StrategyKind::PointHold;
    if (s == "NMC" || s == "nmc_hold") return StrategyKind::NmcHold;
    if (s == "greedy" || s == "greedy_active") return StrategyKind::GreedyActive;
    if (s == "waypoint_sequence") return StrategyKind::WaypointSequence;
    fail(path, "unknown policy '" + s + "' (expected PH|NMC|greedy)");
}

void read_capture(const json& node, const std::string& path, CaptureConfig& cap) {
    Section s(node, path);
    s.get("fov_half_angle", cap.fov_half_angle);
    s.get("bright_max", cap.bright_max);
    s.get("dark_min", cap.dark_min);
    if (s.has("illum_mode")) {
        const std::string m = node.at("illum_mode").get<std::string>();
        if (m == "binary") cap.illum_mode = IllumMode::Binary;
        else if (m == "blinn_phong") cap.illum_mode = IllumMode::BlinnPhongEarthShadow;
        else fail(path + ".illum_mode", "expected binary|blinn_phong");
    }
    s.get("ambient", cap.ambient);
    s.get("diffuse", cap.diffuse);
    s.get("specular", cap.specular);
    s.get("shininess", cap.shininess);
    s.get("earth_angle_lo", cap.earth_angle_lo);
    s.get("earth_angle_hi", cap.earth_angle_hi);
    s.finish();
    if (!(cap.fov_half_angle > 0.0) || cap.fov_half_angle > M_PI) {
        fail(path + ".fov_half_angle", "must be in (0, pi]");
    }
    if (!cap.valid()) fail(path, "invalid capture thresholds");
}

ExperimentConfig from_json(const json& root) {
    ExperimentConfig cfg;
    Section top(root, "config");
    top.has("annotations");  // emitted by dump_config; ignored on reload

    {
        const json node = top.sub("constants");
        Section s(node, "constants");
        s.get("mu", cfg.constants.mu);
        s.get("r0_orbit", cfg.constants.r0_orbit);
        s.get("mass", cfg.constants.mass);
        s.get("r_max", cfg.constants.r_max);
        s.get("u_max", cfg.constants.u_max);
        if (s.has("sigma_mu")) {
            const double given = node.at("sigma_mu").get<double>();
            const double computed = cfg.constants.sigma_mu();
            if (std::fabs(given - computed) > 1e-9) {
                fail("constants.sigma_mu",
                     "inconsistent with mu and r0_orbit (computed " +
                         std::to_string(computed) + ")");
            }
        }
        s.finish();
        if (!(cfg.constants.mu > 0.0)) fail("constants.mu", "must be positive");
        if (!(cfg.constants.r0_orbit > 0.0)) fail("constants.r0_orbit", "must be positive");
        if (!(cfg.constants.mass > 0.0)) fail("constants.mass", "must be positive");
        if (!(cfg.constants.u_max > 0.0)) fail("constants.u_max", "must be positive");
    }

    {
        const json node = top.sub("inertia");
        Section s(node, "inertia");
        s.get("ixx", cfg.mc.inertia.ixx);
        s.get("iyy", cfg.mc.inertia.iyy);
        s.get("izz", cfg.mc.inertia.izz);
        s.finish();
        if (!cfg.mc.inertia.valid()) fail("inertia", "violates the triangle inequality");
        cfg.val.inertia = cfg.mc.inertia;
    }

    {
        const json node = top.sub("mc");
        Section s(node, "mc");
        s.get("n_samples", cfg.mc.n_samples);
        if (s.has("rso_mode")) {
            cfg.mc.rso_mode =
                parse_mode(node.at("rso_mode").get<std::string>(), "mc.rso_mode");
        }
        s.get("omega_bound_b", cfg.mc.omega_bound_b);
        s.get("attitude_bound", cfg.mc.attitude_bound);
        s.get("dt", cfg.mc.dt);
        s.get("n_key", cfg.mc.n_key);
        s.get("n_agloc", cfg.mc.n_agloc);
        s.get("fov", cfg.mc.fov);
        s.get("occ", cfg.mc.occ);
        s.get("horizon", cfg.mc.horizon);
        s.get("imaging_period", cfg.mc.imaging_period);
        s.get("threshold_m", cfg.mc.threshold_m);
        s.get("waypoint_radius", cfg.mc.waypoint_radius);
        s.get("nmc_x0", cfg.mc.nmc_x0);
        s.get("sphere_radius", cfg.mc.sphere_radius);
        s.get("n_deputies", cfg.mc.n_deputies);
        s.get("rng_seed", cfg.mc.rng_seed);
        s.get("sample_offset", cfg.mc.sample_offset);
        s.finish();
        if (!(cfg.mc.fov > 0.0) || cfg.mc.fov > M_PI) fail("mc.fov", "must be in (0, pi]");
        if (!(cfg.mc.horizon > 0.0)) fail("mc.horizon", "must be positive");
        if (cfg.mc.threshold_m < 0.0 || cfg.mc.threshold_m > 1.0) {
            fail("mc.threshold_m", "must be in [0, 1]");
        }
        if (!cfg.mc.valid()) fail("mc", "invalid Monte-Carlo configuration");
    }

    {
        const json node = top.sub("val");
        Section s(node, "val");
        s.get("threshold_m", cfg.val.threshold_m);
        s.get("horizon_t", cfg.val.horizon_t);
        s.get("omega_bound_b", cfg.val.omega_bound_b);
        s.get("entrance_r_lo", cfg.val.entrance_r_lo);
        s.get("entrance_r_hi", cfg.val.entrance_r_hi);
        s.get("keep_out", cfg.val.keep_out);
        s.get("trials_per_cell", cfg.val.trials_per_cell);
        s.get("dt", cfg.val.dt);
        s.get("imaging_period", cfg.val.imaging_period);
        s.get("n_deputies", cfg.val.n_deputies);
        s.get("n_agloc", cfg.val.n_agloc);
        s.get("waypoint_radius", cfg.val.waypoint_radius);
        s.get("nmc_x0", cfg.val.nmc_x0);
        s.get("geometry_ply", cfg.val.geometry_ply);
        s.get("standin_vertices", cfg.val.standin_vertices);
        s.get("greedy_prediction_stride", cfg.val.greedy_prediction_stride);
        s.get("ph_assignment", cfg.val.ph_assignment);
        s.get("nmc_assignment", cfg.val.nmc_assignment);
        s.get("rng_seed", cfg.val.rng_seed);
        if (s.has("modes")) {
            cfg.val.modes.clear();
            for (const auto& m : node.at("modes")) {
                cfg.val.modes.push_back(parse_mode(m.get<std::string>(), "val.modes"));
            }
        }
        if (s.has("policies")) {
            cfg.val.policies.clear();
            for (const auto& p : node.at("policies")) {
                cfg.val.policies.push_back(parse_policy(p.get<std::string>(), "val.policies"));
            }
        }
        s.finish();
        if (!(cfg.val.horizon_t > 0.0)) fail("val.horizon_t", "must be positive");
        if (cfg.val.threshold_m < 0.0 || cfg.val.threshold_m > 1.0) {
            fail("val.threshold_m", "must be in [0, 1]");
        }
        if (cfg.val.entrance_r_lo <= 0.0 || cfg.val.entrance_r_hi < cfg.val.entrance_r_lo) {
            fail("val.entrance_r_lo", "need 0 < r_lo <= r_hi");
        }
        if (!cfg.val.valid()) fail("val", "invalid validation configuration");
    }

    if (top.has("capture")) {
        read_capture(root.at("capture"), "capture", cfg.val.capture);
    }

    {
        const json node = top.sub("reward");
        Section s(node, "reward");
        s.get("gamma", cfg.val.reward.gamma);
        s.get("fuel_weight", cfg.val.reward.fuel_weight);
        s.finish();
        if (!cfg.val.reward.valid()) fail("reward.gamma", "must be in (0, 1]");
    }

    {
        const json node = top.sub("strategy_files");
        Section s(node, "strategy_files");
        s.get("point_hold", cfg.ph_strategy_file);
        s.get("nmc_hold", cfg.nmc_strategy_file);
        s.finish();
    }

    top.get("output_dir", cfg.output_dir);
    top.finish();
    return cfg;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json root;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        root = json::object();
    } else {
        try {
            root = json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config JSON: ") + e.what());
        }
    }
    return from_json(root);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0) {
        return from_json(toml_subset_to_json(f));
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_json(buf.str());
}

std::string dump_config(const ExperimentConfig& cfg) {
    json j;
    j["constants"] = {{"mu", cfg.constants.mu},
                      {"r0_orbit", cfg.constants.r0_orbit},
                      {"mass", cfg.constants.mass},
                      {"r_max", cfg.constants.r_max},
                      {"u_max", cfg.constants.u_max}};
    j["inertia"] = {{"ixx", cfg.mc.inertia.ixx},
                    {"iyy", cfg.mc.inertia.iyy},
                    {"izz", cfg.mc.inertia.izz}};
    j["mc"] = {{"n_samples", cfg.mc.n_samples},
               {"rso_mode", cfg.mc.rso_mode == RsoMode::StaticCWH ? "static" : "tumble"},
               {"omega_bound_b", cfg.mc.omega_bound_b},
               {"attitude_bound", cfg.mc.attitude_bound},
               {"dt", cfg.mc.dt},
               {"n_key", cfg.mc.n_key},
               {"n_agloc", cfg.mc.n_agloc},
               {"fov", cfg.mc.fov},
               {"occ", cfg.mc.occ},
               {"horizon", cfg.mc.horizon},
               {"imaging_period", cfg.mc.imaging_period},
               {"threshold_m", cfg.mc.threshold_m},
               {"waypoint_radius", cfg.mc.waypoint_radius},
               {"nmc_x0", cfg.mc.nmc_x0},
               {"sphere_radius", cfg.mc.sphere_radius},
               {"n_deputies", cfg.mc.n_deputies},
               {"rng_seed", cfg.mc.rng_seed},
               {"sample_offset", cfg.mc.sample_offset}};
    json modes = json::array();
    for (const auto m : cfg.val.modes) {
        modes.push_back(m == RsoMode::StaticCWH ? "static" : "tumble");
    }
    json policies = json::array();
    for (const auto p : cfg.val.policies) {
        switch (p) {
            case StrategyKind::PointHold: policies.push_back("PH"); break;
            case StrategyKind::NmcHold: policies.push_back("NMC"); break;
            case StrategyKind::GreedyActive: policies.push_back("greedy"); break;
            case StrategyKind::WaypointSequence:
                policies.push_back("waypoint_sequence");
                break;
        }
    }
    j["val"] = {{"threshold_m", cfg.val.threshold_m},
                {"horizon_t", cfg.val.horizon_t},
                {"omega_bound_b", cfg.val.omega_bound_b},
                {"entrance_r_lo", cfg.val.entrance_r_lo},
                {"entrance_r_hi", cfg.val.entrance_r_hi},
                {"keep_out", cfg.val.keep_out},
                {"trials_per_cell", cfg.val.trials_per_cell},
                {"dt", cfg.val.dt},
                {"imaging_period", cfg.val.imaging_period},
                {"n_deputies", cfg.val.n_deputies},
                {"n_agloc", cfg.val.n_agloc},
                {"waypoint_radius", cfg.val.waypoint_radius},
                {"nmc_x0", cfg.val.nmc_x0},
                {"geometry_ply", cfg.val.geometry_ply},
                {"standin_vertices", cfg.val.standin_vertices},
                {"greedy_prediction_stride", cfg.val.greedy_prediction_stride},
                {"ph_assignment", cfg.val.ph_assignment},
                {"nmc_assignment", cfg.val.nmc_assignment},
                {"rng_seed", cfg.val.rng_seed},
                {"modes", modes},
                {"policies", policies}};
    const auto& cap = cfg.val.capture;
    j["capture"] = {{"fov_half_angle", cap.fov_half_angle},
                    {"bright_max", cap.bright_max},
                    {"dark_min", cap.dark_min},
                    {"illum_mode",
                     cap.illum_mode == IllumMode::Binary ? "binary" : "blinn_phong"},
                    {"ambient", cap.ambient},
                    {"diffuse", cap.diffuse},
                    {"specular", cap.specular},
                    {"shininess", cap.shininess},
                    {"earth_angle_lo", cap.earth_angle_lo},
                    {"earth_angle_hi", cap.earth_angle_hi}};
    j["reward"] = {{"gamma", cfg.val.reward.gamma},
                   {"fuel_weight", cfg.val.reward.fuel_weight}};
    j["strategy_files"] = {{"point_hold", cfg.ph_strategy_file},
                           {"nmc_hold", cfg.nmc_strategy_file}};
    j["output_dir"] = cfg.output_dir;
    j["annotations"] = {
        {"constants.mu", "gravitational parameter [m^3/s^2], WGS-84 default"},
        {"constants.r0_orbit", "chief orbital radius [m]; sigma_mu derives from mu and this"},
        {"mc.threshold_m", "coverage fraction ending the time-to-threshold clock"},
        {"mc.horizon", "episode horizon [s], one orbital period by default"},
        {"val.trials_per_cell", "trials per (mode, policy) cell of the factorial campaign"},
        {"val.geometry_ply", "PLY point cloud path; empty selects the procedural stand-in"},
        {"capture.illum_mode", "binary diffuse gate or Blinn-Phong with Earth shadow"}};
    return j.dump(2) + "\n";
}

}  // namespace inspsim
