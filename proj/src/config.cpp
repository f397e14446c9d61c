#include "wpnet/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wpnet/errors.hpp"

namespace wpnet {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(where + ": unknown key '" + it.key() + "'");
    }
}

double get_double(const json& obj, const char* key, double dflt, const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + ": '" + std::string(key) + "' must be a number");
    return v.get<double>();
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t dflt,
                     const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(where + ": '" + std::string(key) + "' must be an integer");
    return v.get<std::int64_t>();
}

std::uint64_t get_uint(const json& obj, const char* key, std::uint64_t dflt,
                       const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        fail(where + ": '" + std::string(key) + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& dflt,
                       const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(where + ": '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

/// Power given as exactly one of <name>_watts / <name>_dbm.
double get_power(const json& obj, const std::string& name, double dflt_watts,
                 const std::string& where) {
    const std::string watts_key = name + "_watts";
    const std::string dbm_key = name + "_dbm";
    const bool has_watts = obj.contains(watts_key);
    const bool has_dbm = obj.contains(dbm_key);
    if (has_watts && has_dbm)
        fail(where + ": give only one of '" + watts_key + "' and '" + dbm_key + "'");
    if (has_dbm) return dbm_to_watts(get_double(obj, dbm_key.c_str(), 0.0, where));
    return get_double(obj, watts_key.c_str(), dflt_watts, where);
}

SystemParams parse_system(const json& obj, const SystemParams& dflt) {
    const std::string where = "system";
    check_keys(obj, where,
               {"alpha", "sigma_g2", "sigma_gamma2", "sigma_n2", "sigma_w2", "p_tx_watts",
                "p_tx_dbm", "p_tau_watts", "p_tau_dbm", "p_act", "t_frame", "t_dl", "n_slots",
                "m_antennas"});
    SystemParams p = dflt;
    p.alpha = get_double(obj, "alpha", dflt.alpha, where);
    p.sigma_g2 = get_double(obj, "sigma_g2", dflt.sigma_g2, where);
    p.sigma_gamma2 = get_double(obj, "sigma_gamma2", dflt.sigma_gamma2, where);
    p.sigma_n2 = get_double(obj, "sigma_n2", dflt.sigma_n2, where);
    p.sigma_w2 = get_double(obj, "sigma_w2", dflt.sigma_w2, where);
    p.p_tx = get_power(obj, "p_tx", dflt.p_tx, where);
    p.p_tau = get_power(obj, "p_tau", dflt.p_tau, where);
    p.p_act = get_double(obj, "p_act", dflt.p_act, where);
    p.t_frame = get_double(obj, "t_frame", dflt.t_frame, where);
    p.t_dl = get_double(obj, "t_dl", dflt.t_dl, where);
    p.n_slots = static_cast<int>(get_int(obj, "n_slots", dflt.n_slots, where));
    p.m_antennas = static_cast<int>(get_int(obj, "m_antennas", dflt.m_antennas, where));
    p.t_ul = p.t_frame - p.t_dl;
    p.t_slot = p.n_slots > 0 ? p.t_ul / p.n_slots : 0.0;
    return p;
}

LayoutSpec parse_layout(const json& obj, const LayoutSpec& dflt) {
    const std::string where = "clusters.layout";
    LayoutSpec l = dflt;
    const std::string kind =
        get_string(obj, "kind", dflt.kind == LayoutSpec::Kind::annulus ? "annulus" : "explicit",
                   where);
    if (kind == "annulus") {
        check_keys(obj, where, {"kind", "inner_radius", "outer_radius", "min_separation", "seed"});
        l.kind = LayoutSpec::Kind::annulus;
        l.inner_radius = get_double(obj, "inner_radius", dflt.inner_radius, where);
        l.outer_radius = get_double(obj, "outer_radius", dflt.outer_radius, where);
        l.min_separation = get_double(obj, "min_separation", dflt.min_separation, where);
        l.seed = get_uint(obj, "seed", dflt.seed, where);
        l.centers.clear();
    } else if (kind == "explicit") {
        check_keys(obj, where, {"kind", "centers"});
        l.kind = LayoutSpec::Kind::explicit_centers;
        if (!obj.contains("centers")) fail(where + ": explicit layout needs 'centers'");
        const json& cs = obj.at("centers");
        if (!cs.is_array()) fail(where + ": 'centers' must be an array of [x, y] pairs");
        l.centers.clear();
        for (const json& c : cs) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                fail(where + ": each center must be an [x, y] number pair");
            l.centers.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
    } else {
        fail(where + ": kind must be 'annulus' or 'explicit'");
    }
    return l;
}

DensityProfile parse_density(const json& obj, const DensityProfile& dflt) {
    const std::string where = "clusters.density";
    DensityProfile d = dflt;
    const std::string kind = get_string(
        obj, "kind", dflt.kind == DensityProfile::Kind::uniform ? "uniform" : "linspace", where);
    if (kind == "uniform") {
        check_keys(obj, where, {"kind", "base"});
        d.kind = DensityProfile::Kind::uniform;
        d.base = get_double(obj, "base", dflt.base, where);
        d.lo_factor = d.hi_factor = 1.0;
    } else if (kind == "linspace") {
        check_keys(obj, where, {"kind", "base", "lo_factor", "hi_factor"});
        d.kind = DensityProfile::Kind::linspace;
        d.base = get_double(obj, "base", dflt.base, where);
        d.lo_factor = get_double(obj, "lo_factor", dflt.lo_factor, where);
        d.hi_factor = get_double(obj, "hi_factor", dflt.hi_factor, where);
    } else {
        fail(where + ": kind must be 'uniform' or 'linspace'");
    }
    return d;
}

ClusterConfig parse_clusters(const json& obj, const ClusterConfig& dflt) {
    const std::string where = "clusters";
    check_keys(obj, where, {"count", "radius", "min_distance", "layout", "density"});
    ClusterConfig c = dflt;
    c.count = static_cast<int>(get_int(obj, "count", dflt.count, where));
    c.radius = get_double(obj, "radius", dflt.radius, where);
    c.min_distance = get_double(obj, "min_distance", dflt.min_distance, where);
    if (obj.contains("layout")) c.layout = parse_layout(obj.at("layout"), dflt.layout);
    if (obj.contains("density")) c.density = parse_density(obj.at("density"), dflt.density);
    return c;
}

PfPolicy parse_policy(const json& obj, const PfPolicy& dflt) {
    const std::string where = "policy";
    check_keys(obj, where, {"mode", "t_c", "horizon"});
    PfPolicy p = dflt;
    const std::string mode = get_string(
        obj, "mode", dflt.mode == PfMode::proportional_fair ? "proportional_fair" : "sum_energy",
        where);
    if (mode == "proportional_fair")
        p.mode = PfMode::proportional_fair;
    else if (mode == "sum_energy")
        p.mode = PfMode::sum_energy;
    else
        fail(where + ": mode must be 'proportional_fair' or 'sum_energy'");
    p.t_c = static_cast<int>(get_int(obj, "t_c", dflt.t_c, where));
    p.horizon = static_cast<int>(get_int(obj, "horizon", dflt.horizon, where));
    return p;
}

McSettings parse_monte_carlo(const json& obj, const McSettings& dflt) {
    const std::string where = "monte_carlo";
    check_keys(obj, where, {"n_realizations", "n_slots", "histogram_bins"});
    McSettings m = dflt;
    m.n_realizations = static_cast<std::size_t>(get_uint(
        obj, "n_realizations", static_cast<std::uint64_t>(dflt.n_realizations), where));
    m.n_slots = static_cast<int>(get_int(obj, "n_slots", dflt.n_slots, where));
    m.histogram_bins = static_cast<int>(get_int(obj, "histogram_bins", dflt.histogram_bins, where));
    return m;
}

double uniform_01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

double DensityProfile::density(int k, int count) const {
    if (kind == Kind::uniform || count <= 1) return kind == Kind::uniform ? base : base * lo_factor;
    const double f = lo_factor + (hi_factor - lo_factor) * (static_cast<double>(k) / (count - 1));
    return base * f;
}

std::vector<Point2> expand_layout(const LayoutSpec& layout, int count, double radius) {
    if (count < 1) throw ValidationError("layout: cluster count must be >= 1");
    if (layout.kind == LayoutSpec::Kind::explicit_centers) {
        if (static_cast<int>(layout.centers.size()) != count)
            throw ValidationError("layout: " + std::to_string(layout.centers.size()) +
                                  " centers for count " + std::to_string(count));
        return layout.centers;
    }
    if (!(layout.outer_radius > layout.inner_radius) || layout.inner_radius < 0.0)
        throw ValidationError("layout: need 0 <= inner_radius < outer_radius");
    if (!(layout.inner_radius > radius))
        throw ValidationError("layout: inner_radius must exceed the cluster radius "
                              "(BS must stay outside every disk)");
    if (layout.min_separation < 0.0) throw ValidationError("layout: min_separation must be >= 0");

    std::uint64_t state = layout.seed;
    const double r2_lo = layout.inner_radius * layout.inner_radius;
    const double r2_hi = layout.outer_radius * layout.outer_radius;
    for (int restart = 0; restart < 256; ++restart) {
        std::vector<Point2> centers;
        centers.reserve(count);
        int attempts = 0;
        while (static_cast<int>(centers.size()) < count && attempts < 20000) {
            ++attempts;
            const double r = std::sqrt(r2_lo + uniform_01(state) * (r2_hi - r2_lo));
            const double phi = 2.0 * kPi * uniform_01(state) - kPi;
            const Point2 c(r * std::cos(phi), r * std::sin(phi));
            bool ok = true;
            for (const Point2& prev : centers)
                if ((c - prev).norm() < layout.min_separation) {
                    ok = false;
                    break;
                }
            if (ok) centers.push_back(c);
        }
        if (static_cast<int>(centers.size()) == count) return centers;
    }
    throw ValidationError("layout: could not place " + std::to_string(count) +
                          " centers with min_separation " +
                          std::to_string(layout.min_separation) + " in the annulus");
}

std::vector<ClusterSpec> ScenarioConfig::cluster_specs() const {
    const std::vector<Point2> centers = expand_layout(clusters.layout, clusters.count,
                                                      clusters.radius);
    std::vector<ClusterSpec> specs;
    specs.reserve(centers.size());
    for (int k = 0; k < clusters.count; ++k) {
        ClusterSpec s;
        s.center = centers[static_cast<std::size_t>(k)];
        s.radius = clusters.radius;
        s.density = clusters.density.density(k, clusters.count);
        s.min_distance = clusters.min_distance;
        s.id = k;
        validate_cluster(s);
        specs.push_back(s);
    }
    return specs;
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    const ScenarioConfig dflt = default_config();
    check_keys(root, origin,
               {"seed", "output_dir", "system", "steering", "clusters", "policy", "monte_carlo"});

    ScenarioConfig cfg = dflt;
    cfg.seed = get_uint(root, "seed", dflt.seed, origin);
    cfg.output_dir = get_string(root, "output_dir", dflt.output_dir, origin);
    if (root.contains("system")) cfg.system = parse_system(root.at("system"), dflt.system);
    if (root.contains("steering")) {
        check_keys(root.at("steering"), "steering", {"radius_wavelengths"});
        cfg.steering.radius_wavelengths = get_double(root.at("steering"), "radius_wavelengths",
                                                     dflt.steering.radius_wavelengths, "steering");
    }
    cfg.steering.m_antennas = cfg.system.m_antennas;
    if (root.contains("clusters")) cfg.clusters = parse_clusters(root.at("clusters"), dflt.clusters);
    if (root.contains("policy")) cfg.policy = parse_policy(root.at("policy"), dflt.policy);
    if (root.contains("monte_carlo"))
        cfg.monte_carlo = parse_monte_carlo(root.at("monte_carlo"), dflt.monte_carlo);

    validate_config(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on config file: " + path);
    return parse_config(buf.str(), path);
}

std::string write_config(const ScenarioConfig& config) {
    json root;
    root["seed"] = config.seed;
    root["output_dir"] = config.output_dir;

    json sys;
    sys["alpha"] = config.system.alpha;
    sys["sigma_g2"] = config.system.sigma_g2;
    sys["sigma_gamma2"] = config.system.sigma_gamma2;
    sys["sigma_n2"] = config.system.sigma_n2;
    sys["sigma_w2"] = config.system.sigma_w2;
    sys["p_tx_watts"] = config.system.p_tx;
    sys["p_tau_watts"] = config.system.p_tau;
    sys["p_act"] = config.system.p_act;
    sys["t_frame"] = config.system.t_frame;
    sys["t_dl"] = config.system.t_dl;
    sys["n_slots"] = config.system.n_slots;
    sys["m_antennas"] = config.system.m_antennas;
    root["system"] = sys;

    root["steering"] = json{{"radius_wavelengths", config.steering.radius_wavelengths}};

    json layout;
    if (config.clusters.layout.kind == LayoutSpec::Kind::annulus) {
        layout["kind"] = "annulus";
        layout["inner_radius"] = config.clusters.layout.inner_radius;
        layout["outer_radius"] = config.clusters.layout.outer_radius;
        layout["min_separation"] = config.clusters.layout.min_separation;
        layout["seed"] = config.clusters.layout.seed;
    } else {
        layout["kind"] = "explicit";
        json centers = json::array();
        for (const Point2& c : config.clusters.layout.centers)
            centers.push_back(json::array({c.x(), c.y()}));
        layout["centers"] = centers;
    }

    json density;
    if (config.clusters.density.kind == DensityProfile::Kind::uniform) {
        density["kind"] = "uniform";
        density["base"] = config.clusters.density.base;
    } else {
        density["kind"] = "linspace";
        density["base"] = config.clusters.density.base;
        density["lo_factor"] = config.clusters.density.lo_factor;
        density["hi_factor"] = config.clusters.density.hi_factor;
    }

    root["clusters"] = json{{"count", config.clusters.count},
                            {"radius", config.clusters.radius},
                            {"min_distance", config.clusters.min_distance},
                            {"layout", layout},
                            {"density", density}};

    root["policy"] =
        json{{"mode", config.policy.mode == PfMode::proportional_fair ? "proportional_fair"
                                                                      : "sum_energy"},
             {"t_c", config.policy.t_c},
             {"horizon", config.policy.horizon}};

    root["monte_carlo"] = json{{"n_realizations", config.monte_carlo.n_realizations},
                               {"n_slots", config.monte_carlo.n_slots},
                               {"histogram_bins", config.monte_carlo.histogram_bins}};

    return root.dump(2) + "\n";
}

ScenarioConfig default_config() {
    ScenarioConfig cfg;
    cfg.seed = 1;
    cfg.output_dir = "wpnet-out";

    cfg.system.alpha = 2.0;
    cfg.system.sigma_g2 = 1.0;
    cfg.system.sigma_gamma2 = 1.0;
    cfg.system.sigma_n2 = 0.0;
    cfg.system.sigma_w2 = 0.0;
    cfg.system.p_tx = dbm_to_watts(40.0);
    cfg.system.p_tau = dbm_to_watts(20.0);
    cfg.system.p_act = 0.1;
    cfg.system.t_frame = 1.0;
    cfg.system.t_dl = 0.5;
    cfg.system.n_slots = 500;
    cfg.system.m_antennas = 100;
    cfg.system.t_ul = cfg.system.t_frame - cfg.system.t_dl;
    cfg.system.t_slot = cfg.system.t_ul / cfg.system.n_slots;

    cfg.steering.m_antennas = cfg.system.m_antennas;
    cfg.steering.radius_wavelengths = -1.0;

    cfg.clusters.count = 10;
    cfg.clusters.radius = 10.0;
    cfg.clusters.min_distance = 0.1;
    cfg.clusters.layout.kind = LayoutSpec::Kind::annulus;
    cfg.clusters.layout.inner_radius = 30.0;
    cfg.clusters.layout.outer_radius = 100.0;
    cfg.clusters.layout.min_separation = 35.0;
    cfg.clusters.layout.seed = 87;
    cfg.clusters.density.kind = DensityProfile::Kind::uniform;
    cfg.clusters.density.base = 0.1;

    cfg.policy.mode = PfMode::proportional_fair;
    cfg.policy.t_c = 50;
    cfg.policy.horizon = 1000;

    cfg.monte_carlo.n_realizations = 10000;
    cfg.monte_carlo.n_slots = 500;
    cfg.monte_carlo.histogram_bins = 80;
    return cfg;
}

void validate_config(const ScenarioConfig& config) {
    if (config.output_dir.empty()) throw ValidationError("output_dir must be nonempty");
    validate_params(config.system);
    if (config.system.alpha < 2.0)
        throw ValidationError("system.alpha must be >= 2 (path-loss geometry requires it)");
    if (config.steering.m_antennas != config.system.m_antennas)
        throw ValidationError("steering antenna count must match system.m_antennas");
    if (config.clusters.count < 1) throw ValidationError("clusters.count must be >= 1");
    if (!(config.clusters.radius > 0.0)) throw ValidationError("clusters.radius must be > 0");
    if (config.clusters.min_distance < 0.0)
        throw ValidationError("clusters.min_distance must be >= 0");
    if (!(config.clusters.density.base > 0.0))
        throw ValidationError("clusters.density.base must be > 0");
    if (config.clusters.density.kind == DensityProfile::Kind::linspace &&
        (!(config.clusters.density.lo_factor > 0.0) || !(config.clusters.density.hi_factor > 0.0)))
        throw ValidationError("clusters.density factors must be > 0");
    if (config.policy.t_c < 1) throw ValidationError("policy.t_c must be >= 1");
    if (config.policy.horizon < 1) throw ValidationError("policy.horizon must be >= 1");
    if (config.monte_carlo.n_realizations < 1)
        throw ValidationError("monte_carlo.n_realizations must be >= 1");
    if (config.monte_carlo.n_slots < 1) throw ValidationError("monte_carlo.n_slots must be >= 1");
    if (config.monte_carlo.histogram_bins < 0)
        throw ValidationError("monte_carlo.histogram_bins must be >= 0");
    config.cluster_specs();  // expands the layout and checks every ClusterSpec invariant
}

}  // namespace wpnet
