#include "wpnet/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "wpnet/allocation.hpp"
#include "wpnet/csv.hpp"
#include "wpnet/energy.hpp"
#include "wpnet/errors.hpp"
#include "wpnet/log.hpp"
#include "wpnet/montecarlo.hpp"
#include "wpnet/version.hpp"

namespace wpnet {

namespace fs = std::filesystem;

Experiment parse_experiment(const std::string& name) {
    if (name == "histogram") return Experiment::histogram;
    if (name == "fairness") return Experiment::fairness;
    if (name == "energy") return Experiment::energy;
    if (name == "all") return Experiment::all;
    throw ValidationError("unknown experiment '" + name +
                          "' (expected histogram, fairness, energy or all)");
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

/// Rethrow an analytic failure tagged with the cluster it came from.
template <typename F>
auto with_cluster(int id, F&& f) {
    const auto tag = [&](const std::string& msg) {
        return "cluster " + std::to_string(id) + ": " + msg;
    };
    try {
        return f();
    } catch (const GeometryError& e) {
        throw GeometryError(tag(e.what()));
    } catch (const NumericError& e) {
        throw NumericError(tag(e.what()), e.achieved_rel_error);
    } catch (const DomainError& e) {
        throw DomainError(tag(e.what()));
    }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write failure on " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

struct ProductWriter {
    fs::path dir;
    RunManifest* manifest;

    void emit(const std::string& name, const std::string& content) const {
        write_file_atomic(dir / name, content);
        manifest->checksums.emplace_back(name, fnv1a_hex(content));
        log::info("wrote %s (%zu bytes)", (dir / name).c_str(), content.size());
    }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::vector<EtaComponents> analytic_etas(const std::vector<ClusterSpec>& specs, double alpha) {
    std::vector<EtaComponents> etas;
    etas.reserve(specs.size());
    for (const auto& spec : specs)
        etas.push_back(with_cluster(spec.id, [&] {
            return EtaComponents{eta_intra(spec, alpha), eta_inter(spec, specs, alpha)};
        }));
    return etas;
}

std::vector<ComplexMatrix> analytic_correlations(const std::vector<ClusterSpec>& specs,
                                                 const SystemParams& params,
                                                 const SteeringModel& steering) {
    std::vector<ComplexMatrix> c_ks;
    c_ks.reserve(specs.size());
    for (const auto& spec : specs)
        c_ks.push_back(
            with_cluster(spec.id, [&] { return correlation_matrix(spec, params, steering); }));
    return c_ks;
}

void run_histogram(const ScenarioConfig& config, const std::vector<ClusterSpec>& specs,
                   const ProductWriter& out) {
    if (config.monte_carlo.histogram_bins < 1)
        throw ValidationError("histogram experiment needs monte_carlo.histogram_bins >= 1");
    const ClusterSpec& target = specs.front();
    const double analytic =
        with_cluster(target.id, [&] { return eta_inter(target, specs, config.system.alpha); });

    McConfig mc;
    mc.n_realizations = config.monte_carlo.n_realizations;
    mc.seed = derive_seed(config.seed, 0x68697374u);
    mc.histogram_bins = config.monte_carlo.histogram_bins;
    mc.estimator = McEstimator::eta_inter;
    const McEstimate est = mc_eta_inter(target, specs, config.system.alpha, mc);

    std::ostringstream hist;
    if (est.histogram) write_histogram_csv(*est.histogram, hist);
    out.emit("histogram.csv", hist.str());

    std::ostringstream meta;
    meta << "analytic_db,empirical_mean_db,empirical_se_db,n_realizations,target_cluster\n"
         << format_number(to_db(analytic)) << ',' << format_number(est.mean_db()) << ','
         << format_number(est.standard_error_db()) << ',' << est.n << ',' << target.id << '\n';
    out.emit("histogram_meta.csv", meta.str());
}

std::string trajectory_to_string(const Trajectory& traj) {
    std::ostringstream os;
    write_trajectory_csv(traj, os);
    return os.str();
}

void run_fairness(const ScenarioConfig& config, const std::vector<ClusterSpec>& specs,
                  const ProductWriter& out) {
    const auto etas = analytic_etas(specs, config.system.alpha);
    const auto c_ks = analytic_correlations(specs, config.system, config.steering);

    PfPolicy fair = config.policy;
    fair.mode = PfMode::proportional_fair;
    PfPolicy baseline = config.policy;
    baseline.mode = PfMode::sum_energy;

    const Trajectory traj_fair = run_horizon(c_ks, etas, config.system, config.steering, fair);
    const Trajectory traj_base = run_horizon(c_ks, etas, config.system, config.steering, baseline);

    std::ostringstream fi;
    fi << "t,fi_fair,fi_baseline\n";
    for (std::size_t i = 0; i < traj_fair.frames.size(); ++i)
        fi << traj_fair.frames[i].t << ',' << format_number(traj_fair.frames[i].fi) << ','
           << format_number(traj_base.frames[i].fi) << '\n';
    out.emit("fairness.csv", fi.str());
    out.emit("trajectory_fair.csv", trajectory_to_string(traj_fair));
    out.emit("trajectory_baseline.csv", trajectory_to_string(traj_base));
}

void run_energy(const ScenarioConfig& config, const ProductWriter& out) {
    // Three density assignments around the configured base value; the
    // correlation matrices depend only on geometry, so they are shared.
    const double base = config.clusters.density.base;
    struct Case {
        const char* name;
        DensityProfile profile;
    };
    const Case cases[3] = {
        {"case1", {DensityProfile::Kind::uniform, base, 1.0, 1.0}},
        {"case2", {DensityProfile::Kind::linspace, base, 0.5, 2.0}},
        {"case3", {DensityProfile::Kind::linspace, base, 0.1, 1.0}},
    };

    ScenarioConfig geo = config;
    geo.clusters.density = cases[0].profile;
    const auto base_specs = geo.cluster_specs();
    const auto c_ks = analytic_correlations(base_specs, config.system, config.steering);

    std::vector<Trajectory> on;
    for (const Case& c : cases) {
        ScenarioConfig cc = config;
        cc.clusters.density = c.profile;
        const auto specs = cc.cluster_specs();
        const auto etas = analytic_etas(specs, config.system.alpha);
        on.push_back(run_horizon(c_ks, etas, config.system, config.steering, config.policy));
    }
    // With harvesting off only the downlink remains, which is independent of
    // the density assignment: one shared reference run.
    const std::vector<EtaComponents> zero_etas(base_specs.size());
    const Trajectory off =
        run_horizon(c_ks, zero_etas, config.system, config.steering, config.policy);

    std::ostringstream os;
    os << "t";
    for (const Case& c : cases) os << ',' << c.name << "_eh_on";
    os << ",eh_off\n";
    for (std::size_t i = 0; i < off.frames.size(); ++i) {
        os << off.frames[i].t;
        for (std::size_t c = 0; c < 3; ++c) os << ',' << format_number(on[c].frames[i].t_bar);
        os << ',' << format_number(off.frames[i].t_bar) << '\n';
    }
    out.emit("energy.csv", os.str());
}

std::string manifest_to_csv(const RunManifest& m) {
    std::ostringstream os;
    os << "key,value\n";
    os << "version," << m.version << '\n';
    os << "seed," << m.seed << '\n';
    os << "config_hash," << m.config_hash << '\n';
    for (const auto& [file, sum] : m.checksums) os << "checksum:" << file << ',' << sum << '\n';
    for (const auto& [step, secs] : m.timings)
        os << "seconds:" << step << ',' << format_number(secs) << '\n';
    return os.str();
}

}  // namespace

RunManifest run_experiment(const ScenarioConfig& config, Experiment what) {
    validate_config(config);
    const auto specs = config.cluster_specs();

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.output_dir + ": " +
                          ec.message());

    RunManifest manifest;
    manifest.version = kVersion;
    manifest.seed = config.seed;
    manifest.config_hash = fnv1a_hex(write_config(config));
    ProductWriter out{fs::path(config.output_dir), &manifest};

    const bool everything = what == Experiment::all;
    if (everything || what == Experiment::histogram) {
        Timer t;
        run_histogram(config, specs, out);
        manifest.timings.emplace_back("histogram", t.seconds());
    }
    if (everything || what == Experiment::fairness) {
        Timer t;
        run_fairness(config, specs, out);
        manifest.timings.emplace_back("fairness", t.seconds());
    }
    if (everything || what == Experiment::energy) {
        Timer t;
        run_energy(config, out);
        manifest.timings.emplace_back("energy", t.seconds());
    }

    write_file_atomic(fs::path(config.output_dir) / "manifest.csv", manifest_to_csv(manifest));
    return manifest;
}

}  // namespace wpnet
