#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpnet/config.hpp"

namespace wpnet {

/// The three data-product families and the combined run.
enum class Experiment { histogram, fairness, energy, all };

/// Accepts the CLI spellings histogram | fairness | energy | all.
Experiment parse_experiment(const std::string& name);

/// Reproducibility record written after the CSV products.
struct RunManifest {
    std::string version;
    std::uint64_t seed = 0;
    std::string config_hash;  // 64-bit FNV-1a of the serialized config, hex
    std::vector<std::pair<std::string, std::string>> checksums;  // file -> FNV-1a hex
    std::vector<std::pair<std::string, double>> timings;         // step -> seconds
};

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Run one experiment family (or all of them) and write the CSV products
/// under config.output_dir:
///   histogram: histogram.csv (dB bins of the empirical other-cluster
///     path-loss sum at a probe in cluster 0) + histogram_meta.csv (analytic
///     value, empirical mean and standard error, in dB).
///   fairness:  fairness.csv (per-frame fairness index, fair policy vs the
///     sum-energy baseline) + the two full trajectories.
///   energy:    energy.csv (smoothed network energy per frame for three
///     density assignments, harvesting on vs off).
/// The manifest file is written last, atomically. Outputs are a pure
/// function of (config, seed). Analytic failures carry the cluster id.
RunManifest run_experiment(const ScenarioConfig& config, Experiment what);

}  // namespace wpnet
