#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wpnet/geometry.hpp"
#include "wpnet/types.hpp"

namespace wpnet {

/// Intensity of the parent process before hard-core thinning.
struct ParentIntensity {
    double delta = 0.0;  // sensors / m^2
};

/// One realization of sensor positions, one point list per cluster.
struct SampledNetwork {
    std::vector<std::vector<Point2>> points;
    std::vector<ClusterSpec> specs;
    std::uint64_t seed = 0;

    std::size_t total_count() const;
};

/// Retained intensity after Matern type-II thinning of a parent process of
/// intensity `delta` with hard-core distance `d_min`:
///   (1 - exp(-delta pi d_min^2)) / (pi d_min^2),  and delta when d_min = 0.
double matern_density(double delta, double d_min);

/// Parent intensity whose thinned process has intensity `lambda`.
/// Throws ValidationError when lambda * pi * d_min^2 >= 1 (no solution).
ParentIntensity invert_density(double lambda, double d_min);

/// Sample one cluster: Poisson parent count, uniform placement on the disk,
/// Matern type-II thinning (uniform marks, delete the larger mark of any
/// pair closer than d_min). Deterministic given the seed.
std::vector<Point2> sample_cluster(const ClusterSpec& spec, std::uint64_t seed);

/// Independent per-cluster samples from seed-derived streams.
SampledNetwork sample_network(const std::vector<ClusterSpec>& specs, std::uint64_t seed);

/// CSV rows (cluster_id, x, y) with a header.
void write_csv(const SampledNetwork& net, std::ostream& os);

}  // namespace wpnet
