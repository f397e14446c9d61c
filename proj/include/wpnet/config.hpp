#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpnet/allocation.hpp"
#include "wpnet/energy.hpp"
#include "wpnet/geometry.hpp"
#include "wpnet/steering.hpp"
#include "wpnet/types.hpp"

namespace wpnet {

/// Cluster center placement rule.
struct LayoutSpec {
    enum class Kind { annulus, explicit_centers };
    Kind kind = Kind::annulus;

    // annulus: centers drawn uniformly in radius range around the BS,
    // redrawing until all pairwise separations reach min_separation.
    double inner_radius = 30.0;
    double outer_radius = 100.0;
    double min_separation = 35.0;
    std::uint64_t seed = 0;

    // explicit_centers
    std::vector<Point2> centers;
};

/// Per-cluster density assignment from a shared base value.
struct DensityProfile {
    enum class Kind { uniform, linspace };
    Kind kind = Kind::uniform;
    double base = 0.1;      // sensors / m^2
    double lo_factor = 1.0; // linspace endpoints as multiples of base
    double hi_factor = 1.0;

    /// Density of cluster k out of `count`: base * factor_k with factor_k
    /// linearly spaced from lo_factor to hi_factor (all base when uniform).
    double density(int k, int count) const;
};

struct ClusterConfig {
    int count = 10;
    double radius = 10.0;       // meters
    double min_distance = 0.1;  // meters
    LayoutSpec layout;
    DensityProfile density;
};

/// Monte Carlo sizes shared by the estimator runs; seeds derive from the
/// scenario master seed.
struct McSettings {
    std::size_t n_realizations = 10000;
    int n_slots = 500;
    int histogram_bins = 80;
};

/// Fully validated scenario: SI units, expanded defaults.
struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::string output_dir = "wpnet-out";
    SystemParams system;
    SteeringModel steering;
    ClusterConfig clusters;
    PfPolicy policy;
    McSettings monte_carlo;

    /// Expand layout + density profile into concrete per-cluster specs.
    std::vector<ClusterSpec> cluster_specs() const;
};

/// Resolve the layout rule into center coordinates. For the annulus rule the
/// draw is deterministic in layout.seed; a draw is rejected while any pair of
/// centers is closer than min_separation or any disk contains the BS.
std::vector<Point2> expand_layout(const LayoutSpec& layout, int count, double radius);

/// Parse and validate a scenario file (JSON). Unknown keys are rejected.
/// Powers are given as exactly one of *_dbm / *_watts and normalized to
/// watts. Throws IoError (unreadable), ValidationError (bad value, with the
/// violated invariant named).
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Serialize a config so parse_config(write_config(c)) reproduces c exactly.
std::string write_config(const ScenarioConfig& config);

/// The shipped default scenario: 10 clusters of radius 10 m and density
/// 0.1 m^-2 with d_min = 0.1 m in a 30-100 m annulus under a pinned layout
/// seed; 1 s frames split evenly, 10 W downlink, 0.1 W sensors with 10%
/// activity, 100 antennas, fair policy over 1000 frames with a 50-frame
/// filter.
ScenarioConfig default_config();

/// Validate an already-built config (same checks load_config applies).
void validate_config(const ScenarioConfig& config);

}  // namespace wpnet
