#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wpnet/energy.hpp"
#include "wpnet/geometry.hpp"
#include "wpnet/types.hpp"

namespace wpnet {

/// Which empirical estimator a configuration-driven run asks for.
enum class McEstimator { eta_intra, eta_inter, wpt, eh };

struct McConfig {
    std::size_t n_realizations = 10000;
    int n_slots = 500;          // per-frame slots for the harvesting estimator
    std::uint64_t seed = 1;
    int histogram_bins = 0;     // 0: no histogram
    McEstimator estimator = McEstimator::eta_inter;
};

struct Histogram {
    std::vector<double> edges;        // bins + 1 entries
    std::vector<std::size_t> counts;  // one per bin

    std::size_t total() const;
};

struct McEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t n = 0;
    std::optional<Histogram> histogram;  // of per-sample dB values

    double mean_db() const { return to_db(mean); }
    /// Delta-method standard error of mean_db.
    double standard_error_db() const {
        return 10.0 / std::log(10.0) * standard_error / mean;
    }
};

/// Empirical same-cluster path-loss sum: per realization, a uniformly random
/// retained point is tagged as the harvester and rho^-alpha is summed over
/// the remaining points. Realizations with fewer than two points contribute 0.
McEstimate mc_eta_intra(const ClusterSpec& spec, double alpha, const McConfig& cfg);

/// Empirical other-cluster path-loss sum at a random point of the target
/// cluster process (uniform fallback when the realization is empty; the
/// marginal law is the same). Histogram is built over dB values when
/// cfg.histogram_bins > 0.
McEstimate mc_eta_inter(const ClusterSpec& target, const std::vector<ClusterSpec>& others,
                        double alpha, const McConfig& cfg);

/// Empirical downlink energy: sensor position uniform on the disk, circular
/// complex Gaussian fading, accumulate t_dl * h^H Q h.
McEstimate mc_wpt_energy(const ClusterSpec& cluster, const ComplexMatrix& q,
                         const SystemParams& params, const SteeringModel& steering,
                         const McConfig& cfg);

/// Empirical channel correlation matrix: the mean of h h^H over random
/// sensor positions and fading draws. Returns the entrywise mean plus a
/// scalar worst-entry standard error.
struct McMatrixEstimate {
    ComplexMatrix mean;
    double max_entry_se = 0.0;
    std::size_t n = 0;
};
McMatrixEstimate mc_correlation_matrix(const ClusterSpec& cluster, const SystemParams& params,
                                       const SteeringModel& steering, const McConfig& cfg);

/// How the per-slot received power is accumulated in the harvesting
/// estimator: squared magnitude of the coherent sum across sensors, or sum
/// of per-sensor squared magnitudes (the cross-term-free reference).
enum class EhSumMode { coherent, incoherent };

/// Empirical harvested energy over a frame: samples the whole network, tags
/// a random point of the target cluster, then simulates n_slots slots of
/// Bernoulli activity, fading and constant-modulus transmit symbols, gating
/// the harvester off in its own active slots.
McEstimate mc_eh_energy(const std::vector<ClusterSpec>& specs, int target_id,
                        const SystemParams& params, const McConfig& cfg,
                        EhSumMode mode = EhSumMode::coherent);

/// CSV rows (bin_left, bin_right, count).
void write_histogram_csv(const Histogram& h, std::ostream& os);

}  // namespace wpnet
