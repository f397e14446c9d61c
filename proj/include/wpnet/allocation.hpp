#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "wpnet/energy.hpp"
#include "wpnet/steering.hpp"
#include "wpnet/types.hpp"

namespace wpnet {

/// Weighting policy of the per-frame covariance design.
enum class PfMode { proportional_fair, sum_energy };

struct PfPolicy {
    PfMode mode = PfMode::proportional_fair;
    int t_c = 50;       // averaging filter length, frames
    int horizon = 1000; // frames
};

/// Per-frame state of the allocation loop. `fi` is NaN until seeded by the
/// first frame.
struct PfState {
    int t = 0;
    RealVector t_avg;                    // smoothed per-cluster energies, joules
    double fi = std::numeric_limits<double>::quiet_NaN();
    ComplexMatrix q;                     // covariance chosen for frame t
    ComplexVector beam;                  // unit-norm dominant eigenvector of q
    double lambda_max = 0.0;             // top eigenvalue of the weighted combination
    std::vector<EnergyBreakdown> e_last; // per-cluster energies of frame t
};

/// T_d * sum_k w_k C_k.
ComplexMatrix weighted_correlation(const RealVector& weights,
                                   const std::vector<ComplexMatrix>& c_ks, double t_dl);

/// Covariance maximizing tr(Q C) over PSD Q with tr(Q) <= p_tx: the rank-1
/// matrix p_tx v v^H on the dominant eigenvector. The eigenvector phase is
/// fixed by making its first significant component real positive.
ComplexMatrix optimal_covariance(const ComplexMatrix& c_weighted, double p_tx);

/// One frame of the allocation loop: weights from the previous averages
/// (1/T_k in fair mode, 1 otherwise), covariance from the weighted
/// combination, then energy bookkeeping and both exponential filters.
PfState pf_step(const PfState& state, const std::vector<ComplexMatrix>& c_ks,
                const std::vector<EtaComponents>& eta_ks, const SystemParams& params,
                const PfPolicy& policy);

/// Exponentially filtered Jain fairness ratio. A non-finite fi_prev seeds
/// the filter at the instantaneous value; all-zero energies leave fi_prev
/// unchanged.
double jain_update(double fi_prev, const RealVector& energies, int t_c);

/// Arithmetic mean of the per-cluster smoothed energies.
double average_energy(const RealVector& t_avg);

/// Warm-start averages: per-cluster energies under isotropic transmission
/// Q = (p_tx / M) I.
RealVector initial_averages(const std::vector<ComplexMatrix>& c_ks,
                            const std::vector<EtaComponents>& eta_ks,
                            const SystemParams& params);

/// Scalar summary of one frame kept in the trajectory (the covariance
/// itself is only retained in the final state).
struct FrameStats {
    int t = 0;
    double fi = 0.0;
    double t_bar = 0.0;
    RealVector t_avg;
    RealVector e_k;
    double lambda_max = 0.0;   // dominant eigenvalue of the weighted combination
    double beam_angle = 0.0;   // azimuth where the chosen beam pattern peaks
};

struct Trajectory {
    std::vector<FrameStats> frames;
    PfState final_state;
};

/// Run the loop for policy.horizon frames from the warm start (or from the
/// given initial averages). Deterministic: the loop has no randomness. The
/// steering model is only used for the beam-angle summary column.
Trajectory run_horizon(const std::vector<ComplexMatrix>& c_ks,
                       const std::vector<EtaComponents>& eta_ks, const SystemParams& params,
                       const SteeringModel& steering, const PfPolicy& policy,
                       const RealVector* initial = nullptr);

/// Outcome of checking the closed-form covariance against direct
/// maximization of the smoothed log-energy objective.
struct TaylorReport {
    double objective_direct = 0.0;
    double objective_closed = 0.0;
    double gap = 0.0;        // objective_direct - objective_closed, floored at 0
    double alignment = 0.0;  // |<v_direct, v_closed>|
    ComplexVector beam_direct;
    ComplexVector beam_closed;
};

/// Compare the closed-form weighted solution with direct numerical
/// maximization of sum_k log T_k(t) over unit-norm beams (rank-1 covariance
/// of trace p_tx), via a monotone majorize-maximize iteration with
/// deterministic restarts.
TaylorReport verify_taylor_equivalence(const PfState& state,
                                       const std::vector<ComplexMatrix>& c_ks,
                                       const std::vector<EtaComponents>& eta_ks,
                                       const SystemParams& params, int t_c);

/// CSV rows (t, fi, t_bar, t_1..t_K, lambda_max, beam_angle).
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace wpnet
