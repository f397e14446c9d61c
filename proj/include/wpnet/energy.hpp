#pragma once

#include <vector>

#include "wpnet/geometry.hpp"
#include "wpnet/steering.hpp"
#include "wpnet/types.hpp"

namespace wpnet {

/// Global physical and protocol constants. Powers in watts, times in
/// seconds; noise powers are carried for completeness but contribute no
/// energy anywhere in the model.
struct SystemParams {
    double alpha = 2.0;         // path-loss exponent, >= 2
    double sigma_g2 = 1.0;      // BS-link fading variance
    double sigma_gamma2 = 1.0;  // sensor-link fading variance
    double sigma_n2 = 0.0;      // downlink noise power (inert)
    double sigma_w2 = 0.0;      // sensor-side noise power (inert)
    double p_tx = 1.0;          // BS transmit power, watts
    double p_tau = 1.0;         // sensor transmit power, watts
    double p_act = 0.0;         // per-slot activity probability
    double t_frame = 1.0;       // seconds
    double t_dl = 0.5;          // downlink (power transfer) portion
    double t_ul = 0.5;          // uplink portion, = n_slots * t_slot
    int n_slots = 1;
    double t_slot = 0.5;
    int m_antennas = 1;
};

/// Throws ValidationError on a violated invariant (frame split, slot grid,
/// sign constraints).
void validate_params(const SystemParams& params);

/// Expected path-loss sums feeding the harvested-energy term.
struct EtaComponents {
    double intra = 0.0;  // same-cluster neighbors, m^-alpha
    double inter = 0.0;  // all other clusters, m^-alpha

    double total() const { return intra + inter; }
};

/// Per-frame energy split of one cluster.
struct EnergyBreakdown {
    double e_wpt = 0.0;  // joules from the BS downlink
    double e_eh = 0.0;   // joules harvested from other sensors
    double eta_intra = 0.0;
    double eta_inter = 0.0;
    double total = 0.0;  // e_wpt + e_eh
};

/// Spatial correlation matrix of the BS-to-sensor channel for one cluster:
/// entry (i,j) = sigma_g^2/(pi R^2) * integral over the tangent span of
/// I(theta) v_i(theta) v_j(theta)^*, by adaptive quadrature on the whole
/// matrix integrand. Hermitian PSD by construction.
ComplexMatrix correlation_matrix(const ClusterSpec& cluster, const SystemParams& params,
                                 const SteeringModel& steering, double quad_rel_tol = 1e-8);

/// Downlink energy per frame: t_dl * tr(Q C).
double wpt_energy(const ComplexMatrix& q, const ComplexMatrix& c_k, double t_dl);

/// Density of the distance between two independent uniform points of the
/// cluster disk, truncated to [d_min, 2R] and renormalized; 0 outside.
double distance_pdf(double rho, const ClusterSpec& cluster);

/// Expected same-cluster path-loss sum seen by one sensor:
/// (lambda pi R^2 - 1) * integral of rho^-alpha over the truncated pair
/// distance density. Returns 0 when fewer than one neighbor is expected.
double eta_intra(const ClusterSpec& cluster, double alpha, double quad_rel_tol = 1e-8);

/// Expected other-cluster path-loss sum, evaluated at the target cluster
/// center: sum over others of lambda' * integral of I(theta) with tangent
/// geometry observed from the target center.
double eta_inter(const ClusterSpec& target, const std::vector<ClusterSpec>& others, double alpha,
                 double quad_rel_tol = 1e-8);

/// Harvested energy per frame: t_ul * p_tau * sigma_gamma^2 *
/// p_act (1 - p_act) * eta_total.
double eh_energy(double eta_total, const SystemParams& params);

/// Both energy contributions of one cluster for a frame transmitted with
/// covariance q.
EnergyBreakdown frame_energy(const ComplexMatrix& q, const ComplexMatrix& c_k,
                             const EtaComponents& eta_k, const SystemParams& params);

}  // namespace wpnet
