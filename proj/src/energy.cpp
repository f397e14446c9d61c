#include "wpnet/energy.hpp"

#include <cmath>
#include <string>

#include "wpnet/errors.hpp"
#include "wpnet/log.hpp"
#include "wpnet/quadrature.hpp"

namespace wpnet {

void validate_params(const SystemParams& params) {
    auto fail = [](const std::string& what) { throw ValidationError("params: " + what); };
    if (!(params.alpha >= 2.0)) fail("alpha must be >= 2");
    if (!(params.sigma_g2 > 0.0)) fail("sigma_g2 must be > 0");
    if (!(params.sigma_gamma2 > 0.0)) fail("sigma_gamma2 must be > 0");
    if (params.sigma_n2 < 0.0 || params.sigma_w2 < 0.0) fail("noise powers must be >= 0");
    if (!(params.p_tx > 0.0) || !(params.p_tau > 0.0)) fail("powers must be > 0");
    if (!(params.p_act >= 0.0 && params.p_act <= 1.0)) fail("p_act must be in [0, 1]");
    if (!(params.t_frame > 0.0) || !(params.t_dl > 0.0) || !(params.t_ul > 0.0) ||
        !(params.t_slot > 0.0))
        fail("frame times must be > 0");
    if (params.n_slots < 1) fail("n_slots must be >= 1");
    if (params.m_antennas < 1) fail("m_antennas must be >= 1");
    const double tol = 1e-9 * params.t_frame;
    if (std::abs(params.t_frame - (params.t_dl + params.t_ul)) > tol)
        fail("t_frame must equal t_dl + t_ul");
    if (std::abs(params.t_ul - params.n_slots * params.t_slot) > tol)
        fail("t_ul must equal n_slots * t_slot");
}

ComplexMatrix correlation_matrix(const ClusterSpec& cluster, const SystemParams& params,
                                 const SteeringModel& steering, double quad_rel_tol) {
    validate_cluster(cluster);
    const TangentGeometry geom = tangent_geometry(cluster, Point2::Zero());
    const double alpha = params.alpha;
    const int m = steering.m_antennas;

    auto integrand = [&](double theta) -> ComplexMatrix {
        const double profile = path_loss_profile(geom, cluster, alpha, theta);
        if (profile == 0.0) return ComplexMatrix::Zero(m, m);
        const ComplexVector v = steering_vector(steering, theta);
        return ComplexMatrix(profile * (v * v.adjoint()));
    };

    quad::Options opt;
    opt.rel_tol = quad_rel_tol;
    auto res = quad::integrate(integrand, geom.theta_lo, geom.theta_hi, opt);

    ComplexMatrix c = (params.sigma_g2 / cluster.area()) * res.integral;
    // the quadrature preserves Hermitian symmetry up to rounding; tighten it
    c = 0.5 * (c + c.adjoint()).eval();
    return c;
}

double wpt_energy(const ComplexMatrix& q, const ComplexMatrix& c_k, double t_dl) {
    if (q.rows() != c_k.rows() || q.cols() != c_k.cols() || q.rows() != q.cols())
        throw DomainError("wpt_energy: dimension mismatch " + std::to_string(q.rows()) + "x" +
                          std::to_string(q.cols()) + " vs " + std::to_string(c_k.rows()) + "x" +
                          std::to_string(c_k.cols()));
    return t_dl * real_trace_product(q, c_k);
}

namespace {

// Pair-distance density of two uniform points on a disk of radius r,
// before truncation. Supported on [0, 2r].
double disk_pair_density(double rho, double r) {
    if (rho <= 0.0 || rho >= 2.0 * r) return 0.0;
    const double x = rho / (2.0 * r);
    return 4.0 * rho / (kPi * r * r) * (std::acos(x) - x * std::sqrt(1.0 - x * x));
}

double truncation_mass(const ClusterSpec& cluster) {
    quad::Options opt;
    opt.rel_tol = 1e-10;
    auto res = quad::integrate(
        [&](double rho) { return disk_pair_density(rho, cluster.radius); }, cluster.min_distance,
        2.0 * cluster.radius, opt);
    return res.integral;
}

}  // namespace

double distance_pdf(double rho, const ClusterSpec& cluster) {
    if (rho < cluster.min_distance || rho > 2.0 * cluster.radius) return 0.0;
    return disk_pair_density(rho, cluster.radius) / truncation_mass(cluster);
}

double eta_intra(const ClusterSpec& cluster, double alpha, double quad_rel_tol) {
    const double expected = cluster.mean_count();
    if (expected < 1.0) {
        log::warn("eta_intra: cluster %d expects %.3f sensors (< 1); returning 0", cluster.id,
                  expected);
        return 0.0;
    }
    const double mass = truncation_mass(cluster);
    quad::Options opt;
    opt.rel_tol = quad_rel_tol;
    auto res = quad::integrate(
        [&](double rho) {
            return std::pow(rho, -alpha) * disk_pair_density(rho, cluster.radius);
        },
        cluster.min_distance, 2.0 * cluster.radius, opt);
    return (expected - 1.0) * res.integral / mass;
}

double eta_inter(const ClusterSpec& target, const std::vector<ClusterSpec>& others, double alpha,
                 double quad_rel_tol) {
    quad::Options opt;
    opt.rel_tol = quad_rel_tol;
    double sum = 0.0;
    for (const auto& other : others) {
        if (other.id == target.id) continue;
        const TangentGeometry geom = tangent_geometry(other, target.center);
        auto res = quad::integrate(
            [&](double theta) { return path_loss_profile(geom, other, alpha, theta); },
            geom.theta_lo, geom.theta_hi, opt);
        sum += other.density * res.integral;
    }
    return sum;
}

double eh_energy(double eta_total, const SystemParams& params) {
    if (eta_total < 0.0) throw DomainError("eh_energy: eta_total must be >= 0");
    return params.t_ul * params.p_tau * params.sigma_gamma2 * params.p_act *
           (1.0 - params.p_act) * eta_total;
}

EnergyBreakdown frame_energy(const ComplexMatrix& q, const ComplexMatrix& c_k,
                             const EtaComponents& eta_k, const SystemParams& params) {
    EnergyBreakdown out;
    out.e_wpt = wpt_energy(q, c_k, params.t_dl);
    out.e_eh = eh_energy(eta_k.total(), params);
    out.eta_intra = eta_k.intra;
    out.eta_inter = eta_k.inter;
    out.total = out.e_wpt + out.e_eh;
    return out;
}

}  // namespace wpnet
