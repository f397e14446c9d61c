#include "wpnet/allocation.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "wpnet/csv.hpp"
#include "wpnet/errors.hpp"
#include "wpnet/log.hpp"

namespace wpnet {

ComplexMatrix weighted_correlation(const RealVector& weights,
                                   const std::vector<ComplexMatrix>& c_ks, double t_dl) {
    if (static_cast<std::size_t>(weights.size()) != c_ks.size())
        throw DomainError("weighted_correlation: " + std::to_string(weights.size()) +
                          " weights for " + std::to_string(c_ks.size()) + " matrices");
    if (c_ks.empty()) throw DomainError("weighted_correlation: no clusters");
    const Eigen::Index m = c_ks.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(m, m);
    for (std::size_t k = 0; k < c_ks.size(); ++k) {
        if (c_ks[k].rows() != m || c_ks[k].cols() != m)
            throw DomainError("weighted_correlation: dimension mismatch at cluster " +
                              std::to_string(k));
        if (!(weights[static_cast<Eigen::Index>(k)] > 0.0))
            throw DomainError("weighted_correlation: weights must be > 0");
        sum += weights[static_cast<Eigen::Index>(k)] * c_ks[k];
    }
    return ComplexMatrix(t_dl * sum);
}

namespace {

/// Dominant eigenpair with a deterministic phase convention: the first
/// component of significant magnitude is made real positive.
std::pair<double, ComplexVector> dominant_pair(const ComplexMatrix& c) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed", 1.0);
    ComplexVector v = es.eigenvectors().col(c.rows() - 1);  // eigenvalues ascend
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            break;
        }
    }
    return {es.eigenvalues()(c.rows() - 1), std::move(v)};
}

ComplexVector dominant_eigenvector(const ComplexMatrix& c) { return dominant_pair(c).second; }

}  // namespace

ComplexMatrix optimal_covariance(const ComplexMatrix& c_weighted, double p_tx) {
    if (!(p_tx > 0.0)) throw DomainError("optimal_covariance: p_tx must be > 0");
    if (!is_hermitian(c_weighted, 1e-9))
        throw DomainError("optimal_covariance: input matrix is not Hermitian");
    const ComplexVector v = dominant_eigenvector(c_weighted);
    return ComplexMatrix(p_tx * (v * v.adjoint()));
}

double jain_update(double fi_prev, const RealVector& energies, int t_c) {
    if (t_c < 1) throw DomainError("jain_update: t_c must be >= 1");
    if (energies.size() == 0) throw DomainError("jain_update: no energies");
    const double sum = energies.sum();
    const double sum_sq = energies.squaredNorm();
    if (sum_sq == 0.0) {
        log::warn("jain_update: all energies zero; keeping previous index");
        return fi_prev;
    }
    const double instantaneous = sum * sum / (energies.size() * sum_sq);
    if (!std::isfinite(fi_prev)) return instantaneous;  // filter seeds at its first input
    return (1.0 - 1.0 / t_c) * fi_prev + instantaneous / t_c;
}

double average_energy(const RealVector& t_avg) {
    if (t_avg.size() == 0) throw DomainError("average_energy: empty input");
    return t_avg.mean();
}

RealVector initial_averages(const std::vector<ComplexMatrix>& c_ks,
                            const std::vector<EtaComponents>& eta_ks,
                            const SystemParams& params) {
    const int m = params.m_antennas;
    const ComplexMatrix q_iso =
        (params.p_tx / m) * ComplexMatrix::Identity(m, m);
    RealVector t0(static_cast<Eigen::Index>(c_ks.size()));
    for (std::size_t k = 0; k < c_ks.size(); ++k)
        t0[static_cast<Eigen::Index>(k)] =
            frame_energy(q_iso, c_ks[k], eta_ks[k], params).total;
    return t0;
}

PfState pf_step(const PfState& state, const std::vector<ComplexMatrix>& c_ks,
                const std::vector<EtaComponents>& eta_ks, const SystemParams& params,
                const PfPolicy& policy) {
    const auto k_count = static_cast<Eigen::Index>(c_ks.size());
    if (state.t_avg.size() != k_count || eta_ks.size() != c_ks.size())
        throw DomainError("pf_step: cluster count mismatch");

    RealVector weights(k_count);
    if (policy.mode == PfMode::proportional_fair) {
        for (Eigen::Index k = 0; k < k_count; ++k) {
            if (!(state.t_avg[k] > 0.0))
                throw ValidationError(
                    "pf_step: averaged energies must be > 0 in fair mode (use the warm start)");
            weights[k] = 1.0 / state.t_avg[k];
        }
    } else {
        weights.setOnes();
    }

    PfState next;
    next.t = state.t + 1;
    auto [lambda, beam] = dominant_pair(weighted_correlation(weights, c_ks, params.t_dl));
    next.lambda_max = lambda;
    next.beam = std::move(beam);
    next.q = params.p_tx * (next.beam * next.beam.adjoint());

    next.e_last.resize(c_ks.size());
    RealVector energies(k_count);
    next.t_avg.resize(k_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
        next.e_last[k] = frame_energy(next.q, c_ks[k], eta_ks[k], params);
        energies[k] = next.e_last[k].total;
        next.t_avg[k] =
            (1.0 - 1.0 / policy.t_c) * state.t_avg[k] + energies[k] / policy.t_c;
    }
    // Fairness tracks the smoothed energies: the per-frame single-beam
    // allocation makes the instantaneous ratio meaningless as a fairness
    // signal, while the filtered averages are what the policy equalizes.
    next.fi = jain_update(state.fi, next.t_avg, policy.t_c);
    return next;
}

namespace {

double beam_pattern_peak(const ComplexVector& beam, const SteeringModel& steering) {
    // coarse scan + golden refinement of |beam^H v(theta)|
    auto gain = [&](double theta) {
        return std::abs(beam.dot(steering_vector(steering, theta)));
    };
    const int grid = 720;
    double best_theta = 0.0, best = -1.0;
    for (int i = 0; i < grid; ++i) {
        const double theta = -kPi + 2.0 * kPi * i / grid;
        const double g = gain(theta);
        if (g > best) {
            best = g;
            best_theta = theta;
        }
    }
    double lo = best_theta - 2.0 * kPi / grid, hi = best_theta + 2.0 * kPi / grid;
    constexpr double inv_phi = 0.6180339887498949;
    double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
    double fa = gain(a), fb = gain(b);
    for (int it = 0; it < 60; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = gain(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = gain(a);
        }
    }
    return wrap_angle(0.5 * (lo + hi));
}

}  // namespace

Trajectory run_horizon(const std::vector<ComplexMatrix>& c_ks,
                       const std::vector<EtaComponents>& eta_ks, const SystemParams& params,
                       const SteeringModel& steering, const PfPolicy& policy,
                       const RealVector* initial) {
    if (policy.horizon < 1) throw DomainError("run_horizon: horizon must be >= 1");
    if (policy.t_c < 1) throw DomainError("run_horizon: t_c must be >= 1");

    PfState state;
    state.t = 0;
    state.t_avg = initial ? *initial : initial_averages(c_ks, eta_ks, params);

    Trajectory traj;
    traj.frames.reserve(policy.horizon);
    for (int t = 1; t <= policy.horizon; ++t) {
        state = pf_step(state, c_ks, eta_ks, params, policy);

        FrameStats fs;
        fs.t = state.t;
        fs.fi = state.fi;
        fs.t_avg = state.t_avg;
        fs.t_bar = average_energy(state.t_avg);
        fs.e_k.resize(state.t_avg.size());
        for (Eigen::Index k = 0; k < fs.e_k.size(); ++k) fs.e_k[k] = state.e_last[k].total;
        fs.lambda_max = state.lambda_max;
        fs.beam_angle = beam_pattern_peak(state.beam, steering);
        traj.frames.push_back(std::move(fs));
    }
    traj.final_state = std::move(state);
    return traj;
}

namespace {

struct LogObjective {
    const std::vector<ComplexMatrix>& c_ks;
    RealVector base;   // (1 - 1/t_c) T_k(t-1) + eh_k / t_c
    double wpt_scale;  // t_dl p_tx / t_c

    double operator()(const ComplexVector& v) const {
        double obj = 0.0;
        for (std::size_t k = 0; k < c_ks.size(); ++k) {
            const double quad = (v.adjoint() * c_ks[k] * v)(0).real();
            obj += std::log(base[static_cast<Eigen::Index>(k)] + wpt_scale * quad);
        }
        return obj;
    }
};

}  // namespace

TaylorReport verify_taylor_equivalence(const PfState& state,
                                       const std::vector<ComplexMatrix>& c_ks,
                                       const std::vector<EtaComponents>& eta_ks,
                                       const SystemParams& params, int t_c) {
    const auto k_count = static_cast<Eigen::Index>(c_ks.size());
    if (state.t_avg.size() != k_count) throw DomainError("verify_taylor_equivalence: bad state");
    for (Eigen::Index k = 0; k < k_count; ++k)
        if (!(state.t_avg[k] > 0.0))
            throw ValidationError("verify_taylor_equivalence: averages must be > 0");

    LogObjective objective{c_ks, RealVector(k_count), params.t_dl * params.p_tx / t_c};
    for (Eigen::Index k = 0; k < k_count; ++k)
        objective.base[k] = (1.0 - 1.0 / t_c) * state.t_avg[k] +
                            eh_energy(eta_ks[k].total(), params) / t_c;

    // Closed form: dominant eigenvector of the 1/T_k weighted combination.
    RealVector weights(k_count);
    for (Eigen::Index k = 0; k < k_count; ++k) weights[k] = 1.0 / state.t_avg[k];
    const ComplexVector v_closed =
        dominant_eigenvector(weighted_correlation(weights, c_ks, params.t_dl));

    // Direct route: majorize-maximize on the beam. Linearizing each log at
    // the current beam gives a weighted eigenvector problem whose solution
    // does not decrease the objective (concavity of log); iterate to a
    // fixed point from the closed-form beam and deterministic random
    // restarts, keep the best.
    const int m = static_cast<int>(c_ks.front().rows());
    std::mt19937_64 rng(0x746179u);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto mm_polish = [&](ComplexVector v) {
        double prev = objective(v);
        for (int it = 0; it < 400; ++it) {
            RealVector g(k_count);
            for (Eigen::Index k = 0; k < k_count; ++k) {
                const double quad = (v.adjoint() * c_ks[k] * v)(0).real();
                g[k] = 1.0 / (objective.base[k] + objective.wpt_scale * quad);
            }
            v = dominant_eigenvector(weighted_correlation(g, c_ks, 1.0));
            const double cur = objective(v);
            if (cur - prev <= 1e-15 * std::max(1.0, std::abs(cur))) break;
            prev = cur;
        }
        return v;
    };

    ComplexVector v_best = mm_polish(v_closed);
    double best = objective(v_best);
    for (int restart = 0; restart < 8; ++restart) {
        ComplexVector v0(m);
        for (int i = 0; i < m; ++i) v0[i] = Complex(gauss(rng), gauss(rng));
        v0.normalize();
        const ComplexVector v = mm_polish(v0);
        const double obj = objective(v);
        if (obj > best) {
            best = obj;
            v_best = v;
        }
    }

    TaylorReport rep;
    rep.objective_direct = best;
    rep.objective_closed = objective(v_closed);
    rep.gap = std::max(0.0, rep.objective_direct - rep.objective_closed);
    rep.alignment = std::abs(v_best.dot(v_closed));
    rep.beam_direct = v_best;
    rep.beam_closed = v_closed;
    return rep;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,fi,t_bar";
    const Eigen::Index k_count = traj.frames.empty() ? 0 : traj.frames.front().t_avg.size();
    for (Eigen::Index k = 0; k < k_count; ++k) os << ",t_avg_" << k;
    os << ",lambda_max,beam_angle\n";
    for (const auto& f : traj.frames) {
        os << f.t << ',' << format_number(f.fi) << ',' << format_number(f.t_bar);
        for (Eigen::Index k = 0; k < k_count; ++k) os << ',' << format_number(f.t_avg[k]);
        os << ',' << format_number(f.lambda_max) << ',' << format_number(f.beam_angle) << '\n';
    }
}

}  // namespace wpnet
