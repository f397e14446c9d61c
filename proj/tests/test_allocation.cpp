#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "wpnet/allocation.hpp"
#include "wpnet/energy.hpp"
#include "wpnet/errors.hpp"

using namespace wpnet;

namespace {

SystemParams loop_params(int m) {
    SystemParams p;
    p.alpha = 2.0;
    p.p_tx = 10.0;
    p.p_tau = 0.1;
    p.p_act = 0.1;
    p.t_frame = 1.0;
    p.t_dl = 0.5;
    p.t_ul = 0.5;
    p.n_slots = 10;
    p.t_slot = 0.05;
    p.m_antennas = m;
    return p;
}

ClusterSpec make_cluster(double cx, double cy, double radius, double density,
                         double d_min, int id) {
    ClusterSpec c;
    c.center = Point2(cx, cy);
    c.radius = radius;
    c.density = density;
    c.min_distance = d_min;
    c.id = id;
    return c;
}

struct Scene {
    std::vector<ComplexMatrix> c_ks;
    std::vector<EtaComponents> eta_ks;
    SystemParams params;
    SteeringModel steering;
};

/// Two asymmetric clusters with analytic correlation matrices at M antennas.
Scene two_cluster_scene(int m) {
    Scene s;
    s.params = loop_params(m);
    s.steering.m_antennas = m;
    const std::vector<ClusterSpec> specs = {make_cluster(40.0, 0.0, 10.0, 0.1, 0.1, 0),
                                            make_cluster(0.0, 80.0, 10.0, 0.1, 0.1, 1)};
    for (const auto& spec : specs) {
        s.c_ks.push_back(correlation_matrix(spec, s.params, s.steering, 1e-7));
        EtaComponents eta;
        eta.intra = eta_intra(spec, s.params.alpha, 1e-7);
        eta.inter = eta_inter(spec, specs, s.params.alpha, 1e-7);
        s.eta_ks.push_back(eta);
    }
    return s;
}

}  // namespace

TEST_CASE("weighted combination scales and sums its inputs") {
    std::mt19937_64 rng(31);
    const ComplexMatrix c1 = oracle::random_psd(4, rng);
    const ComplexMatrix c2 = oracle::random_psd(4, rng);

    RealVector w1(1);
    w1 << 1.0;
    const ComplexMatrix single = weighted_correlation(w1, {c1}, 0.5);
    CHECK((single - 0.5 * c1).cwiseAbs().maxCoeff() < 1e-14);

    RealVector w(2), wa(2), wb(2);
    w << 3.0, 5.0;
    wa << 1.0, 2.0;
    wb << 2.0, 3.0;
    const ComplexMatrix whole = weighted_correlation(w, {c1, c2}, 0.7);
    const ComplexMatrix parts = weighted_correlation(wa, {c1, c2}, 0.7) +
                                weighted_correlation(wb, {c1, c2}, 0.7);
    CHECK((whole - parts).cwiseAbs().maxCoeff() < 1e-12 * whole.cwiseAbs().maxCoeff());
    CHECK(min_eigenvalue(whole) >= -1e-9 * whole.trace().real());
    CHECK(is_hermitian(whole, 1e-12));
}

TEST_CASE("weighted combination rejects malformed inputs") {
    std::mt19937_64 rng(32);
    const ComplexMatrix c1 = oracle::random_psd(3, rng);
    RealVector w1(1);
    w1 << 1.0;
    CHECK_THROWS_AS(weighted_correlation(w1, {}, 0.5), DomainError);
    RealVector w2(2);
    w2 << 1.0, 1.0;
    CHECK_THROWS_AS(weighted_correlation(w2, {c1}, 0.5), DomainError);
    CHECK_THROWS_AS(weighted_correlation(w2, {c1, oracle::random_psd(2, rng)}, 0.5),
                    DomainError);
    RealVector bad(1);
    bad << 0.0;
    CHECK_THROWS_AS(weighted_correlation(bad, {c1}, 0.5), DomainError);
}

TEST_CASE("covariance design returns the power-saturating rank-1 maximizer") {
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 3.0;
    diag(1, 1) = 1.0;
    const double p_tx = 4.0;
    const ComplexMatrix q = optimal_covariance(diag, p_tx);
    CHECK(real_trace_product(q, diag) == doctest::Approx(3.0 * p_tx).epsilon(1e-12));
    CHECK(std::abs(q(0, 0).real() - p_tx) < 1e-12);

    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + static_cast<int>(trial % 4);
        const ComplexMatrix c = oracle::random_psd(m, rng);
        const ComplexMatrix best = optimal_covariance(c, p_tx);
        CHECK(is_hermitian(best, 1e-12));
        CHECK(best.trace().real() == doctest::Approx(p_tx).epsilon(1e-9));
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(best, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues()(m - 1) == doctest::Approx(p_tx).epsilon(1e-9));
        CHECK(std::abs(es.eigenvalues()(m - 2)) <= 1e-9 * p_tx);

        const double objective = real_trace_product(best, c);
        for (int draw = 0; draw < 200; ++draw) {
            const ComplexMatrix rival = oracle::random_psd_with_trace(m, p_tx, rng);
            CHECK(real_trace_product(rival, c) <= objective * (1.0 + 1e-12));
        }
        const ComplexMatrix rescaled = optimal_covariance(ComplexMatrix(5.0 * c), p_tx);
        CHECK((rescaled - best).cwiseAbs().maxCoeff() < 1e-9 * p_tx);
    }
}

TEST_CASE("covariance design rejects bad inputs") {
    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = Complex(0.0, 1.0);
    skew(1, 0) = Complex(0.0, 1.0);  // equal, not conjugate: not Hermitian
    CHECK_THROWS_AS(optimal_covariance(skew, 1.0), DomainError);
    CHECK_THROWS_AS(optimal_covariance(ComplexMatrix::Identity(2, 2), 0.0), DomainError);
}

TEST_CASE("fairness filter reproduces the Jain index limits") {
    RealVector equal(4);
    equal << 0.3, 0.3, 0.3, 0.3;
    CHECK(jain_update(std::nan(""), equal, 50) == doctest::Approx(1.0).epsilon(1e-14));

    RealVector one_hot(4);
    one_hot << 5.0, 0.0, 0.0, 0.0;
    CHECK(jain_update(std::nan(""), one_hot, 50) == doctest::Approx(0.25).epsilon(1e-14));

    CHECK(jain_update(0.5, equal, 50) == doctest::Approx(0.51).epsilon(1e-12));
    CHECK(jain_update(0.8, equal, 1) == doctest::Approx(1.0).epsilon(1e-14));

    RealVector zeros = RealVector::Zero(4);
    CHECK(jain_update(0.37, zeros, 50) == 0.37);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        RealVector x(5);
        for (int i = 0; i < 5; ++i) x[i] = u01(rng);
        const double fi = jain_update(std::nan(""), x, 50);
        CHECK(fi >= 1.0 / 5.0 - 1e-12);
        CHECK(fi <= 1.0 + 1e-12);
        std::vector<double> copy(x.data(), x.data() + x.size());
        CHECK(fi == doctest::Approx(oracle::jain(copy)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(jain_update(0.5, RealVector(), 50), DomainError);
    CHECK_THROWS_AS(jain_update(0.5, equal, 0), DomainError);
}

TEST_CASE("average energy is the arithmetic mean") {
    RealVector two(2);
    two << 1.0, 3.0;
    CHECK(average_energy(two) == 2.0);
    CHECK_THROWS_AS(average_energy(RealVector()), DomainError);
}

TEST_CASE("warm start uses the isotropic covariance") {
    const Scene s = two_cluster_scene(3);
    const RealVector t0 = initial_averages(s.c_ks, s.eta_ks, s.params);
    REQUIRE(t0.size() == 2);
    const ComplexMatrix iso =
        (s.params.p_tx / 3.0) * ComplexMatrix::Identity(3, 3);
    for (int k = 0; k < 2; ++k) {
        const EnergyBreakdown ref = frame_energy(iso, s.c_ks[k], s.eta_ks[k], s.params);
        CHECK(t0[k] == doctest::Approx(ref.total).epsilon(1e-14));
        CHECK(t0[k] > 0.0);
    }
}

TEST_CASE("one fair step beams, accounts energy, and filters") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    policy.t_c = 1;  // memoryless filter

    PfState state;
    state.t_avg = initial_averages(s.c_ks, s.eta_ks, s.params);
    const PfState next = pf_step(state, s.c_ks, s.eta_ks, s.params, policy);

    CHECK(next.t == 1);
    CHECK(next.beam.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(next.q.trace().real() == doctest::Approx(s.params.p_tx).epsilon(1e-12));

    RealVector weights(2);
    weights << 1.0 / state.t_avg[0], 1.0 / state.t_avg[1];
    const ComplexMatrix cw = weighted_correlation(weights, s.c_ks, s.params.t_dl);
    CHECK((next.beam.adjoint() * cw * next.beam)(0).real() ==
          doctest::Approx(next.lambda_max).epsilon(1e-12));

    RealVector energies(2);
    for (int k = 0; k < 2; ++k) {
        const EnergyBreakdown ref = frame_energy(next.q, s.c_ks[k], s.eta_ks[k], s.params);
        CHECK(next.e_last[k].total == doctest::Approx(ref.total).epsilon(1e-14));
        energies[k] = ref.total;
        // t_c = 1 keeps no memory
        CHECK(next.t_avg[k] == doctest::Approx(energies[k]).epsilon(1e-14));
    }
    std::vector<double> e(energies.data(), energies.data() + 2);
    CHECK(next.fi == doctest::Approx(oracle::jain(e)).epsilon(1e-12));
}

TEST_CASE("identical clusters stay perfectly fair") {
    SystemParams params = loop_params(3);
    SteeringModel steering;
    steering.m_antennas = 3;
    const ClusterSpec spec = make_cluster(50.0, 20.0, 10.0, 0.1, 0.1, 0);
    const ComplexMatrix c = correlation_matrix(spec, params, steering, 1e-7);
    EtaComponents eta;
    eta.intra = eta_intra(spec, params.alpha, 1e-7);

    PfPolicy policy;
    policy.t_c = 50;
    policy.horizon = 40;
    const Trajectory traj =
        run_horizon({c, c}, {eta, eta}, params, steering, policy);
    for (const auto& f : traj.frames) {
        CHECK(f.fi == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.t_avg[0] == doctest::Approx(f.t_avg[1]).epsilon(1e-12));
    }
}

TEST_CASE("fair mode requires positive averages") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    PfState state;
    state.t_avg = RealVector::Zero(2);
    CHECK_THROWS_AS(pf_step(state, s.c_ks, s.eta_ks, s.params, policy), ValidationError);

    state.t_avg = RealVector::Ones(1);
    CHECK_THROWS_AS(pf_step(state, s.c_ks, s.eta_ks, s.params, policy), DomainError);
}

TEST_CASE("a one-frame horizon equals a single step") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    policy.horizon = 1;

    PfState state;
    state.t_avg = initial_averages(s.c_ks, s.eta_ks, s.params);
    const PfState step = pf_step(state, s.c_ks, s.eta_ks, s.params, policy);
    const Trajectory traj =
        run_horizon(s.c_ks, s.eta_ks, s.params, s.steering, policy);

    REQUIRE(traj.frames.size() == 1);
    CHECK(traj.final_state.t == 1);
    CHECK(traj.final_state.fi == step.fi);
    CHECK((traj.final_state.t_avg - step.t_avg).cwiseAbs().maxCoeff() == 0.0);
    CHECK((traj.final_state.q - step.q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sum-energy mode locks the beam and converges geometrically") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    policy.mode = PfMode::sum_energy;
    policy.t_c = 50;
    policy.horizon = 60;
    const Trajectory traj =
        run_horizon(s.c_ks, s.eta_ks, s.params, s.steering, policy);

    const auto& first = traj.frames.front();
    for (const auto& f : traj.frames) {
        CHECK(f.lambda_max == first.lambda_max);
        CHECK(f.beam_angle == first.beam_angle);
        CHECK((f.e_k - first.e_k).cwiseAbs().maxCoeff() == 0.0);
        CHECK(f.fi >= 0.5 - 1e-12);
        CHECK(f.fi <= 1.0 + 1e-12);
    }

    // fixed per-frame energy: the filter contracts toward it at rate 1 - 1/t_c
    const double target = first.e_k[0];
    const double rate = 1.0 - 1.0 / policy.t_c;
    for (std::size_t i = 1; i < 8; ++i) {
        const double dev_prev = traj.frames[i - 1].t_avg[0] - target;
        const double dev = traj.frames[i].t_avg[0] - target;
        CHECK(dev / dev_prev == doctest::Approx(rate).epsilon(1e-6));
    }
}

TEST_CASE("fair trajectories are deterministic and stay in the Jain range") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    policy.t_c = 20;
    policy.horizon = 80;
    const Trajectory a = run_horizon(s.c_ks, s.eta_ks, s.params, s.steering, policy);
    const Trajectory b = run_horizon(s.c_ks, s.eta_ks, s.params, s.steering, policy);
    REQUIRE(a.frames.size() == 80);
    for (std::size_t i = 0; i < a.frames.size(); ++i) {
        CHECK(a.frames[i].fi == b.frames[i].fi);
        CHECK(a.frames[i].fi >= 0.5 - 1e-12);
        CHECK(a.frames[i].fi <= 1.0 + 1e-12);
        CHECK(a.frames[i].t_bar ==
              doctest::Approx(a.frames[i].t_avg.mean()).epsilon(1e-14));
    }
}

TEST_CASE("the designed beam points at a lone cluster") {
    SystemParams params = loop_params(8);
    SteeringModel steering;
    steering.m_antennas = 8;
    const ClusterSpec spec = make_cluster(40.0, 40.0, 10.0, 0.1, 0.1, 0);
    const ComplexMatrix c = correlation_matrix(spec, params, steering, 1e-7);
    EtaComponents eta;
    eta.intra = eta_intra(spec, params.alpha, 1e-7);

    PfPolicy policy;
    policy.horizon = 3;
    const Trajectory traj = run_horizon({c}, {eta}, params, steering, policy);
    const TangentGeometry g = tangent_geometry(spec, Point2::Zero());
    const double miss = wrap_angle(traj.frames.back().beam_angle - g.center_angle);
    CHECK(std::abs(miss) <= g.half_span);
}

TEST_CASE("an explicit initial average changes only the filter seed") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    policy.horizon = 1;
    policy.mode = PfMode::sum_energy;
    RealVector init(2);
    init << 1e-3, 2e-3;
    const Trajectory traj =
        run_horizon(s.c_ks, s.eta_ks, s.params, s.steering, policy, &init);
    const double e0 = traj.frames[0].e_k[0];
    const double expect = (1.0 - 1.0 / policy.t_c) * init[0] + e0 / policy.t_c;
    CHECK(traj.frames[0].t_avg[0] == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("with one cluster the weighted design is exactly optimal") {
    SystemParams params = loop_params(3);
    SteeringModel steering;
    steering.m_antennas = 3;
    const ClusterSpec spec = make_cluster(60.0, -30.0, 10.0, 0.1, 0.1, 0);
    const ComplexMatrix c = correlation_matrix(spec, params, steering, 1e-7);
    EtaComponents eta;
    eta.intra = eta_intra(spec, params.alpha, 1e-7);

    PfPolicy policy;
    policy.horizon = 2;
    const Trajectory traj = run_horizon({c}, {eta}, params, steering, policy);
    const TaylorReport rep =
        verify_taylor_equivalence(traj.final_state, {c}, {eta}, params, 50);
    CHECK(rep.gap <= 1e-12 * std::abs(rep.objective_closed));
    CHECK(rep.alignment >= 1.0 - 1e-12);
}

TEST_CASE("trajectory csv has one labeled row per frame") {
    const Scene s = two_cluster_scene(3);
    PfPolicy policy;
    policy.horizon = 4;
    const Trajectory traj = run_horizon(s.c_ks, s.eta_ks, s.params, s.steering, policy);
    std::ostringstream os;
    write_trajectory_csv(traj, os);
    const std::string text = os.str();
    CHECK(text.rfind("t,fi,t_bar,t_avg_0,t_avg_1,lambda_max,beam_angle", 0) == 0);
    std::size_t lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 5);
}
