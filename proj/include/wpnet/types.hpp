#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace wpnet {

using Point2 = Eigen::Vector2d;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double to_db(double x) { return 10.0 * std::log10(x); }

/// Max |C - C^H| over all entries.
inline double hermitian_defect(const ComplexMatrix& c) {
    return (c - c.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& c, double tol) {
    if (c.rows() != c.cols()) return false;
    double scale = c.cwiseAbs().maxCoeff();
    return hermitian_defect(c) <= tol * std::max(scale, 1.0);
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const ComplexMatrix& c) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// tr(Q C) for Hermitian C, evaluated as an O(M^2) contraction.
inline double real_trace_product(const ComplexMatrix& q, const ComplexMatrix& c) {
    return q.cwiseProduct(c.conjugate()).sum().real();
}

/// SplitMix64 step; used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for stream `a` (optionally sub-stream `b`) of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = seed;
    std::uint64_t x = splitmix64(s);
    s ^= x + a;
    x = splitmix64(s);
    s ^= x + b;
    return splitmix64(s);
}

}  // namespace wpnet
