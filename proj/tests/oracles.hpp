#pragma once

// Independent reference implementations used only by tests. They avoid the
// library's own quadrature and statistics so agreement is evidence, not a
// tautology.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Composite Simpson rule with n subintervals (n must be even). Works for
/// double, complex and fixed-size Eigen values.
template <typename F>
auto simpson(F&& f, double a, double b, int n) {
    using Value = decltype(f(a));
    const double h = (b - a) / n;
    Value acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * f(a + i * h);
    }
    return Value(acc * (h / 3.0));
}

inline double jain(const std::vector<double>& x) {
    double s = 0.0, s2 = 0.0;
    for (double v : x) {
        s += v;
        s2 += v * v;
    }
    return s * s / (static_cast<double>(x.size()) * s2);
}

/// Upper chi-square quantile via the Wilson-Hilferty cube approximation;
/// z is the standard normal quantile of the same tail probability.
inline double chi2_critical(int dof, double z) {
    const double k = static_cast<double>(dof);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

inline constexpr double kZ99 = 2.3263478740408408;  // standard normal 99% quantile

inline double poisson_pmf(int k, double mu) {
    return std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
}

inline Eigen::MatrixXcd random_psd(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> n01;
    Eigen::MatrixXcd a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = std::complex<double>(n01(rng), n01(rng));
    return a * a.adjoint();
}

/// Random PSD matrix with trace exactly `trace`.
inline Eigen::MatrixXcd random_psd_with_trace(int m, double trace, std::mt19937_64& rng) {
    Eigen::MatrixXcd q = random_psd(m, rng);
    return Eigen::MatrixXcd(q * (trace / q.trace().real()));
}

}  // namespace oracle
