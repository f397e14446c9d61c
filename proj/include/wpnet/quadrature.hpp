#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <utility>

#include "wpnet/errors.hpp"

namespace wpnet::quad {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
inline constexpr double kAbscissae[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kWeightsKronrod[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kWeightsGauss[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const std::complex<double>& v) { return std::abs(v); }
template <typename Derived>
double value_norm(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs().maxCoeff();
}

struct Options {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;  // floor for near-zero integrals
    int max_depth = 30;
};

template <typename Value>
struct Result {
    Value integral;
    double error_estimate;   // absolute, in value_norm units
    std::size_t evaluations;
};

namespace detail {

template <typename Value>
struct Panel {
    Value k15;
    double error;
};

// One Gauss-Kronrod panel on [a, b]; error is |K15 - G7| scaled by halfwidth.
template <typename F, typename Value = std::decay_t<std::invoke_result_t<F&, double>>>
Panel<Value> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    Value fc = f(c);
    Value k15 = kWeightsKronrod[7] * fc;
    Value g7 = kWeightsGauss[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kAbscissae[i];
        Value lo = f(c - dx);
        Value hi = f(c + dx);
        Value sum = lo + hi;
        k15 += kWeightsKronrod[i] * sum;
        if (i % 2 == 1) g7 += kWeightsGauss[i / 2] * sum;
    }
    k15 *= h;
    g7 *= h;
    return {k15, value_norm(Value(k15 - g7))};
}

template <typename F, typename Value>
void refine(F& f, double a, double b, const Panel<Value>& panel, double tol, int depth,
            const Options& opt, Value& integral, double& err_accum, std::size_t& evals) {
    if (panel.error <= tol || depth >= opt.max_depth) {
        integral += panel.k15;
        err_accum += panel.error;
        return;
    }
    const double mid = 0.5 * (a + b);
    auto left = gk15<F, Value>(f, a, mid);
    auto right = gk15<F, Value>(f, mid, b);
    evals += 30;
    refine(f, a, mid, left, 0.5 * tol, depth + 1, opt, integral, err_accum, evals);
    refine(f, mid, b, right, 0.5 * tol, depth + 1, opt, integral, err_accum, evals);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. The integrand may
/// return double, complex<double>, or a dense Eigen matrix (by value); the
/// error is controlled in the max-abs norm of the returned type.
/// Throws NumericError if the requested relative tolerance is not met.
template <typename F, typename Value = std::decay_t<std::invoke_result_t<F&, double>>>
Result<Value> integrate(F&& f, double a, double b, Options opt = {}) {
    if (!(b >= a)) throw DomainError("quadrature: interval end below start");

    auto first = detail::gk15<F, Value>(f, a, b);
    std::size_t evals = 15;
    const double scale = value_norm(first.k15);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);

    Value integral = first.k15;
    integral -= first.k15;  // zero of the right shape
    double err = 0.0;
    detail::refine(f, a, b, first, tol, 0, opt, integral, err, evals);

    const double final_scale = std::max(value_norm(integral), scale);
    if (err > std::max(opt.abs_tol, opt.rel_tol * final_scale) * (1.0 + 1e-12) &&
        final_scale > 0.0) {
        double achieved = err / final_scale;
        throw NumericError(
            "quadrature did not converge: achieved relative error " + std::to_string(achieved),
            achieved);
    }
    return {integral, err, evals};
}

}  // namespace wpnet::quad
