#include "wpnet/geometry.hpp"

#include <cmath>
#include <string>

#include "wpnet/errors.hpp"

namespace wpnet {

void validate_cluster(const ClusterSpec& spec) {
    auto fail = [&](const std::string& what) {
        throw ValidationError("cluster " + std::to_string(spec.id) + ": " + what);
    };
    if (!(spec.radius > 0.0)) fail("radius must be > 0");
    if (!(spec.density > 0.0)) fail("density must be > 0");
    if (spec.min_distance < 0.0) fail("min_distance must be >= 0");
    if (spec.min_distance > 0.0) {
        // Hard-core packing bound: the parent intensity solving the thinning
        // relation exists only for density * pi * d_min^2 < 1.
        double cap = 1.0 / (kPi * spec.min_distance * spec.min_distance);
        if (spec.density >= cap)
            fail("density " + std::to_string(spec.density) +
                 " exceeds hard-core packing bound " + std::to_string(cap));
    }
    if (spec.center.norm() <= spec.radius)
        fail("base station lies inside or on the cluster disk (tangents undefined)");
}

TangentGeometry tangent_geometry(const ClusterSpec& cluster, const Point2& viewpoint) {
    const Point2 d = cluster.center - viewpoint;
    const double dist = d.norm();
    if (dist <= cluster.radius)
        throw GeometryError("viewpoint inside or on cluster " + std::to_string(cluster.id) +
                            " disk: distance " + std::to_string(dist) + " <= radius " +
                            std::to_string(cluster.radius));

    TangentGeometry g;
    g.distance_to_bs = dist;
    g.center_angle = wrap_angle(std::atan2(d.y(), d.x()));
    g.half_span = std::asin(cluster.radius / dist);
    g.theta_lo = g.center_angle - g.half_span;
    g.theta_hi = g.center_angle + g.half_span;
    return g;
}

std::pair<double, double> chord_roots(const TangentGeometry& geom, const ClusterSpec& cluster,
                                      double theta) {
    const double d = geom.distance_to_bs;
    const double r = cluster.radius;
    const double off = wrap_angle(theta - geom.center_angle);
    const double s = d * std::sin(off);
    const double disc = r * r - s * s;
    if (std::abs(off) >= geom.half_span || disc <= 0.0)
        throw DomainError("ray at theta offset " + std::to_string(off) +
                          " does not cut the disk interior (half span " +
                          std::to_string(geom.half_span) + ")");

    // Stable quadratic: large root first, small root from the product d^2 - r^2.
    const double l2 = d * std::cos(off) + std::sqrt(disc);
    const double l1 = (d * d - r * r) / l2;
    return {l1, l2};
}

double radial_integral(double l1, double l2, double alpha) {
    if (!(l1 > 0.0) || !(l2 >= l1)) throw DomainError("radial_integral requires 0 < l1 <= l2");
    if (!(alpha >= 2.0)) throw DomainError("radial_integral requires alpha >= 2");
    if (std::abs(alpha - 2.0) < 1e-9) return std::log(l2 / l1);
    const double p = 2.0 - alpha;
    return (std::pow(l2, p) - std::pow(l1, p)) / p;
}

double path_loss_profile(const TangentGeometry& geom, const ClusterSpec& cluster, double alpha,
                         double theta) {
    const double d = geom.distance_to_bs;
    const double r = cluster.radius;
    const double off = wrap_angle(theta - geom.center_angle);
    if (std::abs(off) >= geom.half_span) return 0.0;
    const double s = d * std::sin(off);
    const double disc = r * r - s * s;
    if (disc <= 0.0) return 0.0;  // tangent grazing within rounding
    const double l2 = d * std::cos(off) + std::sqrt(disc);
    const double l1 = (d * d - r * r) / l2;
    return radial_integral(l1, l2, alpha);
}

}  // namespace wpnet
