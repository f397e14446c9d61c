#pragma once

#include <cstdint>

#include "wpnet/types.hpp"

namespace wpnet {

/// One circular sensor cluster: disk geometry plus the density of the
/// hard-core deployment inside it.
struct ClusterSpec {
    Point2 center = Point2::Zero();  // meters
    double radius = 1.0;             // meters, > 0
    double density = 0.0;            // sensors / m^2, > 0
    double min_distance = 0.0;       // hard-core distance, meters, >= 0
    int id = 0;

    double area() const { return kPi * radius * radius; }
    double mean_count() const { return density * area(); }
};

/// Throws ValidationError if the spec violates a model invariant
/// (nonpositive radius/density, density above the hard-core packing bound).
void validate_cluster(const ClusterSpec& spec);

/// Tangent-line geometry of a disk observed from an external viewpoint.
/// Angles are in the global frame, center_angle in (-pi, pi]; the span
/// [theta_lo, theta_hi] is unwrapped around center_angle.
struct TangentGeometry {
    double distance_to_bs = 0.0;  // viewpoint-to-center distance
    double center_angle = 0.0;
    double half_span = 0.0;       // half opening angle between the tangents
    double theta_lo = 0.0;
    double theta_hi = 0.0;

    double span() const { return 2.0 * half_span; }
};

/// Tangent angles of `cluster` seen from `viewpoint`.
/// Throws GeometryError if the viewpoint is inside or on the disk boundary.
TangentGeometry tangent_geometry(const ClusterSpec& cluster, const Point2& viewpoint);

/// Distances from the viewpoint to the two intersections of the ray at
/// angle `theta` with the disk boundary, ascending. The ray must lie
/// strictly between the tangents; otherwise throws DomainError.
std::pair<double, double> chord_roots(const TangentGeometry& geom, const ClusterSpec& cluster,
                                      double theta);

/// Integral of r * r^{-alpha} over [l1, l2]:
///   ln(l2/l1)                         for alpha = 2
///   (l2^{2-alpha} - l1^{2-alpha})/(2-alpha)  for alpha > 2.
/// alpha within 1e-9 of 2 uses the log branch.
double radial_integral(double l1, double l2, double alpha);

/// Radial path-loss profile I(theta) along the ray at `theta`, extended by
/// continuity to 0 outside the tangent span (chord length -> 0 there).
double path_loss_profile(const TangentGeometry& geom, const ClusterSpec& cluster, double alpha,
                         double theta);

}  // namespace wpnet
