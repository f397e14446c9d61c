#include "wpnet/pointprocess.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "wpnet/csv.hpp"
#include "wpnet/errors.hpp"

namespace wpnet {

std::size_t SampledNetwork::total_count() const {
    std::size_t n = 0;
    for (const auto& c : points) n += c.size();
    return n;
}

double matern_density(double delta, double d_min) {
    if (delta < 0.0) throw DomainError("matern_density: delta must be >= 0");
    if (d_min < 0.0) throw DomainError("matern_density: d_min must be >= 0");
    if (d_min == 0.0) return delta;
    const double a = kPi * d_min * d_min;
    return -std::expm1(-delta * a) / a;
}

ParentIntensity invert_density(double lambda, double d_min) {
    if (lambda < 0.0) throw DomainError("invert_density: lambda must be >= 0");
    if (d_min == 0.0) return {lambda};
    const double a = kPi * d_min * d_min;
    if (lambda * a >= 1.0)
        throw ValidationError("invert_density: lambda " + std::to_string(lambda) +
                              " at or above hard-core packing bound 1/(pi d_min^2) = " +
                              std::to_string(1.0 / a));
    return {-std::log1p(-lambda * a) / a};
}

std::vector<Point2> sample_cluster(const ClusterSpec& spec, std::uint64_t seed) {
    validate_cluster(spec);
    const double delta = invert_density(spec.density, spec.min_distance).delta;

    std::mt19937_64 rng(derive_seed(seed, 0x706f696e74u, static_cast<std::uint64_t>(spec.id)));
    std::poisson_distribution<int> count(delta * spec.area());
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = count(rng);
    std::vector<Point2> parents(n);
    std::vector<double> marks(n);
    for (int i = 0; i < n; ++i) {
        // polar inverse CDF: radius R*sqrt(u) is uniform on the disk
        const double r = spec.radius * std::sqrt(unit(rng));
        const double ang = 2.0 * kPi * unit(rng);
        parents[i] = spec.center + r * Point2(std::cos(ang), std::sin(ang));
        marks[i] = unit(rng);
    }

    if (spec.min_distance == 0.0) return parents;

    const double d2 = spec.min_distance * spec.min_distance;
    std::vector<Point2> retained;
    retained.reserve(parents.size());
    for (int i = 0; i < n; ++i) {
        bool keep = true;
        for (int j = 0; j < n && keep; ++j) {
            if (j == i) continue;
            if ((parents[i] - parents[j]).squaredNorm() < d2 && marks[j] < marks[i]) keep = false;
        }
        if (keep) retained.push_back(parents[i]);
    }
    return retained;
}

SampledNetwork sample_network(const std::vector<ClusterSpec>& specs, std::uint64_t seed) {
    SampledNetwork net;
    net.specs = specs;
    net.seed = seed;
    net.points.reserve(specs.size());
    for (const auto& spec : specs)
        net.points.push_back(
            sample_cluster(spec, derive_seed(seed, 0x636c7573u, static_cast<std::uint64_t>(spec.id))));
    return net;
}

void write_csv(const SampledNetwork& net, std::ostream& os) {
    os << "cluster_id,x,y\n";
    for (std::size_t k = 0; k < net.points.size(); ++k) {
        const int id = net.specs[k].id;
        for (const auto& p : net.points[k])
            os << id << ',' << format_number(p.x()) << ',' << format_number(p.y()) << '\n';
    }
}

}  // namespace wpnet
