#include "wpnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "wpnet/csv.hpp"
#include "wpnet/errors.hpp"
#include "wpnet/pointprocess.hpp"

namespace wpnet {

namespace {

/// Streaming mean / variance accumulator (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t n() const { return n_; }
    double mean() const { return mean_; }
    double standard_error() const {
        if (n_ < 2) return 0.0;
        const double var = m2_ / static_cast<double>(n_ - 1);
        return std::sqrt(var / static_cast<double>(n_));
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

McEstimate finalize(const RunningStats& stats) {
    McEstimate e;
    e.mean = stats.mean();
    e.standard_error = stats.standard_error();
    e.n = stats.n();
    return e;
}

Histogram build_histogram(std::vector<double> values, int bins) {
    Histogram h;
    if (values.empty() || bins < 1) return h;
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / bins;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
    h.counts.assign(bins, 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[b];
    }
    return h;
}

std::complex<double> circular_gaussian(std::normal_distribution<double>& n1,
                                       std::mt19937_64& rng, double variance) {
    const double s = std::sqrt(variance / 2.0);
    return {s * n1(rng), s * n1(rng)};
}

Point2 uniform_on_disk(const ClusterSpec& spec, std::mt19937_64& rng,
                       std::uniform_real_distribution<double>& unit) {
    const double r = spec.radius * std::sqrt(unit(rng));
    const double ang = 2.0 * kPi * unit(rng);
    return spec.center + r * Point2(std::cos(ang), std::sin(ang));
}

}  // namespace

std::size_t Histogram::total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

McEstimate mc_eta_intra(const ClusterSpec& spec, double alpha, const McConfig& cfg) {
    RunningStats stats;
    std::mt19937_64 pick(derive_seed(cfg.seed, 0x70726f6265u));
    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const auto pts = sample_cluster(spec, derive_seed(cfg.seed, 0x696e747261u, r));
        if (pts.size() < 2) {
            stats.add(0.0);
            continue;
        }
        std::uniform_int_distribution<std::size_t> which(0, pts.size() - 1);
        const std::size_t probe = which(pick);
        double sum = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == probe) continue;
            sum += std::pow((pts[i] - pts[probe]).norm(), -alpha);
        }
        stats.add(sum);
    }
    return finalize(stats);
}

McEstimate mc_eta_inter(const ClusterSpec& target, const std::vector<ClusterSpec>& others,
                        double alpha, const McConfig& cfg) {
    RunningStats stats;
    std::vector<double> db_samples;
    if (cfg.histogram_bins > 0) db_samples.reserve(cfg.n_realizations);

    std::mt19937_64 pick(derive_seed(cfg.seed, 0x70726f6265u));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const std::uint64_t rseed = derive_seed(cfg.seed, 0x696e746572u, r);
        const auto target_pts = sample_cluster(target, derive_seed(rseed, 0));

        Point2 probe;
        if (target_pts.empty()) {
            probe = uniform_on_disk(target, pick, unit);
        } else {
            std::uniform_int_distribution<std::size_t> which(0, target_pts.size() - 1);
            probe = target_pts[which(pick)];
        }

        double sum = 0.0;
        for (const auto& other : others) {
            if (other.id == target.id) continue;
            const auto pts = sample_cluster(other, derive_seed(rseed, 1 + other.id));
            for (const auto& p : pts) sum += std::pow((p - probe).norm(), -alpha);
        }
        stats.add(sum);
        if (cfg.histogram_bins > 0 && sum > 0.0) db_samples.push_back(to_db(sum));
    }

    McEstimate est = finalize(stats);
    if (cfg.histogram_bins > 0)
        est.histogram = build_histogram(std::move(db_samples), cfg.histogram_bins);
    return est;
}

McEstimate mc_wpt_energy(const ClusterSpec& cluster, const ComplexMatrix& q,
                         const SystemParams& params, const SteeringModel& steering,
                         const McConfig& cfg) {
    if (q.rows() != steering.m_antennas || q.cols() != steering.m_antennas)
        throw DomainError("mc_wpt_energy: covariance dimension does not match the array");
    RunningStats stats;
    std::mt19937_64 rng(derive_seed(cfg.seed, 0x777074u));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const Point2 x = uniform_on_disk(cluster, rng, unit);
        const double d = x.norm();
        const double theta = std::atan2(x.y(), x.x());
        const Complex g = circular_gaussian(gauss, rng, params.sigma_g2);
        const ComplexVector h =
            std::pow(d, -params.alpha / 2.0) * g * steering_vector(steering, theta);
        stats.add(params.t_dl * (h.adjoint() * q * h)(0).real());
    }
    return finalize(stats);
}

McMatrixEstimate mc_correlation_matrix(const ClusterSpec& cluster, const SystemParams& params,
                                       const SteeringModel& steering, const McConfig& cfg) {
    const int m = steering.m_antennas;
    ComplexMatrix mean = ComplexMatrix::Zero(m, m);
    Eigen::MatrixXd sq_norm = Eigen::MatrixXd::Zero(m, m);

    std::mt19937_64 rng(derive_seed(cfg.seed, 0x636f7272u));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const Point2 x = uniform_on_disk(cluster, rng, unit);
        const double d = x.norm();
        const double theta = std::atan2(x.y(), x.x());
        const Complex g = circular_gaussian(gauss, rng, params.sigma_g2);
        const ComplexVector h =
            std::pow(d, -params.alpha / 2.0) * g * steering_vector(steering, theta);
        const ComplexMatrix outer = h * h.adjoint();
        mean += outer;
        sq_norm += outer.cwiseAbs2();
    }
    const double n = static_cast<double>(cfg.n_realizations);
    mean /= n;

    // worst per-entry standard error of the complex sample mean
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double var = sq_norm(i, j) / n - std::norm(mean(i, j));
            worst = std::max(worst, std::sqrt(std::max(var, 0.0) / n));
        }
    return {std::move(mean), worst, cfg.n_realizations};
}

McEstimate mc_eh_energy(const std::vector<ClusterSpec>& specs, int target_id,
                        const SystemParams& params, const McConfig& cfg, EhSumMode mode) {
    validate_params(params);
    const auto target_it =
        std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.id == target_id; });
    if (target_it == specs.end())
        throw DomainError("mc_eh_energy: no cluster with id " + std::to_string(target_id));

    RunningStats stats;
    std::mt19937_64 rng(derive_seed(cfg.seed, 0x6568u));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::bernoulli_distribution active(params.p_act);

    const double amp_tau = std::sqrt(params.p_tau);
    const int slots = cfg.n_slots > 0 ? cfg.n_slots : params.n_slots;
    const double t_slot = params.t_ul / slots;

    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const auto net = sample_network(specs, derive_seed(cfg.seed, 0x6e6574u, r));

        // flatten every sensor with its distance to the tagged harvester
        std::size_t target_cluster_index = 0;
        for (std::size_t k = 0; k < specs.size(); ++k)
            if (specs[k].id == target_id) target_cluster_index = k;
        const auto& tpts = net.points[target_cluster_index];

        Point2 probe;
        std::size_t probe_index = std::numeric_limits<std::size_t>::max();
        if (tpts.empty()) {
            probe = uniform_on_disk(*target_it, rng, unit);
        } else {
            std::uniform_int_distribution<std::size_t> which(0, tpts.size() - 1);
            probe_index = which(rng);
            probe = tpts[probe_index];
        }

        std::vector<double> amplitudes;  // rho^{-alpha/2} per interfering sensor
        for (std::size_t k = 0; k < net.points.size(); ++k) {
            for (std::size_t i = 0; i < net.points[k].size(); ++i) {
                if (k == target_cluster_index && i == probe_index) continue;
                const double rho = (net.points[k][i] - probe).norm();
                amplitudes.push_back(std::pow(rho, -params.alpha / 2.0));
            }
        }

        double frame_joules = 0.0;
        for (int n = 0; n < slots; ++n) {
            const bool probe_tx = active(rng);
            Complex coherent{0.0, 0.0};
            double incoherent = 0.0;
            for (double a : amplitudes) {
                if (!active(rng)) continue;
                const Complex fading = circular_gaussian(gauss, rng, params.sigma_gamma2);
                const Complex symbol = std::polar(amp_tau, 2.0 * kPi * unit(rng));
                const Complex term = a * fading * symbol;
                coherent += term;
                incoherent += std::norm(term);
            }
            if (probe_tx) continue;  // harvester busy transmitting
            frame_joules +=
                t_slot * (mode == EhSumMode::coherent ? std::norm(coherent) : incoherent);
        }
        stats.add(frame_joules);
    }
    return finalize(stats);
}

void write_histogram_csv(const Histogram& h, std::ostream& os) {
    os << "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        os << format_number(h.edges[b]) << ',' << format_number(h.edges[b + 1]) << ','
           << h.counts[b] << '\n';
}

}  // namespace wpnet
