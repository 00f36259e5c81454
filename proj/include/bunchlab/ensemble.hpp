#pragma once

// Monte Carlo distributions of beta over random two-mode state pairs, the
// analytic density of the equal-phase case and its edge asymptotics.
//
// Sampling is deterministic and thread-count independent: the sample space
// splits into fixed-size chunks, chunk c uses RandomStream::derive(seed, c),
// and partial results merge in chunk order.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "bunchlab/pair.hpp"
#include "bunchlab/rng.hpp"
#include "bunchlab/states.hpp"

namespace bunchlab {

inline constexpr std::uint64_t sampler_chunk_size = 1u << 16;

enum class Scenario { general, equal_phase, equal_amplitude };

inline std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::general: return "general";
        case Scenario::equal_phase: return "equal_phase";
        case Scenario::equal_amplitude: return "equal_amplitude";
    }
    throw std::invalid_argument("scenario_name: unknown scenario");
}

inline Scenario parse_scenario(std::string_view name) {
    if (name == "general") return Scenario::general;
    if (name == "equal_phase") return Scenario::equal_phase;
    if (name == "equal_amplitude") return Scenario::equal_amplitude;
    throw std::invalid_argument("unknown scenario '" + std::string(name) +
                                "' (expected general, equal_phase or equal_amplitude)");
}

// One random state pair per scenario. Angle draw order is fixed per
// scenario and is part of the determinism contract:
//   general:         theta1, mu1, theta2, mu2
//   equal_phase:     theta1, theta2, shared mu
//   equal_amplitude: shared theta, mu1, mu2
inline std::pair<TwoModeParams, TwoModeParams> draw_scenario(Scenario s, RandomStream& rng) {
    switch (s) {
        case Scenario::general: {
            const TwoModeParams p1 = random_two_mode(rng);
            const TwoModeParams p2 = random_two_mode(rng);
            return {p1, p2};
        }
        case Scenario::equal_phase: {
            const double theta1 = rng.uniform(0.0, two_pi);
            const double theta2 = rng.uniform(0.0, two_pi);
            const double mu = rng.uniform(0.0, two_pi);
            return {TwoModeParams{theta1, mu}, TwoModeParams{theta2, mu}};
        }
        case Scenario::equal_amplitude: {
            const double theta = rng.uniform(0.0, two_pi);
            const double mu1 = rng.uniform(0.0, two_pi);
            const double mu2 = rng.uniform(0.0, two_pi);
            return {TwoModeParams{theta, mu1}, TwoModeParams{theta, mu2}};
        }
    }
    throw std::invalid_argument("draw_scenario: unknown scenario");
}

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;
    std::uint64_t n = 0;
};

// Uniform binning of beta samples on [1, 2] with raw first and second
// moments kept alongside the counts. The two endpoint bins are half-open
// so beta = 1 and beta = 2 land in the first and last bin.
class BetaHistogram {
public:
    BetaHistogram(std::size_t bins, std::uint64_t seed, Scenario scenario)
        : seed_(seed), scenario_(scenario), counts_(bins, 0) {
        if (bins < 2) throw std::invalid_argument("BetaHistogram: need at least 2 bins");
        edges_.resize(bins + 1);
        for (std::size_t i = 0; i <= bins; ++i)
            edges_[i] = 1.0 + static_cast<double>(i) / static_cast<double>(bins);
        edges_.front() = 1.0;
        edges_.back() = 2.0;
    }

    static std::size_t bin_index(double beta, std::size_t bins) {
        const auto idx = static_cast<std::int64_t>(
            std::floor((beta - 1.0) * static_cast<double>(bins)));
        return static_cast<std::size_t>(
            std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(bins) - 1));
    }

    void add(double beta) {
        ++counts_[bin_index(beta, counts_.size())];
        ++n_samples_;
        sum_ += beta;
        sum_sq_ += beta * beta;
    }

    /// Bin-wise accumulation of a compatible partial histogram.
    void merge(const BetaHistogram& other) {
        if (other.counts_.size() != counts_.size() || other.seed_ != seed_ ||
            other.scenario_ != scenario_)
            throw std::invalid_argument("BetaHistogram::merge: incompatible histograms");
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
        n_samples_ += other.n_samples_;
        sum_ += other.sum_;
        sum_sq_ += other.sum_sq_;
    }

    const std::vector<double>& bin_edges() const { return edges_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t n_samples() const { return n_samples_; }
    std::uint64_t seed() const { return seed_; }
    Scenario scenario() const { return scenario_; }
    double sum() const { return sum_; }
    double sum_sq() const { return sum_sq_; }

private:
    friend BetaHistogram sample_beta(Scenario, std::uint64_t, std::uint64_t, std::size_t,
                                     unsigned);

    std::uint64_t seed_;
    Scenario scenario_;
    std::vector<double> edges_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t n_samples_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

namespace detail {

template <typename Sink>
void sample_chunk(Scenario scenario, std::uint64_t seed, std::uint64_t chunk,
                  std::uint64_t count, Sink&& sink) {
    RandomStream rng = RandomStream::derive(seed, chunk);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto [p1, p2] = draw_scenario(scenario, rng);
        sink(beta_two_mode(p1, p2));
    }
}

}  // namespace detail

// Samples n values of beta into a histogram. The result is identical for
// every thread count and every run with the same (scenario, n, seed, bins):
// integer bin counts merge in any order, and the floating moments fold in
// chunk order.
inline BetaHistogram sample_beta(Scenario scenario, std::uint64_t n, std::uint64_t seed,
                                 std::size_t bins = 200, unsigned threads = 1) {
    if (n == 0) throw std::invalid_argument("sample_beta: need at least one sample");
    if (threads == 0) threads = 1;
    BetaHistogram result(bins, seed, scenario);  // validates the bin count

    const std::uint64_t chunk_count = (n + sampler_chunk_size - 1) / sampler_chunk_size;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunk_count));

    struct Moments {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Moments> chunk_moments(chunk_count);
    std::vector<std::vector<std::uint64_t>> worker_counts(
        threads, std::vector<std::uint64_t>(bins, 0));

    std::atomic<std::uint64_t> next_chunk{0};
    auto worker = [&](unsigned w) {
        std::vector<std::uint64_t>& counts = worker_counts[w];
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunk_count) return;
            const std::uint64_t begin = c * sampler_chunk_size;
            const std::uint64_t count = std::min<std::uint64_t>(sampler_chunk_size, n - begin);
            Moments m;
            detail::sample_chunk(scenario, seed, c, count, [&](double beta) {
                ++counts[BetaHistogram::bin_index(beta, bins)];
                m.sum += beta;
                m.sum_sq += beta * beta;
            });
            chunk_moments[c] = m;
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    for (const std::vector<std::uint64_t>& counts : worker_counts)
        for (std::size_t i = 0; i < bins; ++i) result.counts_[i] += counts[i];
    for (std::uint64_t c : result.counts_) result.n_samples_ += c;
    for (const Moments& m : chunk_moments) {
        result.sum_ += m.sum;
        result.sum_sq_ += m.sum_sq;
    }
    return result;
}

// Streams the same sample sequence as sample_beta, in order, to a callback.
inline void sample_beta_visit(Scenario scenario, std::uint64_t n, std::uint64_t seed,
                              const std::function<void(double)>& visit) {
    if (n == 0) throw std::invalid_argument("sample_beta_visit: need at least one sample");
    const std::uint64_t chunk_count = (n + sampler_chunk_size - 1) / sampler_chunk_size;
    for (std::uint64_t c = 0; c < chunk_count; ++c) {
        const std::uint64_t begin = c * sampler_chunk_size;
        const std::uint64_t count = std::min<std::uint64_t>(sampler_chunk_size, n - begin);
        detail::sample_chunk(scenario, seed, c, count, visit);
    }
}

/// Sample mean and population standard deviation from the raw moments.
inline SummaryStats summarize(const BetaHistogram& h) {
    if (h.n_samples() < 2) throw std::invalid_argument("summarize: need at least 2 samples");
    SummaryStats s;
    s.n = h.n_samples();
    const auto n = static_cast<double>(s.n);
    s.mean = h.sum() / n;
    const double variance = std::max(0.0, h.sum_sq() / n - s.mean * s.mean);
    s.std = std::sqrt(variance);
    return s;
}

inline SummaryStats summarize(const std::vector<double>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("summarize: need at least 2 samples");
    SummaryStats s;
    s.n = samples.size();
    const auto n = static_cast<double>(s.n);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : samples) {
        sum += v;
        sum_sq += v * v;
    }
    s.mean = sum / n;
    s.std = std::sqrt(std::max(0.0, sum_sq / n - s.mean * s.mean));
    return s;
}

// Analytic density of beta for the equal-phase scenario on (1, 2):
//   rho(beta) = (4/pi) / (beta^2 sqrt(1 - (4/beta - 3)^2))
//             = sqrt(2) / (pi beta sqrt((beta - 1)(2 - beta))).
// The factored form is used; it avoids the cancellation of the first
// grouping near the endpoints. Integrable singularities sit at 1 and 2.
inline double density_equal_phase(double beta) {
    if (!(beta > 1.0 && beta < 2.0))
        throw std::domain_error("density_equal_phase: beta must lie strictly inside (1, 2)");
    return std::numbers::sqrt2 /
           (std::numbers::pi * beta * std::sqrt((beta - 1.0) * (2.0 - beta)));
}

enum class DensityEdge { near_one, near_two };

// Asymptotics of the equal-phase density:
//   near 1: (1/pi) sqrt(2/(beta - 1)),   near 2: 1 / (pi sqrt(2 (2 - beta))).
inline double density_edge_approx(double beta, DensityEdge edge) {
    if (!(beta > 1.0 && beta < 2.0))
        throw std::domain_error("density_edge_approx: beta must lie strictly inside (1, 2)");
    if (edge == DensityEdge::near_one)
        return std::sqrt(2.0 / (beta - 1.0)) / std::numbers::pi;
    return 1.0 / (std::numbers::pi * std::sqrt(2.0 * (2.0 - beta)));
}

/// rho(1 + delta) / rho(2 - delta); tends to 2 as delta -> 0.
inline double edge_ratio(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::domain_error("edge_ratio: delta must lie in (0, 0.5)");
    return density_equal_phase(1.0 + delta) / density_equal_phase(2.0 - delta);
}

}  // namespace bunchlab
