#pragma once

// CSV and JSON export for histograms and analytic curves. Reals are written
// with 17 significant digits so values round-trip exactly.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bunchlab/ensemble.hpp"

namespace bunchlab {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header `bin_left,bin_right,count,density`; density = count / (n * width).
inline void write_histogram_csv(std::ostream& os, const BetaHistogram& h) {
    os << "bin_left,bin_right,count,density\n";
    const auto& edges = h.bin_edges();
    const auto& counts = h.counts();
    const auto n = static_cast<double>(h.n_samples());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double width = edges[i + 1] - edges[i];
        const double density =
            h.n_samples() == 0 ? 0.0 : static_cast<double>(counts[i]) / (n * width);
        os << format_real(edges[i]) << ',' << format_real(edges[i + 1]) << ',' << counts[i]
           << ',' << format_real(density) << '\n';
    }
}

/// Sidecar metadata: scenario, seed, sample count, mean and std.
inline nlohmann::ordered_json histogram_stats_json(const BetaHistogram& h) {
    double mean = 0.0;
    double std_dev = 0.0;
    if (h.n_samples() >= 2) {
        const SummaryStats s = summarize(h);
        mean = s.mean;
        std_dev = s.std;
    } else if (h.n_samples() == 1) {
        mean = h.sum();
    }
    return nlohmann::ordered_json{{"scenario", scenario_name(h.scenario())},
                                  {"seed", h.seed()},
                                  {"n_samples", h.n_samples()},
                                  {"mean", mean},
                                  {"std", std_dev}};
}

/// Analytic curve export, header `beta,rho`.
inline void write_density_curve_csv(std::ostream& os, const std::vector<double>& betas) {
    os << "beta,rho\n";
    for (double beta : betas)
        os << format_real(beta) << ',' << format_real(density_equal_phase(beta)) << '\n';
}

}  // namespace bunchlab
