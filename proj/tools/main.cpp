// bunchlab: boson bunching calculators behind a reproducible command line.
// Subcommands: pair, gaussian, multi, sample, density. Every run is a pure
// function of its flags, input files and seed.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bunchlab/bunchlab.hpp"

namespace {

using bunchlab::Complex;
using bunchlab::format_real;
using bunchlab::PureState;
using nlohmann::ordered_json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Writes to the file at `path`, or to stdout when path is empty.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!file_->is_open())
            throw std::runtime_error("cannot open output file '" + path + "'");
        path_ = path;
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }

    void finish() {
        if (!file_) return;
        file_->flush();
        if (!file_->good())
            throw std::runtime_error("failed while writing '" + path_ + "'");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

Complex parse_complex_entry(const nlohmann::json& entry, const std::string& where) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
        throw std::runtime_error(where + ": expected a [re, im] pair");
    return Complex{entry[0].get<double>(), entry[1].get<double>()};
}

// JSON state file: array of states, each an array of [re, im] pairs.
std::vector<PureState> load_states(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw std::runtime_error("cannot open states file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("states file '" + path + "': " + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw std::runtime_error("states file '" + path + "': expected a non-empty array");

    std::vector<PureState> states;
    states.reserve(doc.size());
    for (std::size_t s = 0; s < doc.size(); ++s) {
        const std::string where = "state " + std::to_string(s);
        const nlohmann::json& row = doc[s];
        if (!row.is_array() || row.empty())
            throw std::runtime_error(where + ": expected a non-empty array of [re, im] pairs");
        std::vector<Complex> amps;
        amps.reserve(row.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            amps.push_back(
                parse_complex_entry(row[c], where + ", component " + std::to_string(c)));
        try {
            states.emplace_back(std::move(amps));
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
    }
    return states;
}

// JSON unitary file: array of rows, each an array of [re, im] pairs.
bunchlab::UnitaryMatrix load_unitary(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw std::runtime_error("cannot open unitary file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("unitary file '" + path + "': " + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw std::runtime_error("unitary file '" + path + "': expected an array of rows");
    const std::size_t dim = doc.size();
    bunchlab::SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::string where = "row " + std::to_string(i);
        if (!doc[i].is_array() || doc[i].size() != dim)
            throw std::runtime_error("unitary file '" + path + "', " + where +
                                     ": expected " + std::to_string(dim) + " entries");
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = parse_complex_entry(doc[i][j],
                                          where + ", column " + std::to_string(j));
    }
    try {
        return bunchlab::UnitaryMatrix(std::move(m));
    } catch (const std::exception& e) {
        throw std::runtime_error("unitary file '" + path + "': " + e.what());
    }
}

struct PairArgs {
    double theta1 = 0.0;
    double mu1 = 0.0;
    double theta2 = 0.0;
    double mu2 = 0.0;
    bool degrees = false;
    std::string unitary_path;
    std::string format = "csv";
    std::string out;
};

int run_pair(const PairArgs& args) {
    const double scale = args.degrees ? kDegToRad : 1.0;
    const bunchlab::TwoModeParams p1{args.theta1 * scale, args.mu1 * scale};
    const bunchlab::TwoModeParams p2{args.theta2 * scale, args.mu2 * scale};

    const bunchlab::UnitaryMatrix u =
        args.unitary_path.empty() ? bunchlab::beam_splitter() : load_unitary(args.unitary_path);
    if (u.dim() != 2)
        throw std::runtime_error("pair states are two-mode; the unitary must be 2x2");

    const PureState out1 = apply_unitary(u, two_mode_state(p1));
    const PureState out2 = apply_unitary(u, two_mode_state(p2));
    const double overlap_sq = overlap_sq_two_mode(p1, p2);
    const double beta = bunchlab::beta_two_mode(p1, p2);

    OutputTarget target(args.out);
    std::ostream& os = target.stream();
    if (args.format == "json") {
        ordered_json outcomes = ordered_json::array();
        for (std::size_t m = 0; m < 2; ++m) {
            for (std::size_t p = m; p < 2; ++p) {
                const auto probs = outcome_probabilities(out1, out2, {m, p});
                ordered_json row{{"m", m},
                                 {"p", p},
                                 {"p_boson", probs.p_boson},
                                 {"p_dist", probs.p_dist}};
                if (probs.beta)
                    row["ratio"] = *probs.beta;
                else
                    row["ratio"] = nullptr;
                outcomes.push_back(std::move(row));
            }
        }
        const ordered_json doc{
            {"overlap_sq", overlap_sq}, {"beta", beta}, {"outcomes", std::move(outcomes)}};
        os << doc.dump(2) << '\n';
    } else {
        os << "# overlap_sq = " << format_real(overlap_sq) << '\n';
        os << "# beta = " << format_real(beta) << '\n';
        os << "m,p,p_boson,p_dist,ratio\n";
        for (std::size_t m = 0; m < 2; ++m) {
            for (std::size_t p = m; p < 2; ++p) {
                const auto probs = outcome_probabilities(out1, out2, {m, p});
                os << m << ',' << p << ',' << format_real(probs.p_boson) << ','
                   << format_real(probs.p_dist) << ','
                   << (probs.beta ? format_real(*probs.beta) : "nan") << '\n';
            }
        }
    }
    target.finish();
    return 0;
}

struct GaussianArgs {
    double x0 = 0.0;
    double k = 0.0;
    std::optional<double> sigma;
    bool optimal_width = false;
    std::string scan;  // "", "x" or "t"
    double fixed_t = 0.0;
    double fixed_x = 0.0;
    std::optional<double> scan_min;
    std::optional<double> scan_max;
    std::size_t points = 200;
    std::string format = "csv";
    std::string out;
};

int run_gaussian(const GaussianArgs& args) {
    double sigma = 0.0;
    double beta = 0.0;
    if (args.optimal_width) {
        const bunchlab::OptimalWidth opt = bunchlab::beta_optimal_width(args.x0, args.k);
        sigma = opt.sigma;
        beta = opt.beta;
    } else {
        if (!args.sigma)
            throw std::runtime_error("either --sigma or --optimal-width is required");
        sigma = *args.sigma;
        beta = bunchlab::beta_gaussian(args.x0, args.k, sigma);
    }
    const double overlap = bunchlab::overlap_gaussian(args.x0, args.k, sigma);

    OutputTarget target(args.out);
    std::ostream& os = target.stream();

    if (args.scan.empty()) {
        if (args.format == "json") {
            ordered_json doc{{"x0", args.x0},
                             {"k", args.k},
                             {"sigma", sigma},
                             {"overlap", overlap},
                             {"beta", beta}};
            os << doc.dump(2) << '\n';
        } else {
            os << "quantity,value\n";
            os << "x0," << format_real(args.x0) << '\n';
            os << "k," << format_real(args.k) << '\n';
            os << "sigma," << format_real(sigma) << '\n';
            os << "overlap," << format_real(overlap) << '\n';
            os << "beta," << format_real(beta) << '\n';
        }
        target.finish();
        return 0;
    }

    const auto packets = bunchlab::counter_propagating_pair(args.x0, args.k, sigma);
    const Complex initial_overlap = bunchlab::overlap_gaussian(packets[0], packets[1]);
    os << "x,t,p_boson_density,p_dist_density,ratio\n";
    const std::size_t points = std::max<std::size_t>(args.points, 2);
    auto emit = [&](double x, double t) {
        const bunchlab::SpatialDensityPair d =
            spatial_densities(packets[0], packets[1], x, t, initial_overlap);
        os << format_real(x) << ',' << format_real(t) << ','
           << format_real(d.p_boson_density) << ',' << format_real(d.p_dist_density) << ',';
        if (d.p_dist_density > 0.0)
            os << format_real(d.p_boson_density / d.p_dist_density);
        else
            os << "nan";
        os << '\n';
    };
    if (args.scan == "x") {
        const double reach =
            std::max(std::abs(bunchlab::packet_center(packets[0], args.fixed_t)),
                     std::abs(bunchlab::packet_center(packets[1], args.fixed_t)));
        const double width = bunchlab::packet_width(packets[0], args.fixed_t);
        const double lo = args.scan_min.value_or(-(reach + 4.0 * width));
        const double hi = args.scan_max.value_or(reach + 4.0 * width);
        for (std::size_t i = 0; i < points; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
            emit(x, args.fixed_t);
        }
    } else {  // scan == "t"
        const double crossing =
            (args.x0 > 0.0 && args.k > 0.0) ? args.x0 / args.k : sigma * sigma;
        const double lo = args.scan_min.value_or(0.0);
        const double hi = args.scan_max.value_or(10.0 * crossing);
        for (std::size_t i = 0; i < points; ++i) {
            const double t = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
            emit(args.fixed_x, t);
        }
    }
    target.finish();
    return 0;
}

struct MultiArgs {
    std::string states_path;
    bool oracle = false;
    std::string format = "csv";
    std::string out;
};

int run_multi(const MultiArgs& args) {
    const std::vector<PureState> states = load_states(args.states_path);
    const bunchlab::EnhancementResult result = bunchlab::beta_q(states);

    std::optional<double> discrepancy;
    if (args.oracle) {
        const bunchlab::GramMatrix gram = bunchlab::gram_matrix(states);
        const Complex fast = bunchlab::permanent_ryser(gram.entries());
        const Complex naive = bunchlab::permanent_naive(gram.entries());
        discrepancy = std::abs(fast - naive) / std::max(1.0, std::abs(naive));
    }

    OutputTarget target(args.out);
    std::ostream& os = target.stream();
    const std::string q_factorial = bunchlab::uint128_to_string(result.q_factorial);
    if (args.format == "json") {
        ordered_json doc{{"q", states.size()},
                         {"n_const", result.n_const},
                         {"q_factorial", q_factorial},
                         {"beta", result.beta}};
        if (discrepancy) doc["oracle_discrepancy"] = *discrepancy;
        os << doc.dump(2) << '\n';
    } else {
        os << "quantity,value\n";
        os << "q," << states.size() << '\n';
        os << "n_const," << format_real(result.n_const) << '\n';
        os << "q_factorial," << q_factorial << '\n';
        os << "beta," << format_real(result.beta) << '\n';
        if (discrepancy) os << "oracle_discrepancy," << format_real(*discrepancy) << '\n';
    }
    target.finish();
    return 0;
}

struct SampleArgs {
    std::string scenario = "general";
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 0;
    std::size_t bins = 200;
    unsigned threads = 1;
    std::string out;
};

std::string sidecar_path(const std::string& csv_path) {
    std::filesystem::path sidecar(csv_path);
    sidecar.replace_extension(".json");
    if (sidecar == std::filesystem::path(csv_path)) sidecar += ".stats.json";
    return sidecar.string();
}

int run_sample(const SampleArgs& args) {
    const bunchlab::Scenario scenario = bunchlab::parse_scenario(args.scenario);
    const bunchlab::BetaHistogram hist =
        bunchlab::sample_beta(scenario, args.n, args.seed, args.bins, args.threads);

    {
        std::ofstream csv(args.out, std::ios::binary);
        if (!csv.is_open())
            throw std::runtime_error("cannot open output file '" + args.out + "'");
        write_histogram_csv(csv, hist);
        csv.flush();
        if (!csv.good()) throw std::runtime_error("failed while writing '" + args.out + "'");
    }

    const std::string stats_path = sidecar_path(args.out);
    {
        std::ofstream sidecar(stats_path, std::ios::binary);
        if (!sidecar.is_open())
            throw std::runtime_error("cannot open output file '" + stats_path + "'");
        sidecar << bunchlab::histogram_stats_json(hist).dump(2) << '\n';
        sidecar.flush();
        if (!sidecar.good())
            throw std::runtime_error("failed while writing '" + stats_path + "'");
    }

    const bunchlab::SummaryStats stats = summarize(hist);
    std::cout << "wrote " << args.out << " and " << stats_path
              << " (mean=" << format_real(stats.mean) << ", std=" << format_real(stats.std)
              << ")\n";
    return 0;
}

struct DensityArgs {
    double beta_min = 1.001;
    double beta_max = 1.999;
    std::size_t points = 200;
    std::string out;
};

int run_density(const DensityArgs& args) {
    if (!(args.beta_min > 1.0) || !(args.beta_max < 2.0) || !(args.beta_min < args.beta_max))
        throw std::runtime_error(
            "beta grid must satisfy 1 < min < max < 2; the density has integrable "
            "singularities at beta = 1 and beta = 2");
    const std::size_t points = std::max<std::size_t>(args.points, 2);

    OutputTarget target(args.out);
    std::ostream& os = target.stream();
    os << "beta,rho,rho_near_one,rho_near_two\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double beta = args.beta_min + (args.beta_max - args.beta_min) *
                                                static_cast<double>(i) / (points - 1);
        os << format_real(beta) << ',' << format_real(bunchlab::density_equal_phase(beta))
           << ','
           << format_real(bunchlab::density_edge_approx(beta, bunchlab::DensityEdge::near_one))
           << ','
           << format_real(bunchlab::density_edge_approx(beta, bunchlab::DensityEdge::near_two))
           << '\n';
    }
    target.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "boson bunching calculators: beta = p_B/p_D from initial-state overlaps, "
        "Gaussian packets, Q-particle enhancement and random-state distributions"};
    app.require_subcommand(1);
    app.failure_message(
        [](const CLI::App* failing, const CLI::Error& e) -> std::string {
            return "error: " + failing->get_name() + ": " + e.what() + "\n";
        });

    PairArgs pair_args;
    CLI::App* pair = app.add_subcommand(
        "pair", "two-mode pair: I^2, beta = 2/(1+I^2) and per-outcome p_B, p_D");
    pair->add_option("--theta1", pair_args.theta1,
                     "amplitude angle of state 1 in cos(t)e^{i mu}|u> + sin(t)e^{-i mu}|d>")
        ->capture_default_str();
    pair->add_option("--mu1", pair_args.mu1, "phase angle of state 1")->capture_default_str();
    pair->add_option("--theta2", pair_args.theta2, "amplitude angle of state 2")
        ->capture_default_str();
    pair->add_option("--mu2", pair_args.mu2, "phase angle of state 2")->capture_default_str();
    pair->add_flag("--degrees", pair_args.degrees, "read the four angles in degrees");
    pair->add_option("--unitary", pair_args.unitary_path,
                     "JSON file with a 2x2 unitary applied to both states "
                     "(default: the 50:50 splitter (1/sqrt 2)[[1,i],[i,1]]); "
                     "beta is invariant under this choice");
    pair->add_option("--format", pair_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    pair->add_option("--out", pair_args.out, "output file (default: stdout)");

    GaussianArgs gaussian_args;
    CLI::App* gaussian = app.add_subcommand(
        "gaussian",
        "counter-propagating Gaussian packets at +-x0 with wavenumbers -+k: "
        "I = exp(-2 x0^2/sigma^2 - k^2 sigma^2/2), beta = 2/(1+I^2)");
    gaussian->add_option("--x0", gaussian_args.x0, "half the release separation")
        ->capture_default_str();
    gaussian->add_option("--k", gaussian_args.k, "packet wavenumber")->capture_default_str();
    CLI::Option* sigma_opt = gaussian->add_option("--sigma", gaussian_args.sigma, "packet width");
    gaussian
        ->add_flag("--optimal-width", gaussian_args.optimal_width,
                   "use sigma = sqrt(2 x0/k), the width of highest overlap, "
                   "where beta = 2/(1+exp(-4 k x0))")
        ->excludes(sigma_opt);
    gaussian->add_option("--scan", gaussian_args.scan,
                         "emit CSV of p_B, p_D and their ratio along x or t; "
                         "the ratio is constant throughout space and time")
        ->check(CLI::IsMember({"x", "t"}));
    gaussian->add_option("--t", gaussian_args.fixed_t, "fixed time for --scan x")
        ->capture_default_str();
    gaussian->add_option("--x", gaussian_args.fixed_x, "fixed position for --scan t")
        ->capture_default_str();
    gaussian->add_option("--scan-min", gaussian_args.scan_min, "scan range start");
    gaussian->add_option("--scan-max", gaussian_args.scan_max, "scan range end");
    gaussian->add_option("--points", gaussian_args.points, "scan grid points")
        ->capture_default_str();
    gaussian->add_option("--format", gaussian_args.format, "output format for the report mode")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    gaussian->add_option("--out", gaussian_args.out, "output file (default: stdout)");

    MultiArgs multi_args;
    CLI::App* multi = app.add_subcommand(
        "multi", "Q-particle enhancement beta = Q!/N with N the permanent of the overlap "
                 "Gram matrix; beta = Q! only for mutually orthogonal states");
    multi->add_option("--states", multi_args.states_path,
                      "JSON file: array of states, each an array of [re, im] pairs")
        ->required();
    multi->add_flag("--oracle", multi_args.oracle,
                    "also run the brute-force permanent (Q <= 10) and report the discrepancy");
    multi->add_option("--format", multi_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    multi->add_option("--out", multi_args.out, "output file (default: stdout)");

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand(
        "sample", "Monte Carlo distribution of beta over random two-mode pairs "
                  "(angles uniform on [0, 2 pi)); writes a histogram CSV and a "
                  "JSON stats sidecar");
    sample->add_option("--scenario", sample_args.scenario,
                       "general: all four angles free; equal_phase: mu1 = mu2, "
                       "beta = 2/(1+cos^2(theta1-theta2)); equal_amplitude: theta1 = theta2, "
                       "beta = 1/(1 - sin^2(2 theta) sin^2(mu2-mu1)/2)")
        ->check(CLI::IsMember({"general", "equal_phase", "equal_amplitude"}))
        ->capture_default_str();
    sample->add_option("--n", sample_args.n, "sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "random seed; explicit flag wins over env")
        ->envname("BUNCHLAB_SEED")
        ->capture_default_str();
    sample->add_option("--bins", sample_args.bins, "histogram bins on [1, 2]")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
        ->capture_default_str();
    sample->add_option("--threads", sample_args.threads,
                       "worker count; the output bytes do not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sample->add_option("--out", sample_args.out, "histogram CSV path")->required();

    DensityArgs density_args;
    CLI::App* density = app.add_subcommand(
        "density", "analytic equal-phase density rho(beta) = (4/pi)/(beta^2 "
                   "sqrt(1-(4/beta-3)^2)) with its edge asymptotics");
    density->add_option("--beta-min", density_args.beta_min, "grid start, must exceed 1")
        ->capture_default_str();
    density->add_option("--beta-max", density_args.beta_max, "grid end, must stay below 2")
        ->capture_default_str();
    density->add_option("--points", density_args.points, "grid points")
        ->capture_default_str();
    density->add_option("--out", density_args.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
        if (pair->parsed()) return run_pair(pair_args);
        if (gaussian->parsed()) return run_gaussian(gaussian_args);
        if (multi->parsed()) return run_multi(multi_args);
        if (sample->parsed()) return run_sample(sample_args);
        if (density->parsed()) return run_density(density_args);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
