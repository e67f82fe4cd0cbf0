// truncprod: Monte Carlo and analytics for products of truncated Haar
// matrices. Subcommands mirror the experiments of the study: `moments`,
// `recursion`, `analytic`, `density`, `entropy`, `kaczmarz`. Data goes to
// --out (or stdout); progress and timing go to stderr.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <thread>

#include "report.hpp"
#include "truncprod/analytic.hpp"
#include "truncprod/contraction.hpp"
#include "truncprod/density.hpp"
#include "truncprod/experiment.hpp"
#include "truncprod/moment_recursion.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using namespace truncprod;
using truncprod::cli::Report;

struct CommonOptions {
    int n = 300;
    int delta_n = 1;
    double tau = 0;
    int chain_length = -1;
    std::string group = "unitary";
    int realizations = 20;
    std::uint64_t seed = 1;
    int p_max = 20;
    double alpha = 0;
    int bins = 60;
    double lambda_max = 12.0;
    std::string format = "csv";
    std::string out = "-";
    int workers = static_cast<int>(std::thread::hardware_concurrency());
};

void add_output_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out, "Output path ('-' for stdout)")->capture_default_str();
}

void add_ensemble_flags(CLI::App* cmd, CommonOptions& opt, bool with_group = true) {
    cmd->add_option("--n", opt.n, "Matrix dimension N")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--delta-n", opt.delta_n, "Truncation depth (rows/columns removed)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* tau = cmd->add_option("--tau", opt.tau, "Scaling parameter tau = L dN / N");
    auto* len = cmd->add_option("--chain-length", opt.chain_length, "Number of factors L");
    tau->excludes(len);
    len->excludes(tau);
    if (with_group) {
        cmd->add_option("--group", opt.group, "Matrix group")
            ->check(CLI::IsMember({"unitary", "orthogonal"}))
            ->capture_default_str();
    }
    cmd->add_option("--realizations", opt.realizations, "Independent realizations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
    cmd->add_option("--workers", opt.workers, "Worker threads for realizations")
        ->check(CLI::PositiveNumber);
}

int resolve_chain_length(const CommonOptions& opt, ChainType type) {
    if (opt.chain_length >= 0) return opt.chain_length;
    if (opt.tau > 0) return chain_length_for_tau(opt.tau, opt.n, opt.delta_n, type);
    throw std::invalid_argument("either --tau or --chain-length is required");
}

nlohmann::json base_spec(const std::string& command, const CommonOptions& opt) {
    return {
        {"tool", "truncprod"}, {"version", kToolVersion}, {"command", command},
        {"seed", opt.seed},    {"format", opt.format},
    };
}

struct StderrProgress {
    explicit StderrProgress(int total) : total_(total), start_(std::chrono::steady_clock::now()) {}
    void operator()(int) {
        const int k = ++done_;
        if (k == total_ || k % 5 == 0)
            std::cerr << "  realization " << k << "/" << total_ << " (" << elapsed() << " s)\n";
    }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    int total_;
    std::atomic<int> done_{0};
    std::chrono::steady_clock::time_point start_;
};

std::vector<int> order_list(int p_max) {
    std::vector<int> p_list(p_max);
    for (int p = 1; p <= p_max; ++p) p_list[p - 1] = p;
    return p_list;
}

// ---------------------------------------------------------------- moments --

int run_moments(const CommonOptions& opt) {
    const int length = resolve_chain_length(opt, ChainType::product);
    const double tau_eff = effective_tau(length, opt.n, opt.delta_n, ChainType::product);
    ContractionConfig config{.n = opt.n, .delta_n = opt.delta_n, .chain_length = length,
                             .group = group_from_string(opt.group), .seed = {opt.seed, 0},
                             .realizations = opt.realizations};
    config.validate();

    std::cerr << "moments: N=" << opt.n << " dN=" << opt.delta_n << " L=" << length
              << " tau_eff=" << tau_eff << " group=" << opt.group << "\n";
    StderrProgress progress(opt.realizations);
    const std::vector<int> steps{length};
    auto runs = run_chain_snapshots(config, steps, ChainType::product, opt.workers,
                                    std::ref(progress));
    const auto p_list = order_list(opt.p_max);
    auto moments = snapshot_moments(runs, 0, p_list);

    auto trajectory = solve_recursion(opt.n, opt.delta_n, length + 1, opt.p_max);
    const auto& recursion_row = trajectory.back().values;

    Report report;
    report.spec = base_spec("moments", opt);
    report.spec.update({{"n", opt.n},
                        {"delta_n", opt.delta_n},
                        {"chain_length", length},
                        {"tau_effective", tau_eff},
                        {"group", opt.group},
                        {"realizations", opt.realizations},
                        {"p_max", opt.p_max}});
    report.columns = {"p", "mean", "se", "analytic", "recursion"};
    for (int p = 1; p <= opt.p_max; ++p) {
        const auto& m = moments[p - 1];
        report.rows.push_back({static_cast<double>(p), m.mean, m.std_error,
                               moment_limit(static_cast<double>(p), tau_eff), recursion_row[p - 1]});
    }
    cli::write_report(report, opt.out, opt.format);
    std::cerr << "moments: done in " << progress.elapsed() << " s\n";
    return 0;
}

// -------------------------------------------------------------- recursion --

int run_recursion(const CommonOptions& opt) {
    const int length = resolve_chain_length(opt, ChainType::projector);
    auto trajectory = solve_recursion(opt.n, opt.delta_n, length, opt.p_max);

    Report report;
    report.spec = base_spec("recursion", opt);
    report.spec.update({{"n", opt.n},
                        {"delta_n", opt.delta_n},
                        {"chain_length", length},
                        {"tau_effective", effective_tau(length, opt.n, opt.delta_n, ChainType::projector)},
                        {"p_max", opt.p_max}});
    report.columns = {"n"};
    for (int p = 1; p <= opt.p_max; ++p) report.columns.push_back("S" + std::to_string(p));
    for (const auto& state : trajectory) {
        std::vector<double> row{static_cast<double>(state.step)};
        row.insert(row.end(), state.values.begin(), state.values.end());
        report.rows.push_back(std::move(row));
    }
    cli::write_report(report, opt.out, opt.format);
    return 0;
}

// --------------------------------------------------------------- analytic --

int run_analytic(const CommonOptions& opt) {
    if (!(opt.tau > 0)) throw std::invalid_argument("--tau is required for `analytic`");
    const ScalingPoint point(opt.tau);

    Report report;
    report.spec = base_spec("analytic", opt);
    report.spec.update({{"tau", opt.tau},
                        {"p_max", opt.p_max},
                        {"regime", to_string(point.regime())},
                        {"lambda_min", lambda_min(opt.tau)},
                        {"atom_weight", atom_weight(opt.tau)},
                        {"vn_entropy_offset", vn_entropy_offset(opt.tau)}});
    if (opt.alpha > 0 && opt.alpha != 1.0)
        report.spec["renyi_offset"] = renyi_offset(opt.alpha, opt.tau);

    report.columns = {"p", "erlang_g", "moment_limit", "asymptotic"};
    for (int p = 1; p <= opt.p_max; ++p) {
        const auto asym = moment_asymptotic(p, opt.tau);
        report.rows.push_back({static_cast<double>(p), erlang_g(p, opt.tau),
                               moment_limit(static_cast<double>(p), opt.tau), asym.value});
    }
    cli::write_report(report, opt.out, opt.format);
    return 0;
}

// ---------------------------------------------------------------- density --

int run_density(const CommonOptions& opt) {
    if (opt.bins < 10) throw std::invalid_argument("--bins must be at least 10");
    const int length = resolve_chain_length(opt, ChainType::product);
    const double tau_eff = effective_tau(length, opt.n, opt.delta_n, ChainType::product);
    ContractionConfig config{.n = opt.n, .delta_n = opt.delta_n, .chain_length = length,
                             .group = group_from_string(opt.group), .seed = {opt.seed, 0},
                             .realizations = opt.realizations};
    config.validate();

    std::cerr << "density: N=" << opt.n << " L=" << length << " tau_eff=" << tau_eff << "\n";
    StderrProgress progress(opt.realizations);
    const std::vector<int> steps{length};
    auto runs = run_chain_snapshots(config, steps, ChainType::product, opt.workers,
                                    std::ref(progress));

    // The atom (tau < 1) collects the lambda values left of half the
    // continuum edge; everything above lambda_max counts as overflow.
    const bool has_atom = tau_eff < 1.0;
    const double atom_cut = has_atom ? 0.5 * lambda_min(tau_eff) : 0.0;
    const double width = opt.lambda_max / opt.bins;
    const int r_count = opt.realizations;
    std::vector<std::vector<double>> bin_density(opt.bins, std::vector<double>(r_count, 0.0));
    std::vector<double> atom_fraction(r_count, 0.0), overflow_fraction(r_count, 0.0);
    for (int r = 0; r < r_count; ++r) {
        for (double lam : runs[r].spectra[0].lambda) {
            if (has_atom && lam < atom_cut) {
                atom_fraction[r] += 1.0;
                continue;
            }
            const int b = static_cast<int>(lam / width);
            if (b >= opt.bins) {
                overflow_fraction[r] += 1.0;
            } else {
                bin_density[b][r] += 1.0;
            }
        }
        atom_fraction[r] /= opt.n;
        overflow_fraction[r] /= opt.n;
        for (auto& v : bin_density) v[r] /= opt.n * width;
    }

    auto atom_stat = mean_and_error(0, atom_fraction);
    auto overflow_stat = mean_and_error(0, overflow_fraction);

    Report report;
    report.spec = base_spec("density", opt);
    report.spec.update({{"n", opt.n},
                        {"delta_n", opt.delta_n},
                        {"chain_length", length},
                        {"tau_effective", tau_eff},
                        {"group", opt.group},
                        {"realizations", opt.realizations},
                        {"bins", opt.bins},
                        {"lambda_max", opt.lambda_max},
                        {"lambda_min", lambda_min(tau_eff)},
                        {"atom_weight_analytic", atom_weight(tau_eff)},
                        {"atom_fraction_empirical", atom_stat.mean},
                        {"atom_fraction_se", atom_stat.std_error},
                        {"overflow_fraction", overflow_stat.mean}});
    BromwichParams contour;
    report.spec["contour"] = {{"c", contour.c}, {"h", contour.h}, {"abs_tol", contour.abs_tol}};

    report.columns = {"lambda_lo", "lambda_hi", "empirical_density", "empirical_se",
                      "analytic_density"};
    for (int b = 0; b < opt.bins; ++b) {
        auto stat = mean_and_error(0, bin_density[b]);
        const double lo = b * width, hi = lo + width;
        double analytic = bin_averaged_density(tau_eff, std::max(lo, 1e-9), hi, contour);
        if (has_atom && hi <= atom_cut) analytic = 0.0;  // atom mass reported separately
        report.rows.push_back({lo, hi, stat.mean, stat.std_error, analytic});
    }
    cli::write_report(report, opt.out, opt.format);
    std::cerr << "density: done in " << progress.elapsed() << " s\n";
    return 0;
}

// ---------------------------------------------------------------- entropy --

int run_entropy(const CommonOptions& opt, const std::vector<double>& tau_list_in, double tau_min,
                double tau_max, int tau_points) {
    std::vector<double> tau_list = tau_list_in;
    if (tau_list.empty()) {
        if (!(tau_max > tau_min) || tau_points < 2)
            throw std::invalid_argument("entropy needs --tau values or a --tau-min/--tau-max grid");
        for (int i = 0; i < tau_points; ++i)
            tau_list.push_back(tau_min + (tau_max - tau_min) * i / (tau_points - 1));
    }

    std::vector<int> steps;
    steps.reserve(tau_list.size());
    for (double tau : tau_list)
        steps.push_back(chain_length_for_tau(tau, opt.n, opt.delta_n, ChainType::product));
    if (!std::is_sorted(steps.begin(), steps.end()))
        throw std::invalid_argument("entropy tau values must be increasing");

    ContractionConfig config{.n = opt.n, .delta_n = opt.delta_n, .chain_length = steps.back(),
                             .group = group_from_string(opt.group), .seed = {opt.seed, 0},
                             .realizations = opt.realizations};
    config.validate();

    std::cerr << "entropy: N=" << opt.n << " tau grid size " << tau_list.size() << " x "
              << opt.realizations << " realization(s)\n";
    StderrProgress progress(opt.realizations);
    auto runs = run_chain_snapshots(config, steps, ChainType::product, opt.workers,
                                    std::ref(progress));

    Report report;
    report.spec = base_spec("entropy", opt);
    report.spec.update({{"n", opt.n},
                        {"delta_n", opt.delta_n},
                        {"group", opt.group},
                        {"realizations", opt.realizations},
                        {"tau_grid", tau_list}});
    report.columns = {"tau_nominal", "tau_effective", "chain_length", "entropy_mean", "entropy_se",
                      "analytic"};
    const double log_n = std::log(static_cast<double>(opt.n));
    for (std::size_t k = 0; k < tau_list.size(); ++k) {
        const double tau_eff = effective_tau(steps[k], opt.n, opt.delta_n, ChainType::product);
        std::vector<double> entropies(opt.realizations);
        for (int r = 0; r < opt.realizations; ++r)
            entropies[r] = entropy_vn(density_matrix_spectrum(runs[r].spectra[k]));
        auto stat = mean_and_error(0, entropies);
        report.rows.push_back({tau_list[k], tau_eff, static_cast<double>(steps[k]), stat.mean,
                               stat.std_error, log_n + vn_entropy_offset(tau_eff)});
    }
    cli::write_report(report, opt.out, opt.format);
    std::cerr << "entropy: done in " << progress.elapsed() << " s\n";
    return 0;
}

// --------------------------------------------------------------- kaczmarz --

int run_kaczmarz(const CommonOptions& opt) {
    std::cerr << "kaczmarz: N=" << opt.n << " x " << opt.realizations << " realizations\n";
    StderrProgress progress(opt.realizations);
    auto spectra = run_kaczmarz_spectra(opt.n, {opt.seed, 0}, opt.realizations, opt.workers);
    const auto p_list = order_list(opt.p_max);
    auto moments = empirical_moments(spectra, p_list);

    Report report;
    report.spec = base_spec("kaczmarz", opt);
    report.spec.update({{"n", opt.n}, {"realizations", opt.realizations}, {"p_max", opt.p_max}});
    report.columns = {"p", "mean", "se", "limit", "chisq"};
    for (int p = 1; p <= opt.p_max; ++p) {
        const auto& m = moments[p - 1];
        // (p/e)^p / p!
        const double limit = std::exp(p * (std::log(static_cast<double>(p)) - 1.0) -
                                      std::lgamma(static_cast<double>(p) + 1.0));
        report.rows.push_back({static_cast<double>(p), m.mean, m.std_error, limit,
                               chisq_moment(static_cast<double>(p))});
    }
    cli::write_report(report, opt.out, opt.format);
    std::cerr << "kaczmarz: done in " << progress.elapsed() << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Products of truncated Haar-random matrices: Monte Carlo and analytics"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::vector<double> tau_list;
    double tau_min = 0.2, tau_max = 5.0;
    int tau_points = 0;

    auto* moments = app.add_subcommand("moments", "Singular-value moments of C_L vs analytics");
    add_ensemble_flags(moments, opt);
    moments->add_option("--p-max", opt.p_max, "Largest moment order")->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(moments, opt);

    auto* recursion = app.add_subcommand("recursion", "Moment recursion trajectory S_p(n)");
    add_ensemble_flags(recursion, opt, false);
    recursion->add_option("--p-max", opt.p_max, "Largest moment order")
        ->check(CLI::PositiveNumber)->capture_default_str();
    add_output_flags(recursion, opt);

    auto* analytic = app.add_subcommand("analytic", "Closed-form double-scaling quantities");
    analytic->add_option("--tau", opt.tau, "Scaling parameter")->required();
    analytic->add_option("--p-max", opt.p_max, "Largest moment order")->capture_default_str();
    analytic->add_option("--alpha", opt.alpha, "Renyi order for the entropy offset");
    add_output_flags(analytic, opt);

    auto* density = app.add_subcommand("density", "Histogram of lambda = -ln sigma^2 vs profile");
    add_ensemble_flags(density, opt);
    density->add_option("--bins", opt.bins, "Histogram bins")->capture_default_str();
    density->add_option("--lambda-max", opt.lambda_max, "Histogram range")->capture_default_str();
    add_output_flags(density, opt);

    auto* entropy = app.add_subcommand("entropy", "von Neumann entropy along the chain");
    entropy->add_option("--n", opt.n, "Matrix dimension N")->capture_default_str();
    entropy->add_option("--delta-n", opt.delta_n, "Truncation depth")->capture_default_str();
    entropy->add_option("--tau", tau_list, "Explicit tau values (repeatable, increasing)");
    entropy->add_option("--tau-min", tau_min, "Grid start")->capture_default_str();
    entropy->add_option("--tau-max", tau_max, "Grid end")->capture_default_str();
    entropy->add_option("--tau-points", tau_points, "Grid size");
    entropy->add_option("--group", opt.group, "Matrix group")
        ->check(CLI::IsMember({"unitary", "orthogonal"}));
    entropy->add_option("--realizations", opt.realizations, "Realizations (figure uses 1)")
        ->capture_default_str();
    entropy->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
    entropy->add_option("--workers", opt.workers, "Worker threads");
    add_output_flags(entropy, opt);

    auto* kaczmarz = app.add_subcommand("kaczmarz", "Kaczmarz projector-product moments");
    kaczmarz->add_option("--n", opt.n, "Dimension and number of projections")
        ->capture_default_str();
    kaczmarz->add_option("--realizations", opt.realizations, "Realizations")->capture_default_str();
    kaczmarz->add_option("--p-max", opt.p_max, "Largest moment order")->capture_default_str();
    kaczmarz->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
    kaczmarz->add_option("--workers", opt.workers, "Worker threads")->capture_default_str();
    add_output_flags(kaczmarz, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (moments->parsed()) return run_moments(opt);
        if (recursion->parsed()) return run_recursion(opt);
        if (analytic->parsed()) return run_analytic(opt);
        if (density->parsed()) return run_density(opt);
        if (entropy->parsed()) {
            if (entropy->count("--tau-points") && tau_list.empty() && tau_points < 2)
                throw std::invalid_argument("--tau-points must be at least 2");
            if (tau_list.empty() && tau_points == 0) tau_points = 25;
            return run_entropy(opt, tau_list, tau_min, tau_max, tau_points);
        }
        if (kaczmarz->parsed()) return run_kaczmarz(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "error: numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
