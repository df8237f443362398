#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreadopt/analytic.hpp"
#include "spreadopt/config.hpp"
#include "spreadopt/csv.hpp"
#include "spreadopt/grid.hpp"
#include "spreadopt/market.hpp"
#include "spreadopt/mc.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_domain = 3;
constexpr int exit_io = 4;

struct MarketFlags {
    spreadopt::MarketInputs market;

    void attach(CLI::App* cmd, bool rho_required) {
        cmd->add_option("--s1", market.s1_0, "Spot price of asset 1")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--s2", market.s2_0, "Spot price of asset 2")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--sigma1", market.sigma1, "Annualized volatility of asset 1")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--sigma2", market.sigma2, "Annualized volatility of asset 2")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        auto* rho_opt = cmd->add_option("--rho", market.rho, "Instantaneous correlation")
                            ->check(CLI::Range(-1.0, 1.0));
        if (rho_required) rho_opt->required();
        cmd->add_option("--r", market.r, "Continuously compounded risk-free rate")
            ->capture_default_str();
    }
};

const CLI::Validator open_unit_interval(
    [](std::string& input) -> std::string {
        double v = 0.0;
        try {
            v = std::stod(input);
        } catch (...) {
            return "value '" + input + "' is not a number";
        }
        if (!(v > 0.0 && v < 1.0)) return "value must lie strictly between 0 and 1";
        return {};
    },
    "FLOAT in (0,1)", "open unit interval");

void print_estimate(const spreadopt::PriceEstimate& estimate, double level) {
    const auto [lo, hi] = spreadopt::confidence_interval(estimate, level);
    std::printf("mean %s\n", spreadopt::format_number(estimate.mean).c_str());
    std::printf("std_error %s\n", spreadopt::format_number(estimate.std_error).c_str());
    std::printf("n_effective %lld\n", static_cast<long long>(estimate.n_effective));
    std::printf("level %s\n", spreadopt::format_number(level).c_str());
    std::printf("ci_lower %s\n", spreadopt::format_number(lo).c_str());
    std::printf("ci_upper %s\n", spreadopt::format_number(hi).c_str());
}

spreadopt::SliceCallback stderr_slice_log() {
    return [](double rho, double maturity, std::size_t done, std::size_t total) {
        std::fprintf(stderr, "slice rho=%s T=%s done (%zu/%zu)\n",
                     spreadopt::format_number(rho).c_str(),
                     spreadopt::format_number(maturity).c_str(), done, total);
    };
}

void write_csv_to(const std::string& out_path, const std::vector<spreadopt::GridCell>& cells,
                  double level) {
    if (out_path.empty() || out_path == "-") {
        spreadopt::write_grid_csv(cells, std::cout, level);
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw spreadopt::IoError("cannot open output file '" + out_path + "'", 0);
    spreadopt::write_grid_csv(cells, file, level);
}

struct GoldenCell {
    double strike;
    double rho;
    double kirk_ref;
    double modified_ref;
    double ci_ref_lo;
    double ci_ref_hi;
};

// Reference values for the base market (spots 100/100, vols 0.3/0.2,
// r = 0, T = 0.5).
constexpr GoldenCell golden_cells[4] = {
    {5.0, 0.9, 2.3647228, 2.3626873, 2.357551, 2.363762},
    {5.0, 0.999, 1.2862590, 1.27686463, 1.273913, 1.278092},
    {10.0, 0.9, 1.2745318, 1.2681347, 1.26478, 1.269644},
    {10.0, 0.999, 0.5615868, 0.54140923, 0.5398617, 0.5427516},
};

const spreadopt::GridCell* find_cell(const std::vector<spreadopt::GridCell>& cells,
                                     double strike, double rho, double maturity) {
    for (const auto& cell : cells)
        if (cell.strike == strike && cell.rho == rho && cell.maturity == maturity)
            return &cell;
    return nullptr;
}

void print_golden_comparison(const std::vector<spreadopt::GridCell>& cells, double level) {
    using spreadopt::format_number;
    std::printf("reference comparison at T=0.5 (base market 100/100, 0.3/0.2, r=0)\n");
    for (const GoldenCell& g : golden_cells) {
        const auto* cell = find_cell(cells, g.strike, g.rho, 0.5);
        if (cell == nullptr) continue;
        const auto [lo, hi] = spreadopt::confidence_interval(
            spreadopt::PriceEstimate{cell->mc_mean, cell->mc_std_error, 0}, level);
        std::printf("K=%g rho=%g\n", g.strike, g.rho);
        std::printf("  mc_mean %s  ci (%s, %s)  reference_ci (%s, %s)\n",
                    format_number(cell->mc_mean).c_str(), format_number(lo).c_str(),
                    format_number(hi).c_str(), format_number(g.ci_ref_lo).c_str(),
                    format_number(g.ci_ref_hi).c_str());
        std::printf("  kirk %.7f  reference %.7f\n", cell->kirk, g.kirk_ref);
        std::printf("  modified_kirk %.7f  reference %.7f\n",
                    cell->modified_kirk.value_or(0.0), g.modified_ref);
    }
}

int run_price(const MarketFlags& mf, double strike, bool strike_given, double maturity,
              const std::string& method) {
    if (method == "margrabe") {
        if (strike_given) {
            std::fprintf(stderr, "error: --strike is not accepted with --method margrabe "
                                 "(the exchange option has no strike)\n");
            return exit_usage;
        }
        std::printf("%.7f\n", spreadopt::margrabe_price(mf.market, maturity));
        return 0;
    }
    if (!strike_given) {
        std::fprintf(stderr, "error: --strike is required with --method %s\n",
                     method.c_str());
        return exit_usage;
    }
    const spreadopt::Contract contract{strike, maturity};
    const double value = method == "kirk"
                             ? spreadopt::kirk_price(mf.market, contract)
                             : spreadopt::modified_kirk_price(mf.market, contract);
    std::printf("%.7f\n", value);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spread option pricing: Margrabe, Kirk and skew-corrected Kirk "
                 "closed forms with a deterministic antithetic Monte Carlo benchmark"};
    app.require_subcommand(1);

    // --- price ---
    auto* price_cmd = app.add_subcommand("price", "Closed-form point quote");
    MarketFlags price_market;
    price_market.attach(price_cmd, true);
    std::string method;
    double price_strike = 0.0;
    double price_maturity = 0.5;
    price_cmd->add_option("--method", method, "margrabe, kirk or modified-kirk")
        ->required()
        ->check(CLI::IsMember({"margrabe", "kirk", "modified-kirk"}));
    auto* strike_opt = price_cmd->add_option("--strike", price_strike, "Spread strike")
                           ->check(CLI::NonNegativeNumber);
    price_cmd->add_option("--maturity", price_maturity, "Time to expiry in years")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    // --- mc ---
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo point estimate with interval");
    MarketFlags mc_market;
    mc_market.attach(mc_cmd, true);
    double mc_strike = 0.0;
    double mc_maturity = 0.5;
    spreadopt::McConfig mc_config;
    double mc_level = 0.95;
    int mc_threads = 1;
    mc_cmd->add_option("--strike", mc_strike, "Spread strike")
        ->required()
        ->check(CLI::NonNegativeNumber);
    mc_cmd->add_option("--maturity", mc_maturity, "Time to expiry in years")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc_cmd->add_option("--pairs", mc_config.n_pairs, "Antithetic pairs (2x payoffs)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc_config.seed, "Generator seed")->capture_default_str();
    mc_cmd->add_option("--batch-size", mc_config.batch_size, "Pairs per work unit")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc_cmd->add_flag("--antithetic,!--no-antithetic", mc_config.antithetic,
                     "Antithetic pairing (default on)");
    mc_cmd->add_option("--level", mc_level, "Confidence level")
        ->capture_default_str()
        ->check(open_unit_interval);
    mc_cmd->add_option("--threads", mc_threads, "Worker threads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    // --- grid ---
    auto* grid_cmd = app.add_subcommand("grid", "Sweep strikes x correlations x maturities");
    MarketFlags grid_market;
    grid_market.attach(grid_cmd, false);
    std::string grid_config_path;
    std::vector<double> grid_strikes, grid_rhos, grid_maturities;
    std::int64_t grid_pairs = 0;
    std::uint64_t grid_seed = 0;
    std::int64_t grid_batch = 0;
    bool grid_fresh = false;
    std::string grid_out;
    double grid_level = 0.95;
    int grid_threads = 1;
    grid_cmd->add_option("--config", grid_config_path, "Sweep configuration file")
        ->check(CLI::ExistingFile);
    grid_cmd->add_option("--strikes", grid_strikes, "Strike list")->delimiter(',');
    grid_cmd->add_option("--rhos", grid_rhos, "Correlation list")->delimiter(',');
    grid_cmd->add_option("--maturities", grid_maturities, "Maturity list")->delimiter(',');
    grid_cmd->add_option("--pairs", grid_pairs, "Antithetic pairs per slice")
        ->check(CLI::PositiveNumber);
    grid_cmd->add_option("--seed", grid_seed, "Generator seed");
    grid_cmd->add_option("--batch-size", grid_batch, "Pairs per work unit")
        ->check(CLI::PositiveNumber);
    grid_cmd->add_flag("--fresh-draws", grid_fresh,
                       "Independent draws per cell instead of per-slice reuse");
    grid_cmd->add_option("--out", grid_out, "Output CSV path ('-' for stdout)");
    grid_cmd->add_option("--level", grid_level, "Confidence level for CSV intervals")
        ->capture_default_str()
        ->check(open_unit_interval);
    grid_cmd->add_option("--threads", grid_threads, "Worker threads (one slice each)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    // --- reproduce ---
    auto* repro_cmd = app.add_subcommand(
        "reproduce", "Regenerate the reference tables and figure data (fixed defaults)");
    std::int64_t repro_pairs = 1'000'000;
    bool repro_full = false;
    std::uint64_t repro_seed = 42;
    std::string repro_out = "reproduce_grid.csv";
    std::string repro_figures_dir;
    double repro_level = 0.95;
    int repro_threads = 1;
    repro_cmd->add_option("--pairs", repro_pairs, "Antithetic pairs per slice")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    repro_cmd->add_flag("--full", repro_full,
                        "Full scale: 5000000 pairs (1e7 payoffs) per slice");
    repro_cmd->add_option("--seed", repro_seed, "Generator seed")->capture_default_str();
    repro_cmd->add_option("--out", repro_out, "Output CSV path ('-' for stdout)")
        ->capture_default_str();
    repro_cmd->add_option("--figures-dir", repro_figures_dir,
                          "Directory for per-slice figure data files");
    repro_cmd->add_option("--level", repro_level, "Confidence level")
        ->capture_default_str()
        ->check(open_unit_interval);
    repro_cmd->add_option("--threads", repro_threads, "Worker threads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (price_cmd->parsed()) {
            return run_price(price_market, price_strike, strike_opt->count() > 0,
                             price_maturity, method);
        }

        if (mc_cmd->parsed()) {
            const spreadopt::Contract contract{mc_strike, mc_maturity};
            const auto estimate =
                spreadopt::mc_price(mc_market.market, contract, mc_config, mc_threads);
            print_estimate(estimate, mc_level);
            return 0;
        }

        if (grid_cmd->parsed()) {
            spreadopt::GridSpec spec = spreadopt::default_grid_spec();
            if (!grid_config_path.empty()) {
                std::ifstream file(grid_config_path);
                if (!file)
                    throw spreadopt::IoError("cannot open config '" + grid_config_path + "'", 0);
                spec = spreadopt::parse_grid_config(file);
            }
            if (!grid_strikes.empty()) spec.strikes = grid_strikes;
            if (!grid_rhos.empty()) spec.rhos = grid_rhos;
            if (!grid_maturities.empty()) spec.maturities = grid_maturities;
            for (const char* name : {"--s1", "--s2", "--sigma1", "--sigma2", "--r"})
                if (grid_cmd->count(name) > 0) {
                    spec.base_market.s1_0 = grid_market.market.s1_0;
                    spec.base_market.s2_0 = grid_market.market.s2_0;
                    spec.base_market.sigma1 = grid_market.market.sigma1;
                    spec.base_market.sigma2 = grid_market.market.sigma2;
                    spec.base_market.r = grid_market.market.r;
                    break;
                }
            if (grid_cmd->count("--pairs") > 0) spec.mc.n_pairs = grid_pairs;
            if (grid_cmd->count("--seed") > 0) spec.mc.seed = grid_seed;
            if (grid_cmd->count("--batch-size") > 0) spec.mc.batch_size = grid_batch;
            if (grid_fresh) spec.reuse_draws = false;
            const auto cells = spreadopt::run_grid(spec, grid_threads, stderr_slice_log());
            write_csv_to(grid_out, cells, grid_level);
            return 0;
        }

        if (repro_cmd->parsed()) {
            spreadopt::GridSpec spec = spreadopt::default_grid_spec();
            spec.mc.seed = repro_seed;
            spec.mc.n_pairs = repro_pairs;
            if (repro_full && repro_cmd->count("--pairs") == 0)
                spec.mc.n_pairs = 5'000'000;
            const auto cells = spreadopt::run_grid(spec, repro_threads, stderr_slice_log());
            write_csv_to(repro_out, cells, repro_level);
            if (!repro_figures_dir.empty()) {
                std::filesystem::create_directories(repro_figures_dir);
                for (double maturity : spec.maturities)
                    for (double rho : spec.rhos) {
                        const std::string name = "figure_rho" +
                                                 spreadopt::format_number(rho) + "_T" +
                                                 spreadopt::format_number(maturity) + ".csv";
                        std::ofstream file(
                            std::filesystem::path(repro_figures_dir) / name,
                            std::ios::binary);
                        if (!file)
                            throw spreadopt::IoError("cannot open figure file '" + name + "'", 0);
                        spreadopt::write_figure_data(cells, rho, maturity, file);
                    }
            }
            print_golden_comparison(cells, repro_level);
            return 0;
        }
    } catch (const spreadopt::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_domain;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_domain;
    }

    return 0;
}
