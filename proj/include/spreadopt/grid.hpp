#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spreadopt/market.hpp"
#include "spreadopt/mc.hpp"

namespace spreadopt {

/// Sweep over strikes x correlations x maturities against a base market.
/// With reuse_draws (default) every strike within one (rho, T) slice is
/// evaluated on the same simulated terminal values, which removes Monte Carlo
/// noise from error-vs-strike curves; fresh_draws gives each cell its own
/// independent stream instead.
struct GridSpec {
    std::vector<double> strikes;
    std::vector<double> rhos;
    std::vector<double> maturities;
    MarketInputs base_market;
    McConfig mc;
    bool reuse_draws = true;

    void validate() const;  // throws std::domain_error
};

/// Default sweep: strikes 0..20 step 1, rhos {0.80, 0.85, 0.90, 0.95, 0.999},
/// maturities {0.1, 0.2, 0.3, 0.4, 0.5}, spots 100/100, vols 0.3/0.2, r = 0.
GridSpec default_grid_spec();

enum CellFlag : unsigned {
    cell_ok = 0,
    cell_zero_benchmark = 1u << 0,  ///< MC mean <= 0, percentage errors undefined
    cell_analytic_error = 1u << 1,  ///< modified Kirk volatility undefined
};

struct GridCell {
    double strike = 0.0;
    double rho = 0.0;
    double maturity = 0.0;
    double mc_mean = 0.0;
    double mc_std_error = 0.0;
    double kirk = 0.0;
    std::optional<double> modified_kirk;
    std::optional<double> err_kirk_pct;
    std::optional<double> err_modified_pct;
    unsigned flags = cell_ok;
};

/// Signed percentage error of an approximation against the MC benchmark:
/// (approx*100/benchmark) - 100, positive when the approximation overprices.
/// Throws std::domain_error when benchmark <= 0.
double error_pct(double approx, double benchmark);

/// Called after each completed (rho, maturity) slice; invocations are
/// serialized.
using SliceCallback =
    std::function<void(double rho, double maturity, std::size_t done, std::size_t total)>;

/// Runs the sweep and returns one cell per (T, rho, K) triple in row-major
/// order (T outer, rho middle, K inner). Deterministic for a fixed spec
/// regardless of worker count; per-cell domain errors are flagged on the
/// cell, never abort the sweep.
std::vector<GridCell> run_grid(const GridSpec& spec, int n_workers = 1,
                               const SliceCallback& on_slice = {});

}  // namespace spreadopt
