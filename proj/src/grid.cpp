#include "spreadopt/grid.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spreadopt/analytic.hpp"

namespace spreadopt {

namespace {

void require_increasing(const std::vector<double>& values, const char* name) {
    if (values.empty())
        throw std::domain_error(std::string("grid: ") + name + " must be non-empty");
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (!(values[i] < values[i + 1]))
            throw std::domain_error(std::string("grid: ") + name +
                                    " must be strictly increasing");
}

}  // namespace

void GridSpec::validate() const {
    require_increasing(strikes, "strikes");
    require_increasing(rhos, "rhos");
    require_increasing(maturities, "maturities");
    base_market.validate();
    mc.validate();
    for (double k : strikes)
        Contract{k, maturities.front()}.validate();
    for (double rho : rhos) {
        MarketInputs m = base_market;
        m.rho = rho;
        m.validate();
    }
}

GridSpec default_grid_spec() {
    GridSpec spec;
    spec.strikes.resize(21);
    for (int k = 0; k <= 20; ++k) spec.strikes[static_cast<std::size_t>(k)] = k;
    spec.rhos = {0.80, 0.85, 0.90, 0.95, 0.999};
    spec.maturities = {0.1, 0.2, 0.3, 0.4, 0.5};
    spec.base_market = MarketInputs{100.0, 100.0, 0.3, 0.2, 0.0, 0.0};
    spec.mc = McConfig{1'000'000, 42, true, 65'536, 0};
    return spec;
}

double error_pct(double approx, double benchmark) {
    if (!(benchmark > 0.0))
        throw std::domain_error("error_pct: benchmark must be positive");
    return approx * 100.0 / benchmark - 100.0;
}

namespace {

void fill_cell(GridCell& cell, const MarketInputs& market, const Contract& contract,
               const PriceEstimate& estimate) {
    cell.strike = contract.strike;
    cell.rho = market.rho;
    cell.maturity = contract.maturity;
    cell.mc_mean = estimate.mean;
    cell.mc_std_error = estimate.std_error;
    cell.kirk = kirk_price(market, contract);
    try {
        cell.modified_kirk = modified_kirk_price(market, contract);
    } catch (const std::domain_error&) {
        cell.flags |= cell_analytic_error;
    }
    if (estimate.mean > 0.0) {
        cell.err_kirk_pct = error_pct(cell.kirk, estimate.mean);
        if (cell.modified_kirk)
            cell.err_modified_pct = error_pct(*cell.modified_kirk, estimate.mean);
    } else {
        cell.flags |= cell_zero_benchmark;
    }
}

}  // namespace

std::vector<GridCell> run_grid(const GridSpec& spec, int n_workers,
                               const SliceCallback& on_slice) {
    spec.validate();

    const std::size_t n_strikes = spec.strikes.size();
    const std::size_t n_rhos = spec.rhos.size();
    const std::size_t n_slices = spec.maturities.size() * n_rhos;
    std::vector<GridCell> cells(n_slices * n_strikes);

    std::mutex progress_mutex;
    std::size_t slices_done = 0;

    const auto run_slice = [&](std::size_t slice) {
        const std::size_t t_idx = slice / n_rhos;
        const std::size_t rho_idx = slice % n_rhos;
        const double maturity = spec.maturities[t_idx];
        MarketInputs market = spec.base_market;
        market.rho = spec.rhos[rho_idx];
        GridCell* slice_cells = cells.data() + slice * n_strikes;

        if (spec.reuse_draws) {
            McConfig cfg = spec.mc;
            cfg.stream = slice;
            const std::int64_t batches = batch_count(cfg);
            std::vector<BatchMoments> moments(n_strikes *
                                              static_cast<std::size_t>(batches));
            TerminalBatch batch;
            std::vector<double> values;
            for (std::int64_t b = 0; b < batches; ++b) {
                simulate_terminal_batch(market, maturity, cfg,
                                        static_cast<std::uint64_t>(b), batch);
                for (std::size_t k = 0; k < n_strikes; ++k) {
                    payoff_pair_values(batch, spec.strikes[k], values);
                    moments[k * static_cast<std::size_t>(batches) +
                            static_cast<std::size_t>(b)] = batch_moments(values);
                }
            }
            for (std::size_t k = 0; k < n_strikes; ++k) {
                const auto estimate = combine_moments(
                    std::span<const BatchMoments>(
                        moments.data() + k * static_cast<std::size_t>(batches),
                        static_cast<std::size_t>(batches)),
                    market.r, maturity);
                fill_cell(slice_cells[k], market, Contract{spec.strikes[k], maturity},
                          estimate);
            }
        } else {
            for (std::size_t k = 0; k < n_strikes; ++k) {
                McConfig cfg = spec.mc;
                cfg.stream = slice * n_strikes + k;
                const Contract contract{spec.strikes[k], maturity};
                const auto estimate = mc_price(market, contract, cfg);
                fill_cell(slice_cells[k], market, contract, estimate);
            }
        }

        if (on_slice) {
            const std::lock_guard<std::mutex> lock(progress_mutex);
            on_slice(market.rho, maturity, ++slices_done, n_slices);
        }
    };

    const int workers = std::max(1, n_workers);
    if (workers == 1 || n_slices == 1) {
        for (std::size_t s = 0; s < n_slices; ++s) run_slice(s);
    } else {
        std::vector<std::thread> pool;
        const std::size_t used = std::min<std::size_t>(workers, n_slices);
        for (std::size_t t = 0; t < used; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t s = t; s < n_slices; s += used) run_slice(s);
            });
        }
        for (auto& th : pool) th.join();
    }

    return cells;
}

}  // namespace spreadopt
