#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spreadopt/market.hpp"

namespace spreadopt {

/// Monte Carlo benchmark configuration. n_pairs fixes the payoff budget at
/// 2*n_pairs evaluations: with antithetic pairing those are n_pairs averaged
/// pairs, without it the same budget is spent on independent trials.
/// `stream` selects an independent substream of the generator; the grid
/// driver assigns one per experiment slice.
struct McConfig {
    std::int64_t n_pairs = 100'000;
    std::uint64_t seed = 42;
    bool antithetic = true;
    std::int64_t batch_size = 65'536;
    std::uint64_t stream = 0;

    void validate() const;  // throws std::domain_error
};

struct NormalDraws {
    std::vector<double> w;
    std::vector<double> z;
};

struct PriceEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_effective = 0;  ///< number of averaged values behind the mean
};

/// The draws for work unit `batch_index`: batch_size pairs of independent
/// standard normals, a pure function of (seed, stream, batch_index).
NormalDraws draw_normals(const McConfig& config, std::uint64_t batch_index);

/// B = rho*w + sqrt(1 - rho^2)*z; standard normal with corr(w, B) = rho.
/// Linear in (w, z), so correlate(-w, -z, rho) == -correlate(w, z, rho)
/// exactly. Throws std::domain_error for |rho| > 1.
double correlate(double w, double z, double rho);

/// Terminal value of geometric Brownian motion:
/// spot * exp((r - sigma^2/2)*T + sigma*sqrt(T)*shock).
double terminal_value(double spot, double sigma, double r, double maturity,
                      double shock);

/// max(s1 - s2 - strike, 0)
double spread_payoff(double s1, double s2, double strike);

/// Antithetic-variate spread option estimate. Pure function of
/// (market, contract, config): results are bit-identical across runs,
/// worker counts and batch scheduling orders. std_error is the
/// (n-1)-denominator sample standard deviation of the discounted
/// per-pair values divided by sqrt(n_effective).
PriceEstimate mc_price(const MarketInputs& market, const Contract& contract,
                       const McConfig& config, int n_workers = 1);

/// Two-sided normal interval mean +/- z_level * std_error.
/// Throws std::domain_error unless 0 < level < 1.
std::pair<double, double> confidence_interval(const PriceEstimate& estimate,
                                              double level);

// ---------------------------------------------------------------------------
// Batch-level building blocks, shared with the grid driver so that sweeps can
// reuse one simulation across many strikes and still reproduce mc_price
// bit-for-bit.
// ---------------------------------------------------------------------------

/// Terminal asset values for one work unit. In antithetic mode `up` holds the
/// pair's primary draws and `dn` the sign-flipped counterparts; in plain mode
/// `up` holds 2*batch_size independent trials and `dn` stays empty.
struct TerminalBatch {
    std::vector<double> s1_up, s2_up;
    std::vector<double> s1_dn, s2_dn;
    bool antithetic = true;
};

std::int64_t batch_count(const McConfig& config);

void simulate_terminal_batch(const MarketInputs& market, double maturity,
                             const McConfig& config, std::uint64_t batch_index,
                             TerminalBatch& out);

/// Per-trial values entering the estimator for one strike: averaged
/// antithetic pairs, or raw payoffs in plain mode.
void payoff_pair_values(const TerminalBatch& batch, double strike,
                        std::vector<double>& out);

struct BatchMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
};

BatchMoments batch_moments(std::span<const double> values);

/// Merges per-batch moments (in batch order) into the discounted estimate.
PriceEstimate combine_moments(std::span<const BatchMoments> moments, double r,
                              double maturity);

}  // namespace spreadopt
