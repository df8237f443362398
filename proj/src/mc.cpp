#include "spreadopt/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "spreadopt/normal.hpp"
#include "spreadopt/rng.hpp"
#include "spreadopt/sum.hpp"

namespace spreadopt {

namespace {

inline double pairwise_sum_of_squares(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 32) {
        double acc = 0.0;
        for (double v : values) acc += v * v;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_of_squares(values.first(half)) +
           pairwise_sum_of_squares(values.subspan(half));
}

}  // namespace

void McConfig::validate() const {
    if (n_pairs < 1) throw std::domain_error("mc: n_pairs must be at least 1");
    if (batch_size < 1) throw std::domain_error("mc: batch_size must be at least 1");
}

NormalDraws draw_normals(const McConfig& config, std::uint64_t batch_index) {
    config.validate();
    const std::size_t n = static_cast<std::size_t>(config.batch_size);
    NormalDraws draws;
    draws.w.resize(n);
    draws.z.resize(n);
    const std::uint64_t first = batch_index * static_cast<std::uint64_t>(config.batch_size);
    for (std::size_t i = 0; i < n; ++i) {
        const NormalPair p = normal_pair(config.seed, config.stream, first + i);
        draws.w[i] = p.w;
        draws.z[i] = p.z;
    }
    return draws;
}

double correlate(double w, double z, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::domain_error("correlate: rho must lie in [-1, 1]");
    return rho * w + std::sqrt(1.0 - rho * rho) * z;
}

double terminal_value(double spot, double sigma, double r, double maturity,
                      double shock) {
    return spot * std::exp((r - 0.5 * sigma * sigma) * maturity +
                           sigma * std::sqrt(maturity) * shock);
}

double spread_payoff(double s1, double s2, double strike) {
    return std::max(s1 - s2 - strike, 0.0);
}

std::int64_t batch_count(const McConfig& config) {
    return (config.n_pairs + config.batch_size - 1) / config.batch_size;
}

void simulate_terminal_batch(const MarketInputs& market, double maturity,
                             const McConfig& config, std::uint64_t batch_index,
                             TerminalBatch& out) {
    out.antithetic = config.antithetic;
    const double rho = market.rho;
    if (config.antithetic) {
        const std::int64_t first =
            static_cast<std::int64_t>(batch_index) * config.batch_size;
        const std::size_t count =
            static_cast<std::size_t>(std::min(config.batch_size, config.n_pairs - first));
        out.s1_up.resize(count);
        out.s2_up.resize(count);
        out.s1_dn.resize(count);
        out.s2_dn.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            const NormalPair p = normal_pair(config.seed, config.stream,
                                             static_cast<std::uint64_t>(first) + i);
            const double b_up = correlate(p.w, p.z, rho);
            const double b_dn = correlate(-p.w, -p.z, rho);
            out.s1_up[i] = terminal_value(market.s1_0, market.sigma1, market.r, maturity, p.w);
            out.s2_up[i] = terminal_value(market.s2_0, market.sigma2, market.r, maturity, b_up);
            out.s1_dn[i] = terminal_value(market.s1_0, market.sigma1, market.r, maturity, -p.w);
            out.s2_dn[i] = terminal_value(market.s2_0, market.sigma2, market.r, maturity, b_dn);
        }
    } else {
        // Same payoff budget spent on independent trials.
        const std::int64_t trials = 2 * config.n_pairs;
        const std::int64_t first =
            static_cast<std::int64_t>(batch_index) * 2 * config.batch_size;
        const std::size_t count =
            static_cast<std::size_t>(std::min(2 * config.batch_size, trials - first));
        out.s1_up.resize(count);
        out.s2_up.resize(count);
        out.s1_dn.clear();
        out.s2_dn.clear();
        for (std::size_t i = 0; i < count; ++i) {
            const NormalPair p = normal_pair(config.seed, config.stream,
                                             static_cast<std::uint64_t>(first) + i);
            const double b = correlate(p.w, p.z, rho);
            out.s1_up[i] = terminal_value(market.s1_0, market.sigma1, market.r, maturity, p.w);
            out.s2_up[i] = terminal_value(market.s2_0, market.sigma2, market.r, maturity, b);
        }
    }
}

void payoff_pair_values(const TerminalBatch& batch, double strike,
                        std::vector<double>& out) {
    const std::size_t count = batch.s1_up.size();
    out.resize(count);
    if (batch.antithetic) {
        for (std::size_t i = 0; i < count; ++i) {
            const double up = spread_payoff(batch.s1_up[i], batch.s2_up[i], strike);
            const double dn = spread_payoff(batch.s1_dn[i], batch.s2_dn[i], strike);
            out[i] = 0.5 * (up + dn);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = spread_payoff(batch.s1_up[i], batch.s2_up[i], strike);
    }
}

BatchMoments batch_moments(std::span<const double> values) {
    return {pairwise_sum(values), pairwise_sum_of_squares(values),
            static_cast<std::int64_t>(values.size())};
}

PriceEstimate combine_moments(std::span<const BatchMoments> moments, double r,
                              double maturity) {
    std::vector<double> sums(moments.size());
    std::vector<double> sums_sq(moments.size());
    std::int64_t count = 0;
    for (std::size_t i = 0; i < moments.size(); ++i) {
        sums[i] = moments[i].sum;
        sums_sq[i] = moments[i].sum_sq;
        count += moments[i].count;
    }
    const double total = pairwise_sum(sums);
    const double total_sq = pairwise_sum(sums_sq);
    const double n = static_cast<double>(count);
    const double raw_mean = total / n;
    double std_error = 0.0;
    if (count > 1) {
        const double variance = std::max(total_sq - n * raw_mean * raw_mean, 0.0) / (n - 1.0);
        std_error = std::sqrt(variance / n);
    }
    const double discount = std::exp(-r * maturity);
    return {discount * raw_mean, discount * std_error, count};
}

PriceEstimate mc_price(const MarketInputs& market, const Contract& contract,
                       const McConfig& config, int n_workers) {
    market.validate();
    contract.validate();
    config.validate();

    const std::int64_t batches = batch_count(config);
    std::vector<BatchMoments> moments(static_cast<std::size_t>(batches));

    const auto run_range = [&](std::int64_t begin, std::int64_t end) {
        TerminalBatch batch;
        std::vector<double> values;
        for (std::int64_t b = begin; b < end; ++b) {
            simulate_terminal_batch(market, contract.maturity, config,
                                    static_cast<std::uint64_t>(b), batch);
            payoff_pair_values(batch, contract.strike, values);
            moments[static_cast<std::size_t>(b)] = batch_moments(values);
        }
    };

    const int workers = std::max(1, n_workers);
    if (workers == 1 || batches == 1) {
        run_range(0, batches);
    } else {
        const std::int64_t per = (batches + workers - 1) / workers;
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            const std::int64_t begin = t * per;
            const std::int64_t end = std::min(batches, begin + per);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    return combine_moments(moments, market.r, contract.maturity);
}

std::pair<double, double> confidence_interval(const PriceEstimate& estimate,
                                              double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("confidence_interval: level must lie in (0, 1)");
    const double z = norm_quantile(0.5 + 0.5 * level);
    return {estimate.mean - z * estimate.std_error, estimate.mean + z * estimate.std_error};
}

}  // namespace spreadopt
