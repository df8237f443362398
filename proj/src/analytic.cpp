#include "spreadopt/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spreadopt/normal.hpp"

namespace spreadopt {

namespace {

// Black-Scholes shell shared by the Kirk-style pricers:
// exp(-rT) * (s1*N(d1) - effective_strike*N(d2)) with
// d1 = (ln(s1/effective_strike) + vol^2*T/2) / (vol*sqrt(T)).
double spread_shell(double s1, double effective_strike, double vol, double r,
                    double maturity) {
    const double discount = std::exp(-r * maturity);
    if (vol == 0.0)
        return discount * std::max(s1 - effective_strike, 0.0);
    const double sqrt_t = std::sqrt(maturity);
    const double d1 =
        (std::log(s1 / effective_strike) + 0.5 * vol * vol * maturity) / (vol * sqrt_t);
    const double d2 = d1 - vol * sqrt_t;
    return discount * (s1 * norm_cdf(d1) - effective_strike * norm_cdf(d2));
}

double margrabe_vol(const MarketInputs& m) {
    const double rad =
        m.sigma1 * m.sigma1 - 2.0 * m.rho * m.sigma1 * m.sigma2 + m.sigma2 * m.sigma2;
    return std::sqrt(std::max(rad, 0.0));
}

double kirk_vol_unchecked(const MarketInputs& m, double strike) {
    const double u = m.s2_0 / (m.s2_0 + strike);
    const double rad = m.sigma1 * m.sigma1 - 2.0 * m.rho * m.sigma1 * m.sigma2 * u +
                       m.sigma2 * m.sigma2 * u * u;
    return std::sqrt(std::max(rad, 0.0));
}

double modified_kirk_vol_unchecked(const MarketInputs& m, double strike) {
    const double a = kirk_vol_unchecked(m, strike);
    const double effective_strike = m.s2_0 + strike;
    const double skew_factor = m.s2_0 * strike / (effective_strike * effective_strike);
    const double log_moneyness = std::log(m.s1_0) - std::log(effective_strike);
    // K = 0 and at-the-effective-money reduce to the plain Kirk volatility
    // exactly; only an active correction can hit the a^-3 singularity.
    if (skew_factor == 0.0 || log_moneyness == 0.0) return a;
    if (a == 0.0) throw std::domain_error("modified_kirk_vol: degenerate Kirk volatility");
    const double u = m.s2_0 / effective_strike;
    const double slope = m.sigma2 * u - m.rho * m.sigma1;
    const double correction = 0.5 * slope * slope / (a * a * a) * m.sigma2 * m.sigma2 *
                              skew_factor * log_moneyness;
    const double vol = a + correction;
    if (!(vol > 0.0))
        throw std::domain_error("modified_kirk_vol: skew correction collapsed volatility");
    return vol;
}

}  // namespace

double margrabe_price(const MarketInputs& market, double maturity) {
    market.validate();
    if (!(std::isfinite(maturity) && maturity > 0.0))
        throw std::domain_error("margrabe_price: maturity must be positive");
    const double vol = margrabe_vol(market);
    if (vol == 0.0) return std::max(market.s1_0 - market.s2_0, 0.0);
    const double sqrt_t = std::sqrt(maturity);
    const double d1 = (std::log(market.s1_0 / market.s2_0) + 0.5 * vol * vol * maturity) /
                      (vol * sqrt_t);
    const double d2 = d1 - vol * sqrt_t;
    return market.s1_0 * norm_cdf(d1) - market.s2_0 * norm_cdf(d2);
}

double kirk_vol(const MarketInputs& market, const Contract& contract) {
    market.validate();
    contract.validate();
    return kirk_vol_unchecked(market, contract.strike);
}

double kirk_price(const MarketInputs& market, const Contract& contract) {
    market.validate();
    contract.validate();
    const double a = kirk_vol_unchecked(market, contract.strike);
    return spread_shell(market.s1_0, market.s2_0 + contract.strike, a, market.r,
                        contract.maturity);
}

double modified_kirk_vol(const MarketInputs& market, const Contract& contract) {
    market.validate();
    contract.validate();
    return modified_kirk_vol_unchecked(market, contract.strike);
}

double modified_kirk_price(const MarketInputs& market, const Contract& contract) {
    market.validate();
    contract.validate();
    const double vol = modified_kirk_vol_unchecked(market, contract.strike);
    return spread_shell(market.s1_0, market.s2_0 + contract.strike, vol, market.r,
                        contract.maturity);
}

AnalyticTerms analytic_terms(const MarketInputs& market, const Contract& contract,
                             Pricer pricer) {
    market.validate();
    contract.validate();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    AnalyticTerms t{};
    t.a_t = kirk_vol_unchecked(market, contract.strike);
    t.sigma_margrabe = margrabe_vol(market);
    t.s_ratio = market.s1_0 / (market.s2_0 + contract.strike);
    t.x_t = std::log(market.s1_0);
    t.x_star = std::log(market.s2_0 + contract.strike);
    try {
        t.i_hat = modified_kirk_vol_unchecked(market, contract.strike);
    } catch (const std::domain_error&) {
        if (pricer == Pricer::modified_kirk) throw;
        t.i_hat = nan;
    }

    double vol = 0.0;
    double log_ratio = 0.0;
    switch (pricer) {
        case Pricer::margrabe:
            vol = t.sigma_margrabe;
            log_ratio = std::log(market.s1_0 / market.s2_0);
            break;
        case Pricer::kirk:
            vol = t.a_t;
            log_ratio = std::log(t.s_ratio);
            break;
        case Pricer::modified_kirk:
            vol = t.i_hat;
            log_ratio = std::log(t.s_ratio);
            break;
    }
    if (vol > 0.0) {
        const double sqrt_t = std::sqrt(contract.maturity);
        t.d1 = (log_ratio + 0.5 * vol * vol * contract.maturity) / (vol * sqrt_t);
        t.d2 = t.d1 - vol * sqrt_t;
    } else {
        t.d1 = nan;
        t.d2 = nan;
    }
    return t;
}

}  // namespace spreadopt
