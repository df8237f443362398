#pragma once

#include "spreadopt/market.hpp"

namespace spreadopt {

enum class Pricer { margrabe, kirk, modified_kirk };

/// Intermediate quantities of the closed-form pricers, mainly for
/// introspection and testing. d1/d2 correspond to the pricer they were
/// built for; degenerate inputs (zero effective volatility) leave them NaN.
struct AnalyticTerms {
    double a_t;             ///< Kirk effective volatility
    double i_hat;           ///< skew-corrected volatility (NaN if undefined)
    double sigma_margrabe;  ///< exchange-option effective volatility
    double s_ratio;         ///< s1_0 / (s2_0 + K)
    double x_t;             ///< ln(s1_0)
    double x_star;          ///< ln(s2_0 + K)
    double d1;
    double d2;
};

/// Exchange-option price (the strike-zero special case of the spread):
/// s1_0*N(d1) - s2_0*N(d2) with effective volatility
/// sqrt(sigma1^2 - 2*rho*sigma1*sigma2 + sigma2^2). Zero effective
/// volatility returns the locked payoff max(s1_0 - s2_0, 0).
double margrabe_price(const MarketInputs& market, double maturity);

/// Kirk effective volatility
/// a = sqrt(sigma1^2 - 2*rho*sigma1*sigma2*u + sigma2^2*u^2),
/// u = s2_0/(s2_0 + K). Nonnegative; the radicand is clamped at zero
/// against rounding (analytically it equals
/// (sigma1 - rho*sigma2*u)^2 + (1 - rho^2)*sigma2^2*u^2 >= 0).
double kirk_vol(const MarketInputs& market, const Contract& contract);

/// Kirk spread-option approximation: Black-Scholes shell on the moneyness
/// ratio s1_0/(s2_0 + K) with volatility kirk_vol, discounted payoff
/// exp(-rT)*(s1_0*N(d1) - (s2_0 + K)*N(d2)). Zero volatility returns the
/// discounted intrinsic value.
double kirk_price(const MarketInputs& market, const Contract& contract);

/// Skew-corrected Kirk volatility
///   I = a + (1/2)*(sigma2*u - rho*sigma1)^2 * a^-3 * sigma2^2
///           * s2_0*K/(s2_0 + K)^2 * (ln s1_0 - ln(s2_0 + K)).
/// Equals a exactly when K = 0 or s1_0 = s2_0 + K. Throws std::domain_error
/// when a = 0 with an active correction term, or when the correction drives
/// the volatility to zero or below.
double modified_kirk_vol(const MarketInputs& market, const Contract& contract);

/// Kirk shell evaluated with the skew-corrected volatility.
double modified_kirk_price(const MarketInputs& market, const Contract& contract);

AnalyticTerms analytic_terms(const MarketInputs& market, const Contract& contract,
                             Pricer pricer);

}  // namespace spreadopt
