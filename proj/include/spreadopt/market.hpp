#pragma once

namespace spreadopt {

/// Two-asset market state at valuation: spot prices, annualized volatilities,
/// instantaneous correlation and the continuously compounded risk-free rate.
struct MarketInputs {
    double s1_0 = 100.0;
    double s2_0 = 100.0;
    double sigma1 = 0.3;
    double sigma2 = 0.2;
    double rho = 0.0;
    double r = 0.0;

    /// Throws std::domain_error unless s1_0, s2_0 > 0, sigma1, sigma2 >= 0,
    /// rho in [-1, 1] and all fields are finite.
    void validate() const;
};

/// One spread option: strike and time to expiry in years.
struct Contract {
    double strike = 0.0;
    double maturity = 0.5;

    /// Throws std::domain_error unless strike >= 0 and maturity > 0.
    void validate() const;
};

}  // namespace spreadopt
