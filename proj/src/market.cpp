#include "spreadopt/market.hpp"

#include <cmath>
#include <stdexcept>

namespace spreadopt {

void MarketInputs::validate() const {
    if (!(std::isfinite(s1_0) && s1_0 > 0.0))
        throw std::domain_error("market: s1_0 must be positive and finite");
    if (!(std::isfinite(s2_0) && s2_0 > 0.0))
        throw std::domain_error("market: s2_0 must be positive and finite");
    if (!(std::isfinite(sigma1) && sigma1 >= 0.0))
        throw std::domain_error("market: sigma1 must be nonnegative and finite");
    if (!(std::isfinite(sigma2) && sigma2 >= 0.0))
        throw std::domain_error("market: sigma2 must be nonnegative and finite");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::domain_error("market: rho must lie in [-1, 1]");
    if (!std::isfinite(r)) throw std::domain_error("market: r must be finite");
}

void Contract::validate() const {
    if (!(std::isfinite(strike) && strike >= 0.0))
        throw std::domain_error("contract: strike must be nonnegative and finite");
    if (!(std::isfinite(maturity) && maturity > 0.0))
        throw std::domain_error("contract: maturity must be positive and finite");
}

}  // namespace spreadopt
