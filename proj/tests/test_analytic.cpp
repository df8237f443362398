#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spreadopt/analytic.hpp"

using namespace spreadopt;

namespace {

const MarketInputs base_market{100.0, 100.0, 0.3, 0.2, 0.9, 0.0};

MarketInputs with_rho(double rho) {
    MarketInputs m = base_market;
    m.rho = rho;
    return m;
}

// Reference prices for the base market at T = 0.5.
struct Golden {
    double strike;
    double rho;
    double kirk;
    double modified;
};
constexpr Golden golden[4] = {
    {5.0, 0.9, 2.3647228, 2.3626873},
    {5.0, 0.999, 1.2862590, 1.27686463},
    {10.0, 0.9, 1.2745318, 1.2681347},
    {10.0, 0.999, 0.5615868, 0.54140923},
};

MarketInputs random_market(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> spot(20.0, 200.0);
    std::uniform_real_distribution<double> vol(0.05, 0.6);
    std::uniform_real_distribution<double> corr(-0.95, 0.999);
    // r fixed at zero: the exchange-option closed form carries no explicit
    // discount factor, so the strike-zero reduction is exact only there.
    return MarketInputs{spot(rng), spot(rng), vol(rng), vol(rng), corr(rng), 0.0};
}

}  // namespace

TEST_CASE("kirk price reproduces the reference table") {
    for (const Golden& g : golden) {
        const double price = kirk_price(with_rho(g.rho), Contract{g.strike, 0.5});
        CHECK(std::fabs(price - g.kirk) <= 1e-6);
    }
}

TEST_CASE("modified kirk price reproduces the reference table") {
    for (const Golden& g : golden) {
        const double price = modified_kirk_price(with_rho(g.rho), Contract{g.strike, 0.5});
        CHECK(std::fabs(price - g.modified) <= 1e-6);
    }
}

TEST_CASE("margrabe: zero-volatility limit locks the payoff") {
    const MarketInputs m{110.0, 100.0, 0.2, 0.2, 1.0, 0.0};
    CHECK(margrabe_price(m, 0.5) == 10.0);
    const MarketInputs otm{90.0, 100.0, 0.2, 0.2, 1.0, 0.0};
    CHECK(margrabe_price(otm, 0.5) == 0.0);
}

TEST_CASE("margrabe point value") {
    // frozen from exact arithmetic on the closed form
    CHECK(std::fabs(margrabe_price(with_rho(0.999), 0.5) - 2.837224936) <= 1e-8);
}

TEST_CASE("kirk volatility special cases and point value") {
    const MarketInputs m = with_rho(0.999);
    const double sigma_margrabe =
        std::sqrt(m.sigma1 * m.sigma1 - 2.0 * m.rho * m.sigma1 * m.sigma2 +
                  m.sigma2 * m.sigma2);
    CHECK(kirk_vol(m, Contract{0.0, 0.5}) == sigma_margrabe);

    MarketInputs riskless2 = m;
    riskless2.sigma2 = 0.0;
    CHECK(kirk_vol(riskless2, Contract{7.0, 0.5}) == riskless2.sigma1);

    // frozen from exact arithmetic on the radicand
    CHECK(std::fabs(kirk_vol(m, Contract{5.0, 0.5}) - 0.110044311833) <= 1e-9);
}

TEST_CASE("modified kirk volatility reductions are exact") {
    const MarketInputs m = with_rho(0.999);
    CHECK(modified_kirk_vol(m, Contract{0.0, 0.5}) == kirk_vol(m, Contract{0.0, 0.5}));

    MarketInputs atm = m;  // s1 = s2 + K makes the log-moneyness factor vanish
    atm.s1_0 = 105.0;
    CHECK(modified_kirk_vol(atm, Contract{5.0, 0.5}) == kirk_vol(atm, Contract{5.0, 0.5}));

    // frozen from exact arithmetic: a small downward skew correction here
    const double i_hat = modified_kirk_vol(m, Contract{5.0, 0.5});
    CHECK(std::fabs(i_hat - 0.10964813824) <= 1e-9);
    CHECK(i_hat < kirk_vol(m, Contract{5.0, 0.5}));
}

TEST_CASE("modified kirk volatility error paths") {
    // sigma1 = sigma2 = 0 with an active correction term: degenerate
    const MarketInputs degenerate{100.0, 100.0, 0.0, 0.0, 1.0, 0.0};
    CHECK_THROWS_AS(modified_kirk_vol(degenerate, Contract{5.0, 0.5}), std::domain_error);

    // near-degenerate Kirk volatility with rho = 1: the correction overwhelms it
    const MarketInputs collapse{100.0, 100.0, 0.19, 0.2, 1.0, 0.0};
    CHECK_THROWS_AS(modified_kirk_vol(collapse, Contract{5.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(modified_kirk_price(collapse, Contract{5.0, 0.5}), std::domain_error);
}

TEST_CASE("zero-volatility kirk price limit") {
    const MarketInputs flat{110.0, 100.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(kirk_price(flat, Contract{5.0, 0.5}) == 5.0);
    CHECK(kirk_price(flat, Contract{15.0, 0.5}) == 0.0);
    MarketInputs flat_r = flat;
    flat_r.r = 0.1;
    CHECK(std::fabs(kirk_price(flat_r, Contract{5.0, 0.5}) - std::exp(-0.05) * 5.0) <=
          1e-12);
}

TEST_CASE("strike-zero reduction chain over random markets") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mat(0.05, 2.0);
    for (int i = 0; i < 100; ++i) {
        const MarketInputs m = random_market(rng);
        const double T = mat(rng);
        const Contract zero{0.0, T};
        const double kirk = kirk_price(m, zero);
        CHECK(std::fabs(kirk - margrabe_price(m, T)) <= 1e-12);
        CHECK(std::fabs(modified_kirk_price(m, zero) - kirk) <= 1e-12);
    }
}

TEST_CASE("at-the-effective-money the two kirk prices agree") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> mat(0.05, 2.0);
    std::uniform_real_distribution<double> strike(0.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        MarketInputs m = random_market(rng);
        const double K = strike(rng);
        m.s1_0 = m.s2_0 + K;  // log-moneyness exactly zero
        const Contract c{K, mat(rng)};
        CHECK(std::fabs(modified_kirk_price(m, c) - kirk_price(m, c)) <= 1e-12);
    }
}

TEST_CASE("no-arbitrage bounds over the sweep ranges") {
    for (double rho : {0.80, 0.85, 0.90, 0.95, 0.999})
        for (double T : {0.1, 0.2, 0.3, 0.4, 0.5})
            for (int k = 0; k <= 20; ++k) {
                const MarketInputs m = with_rho(rho);
                const Contract c{static_cast<double>(k), T};
                const double lower =
                    std::max(std::exp(-m.r * T) * (m.s1_0 - m.s2_0 - c.strike), 0.0);
                for (double price : {kirk_price(m, c), modified_kirk_price(m, c)}) {
                    CHECK(price >= lower);
                    CHECK(price <= m.s1_0);
                }
                const double marg = margrabe_price(m, T);
                CHECK(marg >= std::max(m.s1_0 - m.s2_0, 0.0));
                CHECK(marg <= m.s1_0);
            }
}

TEST_CASE("prices decrease strictly in the strike") {
    for (double rho : {0.80, 0.85, 0.90, 0.95, 0.999}) {
        const MarketInputs m = with_rho(rho);
        double prev_kirk = kirk_price(m, Contract{0.0, 0.5});
        double prev_mod = modified_kirk_price(m, Contract{0.0, 0.5});
        for (int k = 1; k <= 20; ++k) {
            const Contract c{static_cast<double>(k), 0.5};
            const double cur_kirk = kirk_price(m, c);
            const double cur_mod = modified_kirk_price(m, c);
            CHECK(cur_kirk < prev_kirk);
            CHECK(cur_mod < prev_mod);
            prev_kirk = cur_kirk;
            prev_mod = cur_mod;
        }
    }
}

TEST_CASE("kirk radicand equals its explicit nonnegative decomposition") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> vol(0.0, 1.0);
    std::uniform_real_distribution<double> corr(-1.0, 1.0);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    for (int i = 0; i < 10'000; ++i) {
        const double s1 = vol(rng), s2 = vol(rng), rho = corr(rng), u = weight(rng);
        const double radicand = s1 * s1 - 2.0 * rho * s1 * s2 * u + s2 * s2 * u * u;
        const double split = (s1 - rho * s2 * u) * (s1 - rho * s2 * u) +
                             (1.0 - rho * rho) * s2 * s2 * u * u;
        CHECK(std::fabs(radicand - split) <= 1e-14);
    }
}

TEST_CASE("analytic terms are mutually consistent") {
    const MarketInputs m = with_rho(0.999);
    const Contract c{5.0, 0.5};
    for (Pricer pricer : {Pricer::margrabe, Pricer::kirk, Pricer::modified_kirk}) {
        const AnalyticTerms t = analytic_terms(m, c, pricer);
        const double vol = pricer == Pricer::margrabe  ? t.sigma_margrabe
                           : pricer == Pricer::kirk    ? t.a_t
                                                       : t.i_hat;
        CHECK(t.a_t >= 0.0);
        CHECK(t.sigma_margrabe >= 0.0);
        CHECK(std::fabs(t.d2 - (t.d1 - vol * std::sqrt(c.maturity))) <= 1e-14);
        CHECK(t.s_ratio == m.s1_0 / (m.s2_0 + c.strike));
        CHECK(t.x_t == std::log(m.s1_0));
        CHECK(t.x_star == std::log(m.s2_0 + c.strike));
    }
    const AnalyticTerms z = analytic_terms(m, Contract{0.0, 0.5}, Pricer::kirk);
    CHECK(z.i_hat == z.a_t);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS((MarketInputs{-1.0, 100.0, 0.3, 0.2, 0.0, 0.0}.validate()),
                    std::domain_error);
    CHECK_THROWS_AS((MarketInputs{100.0, 100.0, -0.3, 0.2, 0.0, 0.0}.validate()),
                    std::domain_error);
    CHECK_THROWS_AS((MarketInputs{100.0, 100.0, 0.3, 0.2, 1.5, 0.0}.validate()),
                    std::domain_error);
    CHECK_THROWS_AS((MarketInputs{100.0, 100.0, 0.3, 0.2, std::nan(""), 0.0}.validate()),
                    std::domain_error);
    CHECK_THROWS_AS((Contract{-1.0, 0.5}.validate()), std::domain_error);
    CHECK_THROWS_AS((Contract{5.0, 0.0}.validate()), std::domain_error);
    CHECK_THROWS_AS(kirk_price(MarketInputs{100.0, 100.0, 0.3, 0.2, 2.0, 0.0},
                               Contract{5.0, 0.5}),
                    std::domain_error);
    CHECK_THROWS_AS(margrabe_price(base_market, -0.5), std::domain_error);
    // degenerate correlations themselves are allowed
    CHECK_NOTHROW(kirk_price(with_rho(1.0), Contract{5.0, 0.5}));
    CHECK_NOTHROW(kirk_price(with_rho(-1.0), Contract{5.0, 0.5}));
}
