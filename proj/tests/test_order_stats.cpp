#include "ogeg/order_stats.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ogeg;

TEST_CASE("median of three at unit parameters") {
    // 3! / (1! 1!) F (1 - F) f with F, f from the closed forms, evaluated at
    // 30 digits.
    const OrderStatSpec spec{3, 2, {1.0, 1.0, 1.0, 1.0}};
    CHECK(order_stat_pdf_direct(spec, 1.0) == doctest::Approx(0.00955966936635338).epsilon(1e-12));
    CHECK(order_stat_pdf_mixture(spec, 1.0) == doctest::Approx(0.00955966936635338).epsilon(1e-10));
}

TEST_CASE("n = 1 is the parent density") {
    const OgegParams p{0.7, 0.4, 0.6, 1.3};
    const OrderStatSpec spec{1, 1, p};
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
        CHECK(order_stat_pdf_direct(spec, x) == doctest::Approx(pdf(ModelSpec::ogeg(p), x)).epsilon(1e-13));
    }
}

TEST_CASE("direct and mixture forms agree; densities sum to n f") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 5; ++trial) {
        const OgegParams p = ogeg::testing::random_params(gen);
        const ModelSpec m = ModelSpec::ogeg(p);
        for (int n = 1; n <= 6; ++n) {
            for (double q : {0.05, 0.3, 0.6, 0.95}) {
                const double x = quantile(m, q);
                double sum = 0.0;
                for (int r = 1; r <= n; ++r) {
                    const double direct = order_stat_pdf_direct({n, r, p}, x);
                    const double mixture = order_stat_pdf_mixture({n, r, p}, x);
                    CHECK(std::abs(direct - mixture) <= 1e-9 * std::max(1.0, direct));
                    sum += direct;
                }
                CHECK(std::abs(sum - n * pdf(m, x)) <= 1e-8 * std::max(1.0, n * pdf(m, x)));
            }
        }
    }
}

TEST_CASE("order-statistic density integrates to one") {
    const OrderStatSpec spec{5, 4, {0.7, 0.4, 0.6, 1.3}};
    const double total = integrate([&](double x) { return order_stat_pdf_direct(spec, x); }, 0.0,
                                   std::numeric_limits<double>::infinity());
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("invalid specs") {
    const OgegParams p{1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(order_stat_pdf_direct({3, 0, p}, 1.0), DomainError);
    CHECK_THROWS_AS(order_stat_pdf_direct({3, 4, p}, 1.0), DomainError);
    CHECK_THROWS_AS(order_stat_pdf_mixture({0, 0, p}, 1.0), DomainError);
    CHECK(order_stat_pdf_direct({3, 2, p}, -1.0) == 0.0);
}
