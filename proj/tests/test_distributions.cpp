#include "ogeg/distributions.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>

using namespace ogeg;
using ogeg::testing::random_params;
using ogeg::testing::rel_err;

namespace {
const ModelSpec kUnit = ModelSpec::ogeg({1.0, 1.0, 1.0, 1.0});
}

// Reference values below were evaluated at 30 significant digits with an
// arbitrary-precision library, directly from the closed-form cdf/pdf.
TEST_CASE("OGE-G closed forms at unit parameters") {
    CHECK(cdf(kUnit, 1.0) == doctest::Approx(0.989693098141069604).epsilon(1e-14));
    CHECK(log_pdf(kUnit, 1.0) == doctest::Approx(-1.856659696301835389).epsilon(1e-14));
    CHECK(pdf(kUnit, 1.0) == doctest::Approx(0.156193493667421339).epsilon(1e-14));
    CHECK(survival(kUnit, 1.0) == doctest::Approx(0.0103069018589303961).epsilon(1e-13));
    CHECK(hazard(kUnit, 1.0).value == doctest::Approx(15.1542622414792642).epsilon(1e-13));
    CHECK(median({1.0, 1.0, 1.0, 1.0}) == doctest::Approx(0.423035857164402049).epsilon(1e-13));
    CHECK(median({0.04, 0.000345, 0.078, 0.194}) == doctest::Approx(61.6469241163117884).epsilon(1e-12));
}

TEST_CASE("support boundary") {
    CHECK(cdf(kUnit, 0.0) == 0.0);
    CHECK(pdf(kUnit, -1.0) == 0.0);
    CHECK(survival(kUnit, 0.0) == 1.0);
    CHECK_THROWS_AS(log_pdf(kUnit, 0.0), DomainError);
    CHECK_THROWS_AS(quantile(kUnit, 0.0), DomainError);
    CHECK_THROWS_AS(quantile(kUnit, 1.0), DomainError);
    CHECK_THROWS_AS(ModelSpec::ogeg({1.0, -1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(ModelSpec(Family::GE, {1.0}), DomainError);
}

TEST_CASE("family names") {
    CHECK(parse_family("OGE-G") == Family::OGEG);
    CHECK(parse_family("gg") == Family::GG);
    CHECK_THROWS_AS(parse_family("weibull"), DomainError);
    for (Family f : kAllFamilies) {
        CHECK(parse_family(family_id(f)) == f);
        CHECK(param_names(f).size() == param_count(f));
    }
    CHECK(ModelSpec(Family::BG, {0.5, 2.0, 0.1, 0.2}).param("lambda") == 0.1);
}

TEST_CASE("baseline families against textbook forms") {
    const double x = 1.7;
    const double H = 0.3 / 0.4 * std::expm1(0.4 * x);
    CHECK(cdf(ModelSpec(Family::E, {0.8}), x) == doctest::Approx(1.0 - std::exp(-0.8 * x)));
    CHECK(cdf(ModelSpec(Family::GE, {0.8, 2.5}), x) == doctest::Approx(std::pow(1.0 - std::exp(-0.8 * x), 2.5)));
    CHECK(cdf(ModelSpec(Family::G, {0.3, 0.4}), x) == doctest::Approx(1.0 - std::exp(-H)));
    CHECK(cdf(ModelSpec(Family::GG, {0.3, 0.4, 1.7}), x) == doctest::Approx(std::pow(1.0 - std::exp(-H), 1.7)));
    const double G = 1.0 - std::exp(-H);
    CHECK(cdf(ModelSpec(Family::BG, {0.7, 1.9, 0.3, 0.4}), x) ==
          doctest::Approx(boost::math::ibeta(0.7, 1.9, G)).epsilon(1e-12));
    // Beta-Gompertz with unit shapes is the Gompertz law itself.
    CHECK(pdf(ModelSpec(Family::BG, {1.0, 1.0, 0.3, 0.4}), x) ==
          doctest::Approx(pdf(ModelSpec(Family::G, {0.3, 0.4}), x)).epsilon(1e-13));
    // OGE-G with beta = 1 has survival exp(-alpha (e^H - 1)).
    CHECK(survival(ModelSpec::ogeg({0.6, 0.3, 0.4, 1.0}), x) ==
          doctest::Approx(std::exp(-0.6 * std::expm1(H))).epsilon(1e-13));
}

TEST_CASE("quantile inverts cdf for every family") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.001, 0.999);
    const std::vector<ModelSpec> models = {
        ModelSpec(Family::E, {0.8}),           ModelSpec(Family::GE, {0.8, 0.4}),
        ModelSpec(Family::G, {0.3, 0.4}),      ModelSpec(Family::GG, {0.01, 0.08, 0.26}),
        ModelSpec(Family::BG, {0.2, 0.25, 3e-4, 0.09}),
        ModelSpec::ogeg({0.04, 0.000345, 0.078, 0.194})};
    for (const auto& m : models) {
        for (int i = 0; i < 50; ++i) {
            const double q = u(gen);
            CHECK(cdf(m, quantile(m, q)) == doctest::Approx(q).epsilon(1e-9));
        }
    }
}

TEST_CASE("random-parameter identities") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int trial = 0; trial < 100; ++trial) {
        const ModelSpec m = ModelSpec::ogeg(random_params(gen));
        const double x = quantile(m, u(gen));
        CHECK(std::abs(cdf(m, x) + survival(m, x) - 1.0) < 1e-12);
        CHECK(rel_err(hazard(m, x).value * survival(m, x), pdf(m, x)) < 1e-10);
        CHECK(cdf(m, x) <= cdf(m, x * 1.01));
    }
}

TEST_CASE("hazard in the far tail") {
    // At x = 2.5 the inner exponent z is about 7e4, so the survival function
    // underflows while its logarithm stays representable.
    const ModelSpec m = ModelSpec::ogeg({1.0, 1.0, 1.0, 0.5});
    const double x = 2.5;
    CHECK(survival(m, x) == 0.0);
    const HazardValue h = hazard(m, x);
    REQUIRE(std::isfinite(h.value));
    CHECK_FALSE(h.saturated);
    // Tail hazard approaches alpha lambda e^{cx} e^{H}.
    CHECK(std::log(h.value) == doctest::Approx(x + std::expm1(x)).epsilon(1e-12));
}

TEST_CASE("mode") {
    CHECK(mode({1.0, 1.0, 1.0, 0.5}).kind == ModeKind::Divergent);
    CHECK(mode({3.0, 1.0, 0.5, 1.0}).kind == ModeKind::Boundary);

    // Oracle: argmax of the density over a fine grid.
    for (const OgegParams p : {OgegParams{1.0, 1.0, 1.0, 2.0}, OgegParams{0.5, 0.2, 0.3, 3.0},
                               OgegParams{0.2, 0.05, 1.0, 1.0}}) {
        const ModeResult r = mode(p);
        REQUIRE(r.kind == ModeKind::Interior);
        const ModelSpec m = ModelSpec::ogeg(p);
        const double hi = quantile(m, 0.999);
        const int steps = 200000;
        double best_x = 0.0, best_f = -1.0;
        for (int i = 1; i <= steps; ++i) {
            const double x = hi * i / steps;
            const double f = pdf(m, x);
            if (f > best_f) {
                best_f = f;
                best_x = x;
            }
        }
        CHECK(std::abs(r.x - best_x) <= 2.0 * hi / steps);
        CHECK(std::abs(log_density_slope(p, r.x)) < 1e-6);
    }
}

TEST_CASE("sampling is deterministic and labelled") {
    const ModelSpec m = ModelSpec::ogeg({1.0, 1.0, 1.0, 1.0});
    RandomSource a(42), b(42), c(43);
    const Dataset s1 = sample(m, 20, a);
    const Dataset s2 = sample(m, 20, b);
    const Dataset s3 = sample(m, 20, c);
    CHECK(std::equal(s1.values().begin(), s1.values().end(), s2.values().begin()));
    CHECK_FALSE(std::equal(s1.values().begin(), s1.values().end(), s3.values().begin()));
    CHECK(s1.label() == "sample:ogeg:seed=42");
}

TEST_CASE("expect") {
    const ModelSpec m = ModelSpec::ogeg({0.7, 0.4, 0.6, 1.3});
    CHECK(expect(m, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
    // E[X] as the integral of the survival function, an independent route.
    const double inf = std::numeric_limits<double>::infinity();
    const double via_survival = integrate([&](double x) { return survival(m, x); }, 0.0, inf);
    CHECK(expect(m, [](double x) { return x; }) == doctest::Approx(via_survival).epsilon(1e-8));
}
