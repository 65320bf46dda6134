#include "ogeg/inference.hpp"

#include "ogeg/aarset.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ogeg;
using ogeg::testing::random_params;

namespace {

double ll_at(const Dataset& data, std::span<const double> v) {
    for (double p : v) {
        if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
    }
    return log_likelihood(ModelSpec(Family::OGEG, {v.begin(), v.end()}), data);
}

}  // namespace

TEST_CASE("log-likelihood values") {
    const Dataset one({1.0}, "one");
    CHECK(log_likelihood(ModelSpec::ogeg({1.0, 1.0, 1.0, 1.0}), one) ==
          doctest::Approx(-1.856659696301835389).epsilon(1e-13));
    const Dataset aarset = aarset_dataset();
    CHECK(std::abs(log_likelihood(ModelSpec::ogeg({0.04, 0.000345, 0.078, 0.194}), aarset) + 215.9735) < 0.01);
    CHECK(std::abs(log_likelihood(ModelSpec(Family::E, {0.0219}), aarset) + 241.0896) < 0.01);
    // Generic path and OGE-G fast path agree.
    double sum = 0.0;
    const ModelSpec m = ModelSpec::ogeg({0.04, 0.000345, 0.078, 0.194});
    for (double x : aarset.values()) sum += log_pdf(m, x);
    CHECK(log_likelihood(m, aarset) == doctest::Approx(sum).epsilon(1e-13));
}

TEST_CASE("score agrees with finite differences") {
    const Dataset one({1.0}, "one");
    const std::vector<double> at = {1.0, 1.0, 1.0, 1.0};
    const auto s = score(OgegParams::from(at), one);
    const auto fd = finite_diff_gradient([&](std::span<const double> v) { return ll_at(one, v); }, at, 1e-5);
    for (int i = 0; i < 4; ++i) CHECK(s[i] == doctest::Approx(fd[i]).epsilon(1e-6));

    // beta component is n/beta + sum log(1 - e^{-z}) term by term.
    const Dataset aarset = aarset_dataset();
    const OgegParams p{0.04, 0.000345, 0.078, 0.194};
    double expect_beta = 50.0 / p.beta;
    for (double x : aarset.values()) {
        expect_beta += std::log(-std::expm1(-p.alpha * std::expm1(p.lambda / p.c * std::expm1(p.c * x))));
    }
    CHECK(std::abs(score(p, aarset)[3] - expect_beta) < 1e-11);

    // At the rounded literature point the lambda component is large (n/lambda
    // is ~1.4e5), but it still matches finite differences.
    const auto sp = score(p, aarset);
    const auto fdp = finite_diff_gradient([&](std::span<const double> v) { return ll_at(aarset, v); },
                                          p.as_array(), 1e-6);
    for (int i = 0; i < 4; ++i) CHECK(sp[i] == doctest::Approx(fdp[i]).epsilon(1e-5));
}

TEST_CASE("beta profile maximizer") {
    // Single point with alpha (e^H - 1) = ln 2, i.e. 1 - e^{-z} = 1/2.
    const double c = 1.0, lambda = 1.0, x = 1.0;
    const double alpha = std::numbers::ln2 / std::expm1(lambda / c * std::expm1(c * x));
    const Dataset one({x}, "one");
    CHECK(beta_profile_mle(alpha, lambda, c, one) == doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-14));

    const Dataset aarset = aarset_dataset();
    const double b = beta_profile_mle(0.04, 0.000345, 0.078, aarset);
    CHECK(std::abs(b - 0.194) < 0.01);
    CHECK(std::abs(score({0.04, 0.000345, 0.078, b}, aarset)[3]) < 1e-12);

    // Inner cdf rounds to one at every point.
    CHECK_THROWS_AS(beta_profile_mle(1e3, 10.0, 1.0, Dataset({50.0}, "far")), NumericalError);
}

TEST_CASE("observed information agrees with finite differences") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 10; ++trial) {
        const OgegParams p = random_params(gen);
        RandomSource rng(100 + trial);
        const Dataset data = sample(ModelSpec::ogeg(p), 20, rng);
        const Eigen::Matrix4d info = observed_information(p, data);
        const auto h = finite_diff_hessian([&](std::span<const double> v) { return ll_at(data, v); },
                                           p.as_array(), 1e-4);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const double fd = -h[static_cast<std::size_t>(r * 4 + c)];
                const double scale = std::max(std::abs(fd), std::sqrt(std::abs(h[r * 5] * h[c * 5])));
                CHECK(std::abs(info(r, c) - fd) <= 1e-4 * scale);
            }
        }
        CHECK(info(1, 2) == info(2, 1));
    }
}

TEST_CASE("exponential fit matches the closed form") {
    RandomSource rng(2024);
    const Dataset data = sample(ModelSpec(Family::E, {2.0}), 10000, rng);
    const FitResult fit = fit_mle(Family::E, data);
    CHECK(fit.converged);
    CHECK(std::abs(fit.model.params()[0] - 2.0) < 0.06);
    CHECK(fit.model.params()[0] == doctest::Approx(1.0 / data.mean()).epsilon(1e-8));
    // Closed-form variance alpha^2 / n.
    const double a = fit.model.params()[0];
    CHECK(fit.covariance(0, 0) == doctest::Approx(a * a / 1e4).epsilon(1e-4));
}

TEST_CASE("Aarset fits") {
    const Dataset aarset = aarset_dataset();
    const FitResult gg = fit_mle(Family::GG, aarset);
    CHECK(-gg.loglik <= 222.2441 + 0.05);

    const FitResult og = fit_mle(Family::OGEG, aarset);
    CHECK(og.converged);
    CHECK(-og.loglik <= 215.99);
    CHECK(og.log_grad_norm < 1e-9);
    for (double s : og.score_at_mle) CHECK(std::abs(s) < 1e-6);
    CHECK(og.multistart_best_of >= 1);
    CHECK(og.starts.size() == 27);
    // Covariance is symmetric with a nonnegative diagonal.
    CHECK((og.covariance - og.covariance.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 4; ++i) CHECK(og.covariance(i, i) >= 0.0);
    REQUIRE(og.conf_intervals.size() == 4);
    for (const auto& ci : og.conf_intervals) CHECK(ci.lo >= 0.0);

    // The same optimum in natural coordinates and without profiling beta.
    FitConfig natural;
    natural.space = ParamSpace::Natural;
    natural.start = std::vector<double>(og.model.params().begin(), og.model.params().end());
    natural.start->at(0) *= 1.05;
    natural.start->at(2) *= 0.97;
    const FitResult nat = fit_mle(Family::OGEG, aarset, natural);
    if (nat.converged) CHECK(std::abs(nat.loglik - og.loglik) < 1e-6);

    FitConfig full;
    full.profile_beta = false;
    const FitResult unprofiled = fit_mle(Family::OGEG, aarset, full);
    CHECK(std::abs(unprofiled.loglik - og.loglik) < 1e-6);
}

TEST_CASE("nested families") {
    const Dataset aarset = aarset_dataset();
    CHECK(fit_mle(Family::GE, aarset).loglik >= fit_mle(Family::E, aarset).loglik - 1e-4);
    CHECK(fit_mle(Family::GG, aarset).loglik >= fit_mle(Family::G, aarset).loglik - 1e-4);
}

TEST_CASE("fit refusals") {
    CHECK_THROWS_AS(fit_mle(Family::OGEG, Dataset({1.0, 2.0, 3.0}, "tiny")), DataError);
    FitConfig bad;
    bad.start = std::vector<double>{1.0};
    CHECK_THROWS_AS(fit_mle(Family::GG, aarset_dataset(), bad), DomainError);
}

TEST_CASE("Wald intervals") {
    FitResult fit{ModelSpec(Family::G, {0.5, 0.1})};
    fit.covariance = Eigen::MatrixXd::Zero(2, 2);
    auto ci = confidence_intervals(fit, 0.05);
    CHECK(ci[0].lo == 0.5);
    CHECK(ci[0].hi == 0.5);

    fit.covariance(0, 0) = 0.04;
    ci = confidence_intervals(fit, 0.05);
    CHECK(ci[0].hi == doctest::Approx(0.5 + 1.959963984540054 * 0.2).epsilon(1e-12));
    CHECK(ci[0].lo == doctest::Approx(0.5 - 1.959963984540054 * 0.2).epsilon(1e-12));
    fit.covariance(0, 0) = 1.0;
    ci = confidence_intervals(fit, 0.05);
    CHECK(ci[0].lo == 0.0);
    CHECK(ci[0].lo_unclamped < 0.0);

    fit.covariance(1, 1) = -1e-3;
    CHECK_THROWS_AS(confidence_intervals(fit, 0.05), NumericalError);
    CHECK_THROWS_AS(confidence_intervals(fit, 1.5), DomainError);
}

TEST_CASE("profile likelihood") {
    const Dataset aarset = aarset_dataset();
    const FitResult full = fit_mle(Family::OGEG, aarset);
    const double a = full.model.param("alpha");
    const std::vector<double> grid = {a * 0.25, a * 0.5, a * 0.8, a, a * 1.25, a * 2.0, a * 4.0};
    const ProfileCurve curve = profile_curve(Family::OGEG, aarset, "alpha", grid, full);
    CHECK(curve.gaps == 0);
    CHECK(curve.grid.size() == curve.profile_loglik.size());
    const auto best = std::max_element(curve.profile_loglik.begin(), curve.profile_loglik.end());
    CHECK(best - curve.profile_loglik.begin() == 3);
    CHECK(curve.profile_loglik[3] == doctest::Approx(full.loglik).epsilon(1e-10));
    CHECK(curve.profile_loglik.front() < full.loglik);
    CHECK(curve.profile_loglik.back() < full.loglik);

    CHECK_THROWS_AS(profile_curve(Family::OGEG, aarset, "gamma", grid, full), DomainError);
    CHECK_THROWS_AS(profile_curve(Family::OGEG, aarset, "alpha", {1.0, 0.5}, full), DomainError);
}
