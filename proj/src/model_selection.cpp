#include "ogeg/model_selection.hpp"

#include "ogeg/aarset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <sstream>

namespace ogeg {

InformationCriteria information_criteria(double neg_loglik, std::size_t k, std::size_t n) {
    if (n <= k + 1) {
        throw DomainError("information_criteria: AICC needs n > k + 1 (n = " + std::to_string(n) +
                          ", k = " + std::to_string(k) + ")");
    }
    const auto kd = static_cast<double>(k);
    const auto nd = static_cast<double>(n);
    const double aic = 2.0 * kd + 2.0 * neg_loglik;
    return {aic, aic + 2.0 * kd * (kd + 1.0) / (nd - kd - 1.0), 2.0 * neg_loglik + kd * std::log(nd)};
}

double ks_statistic(const ModelSpec& model, const Dataset& data) {
    const auto xs = data.sorted();
    const auto n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = cdf(model, xs[i]);
        d = std::max({d, (i + 1.0) / n - F, F - i / n});
    }
    return std::clamp(d, 0.0, 1.0);
}

double ks_pvalue(double d, std::size_t n) {
    if (!(d > 0.0)) return 1.0;
    const double t = 2.0 * static_cast<double>(n) * d * d;
    double sum = 0.0;
    for (int j = 1; j < 1000; ++j) {
        const double term = std::exp(-t * j * j);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KmCurve kaplan_meier(const Dataset& data) {
    const auto xs = data.sorted();
    KmCurve km;
    std::size_t at_risk = xs.size();
    for (std::size_t i = 0; i < xs.size();) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        const auto deaths = j - i;
        at_risk -= deaths;
        km.times.push_back(xs[i]);
        // Without censoring the product of (1 - d_j/n_j) telescopes to
        // (#x > t)/n; the ratio is formed directly so the identity is exact.
        km.survival.push_back(static_cast<double>(at_risk) / static_cast<double>(xs.size()));
        i = j;
    }
    return km;
}

GofReport gof_report(const FitResult& fit, const Dataset& data) {
    const std::size_t k = fit.model.params().size();
    const double nll = -fit.loglik;
    const auto ic = information_criteria(nll, k, data.size());
    const double d = ks_statistic(fit.model, data);
    return {fit.model.family(), k, nll, ic.aic, ic.aicc, ic.bic, d, ks_pvalue(d, data.size())};
}

std::vector<ComparisonRow> compare_models(const Dataset& data, const std::vector<Family>& families,
                                          const FitConfig& config) {
    std::vector<std::future<ComparisonRow>> jobs;
    for (Family family : families) {
        jobs.push_back(std::async(std::launch::async, [&data, &config, family] {
            ComparisonRow row{family, std::nullopt, std::nullopt, {}};
            try {
                row.fit = fit_mle(family, data, config);
                row.gof = gof_report(*row.fit, data);
            } catch (const std::exception& e) {
                row.fit.reset();
                row.gof.reset();
                row.error = e.what();
            }
            return row;
        }));
    }
    std::vector<ComparisonRow> rows;
    for (auto& job : jobs) rows.push_back(job.get());

    if (!rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.gof; })) {
        std::ostringstream os;
        os << "compare_models: every family failed";
        for (const auto& r : rows) os << "\n  " << family_label(r.family) << ": " << r.error;
        throw ConvergenceError(os.str(), std::nan(""));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        if (a.gof.has_value() != b.gof.has_value()) return a.gof.has_value();
        if (a.gof && a.gof->aic != b.gof->aic) return a.gof->aic < b.gof->aic;
        return family_id(a.family) < family_id(b.family);
    });
    return rows;
}

std::vector<std::string> reference_consistency_notes() {
    std::vector<std::string> notes;
    constexpr std::size_t n = 50;
    for (const ReferenceRow& ref : aarset_reference()) {
        const std::size_t k = param_count(ref.family);
        const auto ic = information_criteria(ref.neg_loglik, k, n);
        const std::array<std::pair<const char*, std::pair<double, double>>, 3> checks = {{
            {"AIC", {ref.aic, ic.aic}}, {"AICC", {ref.aicc, ic.aicc}}, {"BIC", {ref.bic, ic.bic}}}};
        std::ostringstream os;
        os.precision(8);
        bool first = true;
        for (const auto& [name, values] : checks) {
            if (std::abs(values.first - values.second) < 0.01) continue;
            os << (first ? "" : ", ") << name << ' ' << values.first << " (formula " << values.second << ")";
            first = false;
        }
        if (first) continue;
        os << " inconsistent with the reference -L " << ref.neg_loglik << " and k = " << k
           << "; reported values use the formula";
        notes.push_back(std::string(family_label(ref.family)) + ": reference " + os.str());
    }
    return notes;
}

}  // namespace ogeg
