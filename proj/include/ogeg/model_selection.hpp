#pragma once

#include "ogeg/dataset.hpp"
#include "ogeg/distributions.hpp"
#include "ogeg/inference.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ogeg {

struct InformationCriteria {
    double aic;
    double aicc;
    double bic;
};

/// aic = 2k + 2 nll, aicc = aic + 2k(k+1)/(n-k-1), bic = 2 nll + k ln n.
/// Throws DomainError when n <= k + 1 (AICC undefined).
InformationCriteria information_criteria(double neg_loglik, std::size_t k, std::size_t n);

struct GofReport {
    Family family;
    std::size_t k;
    double neg_loglik;
    double aic;
    double aicc;
    double bic;
    double ks_stat;
    double ks_pvalue;
};

/// D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
double ks_statistic(const ModelSpec& model, const Dataset& data);

/// Asymptotic Kolmogorov tail 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 n d^2),
/// clamped to [0, 1].
double ks_pvalue(double d, std::size_t n);

struct KmCurve {
    std::vector<double> times;     // distinct event times, ascending
    std::vector<double> survival;  // S(t) just after each time
};

/// Product-limit estimator for uncensored data; tied times form one step.
KmCurve kaplan_meier(const Dataset& data);

GofReport gof_report(const FitResult& fit, const Dataset& data);

struct ComparisonRow {
    Family family;
    std::optional<FitResult> fit;
    std::optional<GofReport> gof;
    /// Set when the fit for this family failed.
    std::string error;
};

/// Fits each family (concurrently) and returns successful rows by ascending
/// AIC, ties broken by family id, followed by failed rows. Throws
/// ConvergenceError when every family fails.
std::vector<ComparisonRow> compare_models(const Dataset& data, const std::vector<Family>& families,
                                          const FitConfig& config = {});

/// Internal-consistency findings on the embedded Aarset reference table:
/// rows whose printed AIC/AICC disagree with 2k + 2(-L) from the same table.
std::vector<std::string> reference_consistency_notes();

}  // namespace ogeg
