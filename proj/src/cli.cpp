#include "ogeg/cli.hpp"

#include "ogeg/aarset.hpp"
#include "ogeg/distributions.hpp"
#include "ogeg/inference.hpp"
#include "ogeg/model_selection.hpp"
#include "ogeg/moments.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ogeg::cli {

using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

bool parse_double(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        if (!parse_double(trim(item), v)) {
            throw DomainError(what + ": '" + trim(item) + "' is not a number");
        }
        out.push_back(v);
    }
    if (out.empty()) throw DomainError(what + ": empty list");
    return out;
}

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const int lo = std::stoi(text.substr(0, dots));
            const int hi = std::stoi(text.substr(dots + 2));
            for (int r = lo; r <= hi; ++r) out.push_back(r);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        }
    } catch (const std::logic_error&) {
        throw DomainError("--r: expected N, N..M or a comma list, got '" + text + "'");
    }
    if (out.empty()) throw DomainError("--r: no moment orders given");
    return out;
}

std::string sig6(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

struct Common {
    std::string data = "aarset";
    std::string format = "table";
    std::string space = "log";
    bool no_profile = false;
    double grad_tol = OptimOptions{}.grad_tol;
    int max_iter = OptimOptions{}.max_iter;
    double ci = 0.95;
};

FitConfig make_fit_config(const Common& c) {
    FitConfig cfg;
    cfg.optim.grad_tol = c.grad_tol;
    cfg.optim.max_iter = c.max_iter;
    if (c.space == "log") {
        cfg.space = ParamSpace::Log;
    } else if (c.space == "natural") {
        cfg.space = ParamSpace::Natural;
    } else {
        throw DomainError("--space must be log or natural");
    }
    cfg.profile_beta = !c.no_profile;
    if (!(c.ci > 0.0 && c.ci < 1.0)) throw DomainError("--ci must lie in (0, 1)");
    cfg.ci_level = c.ci;
    return cfg;
}

ordered_json provenance(const std::string& command, const Dataset* data, std::optional<std::uint64_t> seed,
                        const FitConfig* cfg) {
    ordered_json p;
    p["tool"] = "ogeg";
    p["version"] = kToolVersion;
    p["command"] = command;
    if (data) {
        p["dataset"] = {{"label", data->label()}, {"n", data->size()}};
    } else {
        p["dataset"] = nullptr;
    }
    p["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    if (cfg) {
        p["tolerances"] = {{"grad_tol", cfg->optim.grad_tol},
                           {"rel_change_tol", cfg->optim.rel_change_tol},
                           {"stall_iters", cfg->optim.stall_iters},
                           {"max_iter", cfg->optim.max_iter},
                           {"param_space", cfg->space == ParamSpace::Log ? "log" : "natural"},
                           {"profile_beta", cfg->profile_beta}};
    } else {
        p["tolerances"] = nullptr;
    }
    std::ostringstream boost_version;
    boost_version << BOOST_VERSION / 100000 << '.' << BOOST_VERSION / 100 % 1000 << '.' << BOOST_VERSION % 100;
    p["libraries"] = {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                    "." + std::to_string(EIGEN_MINOR_VERSION)},
                      {"boost", boost_version.str()},
                      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                      {"cli11", CLI11_VERSION}};
    p["compiler"] = __VERSION__;
    return p;
}

ordered_json envelope(const std::string& command, ordered_json prov, ordered_json result,
                      const std::vector<std::string>& notes = {}) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["provenance"] = std::move(prov);
    j["result"] = std::move(result);
    j["notes"] = notes;
    return j;
}

ordered_json params_json(const ModelSpec& model) {
    ordered_json p = ordered_json::object();
    const auto names = param_names(model.family());
    for (std::size_t i = 0; i < names.size(); ++i) p[std::string(names[i])] = model.params()[i];
    return p;
}

ordered_json fit_json(const FitResult& fit) {
    ordered_json j;
    j["family"] = family_id(fit.model.family());
    j["label"] = family_label(fit.model.family());
    j["params"] = params_json(fit.model);
    j["loglik"] = fit.loglik;
    j["neg_loglik"] = -fit.loglik;
    j["score"] = fit.score_at_mle;
    ordered_json cov = ordered_json::array();
    for (Eigen::Index r = 0; r < fit.covariance.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < fit.covariance.cols(); ++c) row.push_back(num(fit.covariance(r, c)));
        cov.push_back(row);
    }
    j["covariance"] = cov;
    ordered_json cis = ordered_json::array();
    const auto names = param_names(fit.model.family());
    for (std::size_t i = 0; i < fit.conf_intervals.size(); ++i) {
        const auto& ci = fit.conf_intervals[i];
        cis.push_back({{"parameter", names[i]}, {"lo", ci.lo}, {"hi", ci.hi}, {"lo_unclamped", ci.lo_unclamped}});
    }
    j["conf_intervals"] = cis;
    j["ci_level"] = fit.ci_level;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["multistart_best_of"] = fit.multistart_best_of;
    j["log_grad_norm"] = fit.log_grad_norm;
    j["method"] = fit.method;
    return j;
}

ordered_json gof_json(const GofReport& g) {
    return {{"k", g.k},       {"neg_loglik", g.neg_loglik}, {"aic", g.aic},           {"aicc", g.aicc},
            {"bic", g.bic},   {"ks_stat", g.ks_stat},       {"ks_pvalue", g.ks_pvalue}};
}

ordered_json reference_json(const ReferenceRow& ref) {
    return {{"neg_loglik", ref.neg_loglik}, {"aic", ref.aic},           {"aicc", ref.aicc},
            {"bic", ref.bic},               {"ks_stat", ref.ks},        {"ks_pvalue", ref.ks_pvalue}};
}

bool is_aarset(const Dataset& data) { return data.label() == "aarset"; }

void check_format(const std::string& format) {
    if (format != "json" && format != "csv" && format != "table") {
        throw DomainError("--format must be json, csv or table");
    }
}

// ---- subcommands -------------------------------------------------------

struct FitArgs {
    Common common;
    std::string family = "ogeg";
    std::optional<std::string> start;
    std::optional<double> alpha0, lambda0, c0, beta0;
};

std::optional<std::vector<double>> fit_start(const FitArgs& a, Family family, const Dataset& data) {
    if (a.start) {
        return parse_double_list(*a.start, "--start");
    }
    if (!a.alpha0 && !a.lambda0 && !a.c0 && !a.beta0) return std::nullopt;
    std::vector<double> start;
    for (std::string_view name : param_names(family)) {
        if (name == "alpha") start.push_back(a.alpha0.value_or(0.1));
        if (name == "lambda") start.push_back(a.lambda0.value_or(0.01 / data.max()));
        if (name == "c") start.push_back(a.c0.value_or(0.1 / data.max()));
        if (name == "beta") start.push_back(a.beta0.value_or(1.0));
    }
    return start;
}

void print_fit_table(std::ostream& out, const FitResult& fit) {
    const auto names = param_names(fit.model.family());
    out << family_label(fit.model.family()) << " fit: -L = " << sig6(-fit.loglik)
        << "  (converged " << (fit.converged ? "yes" : "no") << ", best of " << fit.multistart_best_of
        << " starts, " << fit.method << ")\n";
    out << std::left << std::setw(10) << "param" << std::setw(14) << "estimate" << std::setw(14) << "std.err"
        << std::setw(14) << "ci.lo" << std::setw(14) << "ci.hi" << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double var = fit.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        out << std::setw(10) << names[i] << std::setw(14) << sig6(fit.model.params()[i]) << std::setw(14)
            << (var >= 0.0 ? sig6(std::sqrt(var)) : std::string("nan"));
        if (i < fit.conf_intervals.size()) {
            out << std::setw(14) << sig6(fit.conf_intervals[i].lo) << std::setw(14) << sig6(fit.conf_intervals[i].hi);
        }
        out << '\n';
    }
    out << std::right;
}

int cmd_fit(const FitArgs& a, std::ostream& out, bool with_gof) {
    check_format(a.common.format);
    const Family family = parse_family(a.family);
    const Dataset data = load_dataset(a.common.data);
    FitConfig cfg = make_fit_config(a.common);
    cfg.start = fit_start(a, family, data);
    const FitResult fit = fit_mle(family, data, cfg);
    std::optional<GofReport> gof;
    if (with_gof) gof = gof_report(fit, data);
    const std::string command = with_gof ? "gof" : "fit";

    if (a.common.format == "json") {
        ordered_json result = fit_json(fit);
        if (gof) result["gof"] = gof_json(*gof);
        out << envelope(command, provenance(command, &data, std::nullopt, &cfg), result).dump(2) << '\n';
    } else if (a.common.format == "csv") {
        const auto names = param_names(family);
        if (gof) {
            out << "family,k,neg_loglik,aic,aicc,bic,ks_stat,ks_pvalue\n";
            out << std::setprecision(17) << family_id(family) << ',' << gof->k << ',' << gof->neg_loglik << ','
                << gof->aic << ',' << gof->aicc << ',' << gof->bic << ',' << gof->ks_stat << ',' << gof->ks_pvalue
                << '\n';
        } else {
            out << "parameter,estimate,ci_lo,ci_hi,ci_lo_unclamped\n";
            for (std::size_t i = 0; i < names.size(); ++i) {
                out << std::setprecision(17) << names[i] << ',' << fit.model.params()[i];
                if (i < fit.conf_intervals.size()) {
                    out << ',' << fit.conf_intervals[i].lo << ',' << fit.conf_intervals[i].hi << ','
                        << fit.conf_intervals[i].lo_unclamped;
                } else {
                    out << ",,,";
                }
                out << '\n';
            }
        }
    } else {
        print_fit_table(out, fit);
        if (gof) {
            out << "AIC " << sig6(gof->aic) << "  AICC " << sig6(gof->aicc) << "  BIC " << sig6(gof->bic)
                << "  K-S " << sig6(gof->ks_stat) << "  p " << sig6(gof->ks_pvalue) << '\n';
        }
    }
    return kExitOk;
}

struct CompareArgs {
    Common common;
    std::string families = "e,ge,g,gg,bg,ogeg";
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    check_format(a.common.format);
    std::vector<Family> families;
    std::stringstream ss(a.families);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto id = trim(item);
        if (!id.empty()) families.push_back(parse_family(id));
    }
    if (families.empty()) throw DomainError("--families: no family given");
    const Dataset data = load_dataset(a.common.data);
    const FitConfig cfg = make_fit_config(a.common);
    const auto rows = compare_models(data, families, cfg);
    const std::vector<std::string> notes = is_aarset(data) ? reference_consistency_notes() : std::vector<std::string>{};

    if (a.common.format == "json") {
        ordered_json jrows = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json jr;
            jr["family"] = family_id(r.family);
            jr["label"] = family_label(r.family);
            jr["fit"] = r.fit ? fit_json(*r.fit) : ordered_json(nullptr);
            jr["gof"] = r.gof ? gof_json(*r.gof) : ordered_json(nullptr);
            jr["error"] = r.error.empty() ? ordered_json(nullptr) : ordered_json(r.error);
            const auto ref = is_aarset(data) ? aarset_reference(r.family) : std::nullopt;
            jr["reference"] = ref ? reference_json(*ref) : ordered_json(nullptr);
            jrows.push_back(jr);
        }
        out << envelope("compare", provenance("compare", &data, std::nullopt, &cfg), {{"rows", jrows}}, notes).dump(2)
            << '\n';
    } else if (a.common.format == "csv") {
        out << "family,k,neg_loglik,aic,aicc,bic,ks_stat,ks_pvalue,error\n" << std::setprecision(17);
        for (const auto& r : rows) {
            out << family_id(r.family);
            if (r.gof) {
                out << ',' << r.gof->k << ',' << r.gof->neg_loglik << ',' << r.gof->aic << ',' << r.gof->aicc << ','
                    << r.gof->bic << ',' << r.gof->ks_stat << ',' << r.gof->ks_pvalue << ",\n";
            } else {
                std::string msg = r.error;
                std::replace(msg.begin(), msg.end(), '"', '\'');
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                out << ",,,,,,,,\"" << msg << "\"\n";
            }
        }
    } else {
        out << std::left << std::setw(8) << "Model" << std::right << std::setw(3) << "k" << std::setw(12) << "-L"
            << std::setw(12) << "AIC" << std::setw(12) << "AICC" << std::setw(12) << "BIC" << std::setw(12) << "K-S"
            << std::setw(12) << "p-value" << "  parameters\n";
        for (const auto& r : rows) {
            out << std::left << std::setw(8) << family_label(r.family) << std::right;
            if (!r.gof) {
                out << "  fit failed: " << r.error << '\n';
                continue;
            }
            out << std::setw(3) << r.gof->k << std::setw(12) << sig6(r.gof->neg_loglik) << std::setw(12)
                << sig6(r.gof->aic) << std::setw(12) << sig6(r.gof->aicc) << std::setw(12) << sig6(r.gof->bic)
                << std::setw(12) << sig6(r.gof->ks_stat) << std::setw(12) << sig6(r.gof->ks_pvalue) << "  ";
            const auto names = param_names(r.family);
            for (std::size_t i = 0; i < names.size(); ++i) {
                out << (i ? ", " : "") << names[i] << '=' << sig6(r.fit->model.params()[i]);
            }
            out << '\n';
        }
        for (const auto& n : notes) out << "note: " << n << '\n';
    }
    return kExitOk;
}

struct SampleArgs {
    std::string family = "ogeg";
    std::string params;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    std::string format = "csv";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
    check_format(a.format);
    const ModelSpec model(parse_family(a.family), parse_double_list(a.params, "--params"));
    if (a.n == 0) throw DomainError("--n must be positive");
    RandomSource rng(a.seed);
    const Dataset data = sample(model, a.n, rng);
    if (a.format == "json") {
        ordered_json result = {{"family", family_id(model.family())},
                               {"params", params_json(model)},
                               {"values", std::vector<double>(data.values().begin(), data.values().end())}};
        out << envelope("sample", provenance("sample", &data, a.seed, nullptr), result).dump(2) << '\n';
    } else {
        // Shortest representation that reads back to the same double.
        out << std::setprecision(17);
        for (double v : data.values()) out << v << '\n';
    }
    return kExitOk;
}

struct MomentArgs {
    std::string family = "ogeg";
    std::string params;
    std::string orders = "1..4";
    std::string method = "quadrature";
    std::size_t samples = 100000;
    std::uint64_t seed = 20160101;
    std::string caps = "10,10,10,10,10";
    std::string format = "table";
};

int cmd_moments(const MomentArgs& a, std::ostream& out) {
    check_format(a.format);
    if (parse_family(a.family) != Family::OGEG) throw DomainError("moments: only the ogeg family is supported");
    const OgegParams params = OgegParams::from(parse_double_list(a.params, "--params"));
    params.validate();
    MomentRequest req{params};
    if (a.method == "quadrature") {
        req.method = MomentMethod::Quadrature;
    } else if (a.method == "mc") {
        req.method = MomentMethod::MonteCarlo;
    } else if (a.method == "series") {
        req.method = MomentMethod::SeriesPartial;
    } else {
        throw DomainError("--method must be quadrature, mc or series");
    }
    req.mc_samples = a.samples;
    req.seed = a.seed;
    const auto caps = parse_double_list(a.caps, "--caps");
    if (caps.size() != 5) throw DomainError("--caps needs five values i,j,k,l,m");
    req.caps = {static_cast<int>(caps[0]), static_cast<int>(caps[1]), static_cast<int>(caps[2]),
                static_cast<int>(caps[3]), static_cast<int>(caps[4])};

    ordered_json rows = ordered_json::array();
    std::vector<std::pair<int, MomentResult>> results;
    for (int r : parse_orders(a.orders)) {
        req.r = r;
        results.emplace_back(r, moment(req));
    }
    if (a.format == "json") {
        for (const auto& [r, m] : results) {
            rows.push_back({{"r", r}, {"value", num(m.value)}, {"std_error", num(m.std_error)},
                            {"last_layer", num(m.last_layer)}});
        }
        std::optional<std::uint64_t> seed;
        if (req.method == MomentMethod::MonteCarlo) seed = a.seed;
        out << envelope("moments", provenance("moments", nullptr, seed, nullptr),
                        {{"family", "ogeg"},
                         {"params", params_json(ModelSpec::ogeg(params))},
                         {"method", a.method},
                         {"moments", rows}})
                   .dump(2)
            << '\n';
    } else if (a.format == "csv") {
        out << "r,value,std_error\n" << std::setprecision(17);
        for (const auto& [r, m] : results) out << r << ',' << m.value << ',' << m.std_error << '\n';
    } else {
        for (const auto& [r, m] : results) {
            out << "E[X^" << r << "] = " << sig6(m.value);
            if (req.method == MomentMethod::MonteCarlo) out << "  (s.e. " << sig6(m.std_error) << ")";
            if (req.method == MomentMethod::SeriesPartial) out << "  (last layer " << sig6(m.last_layer) << ")";
            out << '\n';
        }
    }
    return kExitOk;
}

struct CurveArgs {
    Common common;
    std::string family = "ogeg";
    std::string what = "survival";
    std::optional<std::string> params;
    int points = 200;
};

int cmd_curves(const CurveArgs& a, std::ostream& out) {
    const Family family = parse_family(a.family);
    const Dataset data = load_dataset(a.common.data);
    if (a.points < 2) throw DomainError("--points must be at least 2");
    const FitConfig cfg = make_fit_config(a.common);
    std::optional<FitResult> fit;
    std::optional<ModelSpec> model;
    if (a.params) {
        model.emplace(family, parse_double_list(*a.params, "--params"));
    } else {
        fit = fit_mle(family, data, cfg);
        model.emplace(fit->model);
    }
    const std::string fitted = "fitted:" + std::string(family_id(family));
    out << "x,value,series\n" << std::setprecision(17);
    const double top = data.max() * 1.05;
    auto grid_x = [&](int i) { return top * (i + 1) / a.points; };

    if (a.what == "survival") {
        const KmCurve km = kaplan_meier(data);
        out << 0.0 << ',' << 1.0 << ",kaplan_meier\n";
        for (std::size_t i = 0; i < km.times.size(); ++i) {
            out << km.times[i] << ',' << km.survival[i] << ",kaplan_meier\n";
        }
        for (int i = 0; i < a.points; ++i) out << grid_x(i) << ',' << survival(*model, grid_x(i)) << ',' << fitted << '\n';
    } else if (a.what == "hazard") {
        for (int i = 0; i < a.points; ++i) {
            const HazardValue h = hazard(*model, grid_x(i));
            out << grid_x(i) << ',' << h.value << ',' << fitted << '\n';
        }
    } else if (a.what == "density") {
        for (int i = 0; i < a.points; ++i) out << grid_x(i) << ',' << pdf(*model, grid_x(i)) << ',' << fitted << '\n';
    } else if (a.what == "profile") {
        if (!fit) fit = fit_mle(family, data, cfg);
        const auto names = param_names(family);
        // Log-spaced grid over [mle/2, 2 mle] with the MLE as the middle point.
        const int half = std::max(1, a.points / 2);
        for (std::size_t p = 0; p < names.size(); ++p) {
            const double center = fit->model.params()[p];
            std::vector<double> grid;
            for (int i = -half; i <= half; ++i) grid.push_back(center * std::exp(std::log(2.0) * i / half));
            const ProfileCurve curve = profile_curve(family, data, std::string(names[p]), grid, *fit, cfg);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                if (!std::isfinite(curve.profile_loglik[g])) continue;
                out << grid[g] << ',' << curve.profile_loglik[g] << ",profile:" << names[p] << '\n';
            }
        }
    } else {
        throw DomainError("--what must be survival, hazard, density or profile");
    }
    return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool with_fit_options) {
    sub->add_option("--data", c.data, "dataset file or builtin name")->capture_default_str();
    sub->add_option("--format", c.format, "json, csv or table")->capture_default_str();
    if (!with_fit_options) return;
    sub->add_option("--ci", c.ci, "confidence level of the Wald intervals")->capture_default_str();
    sub->add_option("--space", c.space, "optimizer coordinates: log or natural")->capture_default_str();
    sub->add_flag("--no-profile", c.no_profile, "optimize beta directly instead of profiling it (OGE-G)");
    sub->add_option("--grad-tol", c.grad_tol, "gradient convergence tolerance")->capture_default_str();
    sub->add_option("--max-iter", c.max_iter, "optimizer iteration cap")->capture_default_str();
}

}  // namespace

Dataset load_dataset(const std::string& source) {
    std::string lower = source;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "aarset") return aarset_dataset();

    std::ifstream in(source);
    if (!in) throw DataError("cannot open dataset '" + source + "'");
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        const std::string text = trim(line);
        if (text.empty()) continue;
        std::string field = text;
        const auto comma = text.find(',');
        if (comma != std::string::npos) {
            const std::string rest = trim(std::string_view(text).substr(comma + 1));
            if (!rest.empty()) {
                throw DataError(source + ": line " + std::to_string(line_no) + ", column " +
                                std::to_string(comma + 2) + ": expected a single column");
            }
            field = trim(std::string_view(text).substr(0, comma));
        }
        double v = 0.0;
        if (!parse_double(field, v)) {
            const bool looks_like_header =
                !seen_content && std::any_of(field.begin(), field.end(), [](unsigned char ch) { return std::isalpha(ch); });
            seen_content = true;
            if (looks_like_header) continue;
            throw DataError(source + ": line " + std::to_string(line_no) + ", column 1: '" + field +
                            "' is not a number");
        }
        seen_content = true;
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DataError(source + ": line " + std::to_string(line_no) + ": lifetime " + field +
                            " is not a finite positive number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw DataError(source + ": no observations");
    return Dataset(std::move(values), source);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"OGE-G lifetime distribution: fitting, comparison and sampling"};
    app.name("ogeg");
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "maximum-likelihood fit with Wald intervals");
    add_common(fit, fit_args.common, true);
    fit->add_option("--family", fit_args.family, "e, ge, g, gg, bg or ogeg")->capture_default_str();
    fit->add_option("--start", fit_args.start, "comma-separated start vector (family order)");
    fit->add_option("--alpha0", fit_args.alpha0, "start value for alpha");
    fit->add_option("--lambda0", fit_args.lambda0, "start value for lambda");
    fit->add_option("--c0", fit_args.c0, "start value for c");
    fit->add_option("--beta0", fit_args.beta0, "start value for beta");

    FitArgs gof_args;
    auto* gof = app.add_subcommand("gof", "fit one family and report AIC/AICC/BIC and K-S");
    add_common(gof, gof_args.common, true);
    gof->add_option("--family", gof_args.family, "e, ge, g, gg, bg or ogeg")->capture_default_str();

    CompareArgs cmp_args;
    auto* compare = app.add_subcommand("compare", "fit several families and rank them by AIC");
    add_common(compare, cmp_args.common, true);
    compare->add_option("--families", cmp_args.families, "comma-separated family list")->capture_default_str();

    SampleArgs smp_args;
    auto* samp = app.add_subcommand("sample", "inverse-transform draws");
    samp->add_option("--family", smp_args.family)->capture_default_str();
    samp->add_option("--params", smp_args.params, "comma-separated parameters (family order)")->required();
    samp->add_option("--n", smp_args.n, "number of draws")->capture_default_str();
    samp->add_option("--seed", smp_args.seed)->capture_default_str();
    samp->add_option("--format", smp_args.format, "json, csv or table (csv/table: one value per line)")
        ->capture_default_str();

    MomentArgs mom_args;
    auto* mom = app.add_subcommand("moments", "raw moments E[X^r] of the OGE-G law");
    mom->add_option("--family", mom_args.family)->capture_default_str();
    mom->add_option("--params", mom_args.params, "alpha,lambda,c,beta")->required();
    mom->add_option("--r", mom_args.orders, "order(s): N, N..M or a comma list")->capture_default_str();
    mom->add_option("--method", mom_args.method, "quadrature, mc or series")->capture_default_str();
    mom->add_option("--samples", mom_args.samples, "Monte-Carlo draws")->capture_default_str();
    mom->add_option("--seed", mom_args.seed, "Monte-Carlo seed")->capture_default_str();
    mom->add_option("--caps", mom_args.caps, "series truncation i,j,k,l,m")->capture_default_str();
    mom->add_option("--format", mom_args.format)->capture_default_str();

    CurveArgs crv_args;
    auto* curves = app.add_subcommand("curves", "plot data as CSV (x,value,series)");
    add_common(curves, crv_args.common, true);
    curves->add_option("--family", crv_args.family)->capture_default_str();
    curves->add_option("--what", crv_args.what, "survival, hazard, density or profile")->capture_default_str();
    curves->add_option("--params", crv_args.params, "use these parameters instead of fitting");
    curves->add_option("--points", crv_args.points, "grid size")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(fit)) return cmd_fit(fit_args, out, false);
        if (app.got_subcommand(gof)) return cmd_fit(gof_args, out, true);
        if (app.got_subcommand(compare)) return cmd_compare(cmp_args, out);
        if (app.got_subcommand(samp)) return cmd_sample(smp_args, out);
        if (app.got_subcommand(mom)) return cmd_moments(mom_args, out);
        if (app.got_subcommand(curves)) return cmd_curves(crv_args, out);
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitConvergence;
    }
    return kExitUsage;
}

}  // namespace ogeg::cli
