#pragma once

#include "ogeg/dataset.hpp"
#include "ogeg/numerics.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ogeg {

/// Parameter vector (alpha, lambda, c, beta) of the odd generalized
/// exponential-Gompertz law. alpha, lambda, c are scale parameters and beta
/// is the shape parameter.
struct OgegParams {
    double alpha;
    double lambda;
    double c;
    double beta;

    /// Throws DomainError unless all four are finite and strictly positive.
    void validate() const;
    std::array<double, 4> as_array() const { return {alpha, lambda, c, beta}; }
    static OgegParams from(std::span<const double> v);
};

/// The six lifetime families handled by the library.
///   E    exponential                 (alpha)
///   GE   generalized exponential     (alpha, beta)
///   G    Gompertz                    (lambda, c)
///   GG   generalized Gompertz        (lambda, c, beta)
///   BG   beta-Gompertz               (alpha, beta, lambda, c)
///   OGEG odd generalized exp.-Gompertz (alpha, lambda, c, beta)
enum class Family { E, GE, G, GG, BG, OGEG };

inline constexpr std::array<Family, 6> kAllFamilies = {Family::E,  Family::GE, Family::G,
                                                       Family::GG, Family::BG, Family::OGEG};

/// Lower-case identifier used on the command line ("e", "ge", ..., "ogeg").
std::string_view family_id(Family family);
/// Display label ("E", "GE", ..., "OGE-G").
std::string_view family_label(Family family);
/// Parses a family identifier, case-insensitive; accepts "oge-g" too.
Family parse_family(std::string_view text);
std::size_t param_count(Family family);
std::span<const std::string_view> param_names(Family family);

/// A family together with a validated parameter vector.
class ModelSpec {
  public:
    /// Throws DomainError when the parameter count does not match the family
    /// or a parameter is not finite and strictly positive.
    ModelSpec(Family family, std::vector<double> params);
    static ModelSpec ogeg(const OgegParams& p);

    Family family() const { return family_; }
    std::span<const double> params() const { return params_; }
    double param(std::string_view name) const;
    /// Throws DomainError for non-OGEG families.
    OgegParams ogeg_params() const;

  private:
    Family family_;
    std::vector<double> params_;
};

/// Seeded uniform stream (mt19937_64). Single owner; not thread-safe.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}
    std::uint64_t seed() const { return seed_; }
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Evaluation. x <= 0 lies outside the support: cdf = 0, pdf = 0, survival = 1.

double cdf(const ModelSpec& model, double x);
double pdf(const ModelSpec& model, double x);
/// Throws DomainError for x <= 0.
double log_pdf(const ModelSpec& model, double x);
double survival(const ModelSpec& model, double x);
double log_survival(const ModelSpec& model, double x);

struct HazardValue {
    double value;
    /// Set when the survival function underflowed and value is +inf.
    bool saturated = false;
};

/// pdf/survival computed as exp(log_pdf - log_survival). Throws for x <= 0.
HazardValue hazard(const ModelSpec& model, double x);

/// Inverse cdf for 0 < q < 1. Closed form except for BG (numeric inversion).
double quantile(const ModelSpec& model, double q);

double median(const OgegParams& params);

enum class ModeKind {
    Interior,  // stationary point of the density
    Boundary,  // density decreasing from x = 0
    Divergent  // beta < 1: density unbounded at 0+
};

struct ModeResult {
    double x;
    ModeKind kind;
};

/// d/dx log f(x) for the OGE-G density, x > 0. Its sign is the sign of the
/// mode equation's left-hand side.
double log_density_slope(const OgegParams& params, double x);

/// Throws ConvergenceError when the density rises at 0+ but no sign change
/// of the slope is found by x = 50/c.
ModeResult mode(const OgegParams& params);

/// n inverse-transform draws. The dataset label records family and seed.
Dataset sample(const ModelSpec& model, std::size_t n, RandomSource& rng);

/// E[g(X)] = integral of g(Q(u)) over u in (0, 1): the probability transform
/// turns the semi-infinite integral into a finite one.
double expect(const ModelSpec& model, const ScalarFn& g, const ToleranceConfig& tol = {});

}  // namespace ogeg
