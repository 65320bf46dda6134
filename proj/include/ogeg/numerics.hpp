#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogeg {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the support or parameter space.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Bad or unreadable input data (file formats, nonpositive lifetimes, ...).
class DataError : public Error {
  public:
    using Error::Error;
};

/// A computation produced NaN/inf where a finite value was required.
class NumericalError : public Error {
  public:
    using Error::Error;
};

class BracketError : public Error {
  public:
    using Error::Error;
};

/// An iterative method ran out of iterations. Carries the best iterate found.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, double best) : Error(what), best_(best) {}
    double best_iterate() const { return best_; }

  private:
    double best_;
};

/// Adaptive quadrature exhausted its subdivision budget.
class IntegrationError : public Error {
  public:
    IntegrationError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

struct ToleranceConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_iter = 200;

    /// Throws DomainError unless abs_tol > 0, rel_tol > 0 and max_iter >= 1.
    void validate() const;
};

struct Bracket {
    double lo;
    double hi;
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(std::span<const double>)>;

// ---------------------------------------------------------------------------
// Elementary transforms
// ---------------------------------------------------------------------------

/// Gompertz cumulative hazard (lambda/c)(e^{cx} - 1), via expm1.
/// Overflow of e^{cx} propagates as +inf.
double gompertz_cum_hazard(double x, double lambda, double c);

/// log(1 - e^{-z}) for z > 0, accurate at both ends.
double log1mexp(double z);

/// log(e^z - 1) for z > 0 without overflowing e^z.
double log_expm1(double z);

/// log(1 - (1 - e^{-z})^beta) for z > 0: the log-survival of an exponentiated
/// law whose inner cdf is 1 - e^{-z}.
double log1m_pow1mexp(double z, double beta);

// ---------------------------------------------------------------------------
// Root finding, quadrature, finite differences
// ---------------------------------------------------------------------------

/// Root of f inside a sign-changing bracket. Illinois-modified regula falsi
/// with a forced bisection whenever two steps fail to halve the bracket.
/// Terminates when the bracket width is below abs_tol + rel_tol*|x|.
double find_root(const ScalarFn& f, Bracket bracket, const ToleranceConfig& tol = {});

struct Quadrature {
    double value;
    double error;
    int subdivisions;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature over [lo, hi]. `hi` may be
/// +infinity; the range is then mapped onto [0,1) by x = lo + L t/(1-t)
/// with L = max(1, |lo|). The subdivision budget is tol.max_iter.
Quadrature integrate_with_error(const ScalarFn& f, double lo, double hi,
                                const ToleranceConfig& tol = {});

double integrate(const ScalarFn& f, double lo, double hi, const ToleranceConfig& tol = {});

/// Central-difference gradient with per-coordinate step h_i = step * |x_i|
/// (plain `step` when x_i == 0). Throws NumericalError naming the coordinate
/// if f is non-finite at a probe point.
std::vector<double> finite_diff_gradient(const VectorFn& f, std::span<const double> at,
                                         double step = 1e-5);

/// Central-difference Hessian, same step convention, symmetrized.
/// Returned row-major, size dim*dim.
std::vector<double> finite_diff_hessian(const VectorFn& f, std::span<const double> at,
                                        double step = 1e-4);

}  // namespace ogeg
