#include "ogeg/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace ogeg {

void ToleranceConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
        throw DomainError("tolerance config requires abs_tol > 0, rel_tol > 0, max_iter >= 1");
    }
}

double gompertz_cum_hazard(double x, double lambda, double c) {
    return lambda / c * std::expm1(c * x);
}

double log1mexp(double z) {
    // Maechler's switch point ln 2.
    if (z <= 0.6931471805599453) {
        return std::log(-std::expm1(-z));
    }
    return std::log1p(-std::exp(-z));
}

double log_expm1(double z) {
    if (z > 30.0) {
        return z + std::log1p(-std::exp(-z));
    }
    return std::log(std::expm1(z));
}

double log1m_pow1mexp(double z, double beta) {
    // 1 - (1-e^{-z})^beta = beta e^{-z} (1 + O(e^{-z})) once e^{-z} is negligible.
    if (z > 700.0) {
        return std::log(beta) - z;
    }
    return std::log(-std::expm1(beta * log1mexp(z)));
}

double find_root(const ScalarFn& f, Bracket bracket, const ToleranceConfig& tol) {
    tol.validate();
    double a = bracket.lo;
    double b = bracket.hi;
    if (!(a < b)) {
        throw BracketError("find_root: bracket requires lo < hi");
    }
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::isnan(fa) || std::isnan(fb) || std::signbit(fa) == std::signbit(fb)) {
        throw BracketError("find_root: no sign change in [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
    }

    int side = 0;
    double width_before = b - a;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        const double mid = 0.5 * (a + b);
        if (b - a <= tol.abs_tol + tol.rel_tol * std::abs(mid)) {
            return std::abs(fa) < std::abs(fb) ? a : b;
        }

        double x = (a * fb - b * fa) / (fb - fa);
        // Every second step, force a bisection if the bracket has not halved.
        if (iter % 2 == 1) {
            if (b - a > 0.5 * width_before) x = mid;
            width_before = b - a;
        }
        if (!(x > a && x < b)) x = mid;

        const double fx = f(x);
        if (fx == 0.0) return x;
        if (std::isnan(fx)) {
            throw NumericalError("find_root: function is NaN at x = " + std::to_string(x));
        }
        if (std::signbit(fx) == std::signbit(fa)) {
            a = x;
            fa = fx;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = x;
            fb = fx;
            if (side == +1) fa *= 0.5;
            side = +1;
        }
    }
    const double best = std::abs(fa) < std::abs(fb) ? a : b;
    throw ConvergenceError("find_root: max_iter exceeded", best);
}

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const ScalarFn& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    if (!std::isfinite(value)) {
        throw NumericalError("integrate: integrand is not finite on [" + std::to_string(a) +
                             ", " + std::to_string(b) + "]");
    }
    return {a, b, value, error};
}

Quadrature adaptive(const ScalarFn& f, double lo, double hi, const ToleranceConfig& tol) {
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, lo, hi);
    double value = first.value;
    double error = first.error;
    heap.push(first);
    int subdivisions = 1;
    while (error > std::max(tol.abs_tol, tol.rel_tol * std::abs(value))) {
        if (subdivisions >= tol.max_iter) {
            throw IntegrationError("integrate: subdivision limit reached", value, error);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        // Recompute the error total from scratch now and then; the running
        // sum drifts when large and small errors are mixed.
        if (subdivisions % 32 == 0) {
            auto copy = heap;
            double total = 0.0;
            double sum = 0.0;
            while (!copy.empty()) {
                total += copy.top().error;
                sum += copy.top().value;
                copy.pop();
            }
            error = total;
            value = sum;
        }
    }
    return {value, error, subdivisions};
}

}  // namespace

Quadrature integrate_with_error(const ScalarFn& f, double lo, double hi,
                                const ToleranceConfig& tol) {
    tol.validate();
    if (std::isnan(lo) || std::isnan(hi) || !std::isfinite(lo)) {
        throw DomainError("integrate: lower limit must be finite");
    }
    if (hi == lo) return {0.0, 0.0, 0};
    if (hi < lo) {
        Quadrature q = integrate_with_error(f, hi, lo, tol);
        q.value = -q.value;
        return q;
    }
    if (std::isinf(hi)) {
        const double scale = std::max(1.0, std::abs(lo));
        auto mapped = [&](double t) {
            const double one_minus = 1.0 - t;
            const double x = lo + scale * t / one_minus;
            const double fx = f(x);
            if (fx == 0.0) return 0.0;
            return fx * scale / (one_minus * one_minus);
        };
        return adaptive(mapped, 0.0, 1.0, tol);
    }
    return adaptive(f, lo, hi, tol);
}

double integrate(const ScalarFn& f, double lo, double hi, const ToleranceConfig& tol) {
    return integrate_with_error(f, lo, hi, tol).value;
}

namespace {

double probe(const VectorFn& f, std::vector<double>& x, std::size_t coord) {
    const double value = f(x);
    if (!std::isfinite(value)) {
        throw NumericalError("finite difference: function not finite when perturbing coordinate " +
                             std::to_string(coord));
    }
    return value;
}

double step_for(double x, double step) {
    return x == 0.0 ? step : step * std::abs(x);
}

}  // namespace

std::vector<double> finite_diff_gradient(const VectorFn& f, std::span<const double> at,
                                         double step) {
    std::vector<double> x(at.begin(), at.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = step_for(at[i], step);
        x[i] = at[i] + h;
        const double up = probe(f, x, i);
        x[i] = at[i] - h;
        const double down = probe(f, x, i);
        x[i] = at[i];
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

std::vector<double> finite_diff_hessian(const VectorFn& f, std::span<const double> at,
                                        double step) {
    const std::size_t dim = at.size();
    std::vector<double> x(at.begin(), at.end());
    std::vector<double> hess(dim * dim);
    const double f0 = probe(f, x, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        const double hi = step_for(at[i], step);
        x[i] = at[i] + hi;
        const double up = probe(f, x, i);
        x[i] = at[i] - hi;
        const double down = probe(f, x, i);
        x[i] = at[i];
        hess[i * dim + i] = (up - 2.0 * f0 + down) / (hi * hi);
        for (std::size_t j = 0; j < i; ++j) {
            const double hj = step_for(at[j], step);
            auto corner = [&](double si, double sj) {
                x[i] = at[i] + si * hi;
                x[j] = at[j] + sj * hj;
                const double v = probe(f, x, i);
                x[i] = at[i];
                x[j] = at[j];
                return v;
            };
            const double value = (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) /
                                 (4.0 * hi * hj);
            hess[i * dim + j] = value;
            hess[j * dim + i] = value;
        }
    }
    return hess;
}

}  // namespace ogeg
