#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

// Independent quadrature oracle for the regularized lower incomplete gamma
// function. Integrates the gamma density directly with adaptive Simpson
// steps instead of reusing the shipped series / continued fraction code, so
// the two can be checked against each other.
namespace oracle {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol, int depth) {
    if (depth <= 0) throw std::runtime_error("quadrature: recursion depth exhausted");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    double fb = f(b);
    double fm = f(0.5 * (a + b));
    double whole = simpson(a, b, fa, fm, fb);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 64);
}

// P(a, x) as the integral of t^{a-1} e^{-t} / Gamma(a) over [0, x]. For
// a < 1 the integrand blows up at 0, so substitute u = t^a, which maps the
// density to exp(-u^{1/a}) / (a Gamma(a)) on [0, x^a], bounded everywhere.
inline double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("quadrature: bad domain");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (a >= 1.0) {
        auto f = [a, lg](double t) {
            if (t == 0.0) return a == 1.0 ? std::exp(-lg) : 0.0;
            return std::exp((a - 1.0) * std::log(t) - t - lg);
        };
        return integrate(f, 0.0, x, 1e-13);
    }
    auto f = [a, lg](double u) {
        if (u == 0.0) return std::exp(-lg) / a;
        return std::exp(-std::pow(u, 1.0 / a) - lg) / a;
    };
    return integrate(f, 0.0, std::pow(x, a), 1e-13);
}

} // namespace oracle
