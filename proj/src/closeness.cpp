#include "d2d/closeness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2d {

namespace {

constexpr int kMaxIterations = 10'000'000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

// gamma(a, x) / Gamma(a) by its power series, valid and fast for x < a + 1.
double lower_gamma_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("reg_lower_gamma: series did not converge");
}

// Gamma(a, x) / Gamma(a) (the upper tail) by modified Lentz continued
// fraction, valid for x >= a + 1.
double upper_gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("reg_lower_gamma: continued fraction did not converge");
}

} // namespace

double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("reg_lower_gamma: shape must be positive and finite");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("reg_lower_gamma: x must be nonnegative and finite");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return lower_gamma_series(a, x);
    return 1.0 - upper_gamma_cf(a, x);
}

ContactLaw fit_gamma(const ContactStats& stats) {
    if (!(stats.mean_duration > 0.0))
        throw std::invalid_argument("fit_gamma: mean duration must be positive");
    if (stats.irregularity < 0.0)
        throw std::invalid_argument("fit_gamma: irregularity must be nonnegative");

    if (stats.irregularity == 0.0) return PointMass{stats.mean_duration};

    double m = stats.mean_duration;
    double i = stats.irregularity;
    return GammaParams{m * m / i, i / m};
}

double closeness(const ContactLaw& law, double x_min) {
    if (!(x_min >= 0.0))
        throw std::invalid_argument("closeness: x_min must be nonnegative");

    if (const auto* point = std::get_if<PointMass>(&law))
        return point->value >= x_min ? 1.0 : 0.0;

    const auto& g = std::get<GammaParams>(law);
    return 1.0 - reg_lower_gamma(g.shape, x_min / g.scale);
}

double min_contact_time(double content_bits, double link_rate_bps) {
    if (!(content_bits > 0.0))
        throw std::invalid_argument("min_contact_time: content_bits must be positive");
    if (!(link_rate_bps > 0.0))
        throw std::invalid_argument("min_contact_time: link_rate_bps must be positive");
    return content_bits / link_rate_bps;
}

} // namespace d2d
