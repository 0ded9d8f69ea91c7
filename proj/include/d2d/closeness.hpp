#pragma once

#include <variant>

#include "d2d/trace.hpp"

namespace d2d {

// Gamma contact-duration law fitted by moment matching:
//   shape = mean^2 / variance, scale = variance / mean.
struct GammaParams {
    double shape;
    double scale;
};

// Marker for a pair whose observed durations have zero variance. The fitted
// law collapses to a point mass at the observed mean.
struct PointMass {
    double value;
};

using ContactLaw = std::variant<GammaParams, PointMass>;

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
// Absolute error is below 1e-10 over a in [1e-3, 1e8], x in [0, 1e6].
// Requires a > 0 and x >= 0.
double reg_lower_gamma(double a, double x);

// Moment-matching fit. Requires mean_duration > 0 and irregularity >= 0;
// zero irregularity yields the PointMass marker.
ContactLaw fit_gamma(const ContactStats& stats);

// Probability that a contact lasts at least x_min under the fitted law:
//   w = 1 - P(shape, x_min / scale)
// for the Gamma case, and a 0/1 step at the point for the degenerate case.
// Result is in [0, 1]; larger means the pair is closer. x_min must be >= 0.
double closeness(const ContactLaw& law, double x_min);

// Transfer time needed for a content of content_bits over a link of
// link_rate_bps. Both arguments must be positive.
double min_contact_time(double content_bits, double link_rate_bps);

} // namespace d2d
