#pragma once

#include "biomon/types.hpp"

namespace biomon::recovery {

// Post-exercise heart-rate decay: value(t) = a + (d - a) * exp(-theta * t).
// a is the resting rate, d the rate right after exercise, theta the recovery
// rate in 1/s.
struct RecoveryModel {
    double a = 0.0;
    double d = 0.0;
    double theta = 0.0;

    // Throws InvalidParams when theta <= 0, d <= a, a outside the 30-240 bpm
    // plausibility band, or any field is non-finite.
    void validate() const;

    friend bool operator==(const RecoveryModel&, const RecoveryModel&) = default;
};

struct FitConfig {
    double tol = 1e-8;  // relative change in theta that counts as converged
    int max_iter = 200;
};

struct FitResult {
    RecoveryModel model;
    double rss = 0.0;           // residual sum of squares at `model`, bpm^2
    double residual_std = 0.0;  // sqrt(rss / (n - 3)) for n > 3, else 0
    int iterations = 0;
    bool converged = false;  // false = best-so-far after max_iter (kept, not thrown)
};

// Deterministic part of the decay curve. Throws NegativeTime for t < 0 and
// InvalidParams for an invalid model. Strictly decreasing in t, range (a, d].
double eval_recovery(const RecoveryModel& model, double t);

// Least-squares fit of (a, d, theta). theta is the only nonlinear parameter:
// at any theta the optimal (a, d) solve a 2-column linear problem in closed
// form (variable projection), so the outer loop is a damped Gauss-Newton
// iteration in theta alone.
//
// Initialization: a0 = min value, d0 = first value, theta0 from an OLS fit of
// log(value - a0 + 0.5) against t over the first half of the series, clamped
// to [1e-4, 1].
//
// Throws TooFewPoints (n < 4) and DegenerateElevation (fitted d - a < 1 bpm).
// Running out of iterations is not an error: the best parameters so far come
// back with converged = false.
FitResult fit_recovery(const BiomarkerSeries& series, const FitConfig& config = {});

// Time for the elevation f(t) - a to fall to fraction p of its initial value
// d - a:  t* = ln(1/p) / theta. Throws InvalidFraction unless 0 < p < 1.
double recovery_time(const RecoveryModel& model, double p);

}  // namespace biomon::recovery
