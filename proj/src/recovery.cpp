#include "biomon/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "biomon/errors.hpp"

namespace biomon::recovery {

void RecoveryModel::validate() const {
    if (!std::isfinite(a) || !std::isfinite(d) || !std::isfinite(theta)) {
        throw InvalidParams("recovery model has non-finite parameters");
    }
    if (theta <= 0.0) {
        throw InvalidParams("recovery rate theta must be > 0");
    }
    if (d <= a) {
        throw InvalidParams("post-exercise rate d must exceed resting rate a");
    }
    if (a < 30.0 || a > 240.0) {
        throw InvalidParams("resting rate a outside plausible range [30, 240] bpm");
    }
}

double eval_recovery(const RecoveryModel& model, double t) {
    model.validate();
    if (t < 0.0) {
        throw NegativeTime(t);
    }
    return model.a + (model.d - model.a) * std::exp(-model.theta * t);
}

namespace {

struct LinearSolution {
    double a = 0.0;          // baseline
    double elevation = 0.0;  // d - a
    double rss = std::numeric_limits<double>::infinity();
    bool ok = false;
};

// Optimal (a, d - a) for fixed theta: regress y on [1, exp(-theta t)].
LinearSolution solve_at_theta(const std::vector<double>& ts, const std::vector<double>& ys,
                              double theta, std::vector<double>& u) {
    const std::size_t n = ts.size();
    u.resize(n);
    double u_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = std::exp(-theta * ts[i]);
        u_mean += u[i];
        y_mean += ys[i];
    }
    u_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double suu = 0.0;
    double suy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double du = u[i] - u_mean;
        suu += du * du;
        suy += du * (ys[i] - y_mean);
    }
    LinearSolution sol;
    if (!(suu > 0.0)) {
        return sol;  // basis collapsed (theta ~ 0 or ~inf); reject this theta
    }
    sol.elevation = suy / suu;
    sol.a = y_mean - sol.elevation * u_mean;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - sol.a - sol.elevation * u[i];
        rss += r * r;
    }
    sol.rss = rss;
    sol.ok = true;
    return sol;
}

double initial_theta(const std::vector<double>& ts, const std::vector<double>& ys) {
    const double a0 = *std::min_element(ys.begin(), ys.end());
    const std::size_t half = std::max<std::size_t>(2, ys.size() / 2);
    double tm = 0.0;
    double wm = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        tm += ts[i];
        wm += std::log(ys[i] - a0 + 0.5);
    }
    tm /= static_cast<double>(half);
    wm /= static_cast<double>(half);
    double stt = 0.0;
    double stw = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        const double dt = ts[i] - tm;
        stt += dt * dt;
        stw += dt * (std::log(ys[i] - a0 + 0.5) - wm);
    }
    const double slope = stt > 0.0 ? stw / stt : 0.0;
    return std::clamp(-slope, 1e-4, 1.0);
}

}  // namespace

FitResult fit_recovery(const BiomarkerSeries& series, const FitConfig& config) {
    if (!(config.tol > 0.0) || config.max_iter < 1) {
        throw InvalidParams("fit config: tol must be > 0 and max_iter >= 1");
    }
    const std::size_t n = series.size();
    if (n < 4) {
        throw TooFewPoints(n);
    }
    std::vector<double> ts(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts[i] = series.samples()[i].t;
        ys[i] = series.samples()[i].value;
    }

    std::vector<double> u;
    double theta = initial_theta(ts, ys);
    LinearSolution cur = solve_at_theta(ts, ys, theta, u);
    if (!cur.ok) {
        throw DegenerateElevation();
    }

    double lambda = 1e-3;
    int iterations = 0;
    bool converged = false;
    std::vector<double> u_try;
    while (iterations < config.max_iter) {
        ++iterations;
        // Gradient and Gauss-Newton curvature of the reduced objective. With
        // (a, elevation) at their inner optimum the residual is orthogonal to
        // the linear basis, so d(rss)/d(theta) = 2 sum(r * c * t * u).
        double g = 0.0;
        double h = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ji = cur.elevation * ts[i] * u[i];
            const double ri = ys[i] - cur.a - cur.elevation * u[i];
            g += ji * ri;
            h += ji * ji;
        }
        if (!(h > 0.0)) {
            converged = true;  // flat curvature: nothing left to move
            break;
        }

        bool accepted = false;
        double rel_change = 0.0;
        while (lambda <= 1e15) {
            const double step = -g / (h * (1.0 + lambda));
            const double theta_try = theta + step;
            if (theta_try > 0.0) {
                LinearSolution trial = solve_at_theta(ts, ys, theta_try, u_try);
                if (trial.ok && trial.rss <= cur.rss) {
                    rel_change = std::fabs(step) / std::max(std::fabs(theta_try), 1e-300);
                    theta = theta_try;
                    cur = trial;
                    u.swap(u_try);
                    lambda = std::max(lambda * 0.25, 1e-12);
                    accepted = true;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if (!accepted) {
            converged = true;  // no damping level improves: stationary point
            break;
        }
        if (rel_change < config.tol) {
            converged = true;
            break;
        }
    }

    if (cur.elevation < 1.0) {
        throw DegenerateElevation();
    }
    FitResult result;
    result.model = RecoveryModel{cur.a, cur.a + cur.elevation, theta};
    result.model.validate();
    result.rss = cur.rss;
    result.residual_std = n > 3 ? std::sqrt(cur.rss / static_cast<double>(n - 3)) : 0.0;
    result.iterations = iterations;
    result.converged = converged;
    return result;
}

double recovery_time(const RecoveryModel& model, double p) {
    model.validate();
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidFraction(p);
    }
    return std::log(1.0 / p) / model.theta;
}

}  // namespace biomon::recovery
