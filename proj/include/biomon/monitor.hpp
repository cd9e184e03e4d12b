#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biomon/types.hpp"

namespace biomon::monitor {

// Discriminatory limits for one channel. Normal limits bound the closed
// normal interval; risk limits sit strictly beyond them. Any subset of
// limits may be present (missing limit = unbounded side), but at least one.
// `confidence` feeds the forecast prediction intervals.
struct ThresholdBand {
    std::string channel;
    std::optional<double> lower_normal;
    std::optional<double> upper_normal;
    std::optional<double> lower_risk;
    std::optional<double> upper_risk;
    double confidence = 0.95;

    void validate() const;  // throws InvalidParams
};

enum class Zone { Normal, Abnormal, Risk };

std::string to_string(Zone zone);

// Zone of a single value. Boundary values belong to Normal (closed interval);
// Risk requires being strictly beyond a risk limit.
Zone classify(double value, const ThresholdBand& band);

// OLS line over a trailing window, parametrized as
//   value(t) = intercept + slope * (t - window_start_t).
// t_mean / t_ss are the window-time moments the prediction interval needs.
struct TrendModel {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_std = 0.0;
    int n = 0;
    double window_start_t = 0.0;
    double window_end_t = 0.0;
    double t_mean = 0.0;
    double t_ss = 0.0;
};

// Fits the closed trailing window [t_last - window, t_last].
// Throws TooFewPointsInWindow when fewer than 2 samples fall inside.
TrendModel fit_trend(const BiomarkerSeries& series, double window);

struct Forecast {
    double value = 0.0;
    double half_width = 0.0;
};

// Point forecast plus prediction-interval half-width
//   z(confidence) * residual_std * sqrt(1 + 1/n + (t - t_mean)^2 / t_ss).
// Throws PastTime when t_future < window_end_t.
Forecast forecast_value(const TrendModel& trend, double t_future, double confidence = 0.95);

enum class LimitKind { LowerRisk, LowerNormal, UpperNormal, UpperRisk };
enum class Direction { Rising, Falling };

std::string to_string(LimitKind kind);
std::string to_string(Direction direction);

struct Crossing {
    double t_cross = 0.0;
    LimitKind limit = LimitKind::UpperNormal;
    double limit_value = 0.0;
    Direction direction = Direction::Rising;
};

// Earliest analytic crossing of the fitted trend line with any configured
// limit inside (window_end_t, window_end_t + horizon]; nullopt when the line
// stays clear. Propagates TooFewPointsInWindow from fit_trend.
std::optional<Crossing> forecast_crossing(const BiomarkerSeries& series, const ThresholdBand& band,
                                          double window, double horizon);

enum class AlertKind { EnteredAbnormal, EnteredRisk, PredictedCrossing };

std::string to_string(AlertKind kind);

struct Alert {
    std::string subject_id;
    std::string channel;
    AlertKind kind = AlertKind::EnteredAbnormal;
    double t_issued = 0.0;
    std::optional<double> t_predicted;
    std::string detail;
};

// Alerts for the latest sample: zone-transition notices against
// `previous`, plus a PredictedCrossing when the trend line meets a limit
// within the horizon. Total: a window too sparse for a trend simply yields
// no crossing alert.
std::vector<Alert> evaluate_alerts(Zone previous, const BiomarkerSeries& series,
                                   const ThresholdBand& band, double window, double horizon);

// Replays a series sample by sample the way the CLI does: evaluate_alerts on
// each prefix with the zone carried forward, de-duplicating the crossing
// prediction (one alert per limit while the prediction stays active).
struct ReplayResult {
    std::vector<Alert> alerts;
    Zone final_zone = Zone::Normal;
    std::optional<TrendModel> final_trend;
    std::optional<Crossing> final_crossing;
};

ReplayResult replay_alerts(const BiomarkerSeries& series, const ThresholdBand& band, double window,
                           double horizon, Zone initial_zone = Zone::Normal);

}  // namespace biomon::monitor
