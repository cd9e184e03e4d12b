#include "biomon/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biomon/errors.hpp"
#include "biomon/stats.hpp"

namespace biomon::monitor {

void ThresholdBand::validate() const {
    const auto finite = [](const std::optional<double>& v) {
        return !v.has_value() || std::isfinite(*v);
    };
    if (!finite(lower_normal) || !finite(upper_normal) || !finite(lower_risk) ||
        !finite(upper_risk)) {
        throw InvalidParams("band '" + channel + "': limits must be finite");
    }
    if (!lower_normal && !upper_normal && !lower_risk && !upper_risk) {
        throw InvalidParams("band '" + channel + "': at least one limit required");
    }
    if (lower_normal && upper_normal && *lower_normal > *upper_normal) {
        throw InvalidParams("band '" + channel + "': lower_normal exceeds upper_normal");
    }
    if (lower_risk && lower_normal && *lower_risk >= *lower_normal) {
        throw InvalidParams("band '" + channel + "': lower_risk must lie below lower_normal");
    }
    if (upper_risk && upper_normal && *upper_risk <= *upper_normal) {
        throw InvalidParams("band '" + channel + "': upper_risk must lie above upper_normal");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidParams("band '" + channel + "': confidence must be in (0, 1)");
    }
}

std::string to_string(Zone zone) {
    switch (zone) {
        case Zone::Normal: return "normal";
        case Zone::Abnormal: return "abnormal";
        case Zone::Risk: return "risk";
    }
    return "unknown";
}

Zone classify(double value, const ThresholdBand& band) {
    band.validate();
    if (band.lower_risk && value < *band.lower_risk) return Zone::Risk;
    if (band.upper_risk && value > *band.upper_risk) return Zone::Risk;
    const bool in_normal = (!band.lower_normal || value >= *band.lower_normal) &&
                           (!band.upper_normal || value <= *band.upper_normal);
    return in_normal ? Zone::Normal : Zone::Abnormal;
}

TrendModel fit_trend(const BiomarkerSeries& series, double window) {
    const auto& samples = series.samples();
    const double t_last = samples.back().t;
    const double t_from = t_last - window;
    std::size_t first = 0;
    while (first < samples.size() && samples[first].t < t_from) ++first;
    const std::size_t n = samples.size() - first;
    if (n < 2) {
        throw TooFewPointsInWindow(n);
    }

    double t_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = first; i < samples.size(); ++i) {
        t_mean += samples[i].t;
        y_mean += samples[i].value;
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double stt = 0.0;
    double sty = 0.0;
    for (std::size_t i = first; i < samples.size(); ++i) {
        const double dt = samples[i].t - t_mean;
        stt += dt * dt;
        sty += dt * (samples[i].value - y_mean);
    }
    TrendModel trend;
    trend.slope = sty / stt;
    trend.window_start_t = samples[first].t;
    trend.window_end_t = t_last;
    trend.intercept = y_mean - trend.slope * (t_mean - trend.window_start_t);
    trend.n = static_cast<int>(n);
    trend.t_mean = t_mean;
    trend.t_ss = stt;

    double rss = 0.0;
    for (std::size_t i = first; i < samples.size(); ++i) {
        const double r =
            samples[i].value - (trend.intercept + trend.slope * (samples[i].t - trend.window_start_t));
        rss += r * r;
    }
    trend.residual_std = n > 2 ? std::sqrt(rss / static_cast<double>(n - 2)) : 0.0;
    return trend;
}

Forecast forecast_value(const TrendModel& trend, double t_future, double confidence) {
    if (t_future < trend.window_end_t) {
        throw PastTime(t_future, trend.window_end_t);
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidParams("forecast confidence must be in (0, 1)");
    }
    Forecast f;
    f.value = trend.intercept + trend.slope * (t_future - trend.window_start_t);
    const double z = stats::normal_quantile(0.5 + 0.5 * confidence);
    const double dt = t_future - trend.t_mean;
    f.half_width = z * trend.residual_std *
                   std::sqrt(1.0 + 1.0 / static_cast<double>(trend.n) + dt * dt / trend.t_ss);
    return f;
}

namespace {

struct LimitRef {
    LimitKind kind;
    double value;
};

std::vector<LimitRef> band_limits(const ThresholdBand& band) {
    std::vector<LimitRef> limits;
    if (band.lower_risk) limits.push_back({LimitKind::LowerRisk, *band.lower_risk});
    if (band.lower_normal) limits.push_back({LimitKind::LowerNormal, *band.lower_normal});
    if (band.upper_normal) limits.push_back({LimitKind::UpperNormal, *band.upper_normal});
    if (band.upper_risk) limits.push_back({LimitKind::UpperRisk, *band.upper_risk});
    return limits;
}

}  // namespace

std::string to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::LowerRisk: return "lower_risk";
        case LimitKind::LowerNormal: return "lower_normal";
        case LimitKind::UpperNormal: return "upper_normal";
        case LimitKind::UpperRisk: return "upper_risk";
    }
    return "unknown";
}

std::string to_string(Direction direction) {
    return direction == Direction::Rising ? "rising" : "falling";
}

std::optional<Crossing> forecast_crossing(const BiomarkerSeries& series, const ThresholdBand& band,
                                          double window, double horizon) {
    band.validate();
    const TrendModel trend = fit_trend(series, window);
    if (trend.slope == 0.0 || horizon <= 0.0) {
        return std::nullopt;
    }
    std::optional<Crossing> best;
    for (const LimitRef& limit : band_limits(band)) {
        const double t = trend.window_start_t + (limit.value - trend.intercept) / trend.slope;
        if (t > trend.window_end_t && t <= trend.window_end_t + horizon) {
            if (!best || t < best->t_cross) {
                best = Crossing{t, limit.kind, limit.value,
                                trend.slope > 0.0 ? Direction::Rising : Direction::Falling};
            }
        }
    }
    return best;
}

std::string to_string(AlertKind kind) {
    switch (kind) {
        case AlertKind::EnteredAbnormal: return "EnteredAbnormal";
        case AlertKind::EnteredRisk: return "EnteredRisk";
        case AlertKind::PredictedCrossing: return "PredictedCrossing";
    }
    return "unknown";
}

namespace {

std::string format_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Alert transition_alert(const BiomarkerSeries& series, const ThresholdBand& band, Zone zone) {
    const auto& latest = series.back();
    Alert alert;
    alert.subject_id = series.subject_id();
    alert.channel = series.channel();
    alert.kind = zone == Zone::Risk ? AlertKind::EnteredRisk : AlertKind::EnteredAbnormal;
    alert.t_issued = latest.t;
    std::ostringstream os;
    os << series.channel() << " entered the " << to_string(zone) << " zone: value "
       << format_num(latest.value);
    if (zone == Zone::Risk) {
        if (band.upper_risk && latest.value > *band.upper_risk) {
            os << " is above the risk limit " << format_num(*band.upper_risk);
        } else if (band.lower_risk && latest.value < *band.lower_risk) {
            os << " is below the risk limit " << format_num(*band.lower_risk);
        }
    } else {
        if (band.upper_normal && latest.value > *band.upper_normal) {
            os << " is above the normal limit " << format_num(*band.upper_normal);
        } else if (band.lower_normal && latest.value < *band.lower_normal) {
            os << " is below the normal limit " << format_num(*band.lower_normal);
        }
    }
    alert.detail = os.str();
    return alert;
}

Alert crossing_alert(const BiomarkerSeries& series, const Crossing& crossing) {
    const auto& latest = series.back();
    Alert alert;
    alert.subject_id = series.subject_id();
    alert.channel = series.channel();
    alert.kind = AlertKind::PredictedCrossing;
    alert.t_issued = latest.t;
    alert.t_predicted = crossing.t_cross;
    std::ostringstream os;
    os << series.channel() << " is " << to_string(crossing.direction) << " and predicted to cross the "
       << to_string(crossing.limit) << " limit " << format_num(crossing.limit_value) << " at t="
       << format_num(crossing.t_cross) << " s";
    alert.detail = os.str();
    return alert;
}

}  // namespace

std::vector<Alert> evaluate_alerts(Zone previous, const BiomarkerSeries& series,
                                   const ThresholdBand& band, double window, double horizon) {
    std::vector<Alert> alerts;
    const Zone zone = classify(series.back().value, band);
    if (zone != previous && zone != Zone::Normal) {
        alerts.push_back(transition_alert(series, band, zone));
    }
    try {
        if (const auto crossing = forecast_crossing(series, band, window, horizon)) {
            alerts.push_back(crossing_alert(series, *crossing));
        }
    } catch (const TooFewPointsInWindow&) {
        // not enough history for a trend yet; transition alerts still stand
    }
    return alerts;
}

ReplayResult replay_alerts(const BiomarkerSeries& series, const ThresholdBand& band, double window,
                           double horizon, Zone initial_zone) {
    band.validate();
    ReplayResult result;
    Zone previous = initial_zone;
    std::optional<LimitKind> active_prediction;

    for (std::size_t i = 1; i <= series.size(); ++i) {
        const BiomarkerSeries upto = series.prefix(i);
        const BiomarkerSample& sample = upto.back();

        const Zone zone = classify(sample.value, band);
        if (zone != previous && zone != Zone::Normal) {
            result.alerts.push_back(transition_alert(upto, band, zone));
        }
        previous = zone;

        std::optional<Crossing> crossing;
        try {
            crossing = forecast_crossing(upto, band, window, horizon);
        } catch (const TooFewPointsInWindow&) {
            crossing.reset();
        }
        if (crossing) {
            if (!active_prediction || *active_prediction != crossing->limit) {
                result.alerts.push_back(crossing_alert(upto, *crossing));
                active_prediction = crossing->limit;
            }
        } else {
            active_prediction.reset();
        }
        result.final_zone = zone;
        result.final_crossing = crossing;
    }
    try {
        result.final_trend = fit_trend(series, window);
    } catch (const TooFewPointsInWindow&) {
        result.final_trend.reset();
    }
    return result;
}

}  // namespace biomon::monitor
