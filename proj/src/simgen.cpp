#include "biomon/simgen.hpp"

#include <cmath>
#include <numbers>

#include "biomon/errors.hpp"
#include "biomon/recovery.hpp"
#include "biomon/rng.hpp"

namespace biomon::simgen {

BiomarkerSeries gen_recovery(const RecoveryParams& params, std::uint64_t seed) {
    if (params.n < 1) throw InvalidParams("n must be >= 1");
    if (!(params.dt > 0.0)) throw InvalidParams("dt must be > 0");
    if (!(params.noise_sigma >= 0.0) || !std::isfinite(params.noise_sigma)) {
        throw InvalidParams("noise_sigma must be >= 0");
    }
    const recovery::RecoveryModel model{params.a, params.d, params.theta};
    try {
        model.validate();
    } catch (const InvalidParams& e) {
        throw InvalidParams(std::string("recovery generator: ") + e.what());
    }

    rng::SplitMix64 gen(seed);
    std::vector<BiomarkerSample> samples;
    samples.reserve(params.n);
    for (int i = 0; i < params.n; ++i) {
        const double t = static_cast<double>(i) * params.dt;
        const double value =
            recovery::eval_recovery(model, t) + params.noise_sigma * gen.next_gaussian();
        samples.push_back({params.subject_id, params.channel, t, value, params.unit});
    }
    return validate_series(std::move(samples));
}

BiomarkerSeries gen_drift(const DriftParams& params, std::uint64_t seed) {
    if (params.n < 1) throw InvalidParams("n must be >= 1");
    if (!(params.dt > 0.0)) throw InvalidParams("dt must be > 0");
    if (!(params.noise_sigma >= 0.0) || !std::isfinite(params.noise_sigma)) {
        throw InvalidParams("noise_sigma must be >= 0");
    }
    if (!std::isfinite(params.start_value) || !std::isfinite(params.slope)) {
        throw InvalidParams("start_value and slope must be finite");
    }

    rng::SplitMix64 gen(seed);
    std::vector<BiomarkerSample> samples;
    samples.reserve(params.n);
    for (int i = 0; i < params.n; ++i) {
        const double t = static_cast<double>(i) * params.dt;
        const double value =
            params.start_value + params.slope * t + params.noise_sigma * gen.next_gaussian();
        samples.push_back({params.subject_id, params.channel, t, value, params.unit});
    }
    return validate_series(std::move(samples));
}

predictor::FactorMatrix gen_panel(const PanelParams& params, std::uint64_t seed) {
    const std::size_t n = params.true_coefficients.size();
    if (n == 0) throw InvalidParams("need at least one coefficient");
    if (!(params.noise_sigma >= 0.0) || !std::isfinite(params.noise_sigma)) {
        throw InvalidParams("noise_sigma must be >= 0");
    }
    if (params.m < static_cast<int>(n) + 2) {
        throw InvalidParams("m must be >= number of factors + 2");
    }
    const auto m = static_cast<std::size_t>(params.m);

    predictor::FactorMatrix matrix;
    matrix.m = m;
    matrix.n = n;
    for (std::size_t j = 0; j < n; ++j) {
        matrix.factor_names.push_back("f" + std::to_string(j + 1));
    }

    rng::SplitMix64 gen(seed);
    matrix.values.resize(m * n);
    for (double& v : matrix.values) v = gen.next_gaussian();

    matrix.target.assign(m, 0.0);  // placeholder so the matrix validates
    const predictor::Standardized z = predictor::standardize(matrix);
    for (std::size_t i = 0; i < m; ++i) {
        double y = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            y += params.true_coefficients[j] * z.values[i * n + j];
        }
        matrix.target[i] = y;
    }
    for (std::size_t i = 0; i < m; ++i) {
        matrix.target[i] += params.noise_sigma * gen.next_gaussian();
    }
    return matrix;
}

std::vector<activity::AccelSample> gen_accel(const AccelParams& params, std::uint64_t seed) {
    if (params.n < 1) throw InvalidParams("n must be >= 1");
    if (!(params.dt > 0.0)) throw InvalidParams("dt must be > 0");
    if (params.profiles.empty()) throw InvalidParams("need at least one location profile");
    for (const auto& p : params.profiles) {
        if (p.body_location.empty()) throw InvalidParams("location label must be non-empty");
        if (!(p.amplitude >= 0.0) || !std::isfinite(p.amplitude)) {
            throw InvalidParams("amplitude must be >= 0");
        }
        if (!(p.frequency_hz >= 0.0) || !std::isfinite(p.frequency_hz)) {
            throw InvalidParams("frequency must be >= 0");
        }
        if (!(p.noise_sigma >= 0.0) || !std::isfinite(p.noise_sigma)) {
            throw InvalidParams("noise_sigma must be >= 0");
        }
    }

    rng::SplitMix64 gen(seed);
    std::vector<activity::AccelSample> out;
    out.reserve(params.profiles.size() * params.n);
    for (const auto& profile : params.profiles) {
        const std::string sensor_id = "acc_" + profile.body_location;
        for (int i = 0; i < params.n; ++i) {
            const double t = static_cast<double>(i) * params.dt;
            activity::AccelSample s;
            s.subject_id = params.subject_id;
            s.sensor_id = sensor_id;
            s.body_location = profile.body_location;
            s.t = t;
            s.ax = profile.amplitude * std::sin(2.0 * std::numbers::pi * profile.frequency_hz * t) +
                   profile.noise_sigma * gen.next_gaussian();
            s.ay = profile.noise_sigma * gen.next_gaussian();
            s.az = 1.0 + profile.noise_sigma * gen.next_gaussian();
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::string to_string(SimKind kind) {
    switch (kind) {
        case SimKind::Recovery: return "recovery";
        case SimKind::Drift: return "drift";
        case SimKind::Panel: return "panel";
        case SimKind::Accel: return "accel";
    }
    return "unknown";
}

namespace {

double require(const SimSpec& spec, const std::string& key) {
    const auto it = spec.parameters.find(key);
    if (it == spec.parameters.end()) {
        throw InvalidParams("simulate " + to_string(spec.kind) + ": missing parameter '" + key +
                            "'");
    }
    return it->second;
}

std::vector<double> panel_coefficients(const SimSpec& spec) {
    std::vector<double> b;
    for (std::size_t j = 1;; ++j) {
        const auto it = spec.parameters.find("b" + std::to_string(j));
        if (it == spec.parameters.end()) break;
        b.push_back(it->second);
    }
    if (b.empty()) {
        throw InvalidParams("simulate panel: need coefficients b1..bk");
    }
    return b;
}

std::vector<LocationProfile> accel_profiles(const SimSpec& spec) {
    std::vector<LocationProfile> profiles;
    for (const auto& [key, value] : spec.parameters) {
        if (key.rfind("amp:", 0) != 0) continue;
        const std::string location = key.substr(4);
        LocationProfile p;
        p.body_location = location;
        p.amplitude = value;
        if (const auto it = spec.parameters.find("freq:" + location); it != spec.parameters.end()) {
            p.frequency_hz = it->second;
        }
        if (const auto it = spec.parameters.find("sigma:" + location); it != spec.parameters.end()) {
            p.noise_sigma = it->second;
        }
        profiles.push_back(std::move(p));
    }
    if (profiles.empty()) {
        throw InvalidParams("simulate accel: need at least one 'amp:<location>' parameter");
    }
    return profiles;
}

}  // namespace

void SimSpec::validate() const {
    if (n < 1) {
        throw InvalidParams("simulate: n must be >= 1");
    }
    switch (kind) {
        case SimKind::Recovery: {
            RecoveryParams p;
            p.a = require(*this, "a");
            p.d = require(*this, "d");
            p.theta = require(*this, "theta");
            p.noise_sigma = require(*this, "sigma");
            p.dt = require(*this, "dt");
            p.n = 1;
            gen_recovery(p, 0);  // parameter check via the generator itself
            break;
        }
        case SimKind::Drift: {
            DriftParams p;
            p.start_value = require(*this, "start");
            p.slope = require(*this, "slope");
            p.noise_sigma = require(*this, "sigma");
            p.dt = require(*this, "dt");
            p.n = 1;
            gen_drift(p, 0);
            break;
        }
        case SimKind::Panel: {
            const auto b = panel_coefficients(*this);
            const double sigma = require(*this, "sigma");
            if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
                throw InvalidParams("simulate panel: sigma must be >= 0");
            }
            if (n < static_cast<int>(b.size()) + 2) {
                throw InvalidParams("simulate panel: n must be >= number of factors + 2");
            }
            break;
        }
        case SimKind::Accel: {
            AccelParams p;
            p.profiles = accel_profiles(*this);
            p.dt = require(*this, "dt");
            p.n = 1;
            gen_accel(p, 0);
            break;
        }
    }
}

Generated generate(const SimSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case SimKind::Recovery: {
            RecoveryParams p;
            p.a = require(spec, "a");
            p.d = require(spec, "d");
            p.theta = require(spec, "theta");
            p.noise_sigma = require(spec, "sigma");
            p.dt = require(spec, "dt");
            p.n = spec.n;
            return gen_recovery(p, spec.seed);
        }
        case SimKind::Drift: {
            DriftParams p;
            p.start_value = require(spec, "start");
            p.slope = require(spec, "slope");
            p.noise_sigma = require(spec, "sigma");
            p.dt = require(spec, "dt");
            p.n = spec.n;
            return gen_drift(p, spec.seed);
        }
        case SimKind::Panel: {
            PanelParams p;
            p.true_coefficients = panel_coefficients(spec);
            p.noise_sigma = require(spec, "sigma");
            p.m = spec.n;
            return gen_panel(p, spec.seed);
        }
        case SimKind::Accel: {
            AccelParams p;
            p.profiles = accel_profiles(spec);
            p.dt = require(spec, "dt");
            p.n = spec.n;
            return gen_accel(p, spec.seed);
        }
    }
    throw InvalidParams("simulate: unknown kind");
}

}  // namespace biomon::simgen
