#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "biomon/activity.hpp"
#include "biomon/predictor.hpp"
#include "biomon/types.hpp"

namespace biomon::simgen {

// All generators draw from one SplitMix64 stream per call, seeded by `seed`,
// with gaussians produced by the inverse normal CDF of each uniform draw.
// The draw order is part of the contract (documented per generator), so a
// fixed (parameters, seed) pair reproduces files bit-for-bit.

// Exponential heart-rate recovery with additive gaussian noise.
// Draw order: one gaussian per sample, in time order.
struct RecoveryParams {
    double a = 60.0;
    double d = 180.0;
    double theta = 0.05;
    double noise_sigma = 0.0;
    double dt = 1.0;
    int n = 1;
    std::string subject_id = "sim";
    std::string channel = "heart_rate";
    std::string unit = "bpm";
};
BiomarkerSeries gen_recovery(const RecoveryParams& params, std::uint64_t seed);

// Linear drift: value = start_value + slope * t + noise.
struct DriftParams {
    double start_value = 100.0;
    double slope = 0.0;
    double noise_sigma = 0.0;
    double dt = 1.0;
    int n = 1;
    std::string subject_id = "sim";
    std::string channel = "indicator";
    std::string unit = "units";
};
BiomarkerSeries gen_drift(const DriftParams& params, std::uint64_t seed);

// Factor panel with a planted linear model. Factors are standard-normal
// draws (row-major draw order); the target is built from the
// sample-standardized factor columns, target = sum(b_j * z_j) + noise, with
// the m target-noise gaussians drawn after all factors. Planting on the
// standardized scale is what makes a zero-noise panel round-trip through
// fit_linear exactly.
struct PanelParams {
    std::vector<double> true_coefficients;
    int m = 0;
    double noise_sigma = 0.0;
};
predictor::FactorMatrix gen_panel(const PanelParams& params, std::uint64_t seed);

// Accelerometer stream: per location, ax carries a sinusoid of the given
// amplitude/frequency plus noise, ay is pure noise, az is gravity plus
// noise. Draw order: per profile in the given order, per sample three
// gaussians (ax, ay, az). One sensor per profile, id "acc_<location>".
struct LocationProfile {
    std::string body_location;
    double amplitude = 0.0;
    double frequency_hz = 1.0;
    double noise_sigma = 0.0;
};
struct AccelParams {
    std::vector<LocationProfile> profiles;
    int n = 1;
    double dt = 0.02;
    std::string subject_id = "sim";
};
std::vector<activity::AccelSample> gen_accel(const AccelParams& params, std::uint64_t seed);

// Flat description of a generator run, as the CLI builds it from flags.
// `parameters` keys per kind:
//   recovery: a, d, theta, sigma, dt
//   drift:    start, slope, sigma, dt
//   panel:    sigma, b1..bk (coefficient vector)
//   accel:    dt, and per location L: amp:L, freq:L, sigma:L
// Accel profiles are generated in lexicographic location order (the map's
// key order), which pins the noise draw order for reproducibility.
enum class SimKind { Recovery, Drift, Panel, Accel };

std::string to_string(SimKind kind);

struct SimSpec {
    SimKind kind = SimKind::Recovery;
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
    int n = 1;

    void validate() const;  // throws InvalidParams
};

using Generated =
    std::variant<BiomarkerSeries, predictor::FactorMatrix, std::vector<activity::AccelSample>>;

Generated generate(const SimSpec& spec);

}  // namespace biomon::simgen
