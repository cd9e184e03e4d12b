#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biomon/errors.hpp"

namespace biomon {

// One time-stamped scalar measurement. Time is in seconds relative to the
// series origin, not wall clock; file ingestion re-zeroes absolute stamps
// (see io::load_series).
struct BiomarkerSample {
    std::string subject_id;
    std::string channel;
    double t = 0.0;
    double value = 0.0;
    std::string unit;

    friend bool operator==(const BiomarkerSample&, const BiomarkerSample&) = default;
};

// Immutable, validated sequence of samples for one subject/channel with
// strictly increasing timestamps. Construct via validate_series().
class BiomarkerSeries {
public:
    const std::string& subject_id() const { return subject_id_; }
    const std::string& channel() const { return channel_; }
    const std::vector<BiomarkerSample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const BiomarkerSample& front() const { return samples_.front(); }
    const BiomarkerSample& back() const { return samples_.back(); }

    // First `count` samples as a series; invariants carry over, so no
    // re-validation. Throws EmptySeries for count == 0.
    BiomarkerSeries prefix(std::size_t count) const;

    friend bool operator==(const BiomarkerSeries&, const BiomarkerSeries&) = default;

private:
    friend BiomarkerSeries validate_series(std::vector<BiomarkerSample> samples);
    BiomarkerSeries(std::string subject_id, std::string channel,
                    std::vector<BiomarkerSample> samples)
        : subject_id_(std::move(subject_id)),
          channel_(std::move(channel)),
          samples_(std::move(samples)) {}

    std::string subject_id_;
    std::string channel_;
    std::vector<BiomarkerSample> samples_;
};

// Sorts by t and enforces the series invariants.
// Throws EmptySeries, NonFiniteValue (index into the input as given),
// NegativeTime, MixedChannel, MixedSubject, DuplicateTimestamp.
// Idempotent: a valid series passes through unchanged.
BiomarkerSeries validate_series(std::vector<BiomarkerSample> samples);

// Static per-subject covariates (age, fitness score, environment tags, ...).
struct SubjectProfile {
    std::string subject_id;
    std::map<std::string, double> covariates;
};

// Throws NonFiniteValue if any covariate is NaN/inf.
void validate_profile(const SubjectProfile& profile);

enum class BiomarkerRole {
    Preventive,
    Verificatory,
    Explorative,
    State,
    Prognostic,
    Pharmacodynamic,
};

std::string to_string(BiomarkerRole role);
std::optional<BiomarkerRole> parse_role(std::string_view name);

}  // namespace biomon
