#include "biomon/types.hpp"

#include <algorithm>
#include <cmath>

namespace biomon {

BiomarkerSeries validate_series(std::vector<BiomarkerSample> samples) {
    if (samples.empty()) {
        throw EmptySeries();
    }
    const std::string& subject = samples.front().subject_id;
    const std::string& channel = samples.front().channel;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.value)) {
            throw NonFiniteValue(i);
        }
        if (s.t < 0.0) {
            throw NegativeTime(s.t);
        }
        if (s.channel != channel) {
            throw MixedChannel(channel, s.channel);
        }
        if (s.subject_id != subject) {
            throw MixedSubject(subject, s.subject_id);
        }
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const BiomarkerSample& a, const BiomarkerSample& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].t == samples[i - 1].t) {
            throw DuplicateTimestamp(samples[i].t);
        }
    }
    return BiomarkerSeries(subject, channel, std::move(samples));
}

BiomarkerSeries BiomarkerSeries::prefix(std::size_t count) const {
    if (count == 0) {
        throw EmptySeries();
    }
    count = std::min(count, samples_.size());
    return BiomarkerSeries(subject_id_, channel_,
                           std::vector<BiomarkerSample>(samples_.begin(), samples_.begin() + count));
}

void validate_profile(const SubjectProfile& profile) {
    std::size_t i = 0;
    for (const auto& [name, value] : profile.covariates) {
        if (!std::isfinite(value)) {
            throw NonFiniteValue(i);
        }
        ++i;
    }
}

std::string to_string(BiomarkerRole role) {
    switch (role) {
        case BiomarkerRole::Preventive: return "preventive";
        case BiomarkerRole::Verificatory: return "verificatory";
        case BiomarkerRole::Explorative: return "explorative";
        case BiomarkerRole::State: return "state";
        case BiomarkerRole::Prognostic: return "prognostic";
        case BiomarkerRole::Pharmacodynamic: return "pharmacodynamic";
    }
    return "unknown";
}

std::optional<BiomarkerRole> parse_role(std::string_view name) {
    if (name == "preventive") return BiomarkerRole::Preventive;
    if (name == "verificatory") return BiomarkerRole::Verificatory;
    if (name == "explorative") return BiomarkerRole::Explorative;
    if (name == "state") return BiomarkerRole::State;
    if (name == "prognostic") return BiomarkerRole::Prognostic;
    if (name == "pharmacodynamic") return BiomarkerRole::Pharmacodynamic;
    return std::nullopt;
}

}  // namespace biomon
