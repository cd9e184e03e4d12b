#include "biomon/activity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "biomon/errors.hpp"
#include "biomon/rng.hpp"

namespace biomon::activity {

namespace {

double magnitude(const AccelSample& s) {
    return std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az);
}

}  // namespace

std::vector<ActivityFeatures> window_features(const std::vector<AccelSample>& stream,
                                              double window) {
    if (!(window > 0.0)) {
        throw InvalidParams("window must be > 0");
    }
    // Group per sensor, preserving stream order within each.
    std::map<std::string, std::vector<const AccelSample*>> by_sensor;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const AccelSample& s = stream[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.ax) || !std::isfinite(s.ay) ||
            !std::isfinite(s.az)) {
            throw NonFiniteValue(i);
        }
        if (magnitude(s) > 16.0) {
            throw InvalidParams("sensor '" + s.sensor_id + "': acceleration magnitude " +
                                std::to_string(magnitude(s)) + " g exceeds the 16 g guard");
        }
        by_sensor[s.sensor_id].push_back(&s);
    }

    std::vector<ActivityFeatures> out;
    for (const auto& [sensor_id, samples] : by_sensor) {
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i]->t > samples[i - 1]->t)) {
                throw UnorderedStream(sensor_id);
            }
            if (samples[i]->body_location != samples[0]->body_location) {
                throw InvalidParams("sensor '" + sensor_id + "' changes body_location mid-stream");
            }
        }
        std::size_t i = 0;
        while (i < samples.size()) {
            const auto bucket = static_cast<long long>(std::floor(samples[i]->t / window));
            std::size_t j = i;
            while (j < samples.size() &&
                   static_cast<long long>(std::floor(samples[j]->t / window)) == bucket) {
                ++j;
            }
            const std::size_t count = j - i;
            if (count >= 2) {
                double mean = 0.0;
                for (std::size_t k = i; k < j; ++k) mean += magnitude(*samples[k]);
                mean /= static_cast<double>(count);
                double var = 0.0;
                for (std::size_t k = i; k < j; ++k) {
                    const double d = magnitude(*samples[k]) - mean;
                    var += d * d;
                }
                var /= static_cast<double>(count);
                double jerk_sq = 0.0;
                for (std::size_t k = i + 1; k < j; ++k) {
                    const double dm = magnitude(*samples[k]) - magnitude(*samples[k - 1]);
                    const double dt = samples[k]->t - samples[k - 1]->t;
                    jerk_sq += (dm / dt) * (dm / dt);
                }
                jerk_sq /= static_cast<double>(count - 1);

                ActivityFeatures f;
                f.sensor_id = sensor_id;
                f.body_location = samples[i]->body_location;
                f.window_start_t = static_cast<double>(bucket) * window;
                f.window_end_t = static_cast<double>(bucket + 1) * window;
                f.mean_magnitude = mean;
                f.variance = var;
                f.rms_jerk = std::sqrt(jerk_sq);
                out.push_back(std::move(f));
            }
            i = j;
        }
    }
    return out;
}

namespace {

double dist_sq(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

namespace {

// One Lloyd run from a greedy farthest-point initialization anchored at
// `first`: every later centroid is the point farthest from the chosen set.
KMeansResult lloyd_from(const std::vector<std::vector<double>>& points, int k,
                        std::size_t first) {
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();

    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    centroids.push_back(points[first]);
    std::vector<double> nearest(n);
    while (centroids.size() < static_cast<std::size_t>(k)) {
        std::size_t best = 0;
        double best_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) d = std::min(d, dist_sq(points[i], c));
            if (d > best_d) {
                best_d = d;
                best = i;
            }
        }
        centroids.push_back(points[best]);
    }

    KMeansResult result;
    result.assignments.assign(n, -1);
    std::vector<int> assign(n, -1);
    constexpr int kMaxIter = 300;
    for (int iter = 1; iter <= kMaxIter; ++iter) {
        // Assignment step; ties go to the lowest centroid index.
        for (std::size_t i = 0; i < n; ++i) {
            int best_c = 0;
            double best_d = dist_sq(points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = dist_sq(points[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            assign[i] = best_c;
            nearest[i] = best_d;
        }
        if (assign == result.assignments) {
            break;  // stable; centroids are already the cluster means
        }

        // Re-seed any emptied cluster with the worst-fit point from a cluster
        // that can spare one.
        std::vector<int> counts(k, 0);
        for (int a : assign) ++counts[a];
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t worst = n;
            double worst_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assign[i]] > 1 && nearest[i] > worst_d) {
                    worst_d = nearest[i];
                    worst = i;
                }
            }
            if (worst == n) continue;
            --counts[assign[worst]];
            assign[worst] = c;
            counts[c] = 1;
            nearest[worst] = 0.0;
        }

        result.assignments = assign;
        result.iterations = iter;

        // Update step: centroids become cluster means.
        for (auto& c : centroids) std::fill(c.begin(), c.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assign[i]];
            for (std::size_t d = 0; d < dim; ++d) centroids[assign[i]][d] += points[i][d];
        }
        for (int c = 0; c < k; ++c) {
            for (std::size_t d = 0; d < dim; ++d) {
                centroids[c][d] /= static_cast<double>(counts[c]);
            }
        }

        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) ss += dist_sq(points[i], centroids[assign[i]]);
        result.ss_history.push_back(ss);
    }

    result.centroids = centroids;
    result.within_ss = result.ss_history.empty() ? 0.0 : result.ss_history.back();
    return result;
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed) {
    if (points.empty()) {
        throw EmptyInput();
    }
    if (k < 1) {
        throw InvalidParams("k must be >= 1");
    }
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw InvalidParams("points must share one dimension");
        }
        for (double v : p) {
            if (!std::isfinite(v)) throw InvalidParams("points must be finite");
        }
    }
    const std::set<std::vector<double>> distinct(points.begin(), points.end());
    if (static_cast<std::size_t>(k) > distinct.size()) {
        throw KTooLarge(k, distinct.size());
    }

    // A single farthest-point start can stall in a shallow local optimum on
    // small inputs, so run up to 10 deterministic restarts that differ only
    // in the first centroid; the seed sets the phase of the restart schedule.
    const std::size_t restarts = std::min<std::size_t>(n, 10);
    rng::SplitMix64 gen(seed);
    const std::size_t phase = gen.next_u64() % n;
    KMeansResult best;
    bool have_best = false;
    for (std::size_t r = 0; r < restarts; ++r) {
        KMeansResult candidate = lloyd_from(points, k, (phase + r) % n);
        if (!have_best || candidate.within_ss < best.within_ss) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

std::vector<std::pair<std::string, double>> load_distribution(
    const std::vector<ActivityFeatures>& features) {
    std::map<std::string, std::pair<double, std::size_t>> acc;  // location -> (sum, count)
    for (const auto& f : features) {
        const double len = f.window_end_t - f.window_start_t;
        const double score = f.variance + f.rms_jerk * f.rms_jerk * len * len;
        auto& slot = acc[f.body_location];
        slot.first += score;
        slot.second += 1;
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(acc.size());
    for (const auto& [location, sum_count] : acc) {
        out.emplace_back(location, sum_count.first / static_cast<double>(sum_count.second));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

}  // namespace biomon::activity
