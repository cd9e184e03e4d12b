#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace biomon::activity {

// One reading from a three-axis accelerometer worn at a named body location.
// Components are in g; the vector magnitude must stay within the 16 g sensor
// plausibility guard.
struct AccelSample {
    std::string subject_id;
    std::string sensor_id;
    std::string body_location;
    double t = 0.0;
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
};

// Magnitude statistics of one tumbling window. Orientation-free on purpose:
// sensors sewn into clothing have unknown axes, the magnitude does not.
// variance is the population variance of the magnitudes; rms_jerk is the
// root mean square of successive magnitude differences divided by their dt.
struct ActivityFeatures {
    std::string sensor_id;
    std::string body_location;
    double window_start_t = 0.0;
    double window_end_t = 0.0;
    double mean_magnitude = 0.0;
    double variance = 0.0;
    double rms_jerk = 0.0;
};

// Tumbling windows anchored at t = 0 (bucket = floor(t / window)), computed
// per sensor; windows with fewer than 2 samples are dropped. Output is
// ordered by (sensor_id, window_start_t).
// Throws UnorderedStream when a sensor's samples are not strictly
// time-ordered, InvalidParams for window <= 0 or an implausible sample,
// NonFiniteValue for NaN/inf components.
std::vector<ActivityFeatures> window_features(const std::vector<AccelSample>& stream,
                                              double window);

struct KMeansResult {
    std::vector<int> assignments;
    std::vector<std::vector<double>> centroids;
    double within_ss = 0.0;
    int iterations = 0;
    std::vector<double> ss_history;  // within_ss after each Lloyd iteration
};

// Lloyd's algorithm with deterministic greedy farthest-point initialization:
// the first centroid anchors the init, every later one is the point farthest
// from the chosen set (ties to the lowest index). Up to 10 restarts that
// differ only in the first centroid are tried, with the seed fixing the
// restart schedule, and the lowest within-cluster SS wins. Each run stops
// when assignments are stable or after 300 iterations. Bit-deterministic for
// fixed (points, k, seed); ss_history traces the winning run. Throws
// EmptyInput, KTooLarge, InvalidParams.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed);

// Mean composite load score per body location, sorted descending (ties by
// label). Score per window = variance + rms_jerk^2 * window_length^2.
std::vector<std::pair<std::string, double>> load_distribution(
    const std::vector<ActivityFeatures>& features);

}  // namespace biomon::activity
