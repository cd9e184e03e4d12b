#include <doctest.h>

#include <cmath>
#include <vector>

#include "biomon/activity.hpp"
#include "biomon/errors.hpp"
#include "biomon/rng.hpp"
#include "biomon/simgen.hpp"
#include "oracles.hpp"

using namespace biomon;
using activity::AccelSample;

namespace {

AccelSample acc(const std::string& sensor, const std::string& location, double t, double ax,
                double ay, double az) {
    return {"s1", sensor, location, t, ax, ay, az};
}

std::vector<AccelSample> resting_stream(int n, double dt = 1.0) {
    std::vector<AccelSample> stream;
    for (int i = 0; i < n; ++i) stream.push_back(acc("a1", "trunk", i * dt, 0.0, 0.0, 1.0));
    return stream;
}

}  // namespace

TEST_SUITE("activity") {

TEST_CASE("window_features: gravity-only rest") {
    const auto features = activity::window_features(resting_stream(10), 5.0);
    REQUIRE(features.size() == 2);
    for (const auto& f : features) {
        CHECK(f.mean_magnitude == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(f.variance == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(f.rms_jerk == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(f.window_end_t > f.window_start_t);
    }
    CHECK(features[0].window_start_t == 0.0);
    CHECK(features[0].window_end_t == 5.0);
    CHECK(features[1].window_start_t == 5.0);
}

TEST_CASE("window_features: alternating magnitudes 1 and 2") {
    std::vector<AccelSample> stream;
    for (int i = 0; i < 8; ++i) {
        stream.push_back(acc("a1", "arm_l", i, 0.0, 0.0, i % 2 == 0 ? 1.0 : 2.0));
    }
    const auto features = activity::window_features(stream, 8.0);
    REQUIRE(features.size() == 1);
    CHECK(features[0].mean_magnitude == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(features[0].variance == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(features[0].rms_jerk == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("window_features: sparse windows are dropped") {
    std::vector<AccelSample> stream{acc("a1", "trunk", 0.0, 0, 0, 1),
                                    acc("a1", "trunk", 1.0, 0, 0, 1),
                                    acc("a1", "trunk", 10.0, 0, 0, 1)};  // alone in its window
    const auto features = activity::window_features(stream, 5.0);
    REQUIRE(features.size() == 1);
    CHECK(features[0].window_start_t == 0.0);
}

TEST_CASE("window_features: validation") {
    CHECK_THROWS_AS(activity::window_features(resting_stream(4), 0.0), InvalidParams);
    std::vector<AccelSample> unordered{acc("a1", "trunk", 1.0, 0, 0, 1),
                                       acc("a1", "trunk", 0.0, 0, 0, 1)};
    CHECK_THROWS_AS(activity::window_features(unordered, 5.0), UnorderedStream);
    std::vector<AccelSample> implausible{acc("a1", "trunk", 0.0, 20.0, 0, 0)};
    CHECK_THROWS_AS(activity::window_features(implausible, 5.0), InvalidParams);
    std::vector<AccelSample> nonfinite{acc("a1", "trunk", 0.0, std::nan(""), 0, 1)};
    CHECK_THROWS_AS(activity::window_features(nonfinite, 5.0), NonFiniteValue);
}

TEST_CASE("window_features: rotation invariance of magnitude features") {
    // rotate all vectors by a fixed 3-D rotation; features must not move
    const double yaw = 0.7, pitch = 0.3;
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const auto base = simgen::gen_accel({{{"leg_l", 1.5, 0.9, 0.2}}, 64, 0.05}, 44);
    std::vector<AccelSample> rotated = base;
    for (auto& s : rotated) {
        const double x1 = cy * s.ax - sy * s.ay;
        const double y1 = sy * s.ax + cy * s.ay;
        const double z1 = s.az;
        s.ax = cp * x1 + sp * z1;
        s.ay = y1;
        s.az = -sp * x1 + cp * z1;
    }
    const auto f0 = activity::window_features(base, 0.8);
    const auto f1 = activity::window_features(rotated, 0.8);
    REQUIRE(f0.size() == f1.size());
    for (std::size_t i = 0; i < f0.size(); ++i) {
        CHECK(f1[i].mean_magnitude == doctest::Approx(f0[i].mean_magnitude).epsilon(1e-9));
        CHECK(f1[i].variance == doctest::Approx(f0[i].variance).epsilon(1e-9));
        CHECK(f1[i].rms_jerk == doctest::Approx(f0[i].rms_jerk).epsilon(1e-9));
    }
}

TEST_CASE("window_features: two-pass variance against a long-double reference") {
    const auto stream = simgen::gen_accel({{{"arm_r", 2.0, 1.3, 0.3}}, 128, 0.05}, 91);
    const auto features = activity::window_features(stream, 1.6);
    REQUIRE(!features.empty());
    // recompute the first window's variance at long double precision
    std::vector<long double> mags;
    for (const auto& s : stream) {
        if (s.t >= features[0].window_start_t && s.t < features[0].window_end_t) {
            mags.push_back(std::sqrt(static_cast<long double>(s.ax) * s.ax +
                                     static_cast<long double>(s.ay) * s.ay +
                                     static_cast<long double>(s.az) * s.az));
        }
    }
    long double mean = 0.0L;
    for (const auto m : mags) mean += m;
    mean /= static_cast<long double>(mags.size());
    long double var = 0.0L;
    for (const auto m : mags) var += (m - mean) * (m - mean);
    var /= static_cast<long double>(mags.size());
    CHECK(features[0].variance == doctest::Approx(static_cast<double>(var)).epsilon(1e-10));
}

TEST_CASE("kmeans: two well-separated pairs") {
    const std::vector<std::vector<double>> points{{0, 0}, {0.1, 0}, {5, 5}, {5.1, 5}};
    const auto result = activity::kmeans(points, 2, 0);
    CHECK(result.assignments[0] == result.assignments[1]);
    CHECK(result.assignments[2] == result.assignments[3]);
    CHECK(result.assignments[0] != result.assignments[2]);
    // each pair contributes twice (half-gap)^2 = 2 * 0.05^2
    CHECK(result.within_ss == doctest::Approx(4 * 0.05 * 0.05).epsilon(1e-12));
}

TEST_CASE("kmeans: k=1 gives the global mean and n * population variance") {
    const std::vector<std::vector<double>> points{{1}, {2}, {3}, {4}};
    const auto result = activity::kmeans(points, 1, 9);
    CHECK(result.centroids[0][0] == doctest::Approx(2.5).epsilon(1e-15));
    double var = 0.0;
    for (const auto& p : points) var += (p[0] - 2.5) * (p[0] - 2.5);
    CHECK(result.within_ss == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("kmeans: matches the exhaustive 2-partition oracle on small inputs") {
    rng::SplitMix64 gen(1234);
    for (int round = 0; round < 10; ++round) {
        const int n = 4 + static_cast<int>(gen.next_u64() % 5);  // 4..8
        std::vector<std::vector<double>> points;
        for (int i = 0; i < n; ++i) {
            points.push_back({gen.next_gaussian(), gen.next_gaussian()});
        }
        const auto result = activity::kmeans(points, 2, round);
        const double oracle = oracles::best_two_partition_ss(points);
        CHECK(result.within_ss == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("kmeans: within_ss never increases across iterations") {
    rng::SplitMix64 gen(777);
    std::vector<std::vector<double>> points;
    for (int i = 0; i < 60; ++i) {
        points.push_back({gen.next_gaussian(), gen.next_gaussian(), gen.next_gaussian()});
    }
    const auto result = activity::kmeans(points, 4, 3);
    REQUIRE(!result.ss_history.empty());
    for (std::size_t i = 1; i < result.ss_history.size(); ++i) {
        CHECK(result.ss_history[i] <= result.ss_history[i - 1] + 1e-12);
    }
    // centroids are the means of their clusters
    for (int c = 0; c < 4; ++c) {
        std::vector<double> mean(3, 0.0);
        int count = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (result.assignments[i] == c) {
                ++count;
                for (int d = 0; d < 3; ++d) mean[d] += points[i][d];
            }
        }
        REQUIRE(count > 0);
        for (int d = 0; d < 3; ++d) {
            CHECK(result.centroids[c][d] == doctest::Approx(mean[d] / count).epsilon(1e-12));
        }
    }
}

TEST_CASE("kmeans: deterministic for fixed seed, guards on k") {
    std::vector<std::vector<double>> points;
    rng::SplitMix64 gen(55);
    for (int i = 0; i < 30; ++i) points.push_back({gen.next_gaussian(), gen.next_gaussian()});
    const auto a = activity::kmeans(points, 3, 17);
    const auto b = activity::kmeans(points, 3, 17);
    CHECK(a.assignments == b.assignments);
    CHECK(a.within_ss == b.within_ss);
    CHECK(a.centroids == b.centroids);

    CHECK_THROWS_AS(activity::kmeans({}, 2, 0), EmptyInput);
    CHECK_THROWS_AS(activity::kmeans(points, 0, 0), InvalidParams);
    CHECK_THROWS_AS(activity::kmeans({{1, 1}, {1, 1}}, 2, 0), KTooLarge);
}

TEST_CASE("load_distribution: only moving location ranks first") {
    const auto stream = simgen::gen_accel(
        {{{"leg_l", 2.0, 1.0, 0.0}, {"arm_r", 0.0, 1.0, 0.0}, {"head", 0.0, 1.0, 0.0}}, 100, 0.05},
        6);
    const auto features = activity::window_features(stream, 1.0);
    const auto ranking = activity::load_distribution(features);
    REQUIRE(ranking.size() == 3);
    CHECK(ranking[0].first == "leg_l");
    CHECK(ranking[0].second > 0.0);
    CHECK(ranking[1].second == doctest::Approx(0.0).epsilon(1e-12));
    // zero-load tie broken lexicographically
    CHECK(ranking[1].first == "arm_r");
    CHECK(ranking[2].first == "head");
}

TEST_CASE("load_distribution: identical streams tie and break by label") {
    std::vector<AccelSample> stream;
    for (int i = 0; i < 20; ++i) {
        const double mag = i % 2 == 0 ? 1.0 : 1.5;
        stream.push_back(acc("a1", "leg_r", i * 0.1, 0.0, 0.0, mag));
        stream.push_back(acc("a2", "leg_l", i * 0.1, 0.0, 0.0, mag));
    }
    const auto ranking = activity::load_distribution(activity::window_features(stream, 1.0));
    REQUIRE(ranking.size() == 2);
    CHECK(ranking[0].second == doctest::Approx(ranking[1].second).epsilon(1e-12));
    CHECK(ranking[0].first == "leg_l");
    CHECK(ranking[1].first == "leg_r");
}

TEST_CASE("load_distribution: score matches an independent recomputation") {
    const auto stream = simgen::gen_accel(
        {{{"leg_l", 2.0, 1.1, 0.2}, {"arm_r", 1.0, 0.7, 0.1}}, 150, 0.04}, 31);
    const auto features = activity::window_features(stream, 1.0);
    const auto ranking = activity::load_distribution(features);

    for (const auto& [location, score] : ranking) {
        double sum = 0.0;
        int count = 0;
        for (const auto& f : features) {
            if (f.body_location != location) continue;
            const double len = f.window_end_t - f.window_start_t;
            sum += f.variance + f.rms_jerk * f.rms_jerk * len * len;
            ++count;
        }
        CHECK(score == doctest::Approx(sum / count).epsilon(1e-12));
    }
}

}  // TEST_SUITE
