// Python bindings for the biomon core. Containers cross the boundary as
// plain lists/tuples via pybind11/stl.h; everything stays copy-in/copy-out,
// matching the library's immutable-value style.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biomon/activity.hpp"
#include "biomon/errors.hpp"
#include "biomon/monitor.hpp"
#include "biomon/predictor.hpp"
#include "biomon/recovery.hpp"
#include "biomon/simgen.hpp"
#include "biomon/stats.hpp"
#include "biomon/types.hpp"

namespace py = pybind11;

using namespace biomon;

PYBIND11_MODULE(_biomon, m) {
    m.doc() = "Biomarker monitoring toolkit: recovery fitting, threshold "
              "forecasting, predictor ranking, activity analysis and "
              "deterministic simulation.";

    py::register_exception<Error>(m, "BiomonError", PyExc_ValueError);

    // -- model ---------------------------------------------------------------
    py::class_<BiomarkerSample>(m, "BiomarkerSample")
        .def(py::init([](std::string subject_id, std::string channel, double t, double value,
                         std::string unit) {
                 return BiomarkerSample{std::move(subject_id), std::move(channel), t, value,
                                        std::move(unit)};
             }),
             py::arg("subject_id"), py::arg("channel"), py::arg("t"), py::arg("value"),
             py::arg("unit") = "")
        .def_readonly("subject_id", &BiomarkerSample::subject_id)
        .def_readonly("channel", &BiomarkerSample::channel)
        .def_readonly("t", &BiomarkerSample::t)
        .def_readonly("value", &BiomarkerSample::value)
        .def_readonly("unit", &BiomarkerSample::unit)
        .def("__eq__", [](const BiomarkerSample& a, const BiomarkerSample& b) { return a == b; })
        .def("__repr__", [](const BiomarkerSample& s) {
            return "BiomarkerSample(" + s.subject_id + ", " + s.channel +
                   ", t=" + std::to_string(s.t) + ", value=" + std::to_string(s.value) + ")";
        });

    py::class_<BiomarkerSeries>(m, "BiomarkerSeries")
        .def_property_readonly("subject_id", &BiomarkerSeries::subject_id)
        .def_property_readonly("channel", &BiomarkerSeries::channel)
        .def_property_readonly("samples", &BiomarkerSeries::samples)
        .def("t_values",
             [](const BiomarkerSeries& s) {
                 std::vector<double> out;
                 for (const auto& x : s.samples()) out.push_back(x.t);
                 return out;
             })
        .def("values",
             [](const BiomarkerSeries& s) {
                 std::vector<double> out;
                 for (const auto& x : s.samples()) out.push_back(x.value);
                 return out;
             })
        .def("prefix", &BiomarkerSeries::prefix, py::arg("count"))
        .def("__len__", &BiomarkerSeries::size)
        .def("__eq__", [](const BiomarkerSeries& a, const BiomarkerSeries& b) { return a == b; });

    m.def("validate_series", &validate_series, py::arg("samples"),
          "Sort by t and enforce the series invariants.");
    m.def(
        "make_series",
        [](const std::string& subject_id, const std::string& channel, std::vector<double> ts,
           std::vector<double> values, const std::string& unit) {
            if (ts.size() != values.size()) {
                throw InvalidParams("t and value lists must have equal length");
            }
            std::vector<BiomarkerSample> samples;
            samples.reserve(ts.size());
            for (std::size_t i = 0; i < ts.size(); ++i) {
                samples.push_back({subject_id, channel, ts[i], values[i], unit});
            }
            return validate_series(std::move(samples));
        },
        py::arg("subject_id"), py::arg("channel"), py::arg("t"), py::arg("values"),
        py::arg("unit") = "", "Build a validated series from parallel t/value lists.");

    py::enum_<BiomarkerRole>(m, "BiomarkerRole")
        .value("preventive", BiomarkerRole::Preventive)
        .value("verificatory", BiomarkerRole::Verificatory)
        .value("explorative", BiomarkerRole::Explorative)
        .value("state", BiomarkerRole::State)
        .value("prognostic", BiomarkerRole::Prognostic)
        .value("pharmacodynamic", BiomarkerRole::Pharmacodynamic);

    // -- recovery --------------------------------------------------------------
    py::class_<recovery::RecoveryModel>(m, "RecoveryModel")
        .def(py::init([](double a, double d, double theta) {
                 recovery::RecoveryModel model{a, d, theta};
                 model.validate();
                 return model;
             }),
             py::arg("a"), py::arg("d"), py::arg("theta"))
        .def_readonly("a", &recovery::RecoveryModel::a)
        .def_readonly("d", &recovery::RecoveryModel::d)
        .def_readonly("theta", &recovery::RecoveryModel::theta)
        .def("__repr__", [](const recovery::RecoveryModel& model) {
            return "RecoveryModel(a=" + std::to_string(model.a) + ", d=" + std::to_string(model.d) +
                   ", theta=" + std::to_string(model.theta) + ")";
        });

    py::class_<recovery::FitConfig>(m, "FitConfig")
        .def(py::init<double, int>(), py::arg("tol") = 1e-8, py::arg("max_iter") = 200)
        .def_readonly("tol", &recovery::FitConfig::tol)
        .def_readonly("max_iter", &recovery::FitConfig::max_iter);

    py::class_<recovery::FitResult>(m, "FitResult")
        .def_readonly("model", &recovery::FitResult::model)
        .def_readonly("rss", &recovery::FitResult::rss)
        .def_readonly("residual_std", &recovery::FitResult::residual_std)
        .def_readonly("iterations", &recovery::FitResult::iterations)
        .def_readonly("converged", &recovery::FitResult::converged);

    m.def("eval_recovery", &recovery::eval_recovery, py::arg("model"), py::arg("t"));
    m.def("fit_recovery", &recovery::fit_recovery, py::arg("series"),
          py::arg("config") = recovery::FitConfig{});
    m.def("recovery_time", &recovery::recovery_time, py::arg("model"), py::arg("p"));

    // -- monitor -----------------------------------------------------------------
    py::class_<monitor::ThresholdBand>(m, "ThresholdBand")
        .def(py::init([](std::string channel, std::optional<double> lower_normal,
                         std::optional<double> upper_normal, std::optional<double> lower_risk,
                         std::optional<double> upper_risk, double confidence) {
                 monitor::ThresholdBand band{std::move(channel), lower_normal, upper_normal,
                                             lower_risk,         upper_risk,  confidence};
                 band.validate();
                 return band;
             }),
             py::arg("channel"), py::arg("lower_normal") = std::nullopt,
             py::arg("upper_normal") = std::nullopt, py::arg("lower_risk") = std::nullopt,
             py::arg("upper_risk") = std::nullopt, py::arg("confidence") = 0.95)
        .def_readonly("channel", &monitor::ThresholdBand::channel)
        .def_readonly("lower_normal", &monitor::ThresholdBand::lower_normal)
        .def_readonly("upper_normal", &monitor::ThresholdBand::upper_normal)
        .def_readonly("lower_risk", &monitor::ThresholdBand::lower_risk)
        .def_readonly("upper_risk", &monitor::ThresholdBand::upper_risk)
        .def_readonly("confidence", &monitor::ThresholdBand::confidence);

    py::enum_<monitor::Zone>(m, "Zone")
        .value("normal", monitor::Zone::Normal)
        .value("abnormal", monitor::Zone::Abnormal)
        .value("risk", monitor::Zone::Risk);

    m.def("classify", &monitor::classify, py::arg("value"), py::arg("band"));

    py::class_<monitor::TrendModel>(m, "TrendModel")
        .def_readonly("slope", &monitor::TrendModel::slope)
        .def_readonly("intercept", &monitor::TrendModel::intercept)
        .def_readonly("residual_std", &monitor::TrendModel::residual_std)
        .def_readonly("n", &monitor::TrendModel::n)
        .def_readonly("window_start_t", &monitor::TrendModel::window_start_t)
        .def_readonly("window_end_t", &monitor::TrendModel::window_end_t);

    m.def("fit_trend", &monitor::fit_trend, py::arg("series"), py::arg("window"));

    py::class_<monitor::Forecast>(m, "Forecast")
        .def_readonly("value", &monitor::Forecast::value)
        .def_readonly("half_width", &monitor::Forecast::half_width);

    m.def("forecast_value", &monitor::forecast_value, py::arg("trend"), py::arg("t_future"),
          py::arg("confidence") = 0.95);

    py::enum_<monitor::LimitKind>(m, "LimitKind")
        .value("lower_risk", monitor::LimitKind::LowerRisk)
        .value("lower_normal", monitor::LimitKind::LowerNormal)
        .value("upper_normal", monitor::LimitKind::UpperNormal)
        .value("upper_risk", monitor::LimitKind::UpperRisk);

    py::enum_<monitor::Direction>(m, "Direction")
        .value("rising", monitor::Direction::Rising)
        .value("falling", monitor::Direction::Falling);

    py::class_<monitor::Crossing>(m, "Crossing")
        .def_readonly("t_cross", &monitor::Crossing::t_cross)
        .def_readonly("limit", &monitor::Crossing::limit)
        .def_readonly("limit_value", &monitor::Crossing::limit_value)
        .def_readonly("direction", &monitor::Crossing::direction);

    m.def("forecast_crossing", &monitor::forecast_crossing, py::arg("series"), py::arg("band"),
          py::arg("window"), py::arg("horizon"));

    py::enum_<monitor::AlertKind>(m, "AlertKind")
        .value("entered_abnormal", monitor::AlertKind::EnteredAbnormal)
        .value("entered_risk", monitor::AlertKind::EnteredRisk)
        .value("predicted_crossing", monitor::AlertKind::PredictedCrossing);

    py::class_<monitor::Alert>(m, "Alert")
        .def_readonly("subject_id", &monitor::Alert::subject_id)
        .def_readonly("channel", &monitor::Alert::channel)
        .def_readonly("kind", &monitor::Alert::kind)
        .def_readonly("t_issued", &monitor::Alert::t_issued)
        .def_readonly("t_predicted", &monitor::Alert::t_predicted)
        .def_readonly("detail", &monitor::Alert::detail);

    m.def("evaluate_alerts", &monitor::evaluate_alerts, py::arg("previous"), py::arg("series"),
          py::arg("band"), py::arg("window"), py::arg("horizon"));

    py::class_<monitor::ReplayResult>(m, "ReplayResult")
        .def_readonly("alerts", &monitor::ReplayResult::alerts)
        .def_readonly("final_zone", &monitor::ReplayResult::final_zone)
        .def_readonly("final_trend", &monitor::ReplayResult::final_trend)
        .def_readonly("final_crossing", &monitor::ReplayResult::final_crossing);

    m.def("replay_alerts", &monitor::replay_alerts, py::arg("series"), py::arg("band"),
          py::arg("window"), py::arg("horizon"), py::arg("initial_zone") = monitor::Zone::Normal);

    // -- predictor -------------------------------------------------------------
    py::class_<predictor::FactorMatrix>(m, "FactorMatrix")
        .def(py::init([](std::vector<std::string> names, std::vector<std::vector<double>> rows,
                         std::vector<double> target, std::string target_name) {
                 predictor::FactorMatrix matrix;
                 matrix.factor_names = std::move(names);
                 matrix.n = matrix.factor_names.size();
                 matrix.m = rows.size();
                 matrix.values.reserve(matrix.m * matrix.n);
                 for (const auto& row : rows) {
                     if (row.size() != matrix.n) {
                         throw InvalidParams("factor rows must match factor_names length");
                     }
                     matrix.values.insert(matrix.values.end(), row.begin(), row.end());
                 }
                 matrix.target = std::move(target);
                 matrix.target_name = std::move(target_name);
                 matrix.validate();
                 return matrix;
             }),
             py::arg("factor_names"), py::arg("rows"), py::arg("target"),
             py::arg("target_name") = "target")
        .def_readonly("factor_names", &predictor::FactorMatrix::factor_names)
        .def_readonly("m", &predictor::FactorMatrix::m)
        .def_readonly("n", &predictor::FactorMatrix::n)
        .def_readonly("target", &predictor::FactorMatrix::target)
        .def("row",
             [](const predictor::FactorMatrix& matrix, std::size_t i) {
                 if (i >= matrix.m) throw py::index_error();
                 std::vector<double> row(matrix.n);
                 for (std::size_t j = 0; j < matrix.n; ++j) row[j] = matrix.at(i, j);
                 return row;
             })
        .def("rows", [](const predictor::FactorMatrix& matrix) {
            std::vector<std::vector<double>> rows(matrix.m, std::vector<double>(matrix.n));
            for (std::size_t i = 0; i < matrix.m; ++i) {
                for (std::size_t j = 0; j < matrix.n; ++j) rows[i][j] = matrix.at(i, j);
            }
            return rows;
        });

    m.def(
        "standardize",
        [](const predictor::FactorMatrix& matrix) {
            const auto z = predictor::standardize(matrix);
            std::vector<std::vector<double>> rows(matrix.m, std::vector<double>(matrix.n));
            for (std::size_t i = 0; i < matrix.m; ++i) {
                for (std::size_t j = 0; j < matrix.n; ++j) rows[i][j] = z.values[i * matrix.n + j];
            }
            return py::make_tuple(rows, z.means, z.stds);
        },
        py::arg("matrix"), "Column z-scores plus the (means, stds) used.");

    py::class_<predictor::PredictorReport>(m, "PredictorReport")
        .def_readonly("term_names", &predictor::PredictorReport::term_names)
        .def_readonly("coefficients_standardized",
                      &predictor::PredictorReport::coefficients_standardized)
        .def_readonly("intercept", &predictor::PredictorReport::intercept)
        .def_readonly("r_squared", &predictor::PredictorReport::r_squared)
        .def_readonly("ranking", &predictor::PredictorReport::ranking)
        .def_readonly("means", &predictor::PredictorReport::means)
        .def_readonly("stds", &predictor::PredictorReport::stds);

    m.def(
        "fit_linear",
        [](const predictor::FactorMatrix& matrix, bool interactions) {
            return predictor::fit_linear(matrix, {interactions});
        },
        py::arg("matrix"), py::arg("interactions") = false);
    m.def("rank_predictors", &predictor::rank_predictors, py::arg("report"), py::arg("min_abs"));

    py::class_<predictor::CorrelationMatrix>(m, "CorrelationMatrix")
        .def_readonly("names", &predictor::CorrelationMatrix::names)
        .def_readonly("dim", &predictor::CorrelationMatrix::dim)
        .def("at", &predictor::CorrelationMatrix::at, py::arg("i"), py::arg("j"))
        .def("rows", [](const predictor::CorrelationMatrix& matrix) {
            std::vector<std::vector<double>> rows(matrix.dim, std::vector<double>(matrix.dim));
            for (std::size_t i = 0; i < matrix.dim; ++i) {
                for (std::size_t j = 0; j < matrix.dim; ++j) rows[i][j] = matrix.at(i, j);
            }
            return rows;
        });

    m.def("correlation_matrix", &predictor::correlation_matrix, py::arg("matrix"),
          py::arg("include_target") = false);

    py::class_<predictor::CorrelationPair>(m, "CorrelationPair")
        .def_readonly("i", &predictor::CorrelationPair::i)
        .def_readonly("j", &predictor::CorrelationPair::j)
        .def_readonly("r", &predictor::CorrelationPair::r);

    m.def("significant_correlations", &predictor::significant_correlations, py::arg("matrix"),
          py::arg("m_obs"), py::arg("alpha") = 0.05);

    py::class_<predictor::SequentialEstimate>(m, "SequentialEstimate")
        .def(py::init([](double mean, double variance, int n_obs) {
                 return predictor::SequentialEstimate{mean, variance, n_obs};
             }),
             py::arg("mean") = 0.0, py::arg("variance") = 1.0, py::arg("n_obs") = 0)
        .def_readonly("mean", &predictor::SequentialEstimate::mean)
        .def_readonly("variance", &predictor::SequentialEstimate::variance)
        .def_readonly("n_obs", &predictor::SequentialEstimate::n_obs);

    m.def("sequential_update", &predictor::sequential_update, py::arg("prior"),
          py::arg("observation"), py::arg("obs_variance"));

    // -- activity -----------------------------------------------------------------
    py::class_<activity::AccelSample>(m, "AccelSample")
        .def(py::init([](std::string subject_id, std::string sensor_id, std::string body_location,
                         double t, double ax, double ay, double az) {
                 return activity::AccelSample{std::move(subject_id),     std::move(sensor_id),
                                              std::move(body_location), t, ax, ay, az};
             }),
             py::arg("subject_id"), py::arg("sensor_id"), py::arg("body_location"), py::arg("t"),
             py::arg("ax"), py::arg("ay"), py::arg("az"))
        .def_readonly("subject_id", &activity::AccelSample::subject_id)
        .def_readonly("sensor_id", &activity::AccelSample::sensor_id)
        .def_readonly("body_location", &activity::AccelSample::body_location)
        .def_readonly("t", &activity::AccelSample::t)
        .def_readonly("ax", &activity::AccelSample::ax)
        .def_readonly("ay", &activity::AccelSample::ay)
        .def_readonly("az", &activity::AccelSample::az);

    py::class_<activity::ActivityFeatures>(m, "ActivityFeatures")
        .def_readonly("sensor_id", &activity::ActivityFeatures::sensor_id)
        .def_readonly("body_location", &activity::ActivityFeatures::body_location)
        .def_readonly("window_start_t", &activity::ActivityFeatures::window_start_t)
        .def_readonly("window_end_t", &activity::ActivityFeatures::window_end_t)
        .def_readonly("mean_magnitude", &activity::ActivityFeatures::mean_magnitude)
        .def_readonly("variance", &activity::ActivityFeatures::variance)
        .def_readonly("rms_jerk", &activity::ActivityFeatures::rms_jerk);

    m.def("window_features", &activity::window_features, py::arg("stream"), py::arg("window"));

    py::class_<activity::KMeansResult>(m, "KMeansResult")
        .def_readonly("assignments", &activity::KMeansResult::assignments)
        .def_readonly("centroids", &activity::KMeansResult::centroids)
        .def_readonly("within_ss", &activity::KMeansResult::within_ss)
        .def_readonly("iterations", &activity::KMeansResult::iterations)
        .def_readonly("ss_history", &activity::KMeansResult::ss_history);

    m.def("kmeans", &activity::kmeans, py::arg("points"), py::arg("k"), py::arg("seed") = 0);
    m.def("load_distribution", &activity::load_distribution, py::arg("features"));

    // -- simgen ----------------------------------------------------------------
    m.def(
        "gen_recovery",
        [](double a, double d, double theta, double noise_sigma, int n, double dt,
           std::uint64_t seed, const std::string& subject_id, const std::string& channel,
           const std::string& unit) {
            simgen::RecoveryParams params{a, d, theta, noise_sigma, dt, n, subject_id, channel, unit};
            return simgen::gen_recovery(params, seed);
        },
        py::arg("a"), py::arg("d"), py::arg("theta"), py::arg("noise_sigma"), py::arg("n"),
        py::arg("dt"), py::arg("seed"), py::arg("subject_id") = "sim",
        py::arg("channel") = "heart_rate", py::arg("unit") = "bpm");
    m.def(
        "gen_drift",
        [](double start_value, double slope, double noise_sigma, int n, double dt,
           std::uint64_t seed, const std::string& subject_id, const std::string& channel,
           const std::string& unit) {
            simgen::DriftParams params{start_value, slope,      noise_sigma, dt, n,
                                       subject_id,  channel, unit};
            return simgen::gen_drift(params, seed);
        },
        py::arg("start_value"), py::arg("slope"), py::arg("noise_sigma"), py::arg("n"),
        py::arg("dt"), py::arg("seed"), py::arg("subject_id") = "sim",
        py::arg("channel") = "indicator", py::arg("unit") = "units");
    m.def(
        "gen_panel",
        [](std::vector<double> true_coefficients, int m_obs, double noise_sigma,
           std::uint64_t seed) {
            simgen::PanelParams params{std::move(true_coefficients), m_obs, noise_sigma};
            return simgen::gen_panel(params, seed);
        },
        py::arg("true_coefficients"), py::arg("m"), py::arg("noise_sigma"), py::arg("seed"));

    py::class_<simgen::LocationProfile>(m, "LocationProfile")
        .def(py::init([](std::string body_location, double amplitude, double frequency_hz,
                         double noise_sigma) {
                 return simgen::LocationProfile{std::move(body_location), amplitude, frequency_hz,
                                                noise_sigma};
             }),
             py::arg("body_location"), py::arg("amplitude"), py::arg("frequency_hz") = 1.0,
             py::arg("noise_sigma") = 0.0)
        .def_readonly("body_location", &simgen::LocationProfile::body_location)
        .def_readonly("amplitude", &simgen::LocationProfile::amplitude)
        .def_readonly("frequency_hz", &simgen::LocationProfile::frequency_hz)
        .def_readonly("noise_sigma", &simgen::LocationProfile::noise_sigma);

    m.def(
        "gen_accel",
        [](std::vector<simgen::LocationProfile> profiles, int n, double dt, std::uint64_t seed,
           const std::string& subject_id) {
            simgen::AccelParams params{std::move(profiles), n, dt, subject_id};
            return simgen::gen_accel(params, seed);
        },
        py::arg("profiles"), py::arg("n"), py::arg("dt"), py::arg("seed"),
        py::arg("subject_id") = "sim");

    // -- stats -------------------------------------------------------------------
    m.def("normal_quantile", &stats::normal_quantile, py::arg("p"));
    m.def("t_quantile", &stats::t_quantile, py::arg("p"), py::arg("dof"));

    m.attr("__version__") = "0.1.0";
}
