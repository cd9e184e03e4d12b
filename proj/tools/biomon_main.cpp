// biomon command-line frontend: synthetic data generation, recovery fitting,
// threshold monitoring, predictor ranking and activity analysis over CSV and
// NDJSON files. Exit codes: 0 success, 2 input/config error, 3 computation
// error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "biomon/activity.hpp"
#include "biomon/errors.hpp"
#include "biomon/io.hpp"
#include "biomon/monitor.hpp"
#include "biomon/predictor.hpp"
#include "biomon/recovery.hpp"
#include "biomon/simgen.hpp"
#include "biomon/types.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitComputation = 3;

const CLI::Validator OpenUnitInterval(
    [](std::string& s) {
        try {
            const double v = std::stod(s);
            if (v > 0.0 && v < 1.0) return std::string();
        } catch (const std::exception&) {
        }
        return std::string("value must be strictly between 0 and 1");
    },
    "FLOAT in (0,1)");

struct SimulateOptions {
    biomon::simgen::SimKind kind = biomon::simgen::SimKind::Recovery;
    double a = 60.0, d = 180.0, theta = 0.05;
    double start = 100.0, slope = 0.0;
    double sigma = 0.0;
    double dt = 1.0;
    int n = 120;
    std::uint64_t seed = 0;
    std::string coeffs;
    std::vector<std::string> profiles;
    std::string subject = "sim";
    std::string channel;
    std::string format = "csv";
    std::string out;
};

biomon::simgen::SimSpec build_spec(const SimulateOptions& opt) {
    using biomon::simgen::SimKind;
    biomon::simgen::SimSpec spec;
    spec.kind = opt.kind;
    spec.seed = opt.seed;
    spec.n = opt.n;
    switch (opt.kind) {
        case SimKind::Recovery:
            spec.parameters = {{"a", opt.a},         {"d", opt.d},   {"theta", opt.theta},
                               {"sigma", opt.sigma}, {"dt", opt.dt}};
            break;
        case SimKind::Drift:
            spec.parameters = {{"start", opt.start},
                               {"slope", opt.slope},
                               {"sigma", opt.sigma},
                               {"dt", opt.dt}};
            break;
        case SimKind::Panel: {
            spec.parameters["sigma"] = opt.sigma;
            std::istringstream ss(opt.coeffs);
            std::string item;
            std::size_t j = 0;
            while (std::getline(ss, item, ',')) {
                try {
                    spec.parameters["b" + std::to_string(++j)] = std::stod(item);
                } catch (const std::exception&) {
                    throw biomon::InvalidParams("--coeffs: expected comma-separated numbers");
                }
            }
            if (j == 0) {
                throw biomon::InvalidParams("--coeffs: expected comma-separated numbers");
            }
            break;
        }
        case SimKind::Accel: {
            spec.parameters["dt"] = opt.dt;
            for (const std::string& profile : opt.profiles) {
                // location:amplitude[:frequency[:sigma]]
                std::istringstream ss(profile);
                std::string loc, amp, freq, sigma;
                std::getline(ss, loc, ':');
                std::getline(ss, amp, ':');
                std::getline(ss, freq, ':');
                std::getline(ss, sigma, ':');
                if (loc.empty() || amp.empty()) {
                    throw biomon::InvalidParams(
                        "--profile: expected location:amplitude[:frequency[:sigma]]");
                }
                try {
                    spec.parameters["amp:" + loc] = std::stod(amp);
                    if (!freq.empty()) spec.parameters["freq:" + loc] = std::stod(freq);
                    if (!sigma.empty()) spec.parameters["sigma:" + loc] = std::stod(sigma);
                } catch (const std::exception&) {
                    throw biomon::InvalidParams("--profile '" + profile + "': bad number");
                }
            }
            break;
        }
    }
    return spec;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw biomon::ParseError("cannot open output file '" + path + "'");
    }
    return out;
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        auto out = open_output(out_path);
        out << report.dump(2) << '\n';
        std::cout << report.dump(2) << '\n';
    }
}

int cmd_simulate(const SimulateOptions& opt) {
    using biomon::simgen::SimKind;
    if (opt.kind == SimKind::Recovery && !(opt.a < opt.d)) {
        std::cerr << "error: --a must be below --d\n";
        return kExitInput;
    }
    biomon::simgen::SimSpec spec = build_spec(opt);
    biomon::simgen::Generated data = biomon::simgen::generate(spec);

    auto out = open_output(opt.out);
    if (auto* series = std::get_if<biomon::BiomarkerSeries>(&data)) {
        biomon::BiomarkerSeries named = *series;
        if (!opt.channel.empty() || opt.subject != "sim") {
            std::vector<biomon::BiomarkerSample> samples = series->samples();
            for (auto& s : samples) {
                s.subject_id = opt.subject;
                if (!opt.channel.empty()) s.channel = opt.channel;
            }
            named = biomon::validate_series(std::move(samples));
        }
        if (opt.format == "ndjson") {
            biomon::io::write_biomarker_ndjson(out, named);
        } else {
            biomon::io::write_biomarker_csv(out, named);
        }
    } else if (auto* matrix = std::get_if<biomon::predictor::FactorMatrix>(&data)) {
        biomon::io::write_factor_csv(out, *matrix);
    } else {
        biomon::io::write_accel_csv(out, std::get<std::vector<biomon::activity::AccelSample>>(data));
    }

    const json summary = {{"kind", biomon::simgen::to_string(spec.kind)},
                          {"n", spec.n},
                          {"seed", spec.seed},
                          {"path", opt.out}};
    std::cout << summary.dump() << '\n';
    return kExitOk;
}

struct FitRecoveryOptions {
    std::string input;
    std::string config_path;
    double tol = 1e-8;
    int max_iter = 200;
    double hrrt_fraction = 0.05;
    std::string out;
};

int cmd_fit_recovery(const FitRecoveryOptions& opt) {
    biomon::BiomarkerSeries series = biomon::io::load_series(opt.input);
    try {
        biomon::recovery::FitConfig config{opt.tol, opt.max_iter};
        const biomon::recovery::FitResult fit = biomon::recovery::fit_recovery(series, config);
        const double hrrt = biomon::recovery::recovery_time(fit.model, opt.hrrt_fraction);
        json report = {{"subject_id", series.subject_id()},
                       {"channel", series.channel()},
                       {"n", series.size()},
                       {"a", fit.model.a},
                       {"d", fit.model.d},
                       {"theta", fit.model.theta},
                       {"hrrt", hrrt},
                       {"hrrt_fraction", opt.hrrt_fraction},
                       {"rss", fit.rss},
                       {"residual_std", fit.residual_std},
                       {"iterations", fit.iterations},
                       {"converged", fit.converged}};
        if (!fit.converged) {
            report["warning"] = "fit did not converge; parameters are best-so-far";
        }
        emit(report, opt.out);
        return kExitOk;
    } catch (const biomon::TooFewPoints& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const biomon::DegenerateElevation& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const biomon::InvalidFraction& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const biomon::InvalidParams& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return kExitComputation;
    }
}

struct MonitorOptions {
    std::string input;
    std::string config_path;
    std::optional<double> window;
    std::optional<double> horizon;
    std::optional<double> confidence;
    std::string out;
};

json alert_to_json(const biomon::monitor::Alert& alert) {
    json obj = {{"type", "alert"},
                {"subject_id", alert.subject_id},
                {"channel", alert.channel},
                {"kind", biomon::monitor::to_string(alert.kind)},
                {"t_issued", alert.t_issued},
                {"detail", alert.detail}};
    if (alert.t_predicted) {
        obj["t_predicted"] = *alert.t_predicted;
    }
    return obj;
}

int cmd_monitor(const MonitorOptions& opt) {
    const biomon::io::RunConfig config = biomon::io::load_config(opt.config_path);
    biomon::BiomarkerSeries series = biomon::io::load_series(opt.input);

    const auto band_it = config.bands.find(series.channel());
    if (band_it == config.bands.end()) {
        std::cerr << "error: no band configured for channel '" << series.channel() << "'\n";
        return kExitInput;
    }
    biomon::monitor::ThresholdBand band = band_it->second;
    if (opt.confidence) band.confidence = *opt.confidence;
    const double window = opt.window.value_or(config.window);
    const double horizon = opt.horizon.value_or(config.horizon);

    const biomon::monitor::ReplayResult replay =
        biomon::monitor::replay_alerts(series, band, window, horizon);

    std::ofstream file_out;
    std::ostream* alert_stream = &std::cout;
    if (!opt.out.empty()) {
        file_out = open_output(opt.out);
        alert_stream = &file_out;
    }
    for (const auto& alert : replay.alerts) {
        (*alert_stream) << alert_to_json(alert).dump() << '\n';
    }

    json summary = {{"type", "summary"},
                    {"subject_id", series.subject_id()},
                    {"channel", series.channel()},
                    {"zone", biomon::monitor::to_string(replay.final_zone)},
                    {"alerts", replay.alerts.size()}};
    std::ostringstream text;
    text << series.channel() << " is currently " << biomon::monitor::to_string(replay.final_zone);
    if (replay.final_trend) {
        summary["trend_slope"] = replay.final_trend->slope;
        summary["trend_residual_std"] = replay.final_trend->residual_std;
        if (replay.final_trend->slope > 0.0) {
            text << ", trending up";
        } else if (replay.final_trend->slope < 0.0) {
            text << ", trending down";
        } else {
            text << ", holding steady";
        }
    } else {
        summary["trend_slope"] = nullptr;
    }
    if (replay.final_crossing) {
        const auto& crossing = *replay.final_crossing;
        summary["predicted_crossing"] = {{"t", crossing.t_cross},
                                         {"limit", biomon::monitor::to_string(crossing.limit)},
                                         {"limit_value", crossing.limit_value},
                                         {"direction", biomon::monitor::to_string(crossing.direction)}};
        text << "; expected to reach the " << biomon::monitor::to_string(crossing.limit)
             << " limit (" << crossing.limit_value << ") around t=" << crossing.t_cross << " s";
    } else {
        summary["predicted_crossing"] = nullptr;
        text << "; no limit crossing expected within the horizon";
    }
    summary["text"] = text.str();
    std::cout << summary.dump() << '\n';
    return kExitOk;
}

struct PredictorsOptions {
    std::string input;
    std::string target = "target";
    double min_abs = 0.1;
    double alpha = 0.05;
    bool interactions = false;
    bool correlate = false;
    std::string out;
};

int cmd_predictors(const PredictorsOptions& opt) {
    std::ifstream in(opt.input);
    if (!in) {
        std::cerr << "error: cannot open '" << opt.input << "'\n";
        return kExitInput;
    }
    const biomon::predictor::FactorMatrix matrix = biomon::io::read_factor_csv(in, opt.target);
    const biomon::predictor::PredictorReport report =
        biomon::predictor::fit_linear(matrix, {opt.interactions});
    const auto predictors = biomon::predictor::rank_predictors(report, opt.min_abs);

    json out = {{"target", opt.target},
                {"m", matrix.m},
                {"terms", report.term_names},
                {"coefficients_standardized", report.coefficients_standardized},
                {"intercept", report.intercept},
                {"r_squared", report.r_squared},
                {"ranking", report.ranking},
                {"means", report.means},
                {"stds", report.stds},
                {"min_abs", opt.min_abs},
                {"predictors", json::array()}};
    for (const auto& [name, b] : predictors) {
        out["predictors"].push_back({name, b});
    }

    if (opt.correlate) {
        const auto corr = biomon::predictor::correlation_matrix(matrix, true);
        json rows = json::array();
        for (std::size_t i = 0; i < corr.dim; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < corr.dim; ++j) row.push_back(corr.at(i, j));
            rows.push_back(row);
        }
        json significant = json::array();
        for (const auto& pair : biomon::predictor::significant_correlations(corr, matrix.m, opt.alpha)) {
            significant.push_back({{"i", pair.i},
                                   {"j", pair.j},
                                   {"names", {corr.names[pair.i], corr.names[pair.j]}},
                                   {"r", pair.r}});
        }
        out["correlation"] = {{"names", corr.names},
                              {"matrix", rows},
                              {"alpha", opt.alpha},
                              {"significant", significant}};
    }
    emit(out, opt.out);
    return kExitOk;
}

struct ActivityOptions {
    std::string input;
    double window = 10.0;
    std::optional<int> k;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_activity(const ActivityOptions& opt) {
    std::ifstream in(opt.input);
    if (!in) {
        std::cerr << "error: cannot open '" << opt.input << "'\n";
        return kExitInput;
    }
    const auto stream = biomon::io::read_accel_csv(in);
    const auto features = biomon::activity::window_features(stream, opt.window);
    const auto ranking = biomon::activity::load_distribution(features);

    json report = {{"window", opt.window},
                   {"features", features.size()},
                   {"load_ranking", json::array()}};
    for (const auto& [location, score] : ranking) {
        report["load_ranking"].push_back({{"body_location", location}, {"score", score}});
    }

    if (opt.k) {
        std::vector<std::vector<double>> points;
        points.reserve(features.size());
        for (const auto& f : features) {
            points.push_back({f.mean_magnitude, f.variance, f.rms_jerk});
        }
        const auto clusters = biomon::activity::kmeans(points, *opt.k, opt.seed);
        report["clusters"] = {{"k", *opt.k},
                              {"seed", opt.seed},
                              {"within_ss", clusters.within_ss},
                              {"iterations", clusters.iterations}};
        if (!opt.out.empty()) {
            auto out = open_output(opt.out);
            out << "sensor_id,body_location,window_start_t,window_end_t,mean_magnitude,variance,"
                   "rms_jerk,cluster\n";
            for (std::size_t i = 0; i < features.size(); ++i) {
                const auto& f = features[i];
                out << f.sensor_id << ',' << f.body_location << ','
                    << biomon::io::format_double(f.window_start_t) << ','
                    << biomon::io::format_double(f.window_end_t) << ','
                    << biomon::io::format_double(f.mean_magnitude) << ','
                    << biomon::io::format_double(f.variance) << ','
                    << biomon::io::format_double(f.rms_jerk) << ',' << clusters.assignments[i]
                    << '\n';
            }
        }
    }
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biomon — biomarker monitoring, recovery fitting and activity analysis"};
    app.require_subcommand(1);

    // simulate
    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate a deterministic synthetic dataset");
    simulate->require_subcommand(1);

    CLI::App* sim_recovery = simulate->add_subcommand("recovery", "Exponential heart-rate recovery");
    sim_recovery->add_option("--a", sim.a, "Resting heart rate (bpm)");
    sim_recovery->add_option("--d", sim.d, "Post-exercise heart rate (bpm)");
    sim_recovery->add_option("--theta", sim.theta, "Recovery rate (1/s)")->check(CLI::PositiveNumber);
    sim_recovery->add_option("--sigma", sim.sigma, "Noise std (bpm)")->check(CLI::NonNegativeNumber);
    sim_recovery->add_option("--n", sim.n, "Sample count")->check(CLI::PositiveNumber);
    sim_recovery->add_option("--dt", sim.dt, "Sample spacing (s)")->check(CLI::PositiveNumber);
    sim_recovery->add_option("--seed", sim.seed, "RNG seed");
    sim_recovery->add_option("--subject", sim.subject, "Subject id");
    sim_recovery->add_option("--channel", sim.channel, "Channel name override");
    sim_recovery->add_option("--format", sim.format, "csv or ndjson")
        ->check(CLI::IsMember({"csv", "ndjson"}));
    sim_recovery->add_option("--out", sim.out, "Output file")->required();

    CLI::App* sim_drift = simulate->add_subcommand("drift", "Linear drift indicator");
    sim_drift->add_option("--start", sim.start, "Value at t=0");
    sim_drift->add_option("--slope", sim.slope, "Drift per second");
    sim_drift->add_option("--sigma", sim.sigma, "Noise std")->check(CLI::NonNegativeNumber);
    sim_drift->add_option("--n", sim.n, "Sample count")->check(CLI::PositiveNumber);
    sim_drift->add_option("--dt", sim.dt, "Sample spacing (s)")->check(CLI::PositiveNumber);
    sim_drift->add_option("--seed", sim.seed, "RNG seed");
    sim_drift->add_option("--subject", sim.subject, "Subject id");
    sim_drift->add_option("--channel", sim.channel, "Channel name override");
    sim_drift->add_option("--format", sim.format, "csv or ndjson")
        ->check(CLI::IsMember({"csv", "ndjson"}));
    sim_drift->add_option("--out", sim.out, "Output file")->required();

    CLI::App* sim_panel = simulate->add_subcommand("panel", "Factor panel with planted coefficients");
    sim_panel->add_option("--coeffs", sim.coeffs, "Planted coefficients, e.g. 2,0,-1.5")->required();
    sim_panel->add_option("--m", sim.n, "Observation count")->check(CLI::PositiveNumber);
    sim_panel->add_option("--sigma", sim.sigma, "Target noise std")->check(CLI::NonNegativeNumber);
    sim_panel->add_option("--seed", sim.seed, "RNG seed");
    sim_panel->add_option("--out", sim.out, "Output file")->required();

    CLI::App* sim_accel = simulate->add_subcommand("accel", "Accelerometer streams per body location");
    sim_accel
        ->add_option("--profile", sim.profiles,
                     "location:amplitude[:frequency[:sigma]], repeatable")
        ->required();
    sim_accel->add_option("--n", sim.n, "Samples per sensor")->check(CLI::PositiveNumber);
    sim_accel->add_option("--dt", sim.dt, "Sample spacing (s)")->check(CLI::PositiveNumber);
    sim_accel->add_option("--seed", sim.seed, "RNG seed");
    sim_accel->add_option("--subject", sim.subject, "Subject id");
    sim_accel->add_option("--out", sim.out, "Output file")->required();

    // fit-recovery
    FitRecoveryOptions fit;
    CLI::App* fit_cmd = app.add_subcommand("fit-recovery", "Fit the recovery model to a series");
    fit_cmd->add_option("input", fit.input, "Biomarker CSV/NDJSON ('-' = stdin)")->required();
    fit_cmd->add_option("--config", fit.config_path, "Run configuration file");
    auto* fit_tol = fit_cmd->add_option("--tol", fit.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    auto* fit_iter = fit_cmd->add_option("--max-iter", fit.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    auto* fit_frac = fit_cmd->add_option("--hrrt-fraction", fit.hrrt_fraction,
                                         "Residual elevation fraction for the recovery time")
                         ->check(OpenUnitInterval);
    fit_cmd->add_option("--out", fit.out, "Write the JSON report here as well");

    // monitor
    MonitorOptions mon;
    CLI::App* mon_cmd = app.add_subcommand("monitor", "Replay a series against threshold bands");
    mon_cmd->add_option("input", mon.input, "Biomarker CSV/NDJSON ('-' = stdin)")->required();
    mon_cmd->add_option("--config", mon.config_path, "Run configuration with [band] sections")
        ->required();
    double mon_window = 0.0, mon_horizon = 0.0, mon_confidence = 0.0;
    auto* mon_window_opt = mon_cmd->add_option("--window", mon_window, "Trend window (s)")
                               ->check(CLI::PositiveNumber);
    auto* mon_horizon_opt = mon_cmd->add_option("--horizon", mon_horizon, "Forecast horizon (s)")
                                ->check(CLI::PositiveNumber);
    auto* mon_conf_opt = mon_cmd->add_option("--confidence", mon_confidence,
                                             "Prediction-interval confidence in (0,1)")
                             ->check(OpenUnitInterval);
    mon_cmd->add_option("--out", mon.out, "Write the alert NDJSON here instead of stdout");

    // predictors
    PredictorsOptions pred;
    CLI::App* pred_cmd = app.add_subcommand("predictors", "Standardized regression and ranking");
    pred_cmd->add_option("input", pred.input, "Factor CSV")->required();
    pred_cmd->add_option("--target", pred.target, "Target column name");
    pred_cmd->add_option("--min-abs", pred.min_abs, "Coefficient magnitude cutoff")
        ->check(CLI::NonNegativeNumber);
    pred_cmd->add_option("--alpha", pred.alpha, "Correlation significance level")
        ->check(OpenUnitInterval);
    pred_cmd->add_flag("--interactions", pred.interactions, "Add pairwise interaction terms");
    pred_cmd->add_flag("--correlate", pred.correlate, "Include the correlation matrix");
    pred_cmd->add_option("--out", pred.out, "Write the JSON report here as well");

    // activity
    ActivityOptions act;
    CLI::App* act_cmd = app.add_subcommand("activity", "Accelerometer load and clustering");
    act_cmd->add_option("input", act.input, "Accelerometer CSV")->required();
    act_cmd->add_option("--window", act.window, "Tumbling window (s)")->check(CLI::PositiveNumber);
    int act_k = 0;
    auto* act_k_opt = act_cmd->add_option("--k", act_k, "Cluster the windows into k groups")
                          ->check(CLI::PositiveNumber);
    act_cmd->add_option("--seed", act.seed, "k-means seed");
    act_cmd->add_option("--out", act.out, "Cluster assignments CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (simulate->parsed()) {
            if (sim_recovery->parsed()) sim.kind = biomon::simgen::SimKind::Recovery;
            if (sim_drift->parsed()) sim.kind = biomon::simgen::SimKind::Drift;
            if (sim_panel->parsed()) sim.kind = biomon::simgen::SimKind::Panel;
            if (sim_accel->parsed()) sim.kind = biomon::simgen::SimKind::Accel;
            return cmd_simulate(sim);
        }
        if (fit_cmd->parsed()) {
            if (!fit.config_path.empty()) {
                const auto config = biomon::io::load_config(fit.config_path);
                if (fit_tol->count() == 0) fit.tol = config.fit.tol;
                if (fit_iter->count() == 0) fit.max_iter = config.fit.max_iter;
                if (fit_frac->count() == 0) fit.hrrt_fraction = config.hrrt_fraction;
            }
            return cmd_fit_recovery(fit);
        }
        if (mon_cmd->parsed()) {
            if (mon_window_opt->count() > 0) mon.window = mon_window;
            if (mon_horizon_opt->count() > 0) mon.horizon = mon_horizon;
            if (mon_conf_opt->count() > 0) mon.confidence = mon_confidence;
            return cmd_monitor(mon);
        }
        if (pred_cmd->parsed()) {
            return cmd_predictors(pred);
        }
        if (act_cmd->parsed()) {
            if (act_k_opt->count() > 0) act.k = act_k;
            return cmd_activity(act);
        }
    } catch (const biomon::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const biomon::InvalidParams& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const biomon::Error& e) {
        // remaining library errors on CLI inputs are input-shape problems
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}
