#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "biomon/activity.hpp"
#include "biomon/monitor.hpp"
#include "biomon/predictor.hpp"
#include "biomon/recovery.hpp"
#include "biomon/types.hpp"

namespace biomon::io {

// %.17g — enough digits that reading the text back reproduces the exact
// double, which keeps regenerated files byte-identical.
std::string format_double(double value);

// Biomarker table: CSV header `subject_id,channel,t,value,unit`, or NDJSON
// with those five keys per line. No quoting; identifiers must not contain
// commas. All readers throw ParseError with a line number.
std::vector<BiomarkerSample> read_biomarker_csv(std::istream& in);
std::vector<BiomarkerSample> read_biomarker_ndjson(std::istream& in);
void write_biomarker_csv(std::ostream& out, const BiomarkerSeries& series);
void write_biomarker_ndjson(std::ostream& out, const BiomarkerSeries& series);

// Reads a biomarker file ("-" = stdin; .ndjson/.jsonl picks NDJSON, anything
// else CSV), validates, and re-zeroes time to the first sample, since model
// time is relative seconds.
BiomarkerSeries load_series(const std::string& path);

// Factor panel CSV: header row with factor names; an optional leading
// subject_id column is skipped; `target_column` names the target.
predictor::FactorMatrix read_factor_csv(std::istream& in, const std::string& target_column);
void write_factor_csv(std::ostream& out, const predictor::FactorMatrix& matrix);

// Accelerometer CSV: header `subject_id,sensor_id,body_location,t,ax,ay,az`.
std::vector<activity::AccelSample> read_accel_csv(std::istream& in);
void write_accel_csv(std::ostream& out, const std::vector<activity::AccelSample>& stream);

// Flat INI-style run configuration:
//
//   [band <channel>]            one section per channel
//   lower_normal = 75           any subset of the four limits
//   upper_normal = 200
//   lower_risk / upper_risk
//   confidence = 0.95
//
//   [fit]      tol, max_iter, hrrt_fraction
//   [monitor]  window, horizon, confidence
//   [predictor] min_abs, alpha, interactions (true/false)
//
// '#' and ';' start comments. Unknown sections or keys are ParseErrors.
struct RunConfig {
    std::map<std::string, monitor::ThresholdBand> bands;
    recovery::FitConfig fit;
    double hrrt_fraction = 0.05;
    double window = 60.0;
    double horizon = 120.0;
    double confidence = 0.95;
    double min_abs = 0.1;
    double alpha = 0.05;
    bool interactions = false;
};

RunConfig read_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace biomon::io
