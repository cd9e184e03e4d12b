#include "biomon/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "biomon/errors.hpp"

namespace biomon::io {

using nlohmann::json;

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

// getline that tolerates CRLF and tells us the line number.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++lineno;
    return true;
}

double parse_number(const std::string& text, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) {
            throw ParseError("trailing characters in number '" + text + "'", lineno);
        }
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("expected a number, got '" + text + "'", lineno);
    } catch (const std::out_of_range&) {
        throw ParseError("number out of range: '" + text + "'", lineno);
    }
}

void expect_header(const std::vector<std::string>& fields, const std::vector<std::string>& expected,
                   std::size_t lineno) {
    if (fields != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want += ",";
            want += expected[i];
        }
        throw ParseError("expected header '" + want + "'", lineno);
    }
}

}  // namespace

std::vector<BiomarkerSample> read_biomarker_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) {
        throw ParseError("empty file", 0);
    }
    expect_header(split_csv_line(line), {"subject_id", "channel", "t", "value", "unit"}, lineno);
    std::vector<BiomarkerSample> samples;
    while (next_line(in, line, lineno)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), lineno);
        }
        BiomarkerSample s;
        s.subject_id = fields[0];
        s.channel = fields[1];
        s.t = parse_number(fields[2], lineno);
        s.value = parse_number(fields[3], lineno);
        s.unit = fields[4];
        samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<BiomarkerSample> read_biomarker_ndjson(std::istream& in) {
    std::vector<BiomarkerSample> samples;
    std::string line;
    std::size_t lineno = 0;
    while (next_line(in, line, lineno)) {
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
        }
        try {
            BiomarkerSample s;
            s.subject_id = obj.at("subject_id").get<std::string>();
            s.channel = obj.at("channel").get<std::string>();
            s.t = obj.at("t").get<double>();
            s.value = obj.at("value").get<double>();
            s.unit = obj.at("unit").get<std::string>();
            samples.push_back(std::move(s));
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad biomarker object: ") + e.what(), lineno);
        }
    }
    return samples;
}

void write_biomarker_csv(std::ostream& out, const BiomarkerSeries& series) {
    out << "subject_id,channel,t,value,unit\n";
    for (const auto& s : series.samples()) {
        out << s.subject_id << ',' << s.channel << ',' << format_double(s.t) << ','
            << format_double(s.value) << ',' << s.unit << '\n';
    }
}

void write_biomarker_ndjson(std::ostream& out, const BiomarkerSeries& series) {
    for (const auto& s : series.samples()) {
        const json obj = {{"subject_id", s.subject_id},
                          {"channel", s.channel},
                          {"t", s.t},
                          {"value", s.value},
                          {"unit", s.unit}};
        out << obj.dump() << '\n';
    }
}

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

BiomarkerSeries load_series(const std::string& path) {
    std::vector<BiomarkerSample> samples;
    const bool ndjson = has_suffix(path, ".ndjson") || has_suffix(path, ".jsonl");
    if (path == "-") {
        // No extension to go by on stdin: a leading '{' means NDJSON.
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        const std::string content = buffer.str();
        const auto first = content.find_first_not_of(" \t\r\n");
        std::istringstream ss(content);
        samples = (first != std::string::npos && content[first] == '{')
                      ? read_biomarker_ndjson(ss)
                      : read_biomarker_csv(ss);
    } else {
        std::ifstream in(path);
        if (!in) {
            throw ParseError("cannot open '" + path + "'");
        }
        samples = ndjson ? read_biomarker_ndjson(in) : read_biomarker_csv(in);
    }
    BiomarkerSeries series = validate_series(std::move(samples));
    // Model time is relative seconds; re-zero to the first sample.
    if (series.front().t != 0.0) {
        const double t0 = series.front().t;
        std::vector<BiomarkerSample> shifted = series.samples();
        for (auto& s : shifted) s.t -= t0;
        series = validate_series(std::move(shifted));
    }
    return series;
}

predictor::FactorMatrix read_factor_csv(std::istream& in, const std::string& target_column) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) {
        throw ParseError("empty file", 0);
    }
    auto header = split_csv_line(line);
    if (header.empty()) {
        throw ParseError("empty header", lineno);
    }
    const bool has_subject = header.front() == "subject_id";
    const std::size_t first_col = has_subject ? 1 : 0;

    predictor::FactorMatrix matrix;
    std::size_t target_idx = header.size();
    for (std::size_t i = first_col; i < header.size(); ++i) {
        if (header[i] == target_column) {
            target_idx = i;
        } else {
            matrix.factor_names.push_back(header[i]);
        }
    }
    if (target_idx == header.size()) {
        throw ParseError("target column '" + target_column + "' not found in header", lineno);
    }
    matrix.n = matrix.factor_names.size();
    matrix.target_name = target_column;

    while (next_line(in, line, lineno)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        }
        for (std::size_t i = first_col; i < fields.size(); ++i) {
            const double v = parse_number(fields[i], lineno);
            if (i == target_idx) {
                matrix.target.push_back(v);
            } else {
                matrix.values.push_back(v);
            }
        }
        ++matrix.m;
    }
    return matrix;
}

void write_factor_csv(std::ostream& out, const predictor::FactorMatrix& matrix) {
    for (const auto& name : matrix.factor_names) {
        out << name << ',';
    }
    out << matrix.target_name << '\n';
    for (std::size_t i = 0; i < matrix.m; ++i) {
        for (std::size_t j = 0; j < matrix.n; ++j) {
            out << format_double(matrix.at(i, j)) << ',';
        }
        out << format_double(matrix.target[i]) << '\n';
    }
}

std::vector<activity::AccelSample> read_accel_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) {
        throw ParseError("empty file", 0);
    }
    expect_header(split_csv_line(line),
                  {"subject_id", "sensor_id", "body_location", "t", "ax", "ay", "az"}, lineno);
    std::vector<activity::AccelSample> stream;
    while (next_line(in, line, lineno)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) {
            throw ParseError("expected 7 fields, got " + std::to_string(fields.size()), lineno);
        }
        activity::AccelSample s;
        s.subject_id = fields[0];
        s.sensor_id = fields[1];
        s.body_location = fields[2];
        s.t = parse_number(fields[3], lineno);
        s.ax = parse_number(fields[4], lineno);
        s.ay = parse_number(fields[5], lineno);
        s.az = parse_number(fields[6], lineno);
        stream.push_back(std::move(s));
    }
    return stream;
}

void write_accel_csv(std::ostream& out, const std::vector<activity::AccelSample>& stream) {
    out << "subject_id,sensor_id,body_location,t,ax,ay,az\n";
    for (const auto& s : stream) {
        out << s.subject_id << ',' << s.sensor_id << ',' << s.body_location << ','
            << format_double(s.t) << ',' << format_double(s.ax) << ',' << format_double(s.ay)
            << ',' << format_double(s.az) << '\n';
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& text, std::size_t lineno) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ParseError("expected true/false, got '" + text + "'", lineno);
}

}  // namespace

RunConfig read_config(std::istream& in) {
    RunConfig config;
    std::string line;
    std::size_t lineno = 0;
    std::string section;
    std::string band_channel;

    while (next_line(in, line, lineno)) {
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("unterminated section header", lineno);
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.rfind("band ", 0) == 0) {
                section = "band";
                band_channel = trim(name.substr(5));
                if (band_channel.empty()) {
                    throw ParseError("band section needs a channel name", lineno);
                }
                config.bands[band_channel].channel = band_channel;
            } else if (name == "fit" || name == "monitor" || name == "predictor") {
                section = name;
            } else {
                throw ParseError("unknown section '" + name + "'", lineno);
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", lineno);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ParseError("key '" + key + "' outside any section", lineno);
        }

        if (section == "band") {
            auto& band = config.bands[band_channel];
            if (key == "lower_normal") band.lower_normal = parse_number(value, lineno);
            else if (key == "upper_normal") band.upper_normal = parse_number(value, lineno);
            else if (key == "lower_risk") band.lower_risk = parse_number(value, lineno);
            else if (key == "upper_risk") band.upper_risk = parse_number(value, lineno);
            else if (key == "confidence") band.confidence = parse_number(value, lineno);
            else throw ParseError("unknown band key '" + key + "'", lineno);
        } else if (section == "fit") {
            if (key == "tol") config.fit.tol = parse_number(value, lineno);
            else if (key == "max_iter") config.fit.max_iter = static_cast<int>(parse_number(value, lineno));
            else if (key == "hrrt_fraction") config.hrrt_fraction = parse_number(value, lineno);
            else throw ParseError("unknown fit key '" + key + "'", lineno);
        } else if (section == "monitor") {
            if (key == "window") config.window = parse_number(value, lineno);
            else if (key == "horizon") config.horizon = parse_number(value, lineno);
            else if (key == "confidence") config.confidence = parse_number(value, lineno);
            else throw ParseError("unknown monitor key '" + key + "'", lineno);
        } else if (section == "predictor") {
            if (key == "min_abs") config.min_abs = parse_number(value, lineno);
            else if (key == "alpha") config.alpha = parse_number(value, lineno);
            else if (key == "interactions") config.interactions = parse_bool(value, lineno);
            else throw ParseError("unknown predictor key '" + key + "'", lineno);
        }
    }

    for (auto& [channel, band] : config.bands) {
        try {
            band.validate();
        } catch (const InvalidParams& e) {
            throw ParseError(e.what());
        }
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config '" + path + "'");
    }
    return read_config(in);
}

}  // namespace biomon::io
