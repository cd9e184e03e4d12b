#pragma once

#include <stdexcept>
#include <string>

namespace biomon {

// Base class for everything this library throws on bad input or a failed
// computation. Callers that only need a coarse split can catch ParseError
// (malformed files / config) separately from the rest.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -- series validation ------------------------------------------------------

class EmptySeries : public Error {
public:
    EmptySeries() : Error("series is empty") {}
};

class DuplicateTimestamp : public Error {
public:
    explicit DuplicateTimestamp(double t)
        : Error("duplicate timestamp t=" + std::to_string(t)), t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

class MixedChannel : public Error {
public:
    MixedChannel(const std::string& expected, const std::string& found)
        : Error("mixed channels in series: expected '" + expected + "', found '" + found + "'"),
          expected_(expected), found_(found) {}
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    std::string expected_;
    std::string found_;
};

class MixedSubject : public Error {
public:
    MixedSubject(const std::string& expected, const std::string& found)
        : Error("mixed subjects in series: expected '" + expected + "', found '" + found + "'") {}
};

class NonFiniteValue : public Error {
public:
    explicit NonFiniteValue(std::size_t index)
        : Error("non-finite value at index " + std::to_string(index)), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class NegativeTime : public Error {
public:
    explicit NegativeTime(double t)
        : Error("negative time t=" + std::to_string(t)) {}
};

// -- recovery fitting --------------------------------------------------------

class TooFewPoints : public Error {
public:
    explicit TooFewPoints(std::size_t n)
        : Error("too few points for fit: " + std::to_string(n) + " (need >= 4)"), n_(n) {}
    std::size_t n() const { return n_; }

private:
    std::size_t n_;
};

class DegenerateElevation : public Error {
public:
    DegenerateElevation()
        : Error("no recovery signal: fitted elevation d - a is below 1 bpm") {}
};

class InvalidFraction : public Error {
public:
    explicit InvalidFraction(double p)
        : Error("fraction must be in (0, 1), got " + std::to_string(p)) {}
};

// -- monitoring --------------------------------------------------------------

class TooFewPointsInWindow : public Error {
public:
    explicit TooFewPointsInWindow(std::size_t n)
        : Error("too few points in trend window: " + std::to_string(n) + " (need >= 2)") {}
};

class PastTime : public Error {
public:
    PastTime(double t_future, double window_end)
        : Error("forecast time " + std::to_string(t_future) +
                " precedes window end " + std::to_string(window_end)) {}
};

// -- predictors ---------------------------------------------------------------

class ZeroVarianceFactor : public Error {
public:
    explicit ZeroVarianceFactor(const std::string& name)
        : Error("factor '" + name + "' has zero variance"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class RankDeficientDesign : public Error {
public:
    RankDeficientDesign()
        : Error("design matrix is rank deficient") {}
};

class TooFewObservations : public Error {
public:
    explicit TooFewObservations(const std::string& what) : Error(what) {}
};

class NonPositiveVariance : public Error {
public:
    explicit NonPositiveVariance(double v)
        : Error("variance must be > 0, got " + std::to_string(v)) {}
};

// -- activity ------------------------------------------------------------------

class UnorderedStream : public Error {
public:
    explicit UnorderedStream(const std::string& sensor_id)
        : Error("samples for sensor '" + sensor_id + "' are not strictly time-ordered") {}
};

class KTooLarge : public Error {
public:
    KTooLarge(int k, std::size_t distinct)
        : Error("k=" + std::to_string(k) + " exceeds number of distinct points (" +
                std::to_string(distinct) + ")") {}
};

class EmptyInput : public Error {
public:
    EmptyInput() : Error("input is empty") {}
};

// -- generic parameter / file problems ----------------------------------------

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")") {}
};

}  // namespace biomon
