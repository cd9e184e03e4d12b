#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace biomon::predictor {

// m observations of n factors plus the target indicator. Values are
// row-major (observation-major).
struct FactorMatrix {
    std::vector<std::string> factor_names;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> values;  // m * n, row-major
    std::vector<double> target;  // m
    std::string target_name = "target";

    double at(std::size_t row, std::size_t col) const { return values[row * n + col]; }

    // Throws TooFewObservations (m < n + 2), NonFiniteValue, InvalidParams
    // (shape mismatch or duplicate factor names).
    void validate() const;
};

struct Standardized {
    std::vector<double> values;  // m * n z-scores, row-major
    std::vector<double> means;   // per factor
    std::vector<double> stds;    // per factor, sample (n-1) normalization
};

// Column-wise z-scoring. Throws ZeroVarianceFactor for a (numerically)
// constant column.
Standardized standardize(const FactorMatrix& matrix);

struct FitOptions {
    bool interactions = false;  // add pairwise products of standardized factors
};

// term_names / coefficients_standardized cover the factors and, when enabled,
// the interaction columns (named "a*b"). ranking orders all terms by |b|
// descending, name ascending on ties. means/stds are the per-factor
// standardization constants; intercept is on the raw target scale.
struct PredictorReport {
    std::vector<std::string> term_names;
    std::vector<double> coefficients_standardized;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::string> ranking;
    std::vector<double> means;
    std::vector<double> stds;
};

// Regresses the raw target on [1 | z-scored factors | optional pairwise
// products] via Householder QR (never the normal equations). Throws
// RankDeficientDesign and TooFewObservations on top of standardize()'s
// errors.
PredictorReport fit_linear(const FactorMatrix& matrix, const FitOptions& options = {});

// Terms with |b| >= min_abs, strongest first; ties broken by name.
std::vector<std::pair<std::string, double>> rank_predictors(const PredictorReport& report,
                                                            double min_abs);

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::size_t dim = 0;
    std::vector<double> r;  // dim * dim, row-major, symmetric, unit diagonal

    double at(std::size_t i, std::size_t j) const { return r[i * dim + j]; }
};

// Pearson correlations between factor columns (and the target as the last
// column when include_target). Throws ZeroVarianceFactor.
CorrelationMatrix correlation_matrix(const FactorMatrix& matrix, bool include_target);

struct CorrelationPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double r = 0.0;
};

// Pairs i < j whose t-statistic |r| sqrt((m-2)/(1-r^2)) exceeds the two-sided
// Student-t critical value at `alpha` with m-2 dof. |r| = 1 is always
// significant. Throws TooFewObservations (m < 4) and InvalidParams.
std::vector<CorrelationPair> significant_correlations(const CorrelationMatrix& matrix,
                                                      std::size_t m_obs, double alpha);

// Conjugate normal-normal posterior for a mean under known observation
// variance.
struct SequentialEstimate {
    double mean = 0.0;
    double variance = 1.0;
    int n_obs = 0;
};

// Precision-weighted update; throws NonPositiveVariance.
SequentialEstimate sequential_update(const SequentialEstimate& prior, double observation,
                                     double obs_variance);

}  // namespace biomon::predictor
