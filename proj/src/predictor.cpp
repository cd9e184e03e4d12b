#include "biomon/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "biomon/errors.hpp"
#include "biomon/linalg.hpp"
#include "biomon/stats.hpp"

namespace biomon::predictor {

void FactorMatrix::validate() const {
    if (n == 0 || factor_names.size() != n) {
        throw InvalidParams("factor matrix: factor_names must match column count");
    }
    if (values.size() != m * n || target.size() != m) {
        throw InvalidParams("factor matrix: value/target shape mismatch");
    }
    if (m < n + 2) {
        throw TooFewObservations("factor matrix: need at least n + 2 = " + std::to_string(n + 2) +
                                 " observations, got " + std::to_string(m));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw NonFiniteValue(i);
    }
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (!std::isfinite(target[i])) throw NonFiniteValue(i);
    }
    std::set<std::string> seen(factor_names.begin(), factor_names.end());
    if (seen.size() != factor_names.size()) {
        throw InvalidParams("factor matrix: duplicate factor names");
    }
}

Standardized standardize(const FactorMatrix& matrix) {
    matrix.validate();
    const std::size_t m = matrix.m;
    const std::size_t n = matrix.n;
    Standardized out;
    out.values.resize(m * n);
    out.means.resize(n);
    out.stds.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < m; ++i) mean += matrix.at(i, j);
        mean /= static_cast<double>(m);
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = matrix.at(i, j) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(m - 1));
        if (sd <= 1e-12 * std::max(1.0, std::fabs(mean))) {
            throw ZeroVarianceFactor(matrix.factor_names[j]);
        }
        out.means[j] = mean;
        out.stds[j] = sd;
        for (std::size_t i = 0; i < m; ++i) {
            out.values[i * n + j] = (matrix.at(i, j) - mean) / sd;
        }
    }
    return out;
}

namespace {

std::vector<std::string> ranked_names(const std::vector<std::string>& names,
                                      const std::vector<double>& coefs) {
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::fabs(coefs[a]);
        const double mb = std::fabs(coefs[b]);
        if (ma != mb) return ma > mb;
        return names[a] < names[b];
    });
    std::vector<std::string> out;
    out.reserve(order.size());
    for (std::size_t idx : order) out.push_back(names[idx]);
    return out;
}

}  // namespace

PredictorReport fit_linear(const FactorMatrix& matrix, const FitOptions& options) {
    const Standardized z = standardize(matrix);
    const std::size_t m = matrix.m;
    const std::size_t n = matrix.n;

    PredictorReport report;
    report.term_names = matrix.factor_names;
    if (options.interactions) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                report.term_names.push_back(matrix.factor_names[i] + "*" + matrix.factor_names[j]);
            }
        }
    }
    const std::size_t terms = report.term_names.size();
    const std::size_t cols = 1 + terms;
    if (m < cols + 1) {
        throw TooFewObservations("fit_linear: need more than " + std::to_string(cols) +
                                 " observations for " + std::to_string(terms) + " terms");
    }

    std::vector<double> design(m * cols);
    for (std::size_t i = 0; i < m; ++i) {
        double* row = &design[i * cols];
        row[0] = 1.0;
        for (std::size_t j = 0; j < n; ++j) row[1 + j] = z.values[i * n + j];
        if (options.interactions) {
            std::size_t c = 1 + n;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    row[c++] = z.values[i * n + a] * z.values[i * n + b];
                }
            }
        }
    }

    const linalg::LstsqResult solved = linalg::householder_lstsq(design, m, cols, matrix.target);
    report.intercept = solved.coef[0];
    report.coefficients_standardized.assign(solved.coef.begin() + 1, solved.coef.end());

    double target_mean = 0.0;
    for (double v : matrix.target) target_mean += v;
    target_mean /= static_cast<double>(m);
    double tss = 0.0;
    for (double v : matrix.target) {
        const double d = v - target_mean;
        tss += d * d;
    }
    report.r_squared = tss > 0.0 ? 1.0 - solved.rss / tss : 1.0;
    report.ranking = ranked_names(report.term_names, report.coefficients_standardized);
    report.means = z.means;
    report.stds = z.stds;
    return report;
}

std::vector<std::pair<std::string, double>> rank_predictors(const PredictorReport& report,
                                                            double min_abs) {
    std::vector<std::pair<std::string, double>> picked;
    for (std::size_t i = 0; i < report.term_names.size(); ++i) {
        if (std::fabs(report.coefficients_standardized[i]) >= min_abs) {
            picked.emplace_back(report.term_names[i], report.coefficients_standardized[i]);
        }
    }
    std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) {
        const double ma = std::fabs(a.second);
        const double mb = std::fabs(b.second);
        if (ma != mb) return ma > mb;
        return a.first < b.first;
    });
    return picked;
}

CorrelationMatrix correlation_matrix(const FactorMatrix& matrix, bool include_target) {
    matrix.validate();
    const std::size_t m = matrix.m;
    const std::size_t dim = matrix.n + (include_target ? 1 : 0);

    // Gather columns, centered, with their standard deviations.
    std::vector<std::vector<double>> centered(dim, std::vector<double>(m));
    std::vector<double> norms(dim);
    CorrelationMatrix out;
    out.names = matrix.factor_names;
    if (include_target) out.names.push_back(matrix.target_name);
    out.dim = dim;
    for (std::size_t j = 0; j < dim; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            centered[j][i] = j < matrix.n ? matrix.at(i, j) : matrix.target[i];
            mean += centered[j][i];
        }
        mean /= static_cast<double>(m);
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            centered[j][i] -= mean;
            ss += centered[j][i] * centered[j][i];
        }
        if (ss <= 0.0 || std::sqrt(ss / static_cast<double>(m - 1)) <=
                             1e-12 * std::max(1.0, std::fabs(mean))) {
            throw ZeroVarianceFactor(out.names[j]);
        }
        norms[j] = std::sqrt(ss);
    }

    out.r.assign(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        out.r[i * dim + i] = 1.0;
        for (std::size_t j = i + 1; j < dim; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < m; ++k) dot += centered[i][k] * centered[j][k];
            const double r = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
            out.r[i * dim + j] = r;
            out.r[j * dim + i] = r;
        }
    }
    return out;
}

std::vector<CorrelationPair> significant_correlations(const CorrelationMatrix& matrix,
                                                      std::size_t m_obs, double alpha) {
    if (m_obs < 4) {
        throw TooFewObservations("significant_correlations: need m >= 4, got " +
                                 std::to_string(m_obs));
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidParams("significance level alpha must be in (0, 1)");
    }
    const double dof = static_cast<double>(m_obs - 2);
    const double t_crit = stats::t_quantile(1.0 - 0.5 * alpha, dof);
    std::vector<CorrelationPair> out;
    for (std::size_t i = 0; i < matrix.dim; ++i) {
        for (std::size_t j = i + 1; j < matrix.dim; ++j) {
            const double r = matrix.at(i, j);
            const double abs_r = std::fabs(r);
            bool significant;
            if (abs_r >= 1.0) {
                significant = true;  // statistic diverges
            } else {
                significant = abs_r * std::sqrt(dof / (1.0 - r * r)) > t_crit;
            }
            if (significant) {
                out.push_back({i, j, r});
            }
        }
    }
    return out;
}

SequentialEstimate sequential_update(const SequentialEstimate& prior, double observation,
                                     double obs_variance) {
    if (!(prior.variance > 0.0) || !std::isfinite(prior.variance)) {
        throw NonPositiveVariance(prior.variance);
    }
    if (!(obs_variance > 0.0) || !std::isfinite(obs_variance)) {
        throw NonPositiveVariance(obs_variance);
    }
    if (!std::isfinite(observation)) {
        throw NonFiniteValue(0);
    }
    const double precision = 1.0 / prior.variance + 1.0 / obs_variance;
    SequentialEstimate posterior;
    posterior.mean = (prior.mean / prior.variance + observation / obs_variance) / precision;
    posterior.variance = 1.0 / precision;
    posterior.n_obs = prior.n_obs + 1;
    return posterior;
}

}  // namespace biomon::predictor
