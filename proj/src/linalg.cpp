#include "biomon/linalg.hpp"

#include <cmath>
#include <numeric>

#include "biomon/errors.hpp"

namespace biomon::linalg {

LstsqResult householder_lstsq(const std::vector<double>& design, std::size_t m, std::size_t n,
                              const std::vector<double>& target, double rank_tol) {
    if (m < n || n == 0) {
        throw InvalidParams("householder_lstsq: need m >= n >= 1");
    }
    if (design.size() != m * n || target.size() != m) {
        throw InvalidParams("householder_lstsq: shape mismatch");
    }

    // Column-major working copy so each reflection walks contiguous memory.
    std::vector<double> a(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[j * m + i] = design[i * n + j];
        }
    }
    std::vector<double> qty = target;

    for (std::size_t k = 0; k < n; ++k) {
        double* col = &a[k * m + k];
        const std::size_t len = m - k;
        double norm = 0.0;
        for (std::size_t i = 0; i < len; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            throw RankDeficientDesign();
        }
        const double alpha = col[0] >= 0.0 ? -norm : norm;
        // v = x - alpha*e1, applied as H = I - 2 v v^T / (v^T v)
        col[0] -= alpha;
        double vtv = 0.0;
        for (std::size_t i = 0; i < len; ++i) vtv += col[i] * col[i];
        if (vtv > 0.0) {
            for (std::size_t j = k + 1; j < n; ++j) {
                double* cj = &a[j * m + k];
                double dot = 0.0;
                for (std::size_t i = 0; i < len; ++i) dot += col[i] * cj[i];
                const double f = 2.0 * dot / vtv;
                for (std::size_t i = 0; i < len; ++i) cj[i] -= f * col[i];
            }
            double dot = 0.0;
            for (std::size_t i = 0; i < len; ++i) dot += col[i] * qty[k + i];
            const double f = 2.0 * dot / vtv;
            for (std::size_t i = 0; i < len; ++i) qty[k + i] -= f * col[i];
        }
        col[0] = alpha;  // R diagonal lives where the column head was
    }

    double max_diag = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        max_diag = std::max(max_diag, std::fabs(a[k * m + k]));
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (std::fabs(a[k * m + k]) <= rank_tol * max_diag) {
            throw RankDeficientDesign();
        }
    }

    LstsqResult result;
    result.coef.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = qty[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= a[j * m + k] * result.coef[j];
        }
        result.coef[k] = s / a[k * m + k];
    }
    double rss = 0.0;
    for (std::size_t i = n; i < m; ++i) rss += qty[i] * qty[i];
    result.rss = rss;
    return result;
}

}  // namespace biomon::linalg
