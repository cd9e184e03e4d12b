#pragma once

#include <cstddef>
#include <vector>

namespace biomon::linalg {

struct LstsqResult {
    std::vector<double> coef;  // n entries
    double rss = 0.0;          // residual sum of squares at coef
};

// Least squares via Householder QR of the m x n design matrix (row-major),
// m >= n. Throws RankDeficientDesign when a diagonal of R collapses below
// rank_tol relative to the largest one. The residual norm comes from the
// trailing components of Q^T y, so no residual recomputation is needed.
LstsqResult householder_lstsq(const std::vector<double>& design, std::size_t m, std::size_t n,
                              const std::vector<double>& target, double rank_tol = 1e-10);

}  // namespace biomon::linalg
