#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vep/types.hpp"

namespace vep::detail {

/// In-place Cholesky factor (lower) of a symmetric positive definite matrix
/// stored row-major. Throws DataError if the matrix is not SPD.
inline void cholesky(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
        if (!(diag > 0.0)) throw DataError("covariance matrix is not positive definite");
        const double root = std::sqrt(diag);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = sum / root;
        }
    }
}

/// Solves A x = b given the Cholesky factor produced above.
inline std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                          std::vector<double> b) {
    for (std::size_t i = 0; i < n; ++i) {  // L y = b
        for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * n + k] * b[k];
        b[i] /= l[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {  // L^T x = y
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= l[k * n + i] * b[k];
        b[i] /= l[i * n + i];
    }
    return b;
}

}  // namespace vep::detail
