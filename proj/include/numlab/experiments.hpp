#pragma once

#include <vector>

#include "numlab/linalg.hpp"
#include "numlab/rng.hpp"

namespace numlab {

/// One point of the conditioning study.
struct CondRecord {
    double c = 1.0;    ///< prescribed condition number
    double err = 0.0;  ///< ||x_numeric - 1||_2
};

/// Replaces the singular values of A by the linear ramp
/// s'_j = s_0 - j (s_0 - s_0 / c) / (n - 1) and rebuilds U diag(s') V^T,
/// giving a matrix with condition number c and the same largest singular value.
Matrix prescribe_condition(const Matrix& a, double c);

/// Draws one n x n matrix and, for each exponent p, solves A_c x = A_c 1 with
/// c = 10^p, recording the error of x against the all-ones vector. The same
/// base matrix serves every c.
std::vector<CondRecord> condition_error_study(std::size_t n, const std::vector<double>& exponents, RngState rng);

/// Least-squares slope of log10(err) against log10(c).
double loglog_slope(const std::vector<CondRecord>& records);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// pmin, pmin + pstep, ... up to pmax inclusive.
std::vector<double> exponent_range(double pmin, double pmax, double pstep);

}  // namespace numlab
