#pragma once

#include <vector>

#include "numlab/expr.hpp"
#include "numlab/linalg.hpp"
#include "numlab/quadrature.hpp"

namespace numlab {

/// Horner evaluation of sum_k coeffs[k] * x^(n-1-k), i.e. descending powers
/// as in numpy.polyval.
double polyval(const Vector& coeffs, double x);

/// Gram matrix of the monomials x^(n-1), ..., x, 1 on [r1, r2]; the (j, k)
/// entry (1-based) is (r2^m - r1^m) / m with m = 2n - k - j + 1.
Matrix normal_matrix(int n, double r1, double r2);

/// Entry j (1-based) is the integral of g(x) x^(n-j) over [r1, r2].
Vector moment_rhs(const Integrand& g, int n, double r1, double r2, double tol = kDefaultAdaptiveTol);

struct GridSample {
    double x = 0.0;
    double g = 0.0;
    double p = 0.0;
};

struct PolyApproxResult {
    int n = 0;
    Vector coeffs;  ///< descending powers, c_k multiplies x^(n-k)
    double max_abs_err = 0.0;
    double int_abs_err = 0.0;  ///< trapezoid rule of |p - g| on the grid
    double int_sq_err = 0.0;   ///< trapezoid rule of (p - g)^2 on the grid
    std::vector<GridSample> grid;
};

constexpr int kDefaultGridIntervals = 40;
constexpr int kMaxPolyOrder = 12;

/// L2-best polynomial of degree n-1 for g on [r1, r2], from the normal
/// equations. Error metrics use grid_intervals + 1 equally spaced points.
/// n above kMaxPolyOrder is rejected: the monomial Gram matrix is
/// Hilbert-like and loses all accuracy quickly.
PolyApproxResult l2_polyfit(const Integrand& g, int n, double r1, double r2,
                            int grid_intervals = kDefaultGridIntervals, double tol = kDefaultAdaptiveTol);

}  // namespace numlab
