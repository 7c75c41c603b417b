#pragma once

#include <functional>
#include <string>
#include <vector>

#include "numlab/expr.hpp"

namespace numlab {

using Integrand = std::function<double(double)>;

/// Wraps a one-variable expression as an integrand. Any free variable other
/// than `var` makes evaluation throw UnboundVariable.
Integrand as_integrand(Expr f, std::string var = "x");

// Composite rules on n equal subintervals of [a, b].

/// h * sum f(a + (i + 1/2) h)
double midpoint(const Integrand& f, double a, double b, int n);
/// h/2 * (f(a) + 2 sum_{0<i<n} f(a + i h) + f(b))
double trapezoid(const Integrand& f, double a, double b, int n);
/// h/3 * (f(a) + 4 sum_odd + 2 sum_even_interior + f(b)); n must be even.
double simpson(const Integrand& f, double a, double b, int n);

/// Signed errors (approximation minus exact) for one subinterval count.
struct QuadTableRow {
    int n = 0;
    double h = 0.0;
    double err_midpoint = 0.0;
    double err_trapezoid = 0.0;
    double err_simpson = 0.0;
};

std::vector<QuadTableRow> convergence_table(const Integrand& f, double a, double b, double exact,
                                            const std::vector<int>& ns);

enum class RiemannMode { Midpoint, Left, Right };

struct Rectangle {
    double x_left = 0.0;
    double x_right = 0.0;
    double height = 0.0;
};

/// One rectangle per subinterval, height sampled at the midpoint, left or
/// right end. The first rectangle starts exactly at a, the last ends at b.
std::vector<Rectangle> riemann_rectangles(const Integrand& f, double a, double b, int n, RiemannMode mode);

/// Sum of the rectangle areas using the common width (b - a) / n. Agrees
/// bit-for-bit with midpoint() for Midpoint rectangles.
double riemann_total(const std::vector<Rectangle>& rects);

struct AdaptiveResult {
    double value = 0.0;
    double est_error = 0.0;
};

constexpr double kDefaultAdaptiveTol = 1e-10;
constexpr int kAdaptiveMaxDepth = 50;

/// Adaptive Simpson with Richardson extrapolation. A panel is accepted when
/// |S(left) + S(right) - S(whole)| <= 15 * tol_panel; tol_panel halves on each
/// split. Throws ConvergenceError beyond depth 50.
AdaptiveResult adaptive_integral(const Integrand& f, double a, double b, double tol = kDefaultAdaptiveTol);

}  // namespace numlab
