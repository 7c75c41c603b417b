#include "numlab/quadrature.hpp"

#include <cfloat>
#include <cmath>

#include "numlab/error.hpp"

namespace numlab {

Integrand as_integrand(Expr f, std::string var) {
    return [f = std::move(f), var = std::move(var)](double x) { return evaluate(f, var, x); };
}

namespace {

void check_interval(double a, double b, int n) {
    if (!(a < b)) throw InvalidArgument("integration interval requires a < b");
    if (n < 1) throw InvalidArgument("subinterval count must be positive");
}

}  // namespace

double midpoint(const Integrand& f, double a, double b, int n) {
    check_interval(a, b, n);
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h) * h;
    return sum;
}

double trapezoid(const Integrand& f, double a, double b, int n) {
    check_interval(a, b, n);
    const double h = (b - a) / n;
    double inner = 0.0;
    for (int i = 1; i < n; ++i) inner += f(a + i * h);
    return h / 2 * (f(a) + 2 * inner + f(b));
}

double simpson(const Integrand& f, double a, double b, int n) {
    check_interval(a, b, n);
    if (n % 2 != 0)
        throw InvalidArgument("Simpson's rule requires an even number of subintervals, got " + std::to_string(n));
    const double h = (b - a) / n;
    double odd = 0.0;
    for (int i = 1; i < n; i += 2) odd += 4 * f(a + i * h);
    double even = 0.0;
    for (int i = 2; i < n; i += 2) even += 2 * f(a + i * h);
    return h / 3 * (f(a) + odd + even + f(b));
}

std::vector<QuadTableRow> convergence_table(const Integrand& f, double a, double b, double exact,
                                            const std::vector<int>& ns) {
    // Validate up front so a bad entry does not leave a partial table.
    for (int n : ns) {
        check_interval(a, b, n);
        if (n % 2 != 0)
            throw InvalidArgument("Simpson's rule requires an even number of subintervals, got " +
                                  std::to_string(n));
    }
    std::vector<QuadTableRow> rows;
    rows.reserve(ns.size());
    for (int n : ns) {
        rows.push_back({n, (b - a) / n, midpoint(f, a, b, n) - exact, trapezoid(f, a, b, n) - exact,
                        simpson(f, a, b, n) - exact});
    }
    return rows;
}

std::vector<Rectangle> riemann_rectangles(const Integrand& f, double a, double b, int n, RiemannMode mode) {
    check_interval(a, b, n);
    const double h = (b - a) / n;
    std::vector<Rectangle> rects;
    rects.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double left = i == 0 ? a : a + i * h;
        const double right = i == n - 1 ? b : a + (i + 1) * h;
        double sample = 0.0;
        switch (mode) {
            case RiemannMode::Midpoint: sample = a + (i + 0.5) * h; break;
            case RiemannMode::Left: sample = a + i * h; break;
            case RiemannMode::Right: sample = a + (i + 1) * h; break;
        }
        rects.push_back({left, right, f(sample)});
    }
    return rects;
}

double riemann_total(const std::vector<Rectangle>& rects) {
    if (rects.empty()) return 0.0;
    const double h = (rects.back().x_right - rects.front().x_left) / static_cast<int>(rects.size());
    double sum = 0.0;
    for (const Rectangle& r : rects) sum += r.height * h;
    return sum;
}

namespace {

struct Panel {
    double a, b;
    double fa, fm, fb;
    double whole;  // Simpson estimate over [a, b]
};

double simpson_panel(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6 * (fa + 4 * fm + fb);
}

void adapt(const Integrand& f, const Panel& p, double tol, int depth, AdaptiveResult& acc) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(p.a, m, p.fa, flm, p.fm);
    const double right = simpson_panel(m, p.b, p.fm, frm, p.fb);
    const double diff = left + right - p.whole;

    if (std::abs(diff) <= 15 * tol) {
        acc.value += left + right + diff / 15;
        acc.est_error += std::abs(diff) / 15 + 4 * DBL_EPSILON * (std::abs(left) + std::abs(right));
        return;
    }
    if (depth >= kAdaptiveMaxDepth || m <= p.a || m >= p.b)
        throw ConvergenceError("adaptive_integral: recursion depth cap exceeded near x = " + std::to_string(m));
    adapt(f, {p.a, m, p.fa, flm, p.fm, left}, tol / 2, depth + 1, acc);
    adapt(f, {m, p.b, p.fm, frm, p.fb, right}, tol / 2, depth + 1, acc);
}

}  // namespace

AdaptiveResult adaptive_integral(const Integrand& f, double a, double b, double tol) {
    if (!(a < b)) throw InvalidArgument("integration interval requires a < b");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    AdaptiveResult acc;
    adapt(f, {a, b, fa, fm, fb, simpson_panel(a, b, fa, fm, fb)}, tol, 0, acc);
    return acc;
}

}  // namespace numlab
