#include "numlab/approx.hpp"

#include <algorithm>
#include <cmath>

#include "numlab/error.hpp"

namespace numlab {

double polyval(const Vector& coeffs, double x) {
    if (coeffs.size() == 0) throw InvalidArgument("polyval needs at least one coefficient");
    double acc = 0.0;
    for (double c : coeffs) acc = acc * x + c;
    return acc;
}

namespace {

void check_order(int n, double r1, double r2) {
    if (n < 1) throw InvalidArgument("polynomial order n must be at least 1");
    if (!(r1 < r2)) throw InvalidArgument("approximation interval requires r1 < r2");
}

}  // namespace

Matrix normal_matrix(int n, double r1, double r2) {
    check_order(n, r1, r2);
    Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            const int m = 2 * n - k - j + 1;
            a(j - 1, k - 1) = (std::pow(r2, m) - std::pow(r1, m)) / m;
        }
    return a;
}

Vector moment_rhs(const Integrand& g, int n, double r1, double r2, double tol) {
    check_order(n, r1, r2);
    Vector b(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const int power = n - j;
        const Integrand weighted = [&](double x) { return g(x) * std::pow(x, power); };
        b[j - 1] = adaptive_integral(weighted, r1, r2, tol).value;
    }
    return b;
}

PolyApproxResult l2_polyfit(const Integrand& g, int n, double r1, double r2, int grid_intervals, double tol) {
    check_order(n, r1, r2);
    if (n > kMaxPolyOrder)
        throw InvalidArgument("polynomial order " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(kMaxPolyOrder) + " (monomial normal equations are ill-conditioned)");
    if (grid_intervals < kDefaultGridIntervals)
        throw InvalidArgument("error grid needs at least " + std::to_string(kDefaultGridIntervals) + " intervals");

    PolyApproxResult out;
    out.n = n;
    out.coeffs = solve(normal_matrix(n, r1, r2), moment_rhs(g, n, r1, r2, tol));

    const double h = (r2 - r1) / grid_intervals;
    double sum_abs = 0.0, sum_sq = 0.0;
    for (int i = 0; i <= grid_intervals; ++i) {
        const double x = i == grid_intervals ? r2 : r1 + i * h;
        const GridSample s{x, g(x), polyval(out.coeffs, x)};
        const double err = std::abs(s.p - s.g);
        out.max_abs_err = std::max(out.max_abs_err, err);
        sum_abs += err;
        sum_sq += err * err;
        out.grid.push_back(s);
    }
    const double e0 = std::abs(out.grid.front().p - out.grid.front().g);
    const double e1 = std::abs(out.grid.back().p - out.grid.back().g);
    out.int_abs_err = h * (sum_abs - 0.5 * (e0 + e1));
    out.int_sq_err = h * (sum_sq - 0.5 * (e0 * e0 + e1 * e1));
    return out;
}

}  // namespace numlab
