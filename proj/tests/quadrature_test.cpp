#include "numlab/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "numlab/error.hpp"

using namespace numlab;

namespace {

const double kPi = std::numbers::pi;

double square(double x) { return x * x; }

}  // namespace

TEST(Rules, SquareOnZeroTwo) {
    // exact 8/3; midpoint error -(b-a)h^2/24 f'', trapezoid +(b-a)h^2/12 f''
    EXPECT_NEAR(midpoint(square, 0, 2, 4) - 8.0 / 3, -1.0 / 24, 1e-12);
    EXPECT_NEAR(trapezoid(square, 0, 2, 4) - 8.0 / 3, 1.0 / 12, 1e-12);
    EXPECT_NEAR(simpson(square, 0, 2, 4) - 8.0 / 3, 0.0, 1e-12);
}

TEST(Rules, ExactForLowDegree) {
    auto line = [](double x) { return 3 * x - 1; };
    EXPECT_NEAR(midpoint(line, -1, 2, 3), 1.5, 1e-14);
    EXPECT_NEAR(trapezoid(line, -1, 2, 1), 1.5, 1e-14);
    auto cubic = [](double x) { return x * x * x - x; };
    EXPECT_NEAR(simpson(cubic, 0, 2, 2), 2.0, 1e-14);
}

TEST(Rules, Preconditions) {
    EXPECT_THROW(simpson(square, 0, 1, 3), InvalidArgument);
    EXPECT_THROW(midpoint(square, 1, 0, 4), InvalidArgument);
    EXPECT_THROW(trapezoid(square, 0, 1, 0), InvalidArgument);
    EXPECT_THROW(convergence_table(square, 0, 2, 8.0 / 3, {4, 5}), InvalidArgument);
}

TEST(ConvergenceTable, RowsMatchRules) {
    const auto f = as_integrand(parse("x^2"));
    const auto rows = convergence_table(f, 0, 2, 8.0 / 3, {4, 10, 20});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].n, 4);
    EXPECT_EQ(rows[0].h, 0.5);
    EXPECT_NEAR(rows[0].err_midpoint, -1.0 / 24, 1e-12);
    EXPECT_NEAR(rows[0].err_trapezoid, 1.0 / 12, 1e-12);
    EXPECT_NEAR(rows[0].err_simpson, 0.0, 1e-12);
    // errors scale with h^2 exactly for a quadratic
    EXPECT_NEAR(rows[1].err_midpoint, -1.0 / 24 * (0.2 * 0.2) / (0.5 * 0.5), 1e-12);
}

TEST(ConvergenceOrder, SinOnZeroPi) {
    auto f = [](double x) { return std::sin(x); };
    auto ratio = [&](auto rule) {
        return std::abs(rule(f, 0.0, kPi, 16) - 2.0) / std::abs(rule(f, 0.0, kPi, 32) - 2.0);
    };
    EXPECT_NEAR(ratio(midpoint), 4.0, 0.4);
    EXPECT_NEAR(ratio(trapezoid), 4.0, 0.4);
    EXPECT_NEAR(ratio(simpson), 16.0, 1.6);
}

TEST(Riemann, RectanglesCoverInterval) {
    const auto f = as_integrand(parse("x^2 - 5*x + 10"));
    const auto rects = riemann_rectangles(f, 0, 10, 6, RiemannMode::Midpoint);
    ASSERT_EQ(rects.size(), 6u);
    EXPECT_EQ(rects.front().x_left, 0.0);
    EXPECT_EQ(rects.back().x_right, 10.0);
    for (std::size_t i = 1; i < rects.size(); ++i) EXPECT_EQ(rects[i].x_left, rects[i - 1].x_right);
    EXPECT_NEAR(rects[0].height, 6.527777777777778, 1e-12);
    EXPECT_EQ(riemann_total(rects), midpoint(f, 0, 10, 6));
}

TEST(Riemann, BitIdenticalToMidpoint) {
    auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
    for (int n : {1, 3, 7, 100, 1001})
        for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-2.3, 0.7}, std::pair{0.1, 0.3}})
            EXPECT_EQ(riemann_total(riemann_rectangles(f, a, b, n, RiemannMode::Midpoint)), midpoint(f, a, b, n));
}

TEST(Riemann, LeftAndRight) {
    auto f = [](double x) { return x; };
    const auto left = riemann_rectangles(f, 0, 1, 4, RiemannMode::Left);
    const auto right = riemann_rectangles(f, 0, 1, 4, RiemannMode::Right);
    EXPECT_DOUBLE_EQ(riemann_total(left), 0.375);
    EXPECT_DOUBLE_EQ(riemann_total(right), 0.625);
}

TEST(Adaptive, ExactIntegrals) {
    const double e = std::numbers::e;
    EXPECT_NEAR(adaptive_integral([](double x) { return std::exp(x); }, 0, 1).value, e - 1, 1e-13);
    EXPECT_NEAR(adaptive_integral([](double x) { return x * std::exp(x); }, 0, 1).value, 1.0, 1e-13);
    EXPECT_NEAR(adaptive_integral([](double x) { return std::sin(x); }, 0, kPi).value, 2.0, 1e-12);
    EXPECT_NEAR(adaptive_integral([](double x) { return std::sqrt(x); }, 1, 4, 1e-12).value, 14.0 / 3, 1e-11);
}

TEST(Adaptive, ErrorEstimateBoundsPolynomials) {
    // antiderivatives evaluated independently
    struct Case {
        std::function<double(double)> f, F;
        double a, b;
    };
    const Case cases[] = {
        {[](double x) { return 4 * x * x * x - 3 * x * x + 2 * x - 1; },
         [](double x) { return x * x * x * x - x * x * x + x * x - x; }, -1.5, 2.0},
        {[](double x) { return x * x * x * x; }, [](double x) { return std::pow(x, 5) / 5; }, 0.0, 3.0},
        {[](double x) { return std::pow(x, 6) - x; }, [](double x) { return std::pow(x, 7) / 7 - x * x / 2; }, -1.0,
         1.0},
        {[](double x) { return 7.0; }, [](double x) { return 7 * x; }, 0.0, 0.1},
    };
    for (const Case& c : cases) {
        const AdaptiveResult r = adaptive_integral(c.f, c.a, c.b);
        const double truth = c.F(c.b) - c.F(c.a);
        EXPECT_LE(std::abs(r.value - truth), r.est_error);
        EXPECT_LE(std::abs(r.value - truth), 1e-9 * (1 + std::abs(truth)));
    }
}

TEST(Adaptive, Preconditions) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(adaptive_integral(f, 1, 0), InvalidArgument);
    EXPECT_THROW(adaptive_integral(f, 0, 1, 0.0), InvalidArgument);
    EXPECT_THROW(adaptive_integral([](double x) { return x > 0.5 ? 1.0 / (x - 0.5) : 0.0; }, 0, 1, 1e-14),
                 ConvergenceError);
}

TEST(AsIntegrand, UnboundVariable) {
    const auto f = as_integrand(parse("x*y"));
    EXPECT_THROW(f(1.0), UnboundVariable);
}
