#pragma once

#include <string>
#include <vector>

#include "numlab/expr.hpp"
#include "numlab/linalg.hpp"

namespace numlab {

enum class StopReason { AccuracyMet, MaxIterations, NumericFailure };

const char* to_string(StopReason r) noexcept;

struct IterationStep {
    int index = 0;
    Vector point;
    double residual_norm = 0.0;
};

/// Ordered record of Newton iterates, starting with the initial point.
struct IterationTrace {
    std::vector<IterationStep> steps;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxIterations;
    std::string failure;  ///< detail when stop_reason is NumericFailure
};

struct ScalarNewtonConfig {
    double x0 = 0.0;
    int maxn = 10;     ///< maximum number of Newton steps
    double h = 5e-6;   ///< half-width of the sign-change bracket
};

/// One row of the scalar Newton table: n, x_n, f(x_n), f(x_n-h)f(x_n+h).
struct ScalarNewtonRow {
    int index = 0;
    double x = 0.0;
    double fx = 0.0;
    double bracket_product = 0.0;
};

struct ScalarNewtonResult {
    double root = 0.0;
    IterationTrace trace;
    std::vector<ScalarNewtonRow> rows;
};

/// x_{k+1} = x_k - f(x_k)/f'(x_k) with f' obtained symbolically. Stops once
/// f(x-h)f(x+h) < 0, i.e. a root is bracketed within 2h, or after cfg.maxn
/// steps. A zero derivative, a non-finite iterate or |x| > 1e12 ends the run
/// with StopReason::NumericFailure. Evaluation errors propagate.
ScalarNewtonResult newton_scalar(const Expr& f, const std::string& var, const ScalarNewtonConfig& cfg);

/// Matrix of partial derivatives, entry (i, j) = d fs[i] / d vars[j].
class SymbolicJacobian {
public:
    SymbolicJacobian(const std::vector<Expr>& fs, const std::vector<std::string>& vars);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Expr& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Matrix evaluate(const Bindings& b) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Expr> entries_;
};

SymbolicJacobian jacobian(const std::vector<Expr>& fs, const std::vector<std::string>& vars);

/// Evaluates every component of fs at the bindings.
Vector evaluate_system(const std::vector<Expr>& fs, const Bindings& b);

/// Binds vars[i] = x[i].
Bindings bind(const std::vector<std::string>& vars, const Vector& x);

constexpr double kDefaultSystemTol = 1e-10;

/// Multidimensional Newton: each step solves J(x_k) d = f(x_k) and sets
/// x_{k+1} = x_k - d. Stops when ||f(x_k)||_2 < tol (converged) or after
/// maxiter steps. A singular Jacobian, a non-finite component or a component
/// above 1e12 in magnitude ends the run with StopReason::NumericFailure.
IterationTrace newton_system(const std::vector<Expr>& fs, const std::vector<std::string>& vars,
                             const Vector& x0, int maxiter, double tol = kDefaultSystemTol);

}  // namespace numlab
