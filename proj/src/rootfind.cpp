#include "numlab/rootfind.hpp"

#include <cmath>

#include "numlab/error.hpp"

namespace numlab {

namespace {

constexpr double kDivergenceBound = 1e12;

}  // namespace

const char* to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::AccuracyMet: return "accuracy_met";
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::NumericFailure: return "numeric_failure";
    }
    return "unknown";
}

ScalarNewtonResult newton_scalar(const Expr& f, const std::string& var, const ScalarNewtonConfig& cfg) {
    if (!(cfg.h > 0.0)) throw InvalidArgument("h must be positive");
    if (cfg.maxn < 1) throw InvalidArgument("maxn must be at least 1");

    const Expr df = differentiate(f, var);
    auto fv = [&](double x) { return evaluate(f, var, x); };

    ScalarNewtonResult result;
    auto record = [&](int k, double x) {
        const double fx = fv(x);
        result.rows.push_back({k, x, fx, fv(x - cfg.h) * fv(x + cfg.h)});
        result.trace.steps.push_back({k, Vector{x}, std::abs(fx)});
        return result.rows.back();
    };
    auto fail = [&](std::string why) {
        result.trace.stop_reason = StopReason::NumericFailure;
        result.trace.failure = std::move(why);
        return result;
    };

    double c = cfg.x0;
    record(0, c);
    for (int j = 1;; ++j) {
        const double slope = evaluate(df, var, c);
        if (slope == 0.0) return fail("derivative is zero at x = " + std::to_string(c));
        c = c - fv(c) / slope;
        if (!std::isfinite(c)) return fail("non-finite iterate");
        if (std::abs(c) > kDivergenceBound) return fail("iterate exceeds 1e12 in magnitude");
        result.root = c;
        const ScalarNewtonRow row = record(j, c);
        if (row.bracket_product < 0.0) {
            result.trace.converged = true;
            result.trace.stop_reason = StopReason::AccuracyMet;
            return result;
        }
        if (j == cfg.maxn) {
            result.trace.stop_reason = StopReason::MaxIterations;
            return result;
        }
    }
}

SymbolicJacobian::SymbolicJacobian(const std::vector<Expr>& fs, const std::vector<std::string>& vars)
    : rows_(fs.size()), cols_(vars.size()) {
    entries_.reserve(rows_ * cols_);
    for (const Expr& f : fs)
        for (const std::string& v : vars) entries_.push_back(differentiate(f, v));
}

Matrix SymbolicJacobian::evaluate(const Bindings& b) const {
    Matrix j(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) j(r, c) = numlab::evaluate((*this)(r, c), b);
    return j;
}

SymbolicJacobian jacobian(const std::vector<Expr>& fs, const std::vector<std::string>& vars) {
    if (fs.size() != vars.size())
        throw DimensionMismatch("jacobian: " + std::to_string(fs.size()) + " functions but " +
                                std::to_string(vars.size()) + " variables");
    return SymbolicJacobian(fs, vars);
}

Vector evaluate_system(const std::vector<Expr>& fs, const Bindings& b) {
    Vector out(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) out[i] = evaluate(fs[i], b);
    return out;
}

Bindings bind(const std::vector<std::string>& vars, const Vector& x) {
    if (vars.size() != x.size())
        throw DimensionMismatch("expected " + std::to_string(vars.size()) + " values, got " +
                                std::to_string(x.size()));
    Bindings b;
    for (std::size_t i = 0; i < vars.size(); ++i) b[vars[i]] = x[i];
    return b;
}

IterationTrace newton_system(const std::vector<Expr>& fs, const std::vector<std::string>& vars,
                             const Vector& x0, int maxiter, double tol) {
    if (maxiter < 1) throw InvalidArgument("maxiter must be at least 1");
    if (x0.size() != vars.size())
        throw DimensionMismatch("initial point has " + std::to_string(x0.size()) + " components, system has " +
                                std::to_string(vars.size()) + " variables");
    const SymbolicJacobian jac = jacobian(fs, vars);

    IterationTrace trace;
    Vector x = x0;
    for (int k = 0;; ++k) {
        const Bindings b = bind(vars, x);
        const Vector fx = evaluate_system(fs, b);
        const double norm = vec_norm2(fx);
        trace.steps.push_back({k, x, norm});
        if (norm < tol) {
            trace.converged = true;
            trace.stop_reason = StopReason::AccuracyMet;
            return trace;
        }
        if (k == maxiter) {
            trace.stop_reason = StopReason::MaxIterations;
            return trace;
        }

        Vector delta;
        try {
            delta = solve(jac.evaluate(b), fx);
        } catch (const SingularMatrix&) {
            trace.stop_reason = StopReason::NumericFailure;
            trace.failure = "singular Jacobian at step " + std::to_string(k);
            return trace;
        } catch (const InvalidArgument&) {
            // near-singular Jacobian whose solve overflowed
            trace.stop_reason = StopReason::NumericFailure;
            trace.failure = "non-finite Newton step at step " + std::to_string(k);
            return trace;
        }
        std::vector<double> next(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] = x[i] - delta[i];
            if (!std::isfinite(next[i]) || std::abs(next[i]) > kDivergenceBound) {
                trace.stop_reason = StopReason::NumericFailure;
                trace.failure = "iterate component diverged at step " + std::to_string(k + 1);
                return trace;
            }
        }
        x = Vector(std::move(next));
    }
}

}  // namespace numlab
