#pragma once

// Test-only oracles that do not share code paths with the library.

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "numlab/expr.hpp"

namespace numlab::oracle {

/// Central difference with step `step`.
inline double central_difference(const std::function<double(double)>& f, double x, double step = 1e-6) {
    return (f(x + step) - f(x - step)) / (2 * step);
}

/// One Richardson step on the central difference: O(step^4) truncation,
/// needed for terms that oscillate quickly on the scale of the step.
inline double richardson_difference(const std::function<double(double)>& f, double x, double step = 1e-6) {
    return (4 * central_difference(f, x, step / 2) - central_difference(f, x, step)) / 3;
}

/// Random expression over the variables x and y with bounded depth. Powers
/// use small integer exponents and the function set avoids log/sqrt so
/// that trees stay defined on |x| <= 2 most of the time.
class ExprGenerator {
public:
    explicit ExprGenerator(unsigned seed) : rng_(seed) {}

    Expr operator()(int depth) {
        std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
        switch (pick(rng_)) {
            case 0: return Expr::constant(std::uniform_real_distribution<double>(-3, 3)(rng_));
            case 1: return Expr::variable(coin() ? "x" : "y");
            case 2: return -(*this)(depth - 1);
            case 3: return (*this)(depth - 1) + (*this)(depth - 1);
            case 4: return (*this)(depth - 1) - (*this)(depth - 1);
            case 5: return (*this)(depth - 1) * (*this)(depth - 1);
            case 6: return (*this)(depth - 1) / (Expr::constant(2.5) + Expr::call(Func::Sin, (*this)(depth - 1)));
            case 7:
                return pow((*this)(depth - 1),
                           Expr::constant(std::uniform_int_distribution<int>(0, 3)(rng_)));
            default: {
                static constexpr Func funcs[] = {Func::Exp, Func::Sin, Func::Cos};
                return Expr::call(funcs[std::uniform_int_distribution<int>(0, 2)(rng_)], (*this)(depth - 1));
            }
        }
    }

    double point() { return std::uniform_real_distribution<double>(-2, 2)(rng_); }

private:
    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
    std::mt19937 rng_;
};

}  // namespace numlab::oracle
