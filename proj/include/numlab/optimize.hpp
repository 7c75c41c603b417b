#pragma once

#include <functional>
#include <string>
#include <vector>

#include "numlab/expr.hpp"
#include "numlab/linalg.hpp"
#include "numlab/rng.hpp"

namespace numlab {

struct NmOptions {
    double alpha = 1.0;  ///< reflection
    double gamma = 2.0;  ///< expansion
    double rho = 0.5;    ///< contraction
    double sigma = 0.5;  ///< shrink
    double x_tol = 1e-8;
    double f_tol = 1e-8;
    int max_iter = 2000;
};

using Objective = std::function<double(const Vector&)>;

/// n+1 vertices with their objective values, kept sorted best first.
struct Simplex {
    std::vector<Vector> vertices;
    std::vector<double> values;
};

/// x0 plus one vertex per coordinate displaced by 5% of |x0_i|
/// (0.00025 when x0_i is zero).
std::vector<Vector> initial_simplex(const Vector& x0);

/// Pulls every vertex toward vertices[0]: x_i <- x_0 + sigma (x_i - x_0).
/// Values are not updated.
void shrink_toward_best(Simplex& s, double sigma);

/// |det| of the edge vectors x_i - x_0 divided by n!.
double simplex_volume(const Simplex& s);

struct NelderMeadResult {
    Vector xmin;
    double fmin = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Best vertex value after each iteration; non-increasing.
    std::vector<double> best_history;
};

/// Downhill simplex. Terminates when the largest max-norm distance from the
/// best vertex is below x_tol and the value spread is below f_tol, or after
/// max_iter iterations (converged = false). Non-finite objective values
/// during the search count as +infinity; at the initial simplex they throw
/// InvalidArgument.
NelderMeadResult nelder_mead(const Objective& objective, const Vector& x0, const NmOptions& opts = {});

/// A model y = f(x; lambda) given as an expression plus variable names.
struct Model {
    Expr expr;
    std::string x_var = "x";
    std::vector<std::string> param_vars;

    double operator()(double x, const Vector& lambda) const;
};

/// sqrt(sum_j (f(x_j; lambda) - y_j)^2). The square of this value is the
/// least-squares sum; both share their minimizer.
double residual_norm(const Model& model, const Vector& lambda, const Vector& xdata, const Vector& ydata);

/// y_j = f(x_j; lambda_true) * u_j with u_j uniform on [noise_lo, noise_hi).
Draw<Vector> generate_noisy_data(const Model& model, const Vector& lambda_true, const Vector& xdata,
                                 double noise_lo, double noise_hi, RngState rng);

struct FitResult {
    Vector lambda_fit;
    double s_initial = 0.0;  ///< residual norm at lambda0
    double s_final = 0.0;    ///< residual norm at lambda_fit
    int iterations = 0;
    bool converged = false;
};

FitResult fit_model(const Model& model, const Vector& xdata, const Vector& ydata, const Vector& lambda0,
                    const NmOptions& opts = {});

/// numpy-style arange: start + i*step for i < ceil((stop - start) / step).
Vector arange(double start, double stop, double step);

}  // namespace numlab
