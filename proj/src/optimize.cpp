#include "numlab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "numlab/error.hpp"

namespace numlab {

namespace {

using Point = std::vector<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// a + t * (b - a)
Point lerp(const Point& a, const Point& b, double t) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

double safe_eval(const Objective& objective, const Point& p) {
    for (double x : p)
        if (!std::isfinite(x)) return kInf;
    const double v = objective(Vector(p));
    return std::isfinite(v) ? v : kInf;
}

void sort_simplex(std::vector<Point>& pts, std::vector<double>& vals) {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Point> p2;
    std::vector<double> v2;
    p2.reserve(pts.size());
    v2.reserve(pts.size());
    for (std::size_t i : idx) {
        p2.push_back(std::move(pts[i]));
        v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
}

}  // namespace

std::vector<Vector> initial_simplex(const Vector& x0) {
    std::vector<Vector> out{x0};
    for (std::size_t i = 0; i < x0.size(); ++i) {
        std::vector<double> v = x0.values();
        v[i] = v[i] != 0.0 ? v[i] + 0.05 * std::abs(v[i]) : 0.00025;
        out.emplace_back(std::move(v));
    }
    return out;
}

void shrink_toward_best(Simplex& s, double sigma) {
    const Vector best = s.vertices.at(0);
    for (std::size_t k = 1; k < s.vertices.size(); ++k) {
        Vector& v = s.vertices[k];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = best[i] + sigma * (v[i] - best[i]);
    }
}

double simplex_volume(const Simplex& s) {
    const std::size_t n = s.vertices.size() - 1;
    Matrix edges(n, n);
    double factorial = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        factorial *= static_cast<double>(k);
        for (std::size_t i = 0; i < n; ++i) edges(k - 1, i) = s.vertices[k][i] - s.vertices[0][i];
    }
    return std::abs(determinant(edges)) / factorial;
}

NelderMeadResult nelder_mead(const Objective& objective, const Vector& x0, const NmOptions& opts) {
    if (!(opts.alpha > 0 && opts.gamma > 1 && opts.rho > 0 && opts.rho < 1 && opts.sigma > 0 && opts.sigma < 1))
        throw InvalidArgument("Nelder-Mead coefficients out of range");
    if (x0.size() == 0) throw InvalidArgument("Nelder-Mead needs at least one parameter");
    const std::size_t n = x0.size();

    std::vector<Point> pts;
    std::vector<double> vals;
    for (const Vector& v : initial_simplex(x0)) {
        const double fv = objective(v);
        if (!std::isfinite(fv)) throw InvalidArgument("objective is not finite at the initial simplex");
        pts.push_back(v.values());
        vals.push_back(fv);
    }

    NelderMeadResult result;
    int it = 0;
    for (;;) {
        sort_simplex(pts, vals);

        double xspread = 0.0;
        double fspread = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t i = 0; i < n; ++i) xspread = std::max(xspread, std::abs(pts[k][i] - pts[0][i]));
            fspread = std::max(fspread, std::abs(vals[k] - vals[0]));
        }
        if (xspread < opts.x_tol && fspread < opts.f_tol) {
            result.converged = true;
            break;
        }
        if (it >= opts.max_iter) break;
        ++it;

        Point centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i];
        for (double& c : centroid) c /= static_cast<double>(n);

        const Point& worst = pts[n];
        const Point xr = lerp(centroid, worst, -opts.alpha);
        const double fr = safe_eval(objective, xr);

        bool do_shrink = false;
        if (fr < vals[0]) {
            const Point xe = lerp(centroid, xr, opts.gamma);
            const double fe = safe_eval(objective, xe);
            if (fe < fr) {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            pts[n] = xr;
            vals[n] = fr;
        } else if (fr < vals[n]) {
            // outside contraction
            const Point xc = lerp(centroid, xr, opts.rho);
            const double fc = safe_eval(objective, xc);
            if (fc <= fr) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                do_shrink = true;
            }
        } else {
            // inside contraction
            const Point xc = lerp(centroid, worst, opts.rho);
            const double fc = safe_eval(objective, xc);
            if (fc < vals[n]) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                do_shrink = true;
            }
        }

        if (do_shrink) {
            for (std::size_t k = 1; k <= n; ++k) {
                pts[k] = lerp(pts[0], pts[k], opts.sigma);
                vals[k] = safe_eval(objective, pts[k]);
            }
        }
        result.best_history.push_back(*std::min_element(vals.begin(), vals.end()));
    }

    result.xmin = Vector(pts[0]);
    result.fmin = vals[0];
    result.iterations = it;
    return result;
}

double Model::operator()(double x, const Vector& lambda) const {
    if (lambda.size() != param_vars.size())
        throw DimensionMismatch("model has " + std::to_string(param_vars.size()) + " parameters, got " +
                                std::to_string(lambda.size()));
    Bindings b;
    b.emplace(x_var, x);
    for (std::size_t i = 0; i < param_vars.size(); ++i) b[param_vars[i]] = lambda[i];
    return evaluate(expr, b);
}

double residual_norm(const Model& model, const Vector& lambda, const Vector& xdata, const Vector& ydata) {
    if (xdata.size() != ydata.size()) throw DimensionMismatch("xdata and ydata differ in length");
    if (xdata.size() == 0) throw InvalidArgument("at least one data point is required");
    double sum = 0.0;
    for (std::size_t j = 0; j < xdata.size(); ++j) {
        const double r = model(xdata[j], lambda) - ydata[j];
        sum += r * r;
    }
    return std::sqrt(sum);
}

Draw<Vector> generate_noisy_data(const Model& model, const Vector& lambda_true, const Vector& xdata,
                                 double noise_lo, double noise_hi, RngState rng) {
    if (noise_lo > noise_hi) throw InvalidArgument("noise_lo must not exceed noise_hi");
    Vector y(xdata.size());
    for (std::size_t j = 0; j < xdata.size(); ++j) {
        const auto u = next_real(rng);
        rng = u.next;
        y[j] = model(xdata[j], lambda_true) * (noise_lo + (noise_hi - noise_lo) * u.value);
    }
    return {std::move(y), rng};
}

FitResult fit_model(const Model& model, const Vector& xdata, const Vector& ydata, const Vector& lambda0,
                    const NmOptions& opts) {
    const auto objective = [&](const Vector& lambda) {
        try {
            return residual_norm(model, lambda, xdata, ydata);
        } catch (const DomainError&) {
            return kInf;
        }
    };
    FitResult fit;
    fit.s_initial = residual_norm(model, lambda0, xdata, ydata);
    const NelderMeadResult nm = nelder_mead(objective, lambda0, opts);
    fit.lambda_fit = nm.xmin;
    fit.s_final = nm.fmin;
    fit.iterations = nm.iterations;
    fit.converged = nm.converged;
    return fit;
}

Vector arange(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop > start)) throw InvalidArgument("arange requires step > 0 and stop > start");
    const auto count = static_cast<std::size_t>(std::ceil((stop - start) / step));
    Vector out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

}  // namespace numlab
