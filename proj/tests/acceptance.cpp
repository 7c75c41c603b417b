// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "numlab/approx.hpp"
#include "numlab/cli.hpp"
#include "numlab/error.hpp"
#include "numlab/experiments.hpp"
#include "numlab/expr.hpp"
#include "numlab/linalg.hpp"
#include "numlab/optimize.hpp"
#include "numlab/quadrature.hpp"
#include "numlab/rng.hpp"
#include "numlab/rootfind.hpp"
#include "oracles.hpp"

using namespace numlab;

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failed checks for one criterion.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: got %.17g, want %.17g (tol %g)", what.c_str(), got, want, tol);
            failures_.push_back(buf);
        }
    }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

struct Criterion {
    int id;
    std::string title;
    double limit_ms;  // 0: no runtime bound
    std::function<void(Checker&)> body;
};

int failed = 0;

void run_criterion(const Criterion& c) {
    Checker chk;
    const auto t0 = Clock::now();
    try {
        c.body(chk);
    } catch (const std::exception& e) {
        chk.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (c.limit_ms > 0 && ms >= c.limit_ms) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "runtime %.3f ms exceeds %.0f ms", ms, c.limit_ms);
        chk.expect(false, buf);
    }
    const bool ok = chk.failures().empty();
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s (%.3f ms)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), ms);
    for (const auto& f : chk.failures()) std::printf("    - %s\n", f.c_str());
}

// 1 ------------------------------------------------------------------------

void three_by_three(Checker& chk) {
    const Matrix a{{1, 3, -3}, {-3, 7, -3}, {-6, 6, -2}};
    chk.near(determinant(a), -32.0, 1e-10, "det(A)");
    chk.expect(rank(a) == 3, "rank(A) = 3");
    chk.near(frobenius_norm(a), 12.7279220614, 1e-9, "||A||_F");

    const Matrix inv = inverse(a);
    const double want_inv[3][3] = {{-0.125, 0.375, -0.375}, {-0.375, 0.625, -0.375}, {-0.75, 0.75, -0.5}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            chk.near(inv(i, j), want_inv[i][j], 1e-12, "inv(A)(" + std::to_string(i) + "," + std::to_string(j) + ")");

    const Vector x = solve(a, Vector{1, 3, 6});
    chk.near(x[0], -1.25, 1e-12, "x[0]");
    chk.near(x[1], -0.75, 1e-12, "x[1]");
    chk.near(x[2], -1.5, 1e-12, "x[2]");

    const LuFactors lu = lu_decompose(a);
    chk.expect(lu.perm == std::vector<std::size_t>{2, 1, 0}, "row permutation (2,1,0)");
    chk.near(lu.lower(1, 0), 0.5, 1e-12, "L(2,1)");
    chk.near(lu.lower(2, 0), -1.0 / 6, 1e-12, "L(3,1)");
    chk.near(lu.lower(2, 1), 1.0, 1e-12, "L(3,2)");
    const double want_u[3][3] = {{-6, 6, -2}, {0, 4, -2}, {0, 0, -4.0 / 3}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            chk.near(lu.upper(i, j), want_u[i][j], 1e-12, "U(" + std::to_string(i) + "," + std::to_string(j) + ")");
}

// 2 ------------------------------------------------------------------------

void scalar_newton(Checker& chk) {
    ScalarNewtonConfig cfg;
    cfg.x0 = 2.0;
    const auto r = newton_scalar(parse("x^2-3"), "x", cfg);
    chk.expect(r.trace.converged, "converged");
    chk.near(r.root, std::sqrt(3.0), 1e-5, "root");
    chk.expect(r.rows.size() >= 3, "at least three iterates");
    if (r.rows.size() >= 3) {
        chk.near(r.rows[0].x, 2.0, 1e-6, "x_0");
        chk.near(r.rows[1].x, 1.75, 1e-6, "x_1");
        chk.near(r.rows[2].x, 1.7321428, 1e-6, "x_2");
    }
    const double c = r.root;
    const double h = cfg.h;
    auto f = [](double x) { return x * x - 3; };
    chk.expect(f(c - h) * f(c + h) < 0, "f(c-h)f(c+h) < 0 at termination");
}

// 3 ------------------------------------------------------------------------

void quadrature_table(Checker& chk) {
    const auto rows = convergence_table(as_integrand(parse("x^2")), 0, 2, 8.0 / 3, {4});
    chk.near(rows.at(0).err_midpoint, -1.0 / 24, 1e-12, "midpoint error n=4");
    chk.near(rows.at(0).err_trapezoid, 1.0 / 12, 1e-12, "trapezoid error n=4");
    chk.near(rows.at(0).err_simpson, 0.0, 1e-12, "Simpson error n=4");

    auto f = [](double x) { return std::sin(x); };
    const double pi = std::numbers::pi;
    auto ratio = [&](double (*rule)(const Integrand&, double, double, int)) {
        return std::abs(rule(f, 0, pi, 16) - 2) / std::abs(rule(f, 0, pi, 32) - 2);
    };
    chk.near(ratio(midpoint), 4.0, 0.4, "midpoint ratio 16->32");
    chk.near(ratio(trapezoid), 4.0, 0.4, "trapezoid ratio 16->32");
    chk.near(ratio(simpson), 16.0, 1.6, "Simpson ratio 16->32");
}

// 4 ------------------------------------------------------------------------

void nonlinear_system(Checker& chk) {
    const std::vector<std::string> vars{"x0", "x1", "x2"};
    const std::vector<Expr> fs{parse("3*x0 - cos(x1*x2) - 1/2"), parse("x0^2 - 81*(x1 + 0.1)^2 + sin(x2) + 10.6"),
                               parse("e^(-x0*x1) + 20*x2 + (10*pi - 3)/3")};
    const auto t = newton_system(fs, vars, Vector{3, 4, 5}, 12);
    chk.expect(t.converged, "converged within 12 iterations");
    chk.expect(t.steps.back().residual_norm < 1e-8, "residual norm < 1e-8");
    const Bindings b = bind(vars, t.steps.back().point);
    for (std::size_t i = 0; i < fs.size(); ++i)
        chk.expect(std::abs(evaluate(fs[i], b)) <= 1e-8, "equation " + std::to_string(i + 1) + " satisfied to 1e-8");
}

// 5 ------------------------------------------------------------------------

void conditioning(Checker& chk) {
    const auto exps = exponent_range(1, 15, 2);
    std::vector<double> slopes;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto recs = condition_error_study(20, exps, RngState{seed});
        std::vector<double> lc, le;
        for (const auto& r : recs) {
            lc.push_back(std::log10(r.c));
            le.push_back(std::log10(r.err));
        }
        const double rho = spearman(lc, le);
        chk.expect(rho > 0.95, "Spearman > 0.95 for seed " + std::to_string(seed) + " (got " + std::to_string(rho) + ")");
        slopes.push_back(loglog_slope(recs));
    }
    std::sort(slopes.begin(), slopes.end());
    const double median = 0.5 * (slopes[9] + slopes[10]);
    chk.expect(median >= 0.7 && median <= 1.3, "median slope in [0.7, 1.3] (got " + std::to_string(median) + ")");
}

// 6 ------------------------------------------------------------------------

void model_fit(Checker& chk) {
    const Model m{parse("l1*e^(-x) + l2*e^(-l3*x)"), "x", {"l1", "l2", "l3"}};
    const Vector x = arange(0, 1.15, 0.05);
    const Vector lt{0.2, 1.5, 0.7};
    const Vector l0{1, 1, 1};

    const Vector noisy = generate_noisy_data(m, lt, x, 0.97, 1.02, RngState{42}).value;
    const FitResult r = fit_model(m, x, noisy, l0);
    chk.expect(r.s_final < r.s_initial, "s_final < s_initial");
    char buf[96];
    std::snprintf(buf, sizeof buf, "s_final <= 0.05 with noise (got %.6g)", r.s_final);
    chk.expect(r.s_final <= 0.05, buf);

    const Vector clean = generate_noisy_data(m, lt, x, 1.0, 1.0, RngState{42}).value;
    const FitResult z = fit_model(m, x, clean, l0);
    std::snprintf(buf, sizeof buf, "s_final <= 1e-6 without noise (got %.3g)", z.s_final);
    chk.expect(z.s_final <= 1e-6, buf);
}

// 7 ------------------------------------------------------------------------

void exp_approximation(Checker& chk) {
    auto g = [](double x) { return std::exp(x); };
    const auto p2 = l2_polyfit(g, 2, -1, 1);
    const auto p3 = l2_polyfit(g, 3, -1, 1);
    chk.near(p2.coeffs[0], 3 / std::numbers::e, 1e-6, "n=2 slope 3/e");
    chk.near(p2.coeffs[1], std::sinh(1.0), 1e-6, "n=2 intercept sinh 1");
    for (const auto* r : {&p2, &p3})
        for (int k = 0; k < r->n; ++k) {
            const double ip =
                adaptive_integral([&](double x) { return (g(x) - polyval(r->coeffs, x)) * std::pow(x, k); }, -1, 1,
                                  1e-12)
                    .value;
            chk.expect(std::abs(ip) <= 1e-6,
                       "orthogonality n=" + std::to_string(r->n) + " against x^" + std::to_string(k));
        }
    chk.expect(p3.max_abs_err < p2.max_abs_err, "max error decreases from n=2 to n=3");
}

// 8 ------------------------------------------------------------------------

bool defined(const std::function<void()>& f) {
    try {
        f();
        return true;
    } catch (const Error&) {
        return false;
    }
}

Matrix uniform_matrix(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1, 1);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
    return m;
}

void properties(Checker& chk) {
    // symbolic derivative against central differences
    oracle::ExprGenerator gen(2024);
    int cases = 0, bad = 0;
    while (cases < 1000) {
        const Expr e = gen(6);
        const Expr d = differentiate(e, "x");
        for (int k = 0; k < 10 && cases < 1000; ++k) {
            const double x = gen.point();
            const double y = gen.point();
            auto f = [&](double v) { return evaluate(e, {{"x", v}, {"y", y}}); };
            double fx = 0, exact = 0, fd = 0;
            if (!defined([&] {
                    fx = f(x);
                    exact = evaluate(d, {{"x", x}, {"y", y}});
                    fd = oracle::richardson_difference(f, x);
                }))
                continue;
            if (std::abs(fx) > 1e3) continue;
            ++cases;
            if (std::abs(exact - fd) > 1e-5 * (1 + std::abs(exact))) ++bad;
        }
    }
    chk.expect(bad == 0, std::to_string(bad) + " of 1000 derivative cases off by more than 1e-5");

    std::mt19937 rng(99);
    int lu_bad = 0, svd_bad = 0, det_bad = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 11);
        const Matrix a = uniform_matrix(rng, n);
        const double scale = frobenius_norm(a);
        const LuFactors lu = lu_decompose(a);
        if (max_abs(mat_mul(lu.permutation_matrix(), a) - mat_mul(lu.lower, lu.upper)) > 1e-12 * scale) ++lu_bad;

        const SvdFactors f = svd(a);
        const Matrix id = Matrix::identity(n);
        if (frobenius_norm(mat_mul(transpose(f.u), f.u) - id) > 1e-10 * static_cast<double>(n) ||
            frobenius_norm(mat_mul(transpose(f.v), f.v) - id) > 1e-10 * static_cast<double>(n) ||
            frobenius_norm(a - f.reconstruct()) > 1e-10 * scale)
            ++svd_bad;
        double prod = 1.0;
        for (double s : f.s) prod *= s;
        if (std::abs(std::abs(determinant(a)) - prod) > 1e-8 * prod) ++det_bad;
    }
    chk.expect(lu_bad == 0, std::to_string(lu_bad) + " of 200 LU reconstructions above 1e-12 ||A||_F");
    chk.expect(svd_bad == 0, std::to_string(svd_bad) + " of 200 SVDs fail orthogonality or reconstruction");
    chk.expect(det_bad == 0, std::to_string(det_bad) + " of 200 |det| differ from prod(s) by more than 1e-8");

    // Nelder-Mead best-value monotonicity
    const std::vector<std::pair<Objective, Vector>> problems{
        {[](const Vector& v) { return (v[0] - 3) * (v[0] - 3); }, Vector{0.0}},
        {[](const Vector& v) { return v[0] * v[0] + 2 * v[1] * v[1] + 3 * v[2] * v[2]; }, Vector{1, -1, 2}},
        {[](const Vector& v) {
             const double a = 1 - v[0], b = v[1] - v[0] * v[0];
             return a * a + 100 * b * b;
         },
         Vector{-1.2, 1.0}},
    };
    for (std::size_t p = 0; p < problems.size(); ++p) {
        const auto r = nelder_mead(problems[p].first, problems[p].second);
        const auto& h = r.best_history;
        chk.expect(std::is_sorted(h.rbegin(), h.rend()), "Nelder-Mead history monotone on problem " + std::to_string(p));
    }

    // prescribed condition numbers
    int cond_bad = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix a = random_matrix(10, RngState{seed}).value;
        for (int p = 0; p <= 12; ++p) {
            const double c = std::pow(10.0, p);
            if (std::abs(condition_number(prescribe_condition(a, c)) / c - 1) > 1e-3) ++cond_bad;
        }
    }
    chk.expect(cond_bad == 0, std::to_string(cond_bad) + " prescribed condition numbers off by more than 0.1%");
}

// 9 ------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::vector<std::string>& args, std::string& out) {
    std::vector<const char*> argv{"numlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream os, es;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), os, es);
    out = os.str();
    return code;
}

void determinism(Checker& chk) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "numlab_acceptance";
    fs::create_directories(dir);
    const std::string file = (dir / "out.csv").string();
    const std::string system = std::string(NUMLAB_DATA_DIR) + "/sec34.txt";
    const std::vector<std::vector<std::string>> commands{
        {"fit", "--seed", "42", "--curve-out", file},
        {"fit", "--seed", "42", "--format", "json", "--curve-out", file},
        {"condexp", "--seed", "42", "--out", file},
        {"condexp", "--seed", "3", "--n", "8", "--format", "csv", "--out", file},
        {"mdnewton", "--system", system, "--x0", "3,4,5", "--path-out", file},
        {"riemann", "--f", "x^2-5*x+10", "--out", file},
        {"polyapprox", "--grid-out", file},
    };
    for (const auto& cmd : commands) {
        std::string out_a, out_b;
        fs::remove(file);
        const int ca = cli(cmd, out_a);
        const std::string file_a = slurp(file);
        fs::remove(file);
        const int cb = cli(cmd, out_b);
        const std::string file_b = slurp(file);
        chk.expect(ca == cb && out_a == out_b && file_a == file_b && !file_a.empty(),
                   "repeat of '" + cmd[0] + " " + cmd[1] + " " + cmd[2] + "' is byte-identical");
    }
    fs::remove_all(dir);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "3x3 exact values: det, rank, Frobenius, inverse, solve, LU", 1, three_by_three},
        {2, "scalar Newton on x^2-3 from 2", 1, scalar_newton},
        {3, "quadrature table on x^2 and convergence orders on sin", 10, quadrature_table},
        {4, "three-equation Newton system from (3,4,5)", 10, nonlinear_system},
        {5, "conditioning study over 20 seeds", 2000, conditioning},
        {6, "exponential model fit, seed 42", 100, model_fit},
        {7, "L2 approximation of e^x on [-1,1]", 50, exp_approximation},
        {8, "library-wide property suites", 5000, properties},
        {9, "seeded CLI commands are byte-identical on repeat", 0, determinism},
    };
    for (const auto& c : criteria) run_criterion(c);
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
