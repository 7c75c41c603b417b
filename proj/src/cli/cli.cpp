#include "numlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "numlab/approx.hpp"
#include "numlab/error.hpp"
#include "numlab/experiments.hpp"
#include "numlab/optimize.hpp"
#include "numlab/quadrature.hpp"
#include "numlab/rootfind.hpp"
#include "output.hpp"

namespace numlab::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;
constexpr const char* kDefaultModel = "l1*e^(-x) + l2*e^(-l3*x)";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NUMLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("NUMLAB_SEED is not an unsigned integer: ") + env);
        }
    }
    return kDefaultSeed;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, sep)) {
        const auto a = field.find_first_not_of(" \t");
        const auto b = field.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? std::string{} : field.substr(a, b - a + 1));
    }
    return out;
}

double to_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
    return v;
}

Vector parse_real_list(const std::string& text) {
    std::vector<double> v;
    for (const auto& f : split(text, ',')) v.push_back(to_real(f));
    if (v.empty()) throw InvalidArgument("empty list");
    return Vector(std::move(v));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> v;
    for (const auto& f : split(text, ',')) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(f, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("not an integer: '" + f + "'");
        }
        if (used != f.size()) throw InvalidArgument("not an integer: '" + f + "'");
        v.push_back(n);
    }
    if (v.empty()) throw InvalidArgument("empty list");
    return v;
}

std::vector<std::string> parse_names(const std::string& text) {
    std::vector<std::string> names;
    for (auto& f : split(text, ','))
        if (!f.empty()) names.push_back(std::move(f));
    return names;
}

/// "start:stop:step" (numpy arange) or a comma-separated list.
Vector parse_xdata(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw InvalidArgument("xdata range must be start:stop:step");
        return arange(to_real(parts[0]), to_real(parts[1]), to_real(parts[2]));
    }
    return parse_real_list(text);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
    return f;
}

const std::map<std::string, OutputFormat> kFormats{
    {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};

void add_format_option(CLI::App* sub, OutputFormat& format) {
    sub->add_option("--format", format, "Output format: table, csv or json")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
        ->default_str("table");
}

void print_table(const TextTable& t, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Csv) t.print_csv(out);
    else t.print_aligned(out);
}

// ---------------------------------------------------------------------------
// Subcommands. Each fills its options at setup time and runs via a callback
// that returns the exit code.
// ---------------------------------------------------------------------------

struct Context {
    std::ostream& out;
    std::ostream& err;
};

using Runner = std::function<int(Context&)>;

Runner setup_newton(CLI::App& app) {
    struct Opts {
        std::string f;
        std::string var = "x";
        double x0 = 2.0;
        int maxn = 10;
        double h = 5e-6;
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("newton", "Scalar Newton iteration with the sign-change stopping rule");
    sub->add_option("--f", o->f, "Function whose root is sought, e.g. \"x^2-3\"")->required();
    sub->add_option("--var", o->var, "Variable name")->capture_default_str();
    sub->add_option("--x0", o->x0, "Initial guess")->capture_default_str();
    sub->add_option("--maxn", o->maxn, "Maximum number of Newton steps")->capture_default_str();
    sub->add_option("--h", o->h, "Bracket half-width: stop once f(x-h)f(x+h) < 0")->capture_default_str();
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const Expr f = parse(o->f);
        const auto result = newton_scalar(f, o->var, {o->x0, o->maxn, o->h});
        const auto& trace = result.trace;

        if (o->format == OutputFormat::Json) {
            json rows = json::array();
            for (const auto& r : result.rows)
                rows.push_back({{"n", r.index}, {"x", r.x}, {"fx", r.fx}, {"bracket_product", r.bracket_product}});
            json j{{"root", result.root},
                   {"converged", trace.converged},
                   {"stop_reason", to_string(trace.stop_reason)},
                   {"h", o->h},
                   {"rows", rows}};
            if (!trace.failure.empty()) j["failure"] = trace.failure;
            ctx.out << j.dump(2) << '\n';
        } else {
            const bool csv = o->format == OutputFormat::Csv;
            TextTable t({"n", "x_n", "f(x_n)", "f(x_n-h)f(x_n+h)"});
            for (const auto& r : result.rows)
                t.add_row({std::to_string(r.index), csv ? full(r.x) : sig(r.x, 7), csv ? full(r.fx) : sig(r.fx, 5),
                           csv ? full(r.bracket_product) : sig(r.bracket_product, 4)});
            if (!csv) ctx.out << "Root = " << sig(result.root, 16) << "\n\n";
            print_table(t, o->format, ctx.out);
        }
        if (!trace.converged) {
            ctx.err << "newton: stopped without meeting the accuracy goal (" << to_string(trace.stop_reason)
                    << (trace.failure.empty() ? "" : ": " + trace.failure) << ")\n";
            return int{kNotConverged};
        }
        return int{kSuccess};
    };
}

struct SystemSpec {
    std::vector<std::string> vars;
    std::vector<Expr> equations;
};

/// Lines: '#' comments, one "vars: a, b, c" declaration, then one
/// expression per line.
SystemSpec read_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read system file '" + path + "'");
    SystemSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::string body = line.substr(first);
        if (body.rfind("vars:", 0) == 0) {
            if (!spec.vars.empty()) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": duplicate vars line");
            spec.vars = parse_names(body.substr(5));
            continue;
        }
        try {
            spec.equations.push_back(parse(body));
        } catch (const SyntaxError& e) {
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (spec.vars.empty()) throw InvalidArgument(path + ": missing 'vars:' declaration");
    if (spec.equations.size() != spec.vars.size())
        throw DimensionMismatch(path + ": " + std::to_string(spec.equations.size()) + " equations for " +
                                std::to_string(spec.vars.size()) + " variables");
    return spec;
}

std::string format_point(const Vector& x, int digits) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + sig(x[i], digits);
    return s + ")";
}

Runner setup_mdnewton(CLI::App& app) {
    struct Opts {
        std::string system;
        std::string x0;
        int maxiter = 20;
        double tol = kDefaultSystemTol;
        std::string path_out;
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("mdnewton", "Multidimensional Newton iteration with a symbolic Jacobian");
    sub->add_option("--system", o->system, "System file: a 'vars:' line and one expression per line")->required();
    sub->add_option("--x0", o->x0, "Initial point, comma separated")->required();
    sub->add_option("--maxiter", o->maxiter, "Maximum number of Newton steps")->capture_default_str();
    sub->add_option("--tol", o->tol, "Stop once ||f(x)||_2 < tol")->capture_default_str();
    sub->add_option("--path-out", o->path_out, "Write the iteration path as CSV");
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const SystemSpec spec = read_system(o->system);
        const Vector x0 = parse_real_list(o->x0);
        if (x0.size() != spec.vars.size())
            throw DimensionMismatch("--x0 has " + std::to_string(x0.size()) + " components, system has " +
                                    std::to_string(spec.vars.size()) + " variables");
        const IterationTrace trace = newton_system(spec.equations, spec.vars, x0, o->maxiter, o->tol);

        if (o->format == OutputFormat::Json) {
            json steps = json::array();
            for (const auto& s : trace.steps)
                steps.push_back({{"i", s.index}, {"x", s.point.values()}, {"norm_f", s.residual_norm}});
            json j{{"vars", spec.vars},
                   {"converged", trace.converged},
                   {"stop_reason", to_string(trace.stop_reason)},
                   {"steps", steps}};
            if (!trace.failure.empty()) j["failure"] = trace.failure;
            ctx.out << j.dump(2) << '\n';
        } else if (o->format == OutputFormat::Csv) {
            std::vector<std::string> header{"i"};
            header.insert(header.end(), spec.vars.begin(), spec.vars.end());
            header.push_back("norm_f");
            TextTable t(header);
            for (const auto& s : trace.steps) {
                std::vector<std::string> row{std::to_string(s.index)};
                for (double v : s.point) row.push_back(full(v));
                row.push_back(full(s.residual_norm));
                t.add_row(row);
            }
            t.print_csv(ctx.out);
        } else {
            std::string vars = "(";
            for (std::size_t i = 0; i < spec.vars.size(); ++i) vars += (i ? "," : "") + spec.vars[i];
            TextTable t({"i", vars + ")", "norm(f)"});
            for (const auto& s : trace.steps)
                t.add_row({std::to_string(s.index), format_point(s.point, 10), sig(s.residual_norm, 4)});
            t.print_aligned(ctx.out);
        }

        if (!o->path_out.empty()) {
            auto f = open_output(o->path_out);
            TextTable path(spec.vars);
            for (const auto& s : trace.steps) {
                std::vector<std::string> row;
                for (double v : s.point) row.push_back(full(v));
                path.add_row(row);
            }
            path.print_csv(f);
        }
        if (!trace.converged) {
            ctx.err << "mdnewton: " << to_string(trace.stop_reason)
                    << (trace.failure.empty() ? "" : ": " + trace.failure) << '\n';
            return int{kNotConverged};
        }
        return int{kSuccess};
    };
}

Runner setup_quad(CLI::App& app) {
    struct Opts {
        std::string f;
        std::string var = "x";
        double a = 0.0;
        double b = 2.0;
        std::optional<double> exact;
        std::string ns = "4,10,20,50,100";
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("quad", "Error table of the composite midpoint, trapezoidal and Simpson rules");
    sub->add_option("--f", o->f, "Integrand")->required();
    sub->add_option("--var", o->var, "Variable name")->capture_default_str();
    sub->add_option("--a", o->a, "Lower limit")->capture_default_str();
    sub->add_option("--b", o->b, "Upper limit")->capture_default_str();
    sub->add_option("--exact", o->exact, "Exact integral (default: adaptive quadrature at tol 1e-12)");
    sub->add_option("--ns", o->ns, "Even subinterval counts, comma separated")->capture_default_str();
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const Integrand f = as_integrand(parse(o->f), o->var);
        const auto ns = parse_int_list(o->ns);
        const double exact = o->exact ? *o->exact : adaptive_integral(f, o->a, o->b, 1e-12).value;
        const auto rows = convergence_table(f, o->a, o->b, exact, ns);

        if (o->format == OutputFormat::Json) {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"n", r.n},
                               {"h", r.h},
                               {"midpoint", r.err_midpoint},
                               {"trapezoid", r.err_trapezoid},
                               {"simpson", r.err_simpson}});
            ctx.out << json{{"exact", exact}, {"rows", arr}}.dump(2) << '\n';
            return int{kSuccess};
        }
        const bool csv = o->format == OutputFormat::Csv;
        TextTable t({"n", "h", "Midpoint rule", "Trapezoidal rule", "Simpson's rule"});
        for (const auto& r : rows)
            t.add_row({std::to_string(r.n), csv ? full(r.h) : sig(r.h, 2),
                       csv ? full(r.err_midpoint) : sig(r.err_midpoint, 6),
                       csv ? full(r.err_trapezoid) : sig(r.err_trapezoid, 6),
                       csv ? full(r.err_simpson) : sig(r.err_simpson, 6)});
        print_table(t, o->format, ctx.out);
        return int{kSuccess};
    };
}

const std::map<std::string, RiemannMode> kModes{
    {"midpoint", RiemannMode::Midpoint}, {"left", RiemannMode::Left}, {"right", RiemannMode::Right}};

Runner setup_riemann(CLI::App& app) {
    struct Opts {
        std::string f;
        std::string var = "x";
        double a = 0.0;
        double b = 10.0;
        int n = 6;
        RiemannMode mode = RiemannMode::Midpoint;
        std::string out;
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("riemann", "Riemann-sum rectangles for plotting");
    sub->add_option("--f", o->f, "Function")->required();
    sub->add_option("--var", o->var, "Variable name")->capture_default_str();
    sub->add_option("--a", o->a, "Left end")->capture_default_str();
    sub->add_option("--b", o->b, "Right end")->capture_default_str();
    sub->add_option("--n", o->n, "Number of rectangles")->capture_default_str();
    sub->add_option("--mode", o->mode, "Sample point: midpoint, left or right")
        ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
        ->default_str("midpoint");
    sub->add_option("--out", o->out, "Write rectangles as CSV (x_left,x_right,height)");
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const Integrand f = as_integrand(parse(o->f), o->var);
        const auto rects = riemann_rectangles(f, o->a, o->b, o->n, o->mode);
        const double total = riemann_total(rects);

        auto full_table = [&] {
            TextTable t({"x_left", "x_right", "height"});
            for (const auto& r : rects) t.add_row({full(r.x_left), full(r.x_right), full(r.height)});
            return t;
        };
        if (!o->out.empty()) {
            auto file = open_output(o->out);
            full_table().print_csv(file);
        }
        if (o->format == OutputFormat::Json) {
            json arr = json::array();
            for (const auto& r : rects)
                arr.push_back({{"x_left", r.x_left}, {"x_right", r.x_right}, {"height", r.height}});
            ctx.out << json{{"rectangles", arr}, {"sum", total}}.dump(2) << '\n';
        } else if (o->format == OutputFormat::Csv) {
            full_table().print_csv(ctx.out);
        } else {
            TextTable t({"x_left", "x_right", "height"});
            for (const auto& r : rects) t.add_row({sig(r.x_left, 7), sig(r.x_right, 7), sig(r.height, 7)});
            t.print_aligned(ctx.out);
            ctx.out << "\nSum = " << sig(total, 16) << '\n';
        }
        return int{kSuccess};
    };
}

Runner setup_fit(CLI::App& app) {
    struct Opts {
        std::string model = kDefaultModel;
        std::string params = "l1,l2,l3";
        std::string x_var = "x";
        std::string xdata = "0:1.15:0.05";
        std::string lambda_true = "0.2,1.5,0.7";
        std::string noise = "0.97,1.02";
        std::string lambda0 = "1,1,1";
        std::optional<std::uint64_t> seed;
        int max_iter = 2000;
        std::string curve_out;
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("fit", "Nelder-Mead least-squares fit to noisy synthetic data");
    sub->add_option("--model", o->model, "Model expression")->capture_default_str();
    sub->add_option("--params", o->params, "Parameter names, comma separated")->capture_default_str();
    sub->add_option("--x-var", o->x_var, "Independent variable name")->capture_default_str();
    sub->add_option("--xdata", o->xdata, "start:stop:step (arange) or a comma-separated list")->capture_default_str();
    sub->add_option("--lambda-true", o->lambda_true, "Parameters generating the data")->capture_default_str();
    sub->add_option("--noise", o->noise, "Multiplicative noise range lo,hi")->capture_default_str();
    sub->add_option("--lambda0", o->lambda0, "Initial parameters")->capture_default_str();
    sub->add_option("--seed", o->seed, "RNG seed (default: $NUMLAB_SEED or 42)");
    sub->add_option("--max-iter", o->max_iter, "Nelder-Mead iteration limit")->capture_default_str();
    sub->add_option("--curve-out", o->curve_out, "Write x,y_data,y_fit as CSV");
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const std::uint64_t seed = o->seed ? *o->seed : default_seed();
        const Model model{parse(o->model), o->x_var, parse_names(o->params)};
        const Vector xdata = parse_xdata(o->xdata);
        const Vector lambda_true = parse_real_list(o->lambda_true);
        const Vector lambda0 = parse_real_list(o->lambda0);
        const Vector noise = parse_real_list(o->noise);
        if (noise.size() != 2) throw InvalidArgument("--noise needs exactly two values lo,hi");
        if (lambda_true.size() != model.param_vars.size() || lambda0.size() != model.param_vars.size())
            throw DimensionMismatch("parameter vectors must have " + std::to_string(model.param_vars.size()) +
                                    " entries");

        const Vector ydata = generate_noisy_data(model, lambda_true, xdata, noise[0], noise[1], RngState{seed}).value;
        NmOptions opts;
        opts.max_iter = o->max_iter;
        const FitResult fit = fit_model(model, xdata, ydata, lambda0, opts);

        if (!o->curve_out.empty()) {
            auto file = open_output(o->curve_out);
            TextTable t({"x", "y_data", "y_fit"});
            for (std::size_t j = 0; j < xdata.size(); ++j)
                t.add_row({full(xdata[j]), full(ydata[j]), full(model(xdata[j], fit.lambda_fit))});
            t.print_csv(file);
        }

        if (o->format == OutputFormat::Json) {
            json j{{"seed", seed},
                   {"params", model.param_vars},
                   {"lambda_fit", fit.lambda_fit.values()},
                   {"s_initial", fit.s_initial},
                   {"s_final", fit.s_final},
                   {"iterations", fit.iterations},
                   {"converged", fit.converged}};
            ctx.out << j.dump(2) << '\n';
        } else if (o->format == OutputFormat::Csv) {
            TextTable t({"param", "value"});
            for (std::size_t i = 0; i < model.param_vars.size(); ++i)
                t.add_row({model.param_vars[i], full(fit.lambda_fit[i])});
            t.print_csv(ctx.out);
        } else {
            ctx.out << "Object function values: start = " << sig(fit.s_initial, 6)
                    << ", final = " << sig(fit.s_final, 6) << '\n';
            ctx.out << "Seed = " << seed << ", iterations = " << fit.iterations
                    << (fit.converged ? ", converged" : ", NOT converged") << "\n\n";
            TextTable t({"param", "value"});
            for (std::size_t i = 0; i < model.param_vars.size(); ++i)
                t.add_row({model.param_vars[i], sig(fit.lambda_fit[i], 10)});
            t.print_aligned(ctx.out);
        }
        if (!fit.converged) {
            ctx.err << "fit: Nelder-Mead reached the iteration limit\n";
            return int{kNotConverged};
        }
        return int{kSuccess};
    };
}

Runner setup_polyapprox(CLI::App& app) {
    struct Opts {
        std::string g = "e^x";
        std::string var = "x";
        double r1 = -1.0;
        double r2 = 1.0;
        int nmin = 2;
        int nmax = 3;
        std::string grid_out;
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("polyapprox", "L2 polynomial approximation via the normal equations");
    sub->add_option("--g", o->g, "Function to approximate")->capture_default_str();
    sub->add_option("--var", o->var, "Variable name")->capture_default_str();
    sub->add_option("--r1", o->r1, "Left end")->capture_default_str();
    sub->add_option("--r2", o->r2, "Right end")->capture_default_str();
    sub->add_option("--nmin", o->nmin, "Smallest n (clamped to nmax)")->capture_default_str();
    sub->add_option("--nmax", o->nmax, "Largest n; the polynomial degree is n-1")->capture_default_str();
    sub->add_option("--grid-out", o->grid_out, "Write n,x,g,p,abs_err grid samples as CSV");
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const Integrand g = as_integrand(parse(o->g), o->var);
        const int nmin = std::min(o->nmin, o->nmax);
        std::vector<PolyApproxResult> fits;
        for (int n = nmin; n <= o->nmax; ++n) fits.push_back(l2_polyfit(g, n, o->r1, o->r2));

        if (!o->grid_out.empty()) {
            auto file = open_output(o->grid_out);
            TextTable t({"n", "x", "g", "p", "abs_err"});
            for (const auto& fit : fits)
                for (const auto& s : fit.grid)
                    t.add_row({std::to_string(fit.n), full(s.x), full(s.g), full(s.p), full(std::abs(s.p - s.g))});
            t.print_csv(file);
        }

        if (o->format == OutputFormat::Json) {
            json arr = json::array();
            for (const auto& fit : fits)
                arr.push_back({{"n", fit.n},
                               {"coeffs", fit.coeffs.values()},
                               {"max_abs_err", fit.max_abs_err},
                               {"int_abs_err", fit.int_abs_err},
                               {"int_sq_err", fit.int_sq_err}});
            ctx.out << json{{"r1", o->r1}, {"r2", o->r2}, {"fits", arr}}.dump(2) << '\n';
            return int{kSuccess};
        }
        const bool csv = o->format == OutputFormat::Csv;
        TextTable t({"n", "coeffs", "max_abs_err", "int_abs_err", "int_sq_err"});
        for (const auto& fit : fits) {
            std::string coeffs;
            for (std::size_t k = 0; k < fit.coeffs.size(); ++k)
                coeffs += (k ? " " : "") + (csv ? full(fit.coeffs[k]) : sig(fit.coeffs[k], 8));
            t.add_row({std::to_string(fit.n), coeffs, csv ? full(fit.max_abs_err) : sig(fit.max_abs_err, 6),
                       csv ? full(fit.int_abs_err) : sig(fit.int_abs_err, 6),
                       csv ? full(fit.int_sq_err) : sig(fit.int_sq_err, 6)});
        }
        print_table(t, o->format, ctx.out);
        return int{kSuccess};
    };
}

Runner setup_condexp(CLI::App& app) {
    struct Opts {
        std::size_t n = 20;
        double pmin = 1.0;
        double pmax = 15.0;
        double pstep = 2.0;
        std::optional<std::uint64_t> seed;
        std::string out;
        OutputFormat format = OutputFormat::Table;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("condexp", "Solution error against prescribed condition number");
    sub->add_option("--n", o->n, "Matrix dimension")->capture_default_str();
    sub->add_option("--pmin", o->pmin, "Smallest exponent p, c = 10^p")->capture_default_str();
    sub->add_option("--pmax", o->pmax, "Largest exponent")->capture_default_str();
    sub->add_option("--pstep", o->pstep, "Exponent step")->capture_default_str();
    sub->add_option("--seed", o->seed, "RNG seed (default: $NUMLAB_SEED or 42)");
    sub->add_option("--out", o->out, "Write c,err as CSV");
    add_format_option(sub, o->format);

    return [o](Context& ctx) {
        const std::uint64_t seed = o->seed ? *o->seed : default_seed();
        const auto records = condition_error_study(o->n, exponent_range(o->pmin, o->pmax, o->pstep), RngState{seed});
        std::optional<double> slope;
        std::string note;
        if (records.size() < 2) {
            note = "slope undefined: fewer than two records";
        } else {
            try {
                slope = loglog_slope(records);
            } catch (const DomainError& e) {
                note = e.what();
            }
        }

        auto full_table = [&] {
            TextTable t({"c", "err"});
            for (const auto& r : records) t.add_row({full(r.c), full(r.err)});
            return t;
        };
        if (!o->out.empty()) {
            auto file = open_output(o->out);
            full_table().print_csv(file);
        }
        if (o->format == OutputFormat::Json) {
            json arr = json::array();
            for (const auto& r : records) arr.push_back({{"c", r.c}, {"err", r.err}});
            json j{{"n", o->n}, {"seed", seed}, {"records", arr}};
            if (slope) j["slope"] = *slope;
            else j["note"] = note;
            ctx.out << j.dump(2) << '\n';
        } else if (o->format == OutputFormat::Csv) {
            full_table().print_csv(ctx.out);
        } else {
            TextTable t({"c", "err"});
            for (const auto& r : records) t.add_row({sig(r.c, 4), sig(r.err, 4)});
            t.print_aligned(ctx.out);
            ctx.out << "\nn = " << o->n << ", seed = " << seed << '\n';
            if (slope) ctx.out << "loglog slope = " << sig(*slope, 6) << '\n';
            else ctx.out << note << '\n';
        }
        return int{kSuccess};
    };
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"numlab: numerical-methods case studies"};
    app.name("numlab");
    app.require_subcommand(1);
    // newton uses --h, so help is long-form only
    app.set_help_flag("--help", "Print this help message and exit");

    std::map<std::string, Runner> commands{
        {"newton", setup_newton(app)},       {"mdnewton", setup_mdnewton(app)},
        {"quad", setup_quad(app)},           {"riemann", setup_riemann(app)},
        {"fit", setup_fit(app)},             {"polyapprox", setup_polyapprox(app)},
        {"condexp", setup_condexp(app)},
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "numlab: " << e.what() << '\n';
        return kUsageError;
    }

    Context ctx{out, err};
    const std::string name = app.get_subcommands().at(0)->get_name();
    try {
        return commands.at(name)(ctx);
    } catch (const Error& e) {
        err << "numlab " << name << ": " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace numlab::cli
