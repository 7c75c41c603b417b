#include "numlab/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "numlab/error.hpp"

namespace numlab {

namespace {

void require_finite(std::span<const double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument("matrix and vector entries must be finite");
}

void require_square(const Matrix& a, const char* op) {
    if (!a.is_square())
        throw DimensionMismatch(std::string(op) + " requires a square matrix, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

}  // namespace

Vector::Vector(std::vector<double> values) : data_(std::move(values)) { require_finite(data_); }

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) + " != " +
                                std::to_string(rows_) + "*" + std::to_string(cols_));
    require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("mat_mul: " + std::to_string(a.cols()) + " columns vs " +
                                std::to_string(b.rows()) + " rows");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector mat_vec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size())
        throw DimensionMismatch("mat_vec: " + std::to_string(a.cols()) + " columns vs vector of " +
                                std::to_string(x.size()));
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix subtraction");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector subtraction");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double vec_norm2(const Vector& x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return std::sqrt(sum);
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (double v : a.data()) sum += v * v;
    return std::sqrt(sum);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// LU
// ---------------------------------------------------------------------------

Matrix LuFactors::permutation_matrix() const {
    Matrix p(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) p(i, perm[i]) = 1.0;
    return p;
}

namespace {

// Returns false when a pivot column is exactly zero; factors are then partial.
bool factor(const Matrix& a, LuFactors& out) {
    const std::size_t n = a.rows();
    out.perm.resize(n);
    std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
    out.lower = Matrix::identity(n);
    out.upper = a;
    out.swaps = 0;
    Matrix& u = out.upper;
    Matrix& l = out.lower;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(u(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(u(i, k)) > best) {
                best = std::abs(u(i, k));
                pivot = i;
            }
        }
        if (best == 0.0) return false;
        if (pivot != k) {
            std::swap_ranges(u.row(k).begin(), u.row(k).end(), u.row(pivot).begin());
            std::swap_ranges(l.row(k).begin(), l.row(k).begin() + static_cast<std::ptrdiff_t>(k),
                             l.row(pivot).begin());
            std::swap(out.perm[k], out.perm[pivot]);
            ++out.swaps;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = u(i, k) / u(k, k);
            l(i, k) = m;
            u(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) u(i, j) -= m * u(k, j);
        }
    }
    return true;
}

}  // namespace

LuFactors lu_decompose(const Matrix& a) {
    require_square(a, "lu_decompose");
    LuFactors lu;
    if (!factor(a, lu)) throw SingularMatrix("matrix is singular (zero pivot column)");
    return lu;
}

Vector lu_solve(const LuFactors& lu, const Vector& b) {
    const std::size_t n = lu.perm.size();
    if (b.size() != n)
        throw DimensionMismatch("solve: matrix is " + std::to_string(n) + "x" + std::to_string(n) +
                                " but right-hand side has " + std::to_string(b.size()) + " entries");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[lu.perm[i]];
        for (std::size_t j = 0; j < i; ++j) sum -= lu.lower(i, j) * x[j];
        x[i] = sum;
    }
    for (std::size_t i = n; i-- > 0;) {
        double sum = x[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= lu.upper(i, j) * x[j];
        x[i] = sum / lu.upper(i, i);
    }
    return Vector(std::move(x));
}

Vector solve(const Matrix& a, const Vector& b) {
    require_square(a, "solve");
    LuFactors lu;
    if (!factor(a, lu)) throw SingularMatrix();
    return lu_solve(lu, b);
}

Matrix inverse(const Matrix& a) {
    require_square(a, "inverse");
    LuFactors lu;
    if (!factor(a, lu)) throw SingularMatrix();
    const std::size_t n = a.rows();
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n);
        e[j] = 1.0;
        const Vector col = lu_solve(lu, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

double determinant(const Matrix& a) {
    require_square(a, "determinant");
    LuFactors lu;
    if (!factor(a, lu)) return 0.0;
    double det = lu.swaps % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) det *= lu.upper(i, i);
    return det;
}

// ---------------------------------------------------------------------------
// SVD
// ---------------------------------------------------------------------------

Matrix SvdFactors::reconstruct() const {
    Matrix us = u;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= s[j];
    return mat_mul(us, transpose(v));
}

namespace {

using Column = std::vector<double>;

double col_dot(const Column& a, const Column& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void rotate(Column& p, Column& q, double c, double s) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double xp = p[i];
        const double xq = q[i];
        p[i] = c * xp - s * xq;
        q[i] = s * xp + c * xq;
    }
}

// Unit vector orthogonal to every column in `basis`.
Column orthogonal_complement(const std::vector<Column>& basis, std::size_t n) {
    Column best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        Column cand(n, 0.0);
        cand[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Column& b : basis) {
                const double proj = col_dot(cand, b);
                for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * b[i];
            }
        const double norm = std::sqrt(col_dot(cand, cand));
        if (norm > best_norm) {
            best_norm = norm;
            best = std::move(cand);
        }
    }
    for (double& x : best) x /= best_norm;
    return best;
}

constexpr int kMaxSweeps = 30;

}  // namespace

SvdFactors svd(const Matrix& a) {
    require_square(a, "svd");
    const std::size_t n = a.rows();

    // Work on columns: w starts as the columns of A, v as the identity.
    std::vector<Column> w(n, Column(n)), v(n, Column(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) w[j][i] = a(i, j);
        v[j][j] = 1.0;
    }

    // Pairs whose cosine is below this are treated as orthogonal.
    const double tol = static_cast<double>(n) * DBL_EPSILON;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = col_dot(w[p], w[p]);
                const double beta = col_dot(w[q], w[q]);
                const double gamma = col_dot(w[p], w[q]);
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;

                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::abs(zeta) > 1e150
                                     ? 0.5 / zeta
                                     : std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                rotate(w[p], w[q], c, s);
                rotate(v[p], v[q], c, s);
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(col_dot(w[j], w[j]));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SvdFactors out{Matrix(n, n), Vector(n), Matrix(n, n)};
    std::vector<Column> ucols;
    ucols.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.s[k] = norms[j];
        Column ucol;
        if (norms[j] > 0.0) {
            ucol = w[j];
            for (double& x : ucol) x /= norms[j];
        } else {
            ucol = orthogonal_complement(ucols, n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.u(i, k) = ucol[i];
            out.v(i, k) = v[j][i];
        }
        ucols.push_back(std::move(ucol));
    }
    return out;
}

std::size_t rank(const Matrix& a) {
    const SvdFactors f = svd(a);
    if (f.s.size() == 0) return 0;
    const double tol = static_cast<double>(a.rows()) * DBL_EPSILON * f.s[0];
    return static_cast<std::size_t>(std::count_if(f.s.begin(), f.s.end(), [&](double x) { return x > tol; }));
}

double condition_number(const Matrix& a) {
    const SvdFactors f = svd(a);
    const double smin = f.s[f.s.size() - 1];
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return f.s[0] / smin;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + field + "'");
    }
    if (used != field.size()) throw InvalidArgument("not a number: '" + field + "'");
    return v;
}

}  // namespace

std::string to_csv(const Matrix& a) {
    std::string out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out += ',';
            out += format_real(a(i, j));
        }
        out += '\n';
    }
    return out;
}

Matrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> data;
    std::size_t rows = 0, cols = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::istringstream fields(line);
        std::string field;
        std::size_t count = 0;
        while (std::getline(fields, field, ',')) {
            data.push_back(parse_real(trim(field)));
            ++count;
        }
        if (rows == 0) cols = count;
        else if (count != cols)
            throw DimensionMismatch("CSV row " + std::to_string(rows + 1) + " has " +
                                    std::to_string(count) + " fields, expected " + std::to_string(cols));
        ++rows;
    }
    if (rows == 0) throw InvalidArgument("empty matrix CSV");
    return Matrix(rows, cols, std::move(data));
}

std::string to_json(const Matrix& a) {
    nlohmann::json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    j["data"] = a.data();
    return j.dump();
}

Matrix matrix_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                      j.at("data").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad matrix JSON: ") + e.what());
    }
}

std::ostream& operator<<(std::ostream& os, const Vector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os << ')';
}

std::ostream& operator<<(std::ostream& os, const Matrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << '[';
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j);
        os << "]\n";
    }
    return os;
}

}  // namespace numlab
