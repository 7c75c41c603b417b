#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace numlab {

/// Dense real vector.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) {}
    /// Throws InvalidArgument if any entry is not finite.
    explicit Vector(std::vector<double> values);
    Vector(std::initializer_list<double> values) : Vector(std::vector<double>(values)) {}

    std::size_t size() const noexcept { return data_.size(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> span() noexcept { return data_; }
    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> data_;
};

/// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// `data` is row-major with rows*cols entries, all finite.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, const Vector& x);
Matrix transpose(const Matrix& a);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector operator-(const Vector& a, const Vector& b);
double dot(const Vector& a, const Vector& b);
double vec_norm2(const Vector& x);
double frobenius_norm(const Matrix& a);
/// Largest absolute entry.
double max_abs(const Matrix& a);

/// P*A = L*U. `perm[i]` is the row of A that became row i of P*A.
struct LuFactors {
    std::vector<std::size_t> perm;
    Matrix lower;  ///< unit lower triangular
    Matrix upper;
    int swaps = 0;

    Matrix permutation_matrix() const;
};

/// Partial pivoting on the largest |entry| in each column, ties to the
/// lowest row. Throws SingularMatrix if a pivot column is entirely zero.
LuFactors lu_decompose(const Matrix& a);

/// Throws SingularMatrix with the message "matrix must be nonsingular".
Vector solve(const Matrix& a, const Vector& b);
Vector lu_solve(const LuFactors& lu, const Vector& b);
Matrix inverse(const Matrix& a);
/// Zero for a singular matrix.
double determinant(const Matrix& a);

/// A = U * diag(s) * V^T with s descending and nonnegative.
struct SvdFactors {
    Matrix u;
    Vector s;
    Matrix v;

    Matrix reconstruct() const;
};

/// One-sided (Hestenes) Jacobi SVD of a square matrix.
SvdFactors svd(const Matrix& a);

/// Number of singular values above n * eps * s_max.
std::size_t rank(const Matrix& a);

/// s_max / s_min; +infinity for a singular matrix.
double condition_number(const Matrix& a);

// Interchange formats: CSV with one row per line, and
// {"rows": n, "cols": m, "data": [row-major entries]}.
std::string to_csv(const Matrix& a);
Matrix matrix_from_csv(const std::string& text);
std::string to_json(const Matrix& a);
Matrix matrix_from_json(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Vector& v);
std::ostream& operator<<(std::ostream& os, const Matrix& a);

}  // namespace numlab
