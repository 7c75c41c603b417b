#include "numlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "numlab/error.hpp"

namespace numlab {

Matrix prescribe_condition(const Matrix& a, double c) {
    if (!a.is_square() || a.rows() < 2) throw DimensionMismatch("prescribe_condition needs a square matrix, n >= 2");
    if (!(c >= 1.0)) throw InvalidArgument("condition number must be at least 1");
    SvdFactors f = svd(a);
    const std::size_t n = a.rows();
    const double s0 = f.s[0];
    if (f.s[n - 1] == 0.0) throw SingularMatrix("prescribe_condition: input matrix is singular");
    for (std::size_t j = 0; j < n; ++j)
        f.s[j] = s0 - static_cast<double>(j) * (s0 - s0 / c) / static_cast<double>(n - 1);
    return f.reconstruct();
}

std::vector<CondRecord> condition_error_study(std::size_t n, const std::vector<double>& exponents, RngState rng) {
    if (n < 2) throw InvalidArgument("conditioning study needs n >= 2");
    const Matrix a = random_matrix(n, rng).value;
    const Vector ones(n, 1.0);
    std::vector<CondRecord> records;
    records.reserve(exponents.size());
    for (double p : exponents) {
        const double c = std::pow(10.0, p);
        const Matrix ac = prescribe_condition(a, c);
        const Vector b = mat_vec(ac, ones);
        const Vector x = solve(ac, b);
        records.push_back({c, vec_norm2(x - ones)});
    }
    return records;
}

double loglog_slope(const std::vector<CondRecord>& records) {
    if (records.size() < 2) throw InvalidArgument("slope needs at least two records");
    std::vector<double> lx, ly;
    for (const CondRecord& r : records) {
        if (!(r.err > 0.0)) throw DomainError("slope undefined: zero error value");
        lx.push_back(std::log10(r.c));
        ly.push_back(std::log10(r.err));
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("slope undefined: all condition numbers equal");
    return sxy / sxx;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("spearman needs two equal-length samples");
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> exponent_range(double pmin, double pmax, double pstep) {
    if (!(pstep > 0.0)) throw InvalidArgument("pstep must be positive");
    if (pmax < pmin) throw InvalidArgument("pmax must not be below pmin");
    std::vector<double> out;
    // Index-based so accumulated rounding cannot drop the endpoint.
    for (int i = 0;; ++i) {
        const double p = pmin + i * pstep;
        if (p > pmax + 1e-9 * pstep) break;
        out.push_back(p);
    }
    return out;
}

}  // namespace numlab
