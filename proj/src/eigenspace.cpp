#include "eigenscan/eigenspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigenscan/errors.hpp"
#include "eigenscan/io_util.hpp"

namespace eigenscan {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;  // relative to ||C||_F
constexpr double kSymmetryTolerance = 1e-9;      // relative to max |entry|

double frobenius_norm(const Matrix& m) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (double x : m.column(c)) sum += x * x;
    return std::sqrt(sum);
}

double off_diagonal_norm(const Matrix& m) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != c) sum += m(r, c) * m(r, c);
    return std::sqrt(sum);
}

// One cyclic sweep of two-sided rotations, p < q in row-major order.
// Rotation angles follow the classical symmetric Schur decomposition:
//   theta = (a_qq - a_pp) / (2 a_pq),  t = sgn(theta)/(|theta| + sqrt(1+theta^2)).
void jacobi_sweep(Matrix& a, Matrix& v) {
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double apq = a(p, q);
            if (apq == 0.0) continue;
            const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
            double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            for (std::size_t i = 0; i < n; ++i) {  // columns p and q of A
                const double aip = a(i, p);
                const double aiq = a(i, q);
                a(i, p) = c * aip - s * aiq;
                a(i, q) = s * aip + c * aiq;
            }
            for (std::size_t i = 0; i < n; ++i) {  // rows p and q of A
                const double api = a(p, i);
                const double aqi = a(q, i);
                a(p, i) = c * api - s * aqi;
                a(q, i) = s * api + c * aqi;
            }
            for (std::size_t i = 0; i < n; ++i) {  // accumulate eigenvectors
                const double vip = v(i, p);
                const double viq = v(i, q);
                v(i, p) = c * vip - s * viq;
                v(i, q) = s * vip + c * viq;
            }
        }
    }
}

// Flips each eigenvector so its largest-magnitude component (first such
// index on ties) is positive; makes serialized models reproducible.
void fix_signs(Matrix& vectors) {
    for (std::size_t c = 0; c < vectors.cols(); ++c) {
        auto col = vectors.column(c);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < col.size(); ++i)
            if (std::abs(col[i]) > std::abs(col[peak])) peak = i;
        if (col[peak] < 0.0)
            for (auto& x : col) x = -x;
    }
}

}  // namespace

std::vector<double> compute_mean(const Matrix& columns) {
    if (columns.cols() == 0 || columns.rows() == 0)
        throw DataError("compute_mean: empty matrix");
    std::vector<double> mean(columns.rows(), 0.0);
    for (std::size_t c = 0; c < columns.cols(); ++c) {
        const auto col = columns.column(c);
        for (std::size_t r = 0; r < columns.rows(); ++r) mean[r] += col[r];
    }
    const double inv = 1.0 / static_cast<double>(columns.cols());
    for (auto& x : mean) x *= inv;
    return mean;
}

Matrix center(const Matrix& columns, const std::vector<double>& mean) {
    if (mean.size() != columns.rows())
        throw DataError("center: mean has dimension " + std::to_string(mean.size()) +
                        ", matrix has " + std::to_string(columns.rows()));
    Matrix out(columns.rows(), columns.cols());
    for (std::size_t c = 0; c < columns.cols(); ++c) {
        const auto src = columns.column(c);
        auto dst = out.column(c);
        for (std::size_t r = 0; r < columns.rows(); ++r) dst[r] = src[r] - mean[r];
    }
    return out;
}

Matrix covariance(const Matrix& centered) {
    const std::size_t n = centered.rows();
    Matrix c(n, n);
    // Accumulate per-column outer products into the upper triangle, then
    // mirror, so the result is symmetric bit for bit.
    for (std::size_t k = 0; k < centered.cols(); ++k) {
        const auto col = centered.column(k);
        for (std::size_t i = 0; i < n; ++i) {
            const double ci = col[i];
            if (ci == 0.0) continue;
            for (std::size_t j = i; j < n; ++j) c(i, j) += ci * col[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c(j, i) = c(i, j);
    return c;
}

EigenPairs eigendecompose(const Matrix& symmetric) {
    const std::size_t n = symmetric.rows();
    if (n == 0 || symmetric.cols() != n)
        throw DataError("eigendecompose: matrix must be square and nonempty");

    double max_abs = 0.0;
    double max_asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            max_abs = std::max(max_abs, std::abs(symmetric(i, j)));
            max_asym = std::max(max_asym, std::abs(symmetric(i, j) - symmetric(j, i)));
        }
    if (max_asym > kSymmetryTolerance * std::max(1.0, max_abs))
        throw DataError("eigendecompose: input asymmetric by " + format_double(max_asym));

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = symmetric(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            a(i, j) = a(j, i) = 0.5 * (symmetric(i, j) + symmetric(j, i));
    }
    Matrix v = Matrix::identity(n);

    const double tol = kOffDiagonalTolerance * frobenius_norm(a);
    for (int sweep = 0;; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off <= tol) break;
        if (sweep == kMaxSweeps)
            throw DegeneracyError("eigendecompose: no convergence after " +
                                  std::to_string(kMaxSweeps) +
                                  " sweeps, off-diagonal residual " + format_double(off));
        jacobi_sweep(a, v);
    }

    // Stable descending sort keeps Jacobi output order among equal values.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t lhs, std::size_t rhs) { return a(lhs, lhs) > a(rhs, rhs); });

    EigenPairs pairs;
    pairs.values.reserve(n);
    pairs.vectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        pairs.values.push_back(a(order[c], order[c]));
        const auto src = v.column(order[c]);
        auto dst = pairs.vectors.column(c);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    fix_signs(pairs.vectors);
    return pairs;
}

EigenPairs select_eigenvectors(const EigenPairs& pairs, double variance_threshold) {
    if (!(variance_threshold > 0.0) || variance_threshold > 1.0)
        throw DataError("select_eigenvectors: variance threshold must be in (0,1]");
    // Negative round-off eigenvalues count as zero mass. Accumulating in
    // the same descending order on both sides makes the ratio reach exactly
    // 1.0 at the last positive eigenvalue.
    double total = 0.0;
    for (double value : pairs.values) total += std::max(value, 0.0);
    if (total <= 0.0)
        throw DegeneracyError("select_eigenvectors: no strictly positive eigenvalue");

    std::size_t keep = 0;
    double cumulative = 0.0;
    for (std::size_t j = 0; j < pairs.values.size(); ++j) {
        cumulative += pairs.values[j];
        if (cumulative / total >= variance_threshold) {
            keep = j + 1;
            break;
        }
    }
    if (keep == 0)  // unreachable for a descending spectrum
        throw DegeneracyError("select_eigenvectors: threshold never reached");

    EigenPairs out;
    out.values.assign(pairs.values.begin(), pairs.values.begin() + static_cast<long>(keep));
    out.vectors = Matrix(pairs.dimension(), keep);
    for (std::size_t c = 0; c < keep; ++c) {
        const auto src = pairs.vectors.column(c);
        auto dst = out.vectors.column(c);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

std::vector<double> project(std::span<const double> centered, const EigenPairs& basis) {
    if (centered.size() != basis.dimension())
        throw DataError("project: vector dimension " + std::to_string(centered.size()) +
                        " does not match basis dimension " + std::to_string(basis.dimension()));
    std::vector<double> weights(basis.count());
    for (std::size_t j = 0; j < basis.count(); ++j) {
        const auto axis = basis.vectors.column(j);
        double w = 0.0;
        for (std::size_t i = 0; i < axis.size(); ++i) w += axis[i] * centered[i];
        weights[j] = w;
    }
    return weights;
}

}  // namespace eigenscan
