#ifndef EIGENSCAN_EIGENSPACE_HPP
#define EIGENSCAN_EIGENSPACE_HPP

#include <span>
#include <vector>

#include "eigenscan/matrix.hpp"

namespace eigenscan {

/// Eigenvalues in descending order, paired with unit-norm, mutually
/// orthogonal eigenvectors (one per column of `vectors`). Sign convention:
/// the largest-magnitude component of each eigenvector is positive.
struct EigenPairs {
    std::vector<double> values;
    Matrix vectors;  // column j is the eigenvector of values[j]

    std::size_t dimension() const { return vectors.rows(); }
    std::size_t count() const { return values.size(); }
};

/// Entry-wise arithmetic mean over the columns. Throws DataError on an
/// empty matrix.
std::vector<double> compute_mean(const Matrix& columns);

/// Subtracts `mean` from every column. Throws DataError on dimension
/// mismatch.
Matrix center(const Matrix& columns, const std::vector<double>& mean);

/// C = A * A^T, without 1/K scaling. Expects (does not enforce) a centered
/// input; the result is exactly symmetric by construction.
Matrix covariance(const Matrix& centered);

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Stops when the off-diagonal Frobenius norm falls below 1e-12 * ||C||_F;
/// throws DegeneracyError if 100 sweeps do not get there, and DataError if
/// the input is asymmetric beyond 1e-9 relative. Output is deterministic:
/// fixed sweep order, stable descending sort, fixed sign convention.
EigenPairs eigendecompose(const Matrix& symmetric);

/// Keeps the smallest prefix of eigenpairs whose eigenvalue sum reaches
/// `variance_threshold` of the total, where negative round-off eigenvalues
/// count as zero in the total. Throws DegeneracyError when no eigenvalue is
/// strictly positive.
EigenPairs select_eigenvectors(const EigenPairs& pairs, double variance_threshold);

/// Coordinates of a centered vector in the basis: w_j = vectors_j . v.
std::vector<double> project(std::span<const double> centered, const EigenPairs& basis);

}  // namespace eigenscan

#endif
