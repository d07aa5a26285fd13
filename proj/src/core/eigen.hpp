#pragma once

#include <vector>

#include "core/dissim_matrix.hpp"
#include "core/matrix.hpp"

namespace semmap {

// Full spectrum of a symmetric matrix. Eigenvalues sorted descending, ties
// broken by original column index; eigenvectors() column i pairs with
// eigenvalues[i] and the columns are orthonormal. Each eigenvector's entry
// of largest absolute value is non-negative.
struct EigenResult {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

// Cyclic Jacobi rotations. Input must be symmetric within 1e-12 absolute
// tolerance; the worst deviating (i, j) is named otherwise. Convergence:
// off-diagonal Frobenius norm below 1e-12 relative to the input Frobenius
// norm, capped at 100 sweeps (NumericError with the achieved residual past
// the cap).
EigenResult sym_eigen(const Matrix& m);

// B = -1/2 * J * D2 * J with D2 the entrywise-squared dissimilarities and
// J = I - (1/n) 11'. Row and column sums of the result vanish.
Matrix double_center(const DissimilarityMatrix& delta);

}  // namespace semmap
