#pragma once

#include "opcheb/hermat.hpp"

namespace opcheb {

// Hadamard (entrywise) and Kronecker (tensor) products, plus the diagonal
// embedding isometry U with U e_j = e_j (x) e_j that relates them through
// A o B = U* (A (x) B) U. The Hadamard product is taken with respect to the
// standard coordinate basis throughout.

/// (dim^2) x dim with exact 0/1 entries; column j carries a 1 at row j*dim + j
struct EmbeddingIsometry {
    Index  dim;
    Matrix matrix;
};

/// entrywise product; Hermitian for Hermitian inputs
HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b);

/// block matrix (a_ij * B); dimension dim(A) * dim(B)
HermitianMatrix kronecker(const HermitianMatrix& a, const HermitianMatrix& b);

EmbeddingIsometry embedding_isometry(Index dim);

/// U* (A (x) B) U; agrees with hadamard(a, b) entrywise
HermitianMatrix hadamard_via_embedding(const HermitianMatrix& a, const HermitianMatrix& b);

} // namespace opcheb
