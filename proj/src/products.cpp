#include "opcheb/products.hpp"

#include <stdexcept>

namespace opcheb {

HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b)
{
    if (a.dim() != b.dim()) throw std::invalid_argument("hadamard: dimension mismatch");
    return HermitianMatrix::symmetrized(a.mat().cwiseProduct(b.mat()));
}

HermitianMatrix kronecker(const HermitianMatrix& a, const HermitianMatrix& b)
{
    const Index na = a.dim(), nb = b.dim();
    Matrix out(na * nb, na * nb);
    for (Index i = 0; i < na; ++i) {
        for (Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.mat();
        }
    }
    return HermitianMatrix::symmetrized(std::move(out));
}

EmbeddingIsometry embedding_isometry(Index dim)
{
    if (dim < 1) throw std::invalid_argument("embedding_isometry: dim must be >= 1");
    Matrix u = Matrix::Zero(dim * dim, dim);
    for (Index j = 0; j < dim; ++j) u(j * dim + j, j) = 1.0;
    return {dim, std::move(u)};
}

HermitianMatrix hadamard_via_embedding(const HermitianMatrix& a, const HermitianMatrix& b)
{
    if (a.dim() != b.dim()) throw std::invalid_argument("hadamard_via_embedding: dimension mismatch");
    const EmbeddingIsometry iso = embedding_isometry(a.dim());
    const HermitianMatrix kron = kronecker(a, b);
    return HermitianMatrix::symmetrized(iso.matrix.adjoint() * kron.mat() * iso.matrix);
}

} // namespace opcheb
