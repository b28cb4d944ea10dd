#include "opcheb/random.hpp"

namespace opcheb {

Matrix random_complex_matrix(Index dim, Rng& rng)
{
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) m(i, j) = rng.complex_in_box();
    }
    return m;
}

HermitianMatrix random_hermitian(Index dim, Rng& rng)
{
    return HermitianMatrix::symmetrized(random_complex_matrix(dim, rng));
}

HermitianMatrix random_gram(Index dim, Rng& rng)
{
    const Matrix m = random_complex_matrix(dim, rng);
    return HermitianMatrix::symmetrized(m.adjoint() * m / static_cast<double>(dim));
}

HermitianMatrix random_spd(Index dim, Rng& rng, double shift)
{
    HermitianMatrix g = random_gram(dim, rng);
    return HermitianMatrix::symmetrized(g.mat() + shift * Matrix::Identity(dim, dim));
}

std::vector<double> increasing_sequence(Index n, Rng& rng, double lo, double hi)
{
    std::vector<double> seq(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (auto& x : seq) {
        acc += rng.uniform(lo, hi);
        x = acc;
    }
    return seq;
}

std::vector<double> nonnegative_weights(Index n, Rng& rng)
{
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = rng.uniform();
    return w;
}

} // namespace opcheb
