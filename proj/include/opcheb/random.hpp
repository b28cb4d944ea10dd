#pragma once

#include "opcheb/hermat.hpp"
#include "opcheb/rng.hpp"

#include <vector>

namespace opcheb {

// Shared draws for generators and randomized checkers. Everything is a pure
// function of the Rng state, so campaigns with distinct seeds are independent
// and reruns with the same seed are identical.

/// dim x dim, entries with real/imaginary parts uniform in [-1, 1]
Matrix random_complex_matrix(Index dim, Rng& rng);

/// symmetrized random complex matrix
HermitianMatrix random_hermitian(Index dim, Rng& rng);

/// M* M / dim for random complex M; PSD by construction
HermitianMatrix random_gram(Index dim, Rng& rng);

/// random Gram plus shift * I; strictly positive for shift > 0
HermitianMatrix random_spd(Index dim, Rng& rng, double shift = 0.5);

/// cumulative sums of uniform draws from [lo, hi]; increasing for lo >= 0
std::vector<double> increasing_sequence(Index n, Rng& rng, double lo = 0.05, double hi = 1.0);

/// n independent uniforms in [0, 1]
std::vector<double> nonnegative_weights(Index n, Rng& rng);

} // namespace opcheb
