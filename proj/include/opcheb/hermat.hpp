#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace opcheb {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Index   = Eigen::Index;

/// Tolerance bundle threaded through every numeric predicate.
struct Tolerances {
    double psd_tol       = 1e-8;  ///< relative slack for positive-semidefinite verdicts
    double recon_tol     = 1e-10; ///< spectral reconstruction / hermitization acceptance
    double zero_r_cutoff = 1e-10; ///< |r| below this selects the geometric branch of the power path

    void validate() const;
};

// Dense complex Hermitian matrix, the carrier of all operator values.
//
// The checked constructor stores (M + M*)/2 and rejects inputs whose asymmetry
// exceeds recon_tol * max(1, ||M||_F); downstream spectral routines assume
// exact Hermitian symmetry. Instances are immutable values; all operations on
// them are pure and safe to run concurrently.
class HermitianMatrix {
public:
    // Throws std::invalid_argument on non-square input or when
    // ||raw - raw*||_F exceeds recon_tol * max(1, ||raw||_F).
    explicit HermitianMatrix(const Matrix& raw, double recon_tol = 1e-10);

    static HermitianMatrix identity(Index dim);
    static HermitianMatrix zero(Index dim);
    static HermitianMatrix diagonal(const Eigen::VectorXd& entries);

    // Symmetrizes (m + m*)/2 without the asymmetry acceptance check. For
    // results of algebra that is Hermitian up to roundoff (spectral
    // reconstruction, congruences), not for external input.
    static HermitianMatrix symmetrized(Matrix m);

    Index dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }
    Complex operator()(Index i, Index j) const { return mat_(i, j); }
    double fro_norm() const { return mat_.norm(); }

    HermitianMatrix& operator+=(const HermitianMatrix& rhs);
    HermitianMatrix& operator-=(const HermitianMatrix& rhs);
    HermitianMatrix& operator*=(double s);

    friend HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs += rhs; }
    friend HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs -= rhs; }
    friend HermitianMatrix operator*(double s, HermitianMatrix rhs) { return rhs *= s; }

    // T* (*this) T, symmetrized.
    HermitianMatrix conjugated_by(const Matrix& t) const;

private:
    struct exact_tag {};
    HermitianMatrix(Matrix m, exact_tag) : mat_(std::move(m)) {}

    Matrix mat_;
};

/// Eigenvalues ascending; eigenvector column k pairs with eigenvalues[k].
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Matrix          eigenvectors;
};

// (raw + raw*)/2 wrapped as HermitianMatrix; same contract as the constructor.
HermitianMatrix hermitize(const Matrix& raw, double recon_tol = 1e-10);

// Deterministic cyclic complex Jacobi: fixed sweep order, convergence when the
// off-diagonal Frobenius norm falls below 1e-14 * ||A||_F, 100-sweep cap
// (std::runtime_error past the cap).
SpectralDecomposition spectral_decompose(const HermitianMatrix& a);

// V f(L) V*. Throws std::domain_error when f yields a non-finite value at an
// eigenvalue (f undefined there).
HermitianMatrix apply_function(const HermitianMatrix& a,
                               const std::function<double(double)>& f);

// f(x) = x^p through the spectral decomposition. Requires a PSD within
// tol.psd_tol (relative); eigenvalues in [-psd_tol*scale, 0) are clamped to 0
// before powering so roundoff-negative inputs cannot go complex. For p < 0 the
// matrix must be strictly positive (min eigenvalue > psd_tol*scale), else
// std::domain_error.
HermitianMatrix power_psd(const HermitianMatrix& a, double p, const Tolerances& tol = {});

double min_eigenvalue(const HermitianMatrix& a);

// min eigenvalue >= -psd_tol * max(1, ||A||_F)
bool is_psd(const HermitianMatrix& a, const Tolerances& tol = {});

// a <= b in the Loewner order, i.e. is_psd(b - a).
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol = {});

} // namespace opcheb
