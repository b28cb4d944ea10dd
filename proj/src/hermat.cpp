#include "opcheb/hermat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace opcheb {

void Tolerances::validate() const
{
    if (psd_tol < 0.0 || recon_tol < 0.0 || zero_r_cutoff < 0.0) {
        throw std::invalid_argument("Tolerances: all fields must be nonnegative");
    }
}

HermitianMatrix::HermitianMatrix(const Matrix& raw, double recon_tol)
{
    if (raw.rows() != raw.cols()) {
        throw std::invalid_argument("HermitianMatrix: input is not square");
    }
    if (raw.rows() < 1) {
        throw std::invalid_argument("HermitianMatrix: dimension must be >= 1");
    }
    const double asym = (raw - raw.adjoint()).norm();
    if (asym > recon_tol * std::max(1.0, raw.norm())) {
        throw std::invalid_argument("HermitianMatrix: input is not nearly Hermitian");
    }
    mat_ = 0.5 * (raw + raw.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index dim)
{
    return HermitianMatrix(Matrix::Identity(dim, dim), exact_tag{});
}

HermitianMatrix HermitianMatrix::zero(Index dim)
{
    return HermitianMatrix(Matrix::Zero(dim, dim), exact_tag{});
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& entries)
{
    Matrix m = Matrix::Zero(entries.size(), entries.size());
    for (Index i = 0; i < entries.size(); ++i) m(i, i) = entries(i);
    return HermitianMatrix(std::move(m), exact_tag{});
}

HermitianMatrix HermitianMatrix::symmetrized(Matrix m)
{
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument("HermitianMatrix::symmetrized: input is not square");
    }
    Matrix h = 0.5 * (m + m.adjoint());
    return HermitianMatrix(std::move(h), exact_tag{});
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs)
{
    if (dim() != rhs.dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
    mat_ += rhs.mat_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& rhs)
{
    if (dim() != rhs.dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
    mat_ -= rhs.mat_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s)
{
    mat_ *= s;
    return *this;
}

HermitianMatrix HermitianMatrix::conjugated_by(const Matrix& t) const
{
    if (t.rows() != dim()) throw std::invalid_argument("conjugated_by: dimension mismatch");
    return symmetrized(t.adjoint() * mat_ * t);
}

HermitianMatrix hermitize(const Matrix& raw, double recon_tol)
{
    return HermitianMatrix(raw, recon_tol);
}

namespace {

constexpr int    kMaxSweeps          = 100;
constexpr double kConvergenceFactor  = 1e-14; // threshold = factor * ||A||_F

double off_diagonal_norm(const Matrix& m)
{
    double s = 0.0;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (i != j) s += std::norm(m(i, j));
        }
    }
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing m(p, q). The unitary is
// U = P R with P = diag(1, conj(w)) stripping the phase of m(p, q)
// and R the Givens rotation of the resulting real 2x2 block.
void rotate(Matrix& m, Matrix& v, Index p, Index q)
{
    const Complex b   = m(p, q);
    const double  apq = std::abs(b);
    const Complex w   = b / apq;
    const Complex wb  = std::conj(w);

    const double app = m(p, p).real();
    const double aqq = m(q, q).real();
    const double tau = (aqq - app) / (2.0 * apq);
    const double t   = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    :  1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double cs = 1.0 / std::sqrt(1.0 + t * t);
    const double sn = t * cs;

    const Index n = m.rows();
    for (Index k = 0; k < n; ++k) { // columns: M <- M U
        const Complex mkp = m(k, p), mkq = m(k, q);
        m(k, p) = mkp * cs + mkq * (wb * sn);
        m(k, q) = -mkp * sn + mkq * (wb * cs);
    }
    for (Index k = 0; k < n; ++k) { // rows: M <- U* M
        const Complex mpk = m(p, k), mqk = m(q, k);
        m(p, k) = cs * mpk + (w * sn) * mqk;
        m(q, k) = -sn * mpk + (w * cs) * mqk;
    }
    for (Index k = 0; k < n; ++k) { // accumulate: V <- V U
        const Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * cs + vkq * (wb * sn);
        v(k, q) = -vkp * sn + vkq * (wb * cs);
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = Complex(m(p, p).real(), 0.0);
    m(q, q) = Complex(m(q, q).real(), 0.0);
}

} // namespace

SpectralDecomposition spectral_decompose(const HermitianMatrix& a)
{
    const Index n = a.dim();
    Matrix m = a.mat();
    Matrix v = Matrix::Identity(n, n);

    const double fro       = a.fro_norm();
    const double threshold = kConvergenceFactor * fro;

    if (n > 1 && fro > 0.0) {
        // Entries at or below rot_tol are skipped; once every off-diagonal
        // entry is that small the off-norm is below threshold, so the sweep
        // loop cannot stall.
        const double rot_tol = threshold / (2.0 * static_cast<double>(n));
        int sweep = 0;
        while (off_diagonal_norm(m) > threshold) {
            if (sweep++ >= kMaxSweeps) {
                throw std::runtime_error("spectral_decompose: Jacobi sweep cap exceeded");
            }
            for (Index p = 0; p + 1 < n; ++p) {
                for (Index q = p + 1; q < n; ++q) {
                    if (std::abs(m(p, q)) > rot_tol) rotate(m, v, p, q);
                }
            }
        }
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&m](Index i, Index j) { return m(i, i).real() < m(j, j).real(); });

    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    sd.eigenvectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        sd.eigenvalues(k)      = m(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        sd.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return sd;
}

HermitianMatrix apply_function(const HermitianMatrix& a,
                               const std::function<double(double)>& f)
{
    const SpectralDecomposition sd = spectral_decompose(a);
    Eigen::VectorXd fe(a.dim());
    for (Index i = 0; i < a.dim(); ++i) {
        fe(i) = f(sd.eigenvalues(i));
        if (!std::isfinite(fe(i))) {
            throw std::domain_error("apply_function: function undefined at eigenvalue");
        }
    }
    Matrix out = sd.eigenvectors * fe.asDiagonal() * sd.eigenvectors.adjoint();
    return HermitianMatrix::symmetrized(std::move(out));
}

HermitianMatrix power_psd(const HermitianMatrix& a, double p, const Tolerances& tol)
{
    const SpectralDecomposition sd = spectral_decompose(a);
    const double slack = tol.psd_tol * std::max(1.0, a.fro_norm());
    const double lo    = sd.eigenvalues(0);
    if (lo < -slack) {
        throw std::domain_error("power_psd: matrix is not PSD within tolerance");
    }
    if (p < 0.0 && lo <= slack) {
        throw std::domain_error("power_psd: singular matrix under negative power");
    }
    Eigen::VectorXd fe(a.dim());
    for (Index i = 0; i < a.dim(); ++i) {
        const double lam = std::max(sd.eigenvalues(i), 0.0); // clamp roundoff negatives
        fe(i) = std::pow(lam, p);
    }
    Matrix out = sd.eigenvectors * fe.asDiagonal() * sd.eigenvectors.adjoint();
    return HermitianMatrix::symmetrized(std::move(out));
}

double min_eigenvalue(const HermitianMatrix& a)
{
    return spectral_decompose(a).eigenvalues(0);
}

bool is_psd(const HermitianMatrix& a, const Tolerances& tol)
{
    return min_eigenvalue(a) >= -tol.psd_tol * std::max(1.0, a.fro_norm());
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol)
{
    if (a.dim() != b.dim()) throw std::invalid_argument("loewner_leq: dimension mismatch");
    return is_psd(b - a, tol);
}

} // namespace opcheb
