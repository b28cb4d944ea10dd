#include "opcheb/means.hpp"

#include "opcheb/random.hpp"

#include <cmath>
#include <stdexcept>

namespace opcheb {

MeanSpec::MeanSpec(double r_, double t_) : r(r_), t(t_)
{
    if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument("MeanSpec: r must lie in [-1, 1]");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("MeanSpec: t must lie in [0, 1]");
}

double representing_function(double r, double t, double x, double zero_r_cutoff)
{
    if (!(x > 0.0)) throw std::domain_error("representing_function: argument must be positive");
    if (std::abs(r) < zero_r_cutoff) return std::pow(x, t);
    return std::pow(1.0 - t + t * std::pow(x, r), 1.0 / r);
}

namespace {

void require_strictly_positive(const HermitianMatrix& a, const Tolerances& tol, const char* who)
{
    if (min_eigenvalue(a) <= tol.psd_tol * std::max(1.0, a.fro_norm())) {
        throw std::domain_error(std::string(who) + ": matrix is not strictly positive");
    }
}

} // namespace

HermitianMatrix power_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                           const MeanSpec& spec, const Tolerances& tol)
{
    if (a.dim() != b.dim()) throw std::invalid_argument("power_mean: dimension mismatch");
    require_strictly_positive(a, tol, "power_mean");
    require_strictly_positive(b, tol, "power_mean");

    // One decomposition of A serves both half powers.
    const SpectralDecomposition sd = spectral_decompose(a);
    Eigen::VectorXd sq(a.dim()), isq(a.dim());
    for (Index i = 0; i < a.dim(); ++i) {
        sq(i)  = std::sqrt(sd.eigenvalues(i));
        isq(i) = 1.0 / sq(i);
    }
    const Matrix ah  = sd.eigenvectors * sq.asDiagonal() * sd.eigenvectors.adjoint();
    const Matrix aih = sd.eigenvectors * isq.asDiagonal() * sd.eigenvectors.adjoint();

    const HermitianMatrix c = HermitianMatrix::symmetrized(aih * b.mat() * aih);
    const double r = spec.r, t = spec.t, cutoff = tol.zero_r_cutoff;
    const HermitianMatrix w =
        apply_function(c, [r, t, cutoff](double x) { return representing_function(r, t, x, cutoff); });

    return HermitianMatrix::symmetrized(ah * w.mat() * ah);
}

HermitianMatrix regularize(const HermitianMatrix& a, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("regularize: eps must be positive");
    return HermitianMatrix::symmetrized(a.mat() + eps * Matrix::Identity(a.dim(), a.dim()));
}

double check_path_identity(double r, double p, double q, double s,
                           const HermitianMatrix& a, const HermitianMatrix& b,
                           const Tolerances& tol)
{
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0 && s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("check_path_identity: p, q, s must lie in [0, 1]");
    }
    const HermitianMatrix left =
        power_mean(power_mean(a, b, MeanSpec(r, p), tol),
                   power_mean(a, b, MeanSpec(r, q), tol), MeanSpec(r, s), tol);
    const HermitianMatrix right = power_mean(a, b, MeanSpec(r, (1.0 - s) * p + s * q), tol);
    return (left - right).fro_norm();
}

namespace {

// T*AT can land arbitrarily close to singular for unlucky T; redraw until both
// congruences clear the strict-positivity gate so the transformer check stays
// inside the mean's domain.
Matrix draw_transformer(const HermitianMatrix& a, const HermitianMatrix& b,
                        Rng& rng, const Tolerances& tol)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix t = random_complex_matrix(a.dim(), rng);
        const HermitianMatrix ta = a.conjugated_by(t);
        const HermitianMatrix tb = b.conjugated_by(t);
        const bool ok_a = min_eigenvalue(ta) > tol.psd_tol * std::max(1.0, ta.fro_norm());
        const bool ok_b = min_eigenvalue(tb) > tol.psd_tol * std::max(1.0, tb.fro_norm());
        if (ok_a && ok_b) return t;
    }
    throw std::runtime_error("check_mean_axioms: could not draw a usable transformer");
}

double loewner_slack(const HermitianMatrix& lo, const HermitianMatrix& hi)
{
    return min_eigenvalue(hi - lo);
}

} // namespace

AxiomReport check_mean_axioms(const MeanSpec& spec, int trials, Index dim,
                              std::uint64_t seed, const Tolerances& tol)
{
    if (trials < 1) throw std::invalid_argument("check_mean_axioms: trials must be >= 1");
    if (dim < 1) throw std::invalid_argument("check_mean_axioms: dim must be >= 1");

    AxiomReport report{spec.r, spec.t, trials, dim, seed, {}};

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));

        const HermitianMatrix a = random_spd(dim, rng);
        const HermitianMatrix b = random_spd(dim, rng);
        const HermitianMatrix c = a + random_gram(dim, rng); // A <= C by construction
        const HermitianMatrix d = b + random_gram(dim, rng); // B <= D

        const HermitianMatrix mab = power_mean(a, b, spec, tol);
        const HermitianMatrix mcd = power_mean(c, d, spec, tol);

        // (1) joint monotonicity
        {
            const double slack = loewner_slack(mab, mcd);
            const HermitianMatrix diff = mcd - mab;
            if (slack < -tol.psd_tol * std::max(1.0, diff.fro_norm())) {
                report.failures.push_back({"monotonicity", trial, slack,
                                           a.mat(), b.mat(), c.mat(), d.mat(), Matrix{}});
            }
        }

        // (3) transformer inequality
        {
            const Matrix t = draw_transformer(a, b, rng, tol);
            const HermitianMatrix lhs = mab.conjugated_by(t);
            const HermitianMatrix rhs = power_mean(a.conjugated_by(t), b.conjugated_by(t), spec, tol);
            const double slack = loewner_slack(lhs, rhs);
            const HermitianMatrix diff = rhs - lhs;
            if (slack < -tol.psd_tol * std::max(1.0, diff.fro_norm())) {
                report.failures.push_back({"transformer", trial, slack,
                                           a.mat(), b.mat(), Matrix{}, Matrix{}, t});
            }
        }

        // (4) normalization: I s I = I
        {
            const HermitianMatrix id = HermitianMatrix::identity(dim);
            const HermitianMatrix m  = power_mean(id, id, spec, tol);
            const double dev = (m - id).fro_norm();
            if (dev > tol.psd_tol) {
                report.failures.push_back({"normalization", trial, -dev,
                                           id.mat(), id.mat(), Matrix{}, Matrix{}, Matrix{}});
            }
        }
    }
    return report;
}

} // namespace opcheb
