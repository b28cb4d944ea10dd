#include "opcheb/fields.hpp"

#include "opcheb/products.hpp"
#include "opcheb/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opcheb {

OperatorField::OperatorField(std::vector<double> points, std::vector<HermitianMatrix> matrices)
    : points_(std::move(points)), matrices_(std::move(matrices))
{
    if (matrices_.empty()) throw std::invalid_argument("OperatorField: needs at least one point");
    if (points_.size() != matrices_.size()) {
        throw std::invalid_argument("OperatorField: points/matrices length mismatch");
    }
    for (std::size_t k = 1; k < points_.size(); ++k) {
        if (!(points_[k - 1] < points_[k])) {
            throw std::invalid_argument("OperatorField: points must be strictly increasing");
        }
    }
    const Index d = matrices_.front().dim();
    for (const auto& m : matrices_) {
        if (m.dim() != d) throw std::invalid_argument("OperatorField: matrices must share one dim");
    }
}

WeightVector::WeightVector(std::vector<double> v) : values(std::move(v))
{
    for (double x : values) {
        if (!(x >= 0.0)) throw std::invalid_argument("WeightVector: weights must be nonnegative");
    }
}

double WeightVector::sum() const
{
    double s = 0.0;
    for (double x : values) s += x;
    return s;
}

HermitianMatrix integrate(const OperatorField& f, const WeightVector& w)
{
    if (f.size() != w.size()) throw std::invalid_argument("integrate: length mismatch");
    HermitianMatrix acc = HermitianMatrix::zero(f.dim());
    for (Index k = 0; k < f.size(); ++k) acc += w[k] * f.matrix(k);
    return acc;
}

double check_hadamard_integral_identity(const OperatorField& f, const HermitianMatrix& b,
                                        const WeightVector& w)
{
    if (f.dim() != b.dim()) throw std::invalid_argument("check_hadamard_integral_identity: dimension mismatch");
    if (f.size() != w.size()) throw std::invalid_argument("check_hadamard_integral_identity: length mismatch");
    HermitianMatrix lhs = HermitianMatrix::zero(f.dim());
    for (Index k = 0; k < f.size(); ++k) lhs += w[k] * hadamard(f.matrix(k), b);
    const HermitianMatrix rhs = hadamard(integrate(f, w), b);
    return (lhs - rhs).fro_norm();
}

FieldPairCertificate check_synchronous_hadamard(const OperatorField& f, const OperatorField& g,
                                                const Tolerances& tol)
{
    if (f.size() != g.size() || f.dim() != g.dim()) {
        throw std::invalid_argument("check_synchronous_hadamard: shape mismatch");
    }
    FieldPairCertificate cert;
    bool first = true;
    for (Index s = 0; s < f.size(); ++s) {
        for (Index t = s + 1; t < f.size(); ++t) {
            const HermitianMatrix prod =
                hadamard(f.matrix(t) - f.matrix(s), g.matrix(t) - g.matrix(s));
            const double me = min_eigenvalue(prod);
            if (first || me < cert.worst_min_eig) {
                cert.worst_min_eig = me;
                cert.worst_s = s;
                cert.worst_t = t;
                first = false;
            }
            if (me < -tol.psd_tol * std::max(1.0, prod.fro_norm())) {
                cert.synchronous_hadamard = false;
            }
        }
    }
    return cert;
}

FieldPairCertificate check_increasing_positive(const OperatorField& f, const Tolerances& tol)
{
    FieldPairCertificate cert;
    bool first = true;
    const auto note = [&](Index s, Index t, double me) {
        if (first || me < cert.worst_min_eig) {
            cert.worst_min_eig = me;
            cert.worst_s = s;
            cert.worst_t = t;
            first = false;
        }
    };

    for (Index k = 0; k < f.size(); ++k) {
        const double me = min_eigenvalue(f.matrix(k));
        note(k, k, me);
        if (me < -tol.psd_tol * std::max(1.0, f.matrix(k).fro_norm())) cert.positive = false;
    }

    const bool all_pairs = f.size() <= 16;
    for (Index s = 0; s < f.size(); ++s) {
        const Index t_end = all_pairs ? f.size() : std::min(s + 2, f.size());
        for (Index t = s + 1; t < t_end; ++t) {
            const HermitianMatrix diff = f.matrix(t) - f.matrix(s);
            const double me = min_eigenvalue(diff);
            note(s, t, me);
            if (me < -tol.psd_tol * std::max(1.0, diff.fro_norm())) cert.increasing = false;
        }
    }
    return cert;
}

namespace {

std::vector<double> index_points(Index n)
{
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = static_cast<double>(k);
    return pts;
}

void require_field_shape(Index dim, Index n, const char* who)
{
    if (dim < 1) throw std::invalid_argument(std::string(who) + ": dim must be >= 1");
    if (n < 2) throw std::invalid_argument(std::string(who) + ": n must be >= 2");
}

} // namespace

std::pair<OperatorField, OperatorField> gen_scaled_pair(Index dim, Index n, std::uint64_t seed)
{
    require_field_shape(dim, n, "gen_scaled_pair");
    Rng rng(seed);
    const HermitianMatrix x = random_gram(dim, rng);
    const HermitianMatrix y = random_gram(dim, rng);
    const std::vector<double> a = increasing_sequence(n, rng);
    const std::vector<double> b = increasing_sequence(n, rng);

    std::vector<HermitianMatrix> am, bm;
    for (Index k = 0; k < n; ++k) {
        am.push_back(a[static_cast<std::size_t>(k)] * x);
        bm.push_back(b[static_cast<std::size_t>(k)] * y);
    }
    return {OperatorField(index_points(n), std::move(am)),
            OperatorField(index_points(n), std::move(bm))};
}

std::pair<OperatorField, OperatorField> gen_increasing_pair(Index dim, Index n, std::uint64_t seed)
{
    require_field_shape(dim, n, "gen_increasing_pair");
    Rng rng(seed);
    const HermitianMatrix a0 = random_spd(dim, rng);
    const HermitianMatrix b0 = random_spd(dim, rng);
    const HermitianMatrix c  = random_gram(dim, rng);
    const HermitianMatrix d  = random_gram(dim, rng);
    const std::vector<double> g = increasing_sequence(n, rng);
    const std::vector<double> h = increasing_sequence(n, rng);

    std::vector<HermitianMatrix> am, bm;
    for (Index k = 0; k < n; ++k) {
        am.push_back(a0 + g[static_cast<std::size_t>(k)] * c);
        bm.push_back(b0 + h[static_cast<std::size_t>(k)] * d);
    }
    return {OperatorField(index_points(n), std::move(am)),
            OperatorField(index_points(n), std::move(bm))};
}

std::pair<OperatorField, OperatorField> gen_nonsynchronous_pair(Index dim, Index n, std::uint64_t seed)
{
    require_field_shape(dim, n, "gen_nonsynchronous_pair");
    Rng rng(seed);
    const HermitianMatrix x = random_spd(dim, rng);
    const HermitianMatrix y = random_spd(dim, rng);
    const std::vector<double> a = increasing_sequence(n, rng);
    std::vector<double> b = increasing_sequence(n, rng);
    std::reverse(b.begin(), b.end()); // decreasing against a

    std::vector<HermitianMatrix> am, bm;
    for (Index k = 0; k < n; ++k) {
        am.push_back(a[static_cast<std::size_t>(k)] * x);
        bm.push_back(b[static_cast<std::size_t>(k)] * y);
    }
    return {OperatorField(index_points(n), std::move(am)),
            OperatorField(index_points(n), std::move(bm))};
}

TriangularFieldPair gen_triangular_pair(const std::vector<double>& f1,
                                        const std::vector<double>& g1,
                                        const std::vector<double>& h,
                                        const std::vector<double>& f2,
                                        const std::vector<double>& g2,
                                        const std::vector<double>& k)
{
    const std::size_t n = f1.size();
    if (n < 2) throw std::invalid_argument("gen_triangular_pair: n must be >= 2");
    for (const auto* seq : {&g1, &h, &f2, &g2, &k}) {
        if (seq->size() != n) throw std::invalid_argument("gen_triangular_pair: length mismatch");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (f1[i] < f1[i - 1] || f2[i] < f2[i - 1]) {
            throw std::invalid_argument("gen_triangular_pair: f1, f2 must be nondecreasing");
        }
        if (g1[i] > g1[i - 1] || g2[i] > g2[i - 1]) {
            throw std::invalid_argument("gen_triangular_pair: g1, g2 must be nonincreasing");
        }
    }

    TriangularFieldPair pair;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Matrix2d a, b;
        a << f1[i], h[i], 0.0, g1[i];
        b << f2[i], 0.0, k[i], g2[i];
        pair.a_mats.push_back(a);
        pair.b_mats.push_back(b);
    }
    return pair;
}

Eigen::Matrix2d raw_hadamard(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b)
{
    return a.cwiseProduct(b);
}

bool triangular_sync_check(const TriangularFieldPair& pair, double tol, double* worst)
{
    const std::size_t n = pair.a_mats.size();
    bool ok = true;
    bool first = true;
    double lowest = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = s + 1; t < n; ++t) {
            const Eigen::Matrix2d prod =
                raw_hadamard(pair.a_mats[t] - pair.a_mats[s], pair.b_mats[t] - pair.b_mats[s]);
            // triangular structure makes the product diagonal
            const double entry = std::min(prod(0, 0), prod(1, 1));
            lowest = first ? entry : std::min(lowest, entry);
            first = false;
            if (entry < -tol) ok = false;
        }
    }
    if (worst != nullptr) *worst = lowest;
    return ok;
}

} // namespace opcheb
