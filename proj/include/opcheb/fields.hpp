#pragma once

#include "opcheb/hermat.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace opcheb {

// Operator fields over a finite totally ordered index set with nonnegative
// atomic weights — the discrete form of weighted operator-valued integration.
// Every result in scope holds verbatim for such discrete measures, so desk
// scale verification is exact rather than quadrature-approximate.

/// t -> A_t over strictly increasing index points; all matrices share a dim.
class OperatorField {
public:
    OperatorField(std::vector<double> points, std::vector<HermitianMatrix> matrices);

    Index size() const { return static_cast<Index>(matrices_.size()); }
    Index dim() const { return matrices_.front().dim(); }
    const std::vector<double>& points() const { return points_; }
    const HermitianMatrix& matrix(Index k) const { return matrices_[static_cast<std::size_t>(k)]; }

private:
    std::vector<double>          points_;
    std::vector<HermitianMatrix> matrices_;
};

/// nonnegative atoms pairing with a field's points
struct WeightVector {
    std::vector<double> values;

    explicit WeightVector(std::vector<double> v);
    Index size() const { return static_cast<Index>(values.size()); }
    double operator[](Index k) const { return values[static_cast<std::size_t>(k)]; }
    double sum() const;
};

// Hypothesis certificate for a field (or field pair). Each checker fills only
// the predicate it evaluates and leaves the others true; worst_* records the
// minimizing pair among the evaluated predicates.
struct FieldPairCertificate {
    bool   synchronous_hadamard = true;
    bool   increasing           = true;
    bool   positive             = true;
    Index  worst_s              = 0;
    Index  worst_t              = 0;
    double worst_min_eig        = 0.0;
};

/// sum_k w_k A_{t_k}
HermitianMatrix integrate(const OperatorField& f, const WeightVector& w);

// || sum_k w_k (A_k o B) - (sum_k w_k A_k) o B ||_F — the weighted sum
// commutes with a fixed Hadamard factor by bilinearity, so this is
// roundoff-sized.
double check_hadamard_integral_identity(const OperatorField& f, const HermitianMatrix& b,
                                        const WeightVector& w);

// (A_t - A_s) o (B_t - B_s) >= 0 for every pair s < t. The difference product
// is symmetric in (s, t), so scanning s < t loses nothing.
FieldPairCertificate check_synchronous_hadamard(const OperatorField& f, const OperatorField& g,
                                                const Tolerances& tol = {});

// positive: every A_t PSD; increasing: A_s <= A_t in the Loewner order.
// Consecutive pairs suffice for exact order, but tolerance slack can leak
// through transitivity, so all pairs are scanned when the field is small
// (n <= 16, always true at desk scale).
FieldPairCertificate check_increasing_positive(const OperatorField& f, const Tolerances& tol = {});

// Generators of hypothesis-satisfying (and -violating) field pairs. All of
// them return fields over points 0, 1, ..., n-1.

/// A_t = a(t) X, B_t = b(t) Y with X, Y PSD Gram matrices and a, b increasing
/// positive; synchronous-Hadamard and increasing-positive by construction.
std::pair<OperatorField, OperatorField> gen_scaled_pair(Index dim, Index n, std::uint64_t seed);

/// A_t = A0 + g(t) C, B_t = B0 + h(t) D with A0, B0 strictly positive, C, D
/// PSD and g, h increasing nonnegative; positive increasing by construction.
std::pair<OperatorField, OperatorField> gen_increasing_pair(Index dim, Index n, std::uint64_t seed);

/// A_t = a(t) X increasing, B_t = b(t) Y decreasing, X, Y strictly positive;
/// fails the synchronous-Hadamard check whenever X o Y != 0.
std::pair<OperatorField, OperatorField> gen_nonsynchronous_pair(Index dim, Index n, std::uint64_t seed);

// Raw 2x2 escape hatch for the triangular demo fields
//
//   A_t = [[f1(t), h(t)], [0, g1(t)]],   B_t = [[f2(t), 0], [k(t), g2(t)]]
//
// which are genuinely non-Hermitian: only the difference Hadamard product
// (a diagonal real matrix) is certified for them, and they never enter the
// Hermitian gap assemblers.
struct TriangularFieldPair {
    std::vector<Eigen::Matrix2d> a_mats;
    std::vector<Eigen::Matrix2d> b_mats;
};

// Requires f1, f2 nondecreasing and g1, g2 nonincreasing (else
// std::invalid_argument); h, k arbitrary. All six sequences share a length
// n >= 2.
TriangularFieldPair gen_triangular_pair(const std::vector<double>& f1,
                                        const std::vector<double>& g1,
                                        const std::vector<double>& h,
                                        const std::vector<double>& f2,
                                        const std::vector<double>& g2,
                                        const std::vector<double>& k);

/// entrywise product of raw 2x2 blocks
Eigen::Matrix2d raw_hadamard(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b);

// (A_t - A_s) o (B_t - B_s) is diagonal for triangular pairs; true iff both
// diagonal entries are >= -tol for every pair. worst, when given, receives the
// smallest diagonal entry seen.
bool triangular_sync_check(const TriangularFieldPair& pair, double tol, double* worst = nullptr);

} // namespace opcheb
