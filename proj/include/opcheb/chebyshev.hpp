#pragma once

#include "opcheb/fields.hpp"
#include "opcheb/hermat.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace opcheb {

// Assembles each Chebyshev-type inequality as an explicit gap matrix
// (LHS - RHS), certifies it as PSD under relative slack, builds the
// refinement chain Q(1) <= ... <= Q(n) from its telescoping increments, and
// hunts counterexamples when hypotheses are dropped.

// Weighted scalar Chebyshev function
//   T(w; a, b) = sum_i w_i * sum_j w_j a_j b_j - sum_i w_i a_i * sum_j w_j b_j,
// nonnegative when a and b are monotone in the same sense.
double scalar_chebyshev(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b);

/// Certification record for one assembled inequality.
struct GapReport {
    std::string     name;          ///< inequality identifier
    HermitianMatrix gap;           ///< LHS - RHS
    double          min_eig;       ///< smallest eigenvalue of the gap
    double          scale;         ///< max Frobenius norm among assembled terms
    bool            pass;          ///< min_eig >= -psd_tol * max(1, scale)
    std::string     inputs_digest; ///< replay handle; empty for direct calls
};

// Two-weight synchronous-field inequality: gap =
//   (sum a) sum_k b_k (A_k o B_k) + (sum b) sum_k a_k (A_k o B_k)
//   - (sum_k a_k A_k) o (sum_k b_k B_k) - (sum_k b_k A_k) o (sum_k a_k B_k).
// PSD whenever the pair has the synchronous Hadamard property. No hypothesis
// gate: feeding violating fields is how the falsifier works.
GapReport gap_two_weight(const OperatorField& f, const OperatorField& g,
                         const WeightVector& alpha, const WeightVector& beta,
                         const Tolerances& tol = {});

// Discrete instance of gap_two_weight with atoms omega, nu; identical
// assembly, retained as a separate named report for traceability.
GapReport gap_discrete(const OperatorField& f, const OperatorField& g,
                       const WeightVector& omega, const WeightVector& nu,
                       const Tolerances& tol = {});

// Telescoping increment Q(k) - Q(k-1) =
//   w_k sum_{j<k} v_j (A_k - A_j) o (B_k - B_j)
//   + v_k sum_{j<k} w_j (A_k - A_j) o (B_k - B_j),
// k is 1-based with 2 <= k <= n.
HermitianMatrix q_increment(Index k, const OperatorField& f, const OperatorField& g,
                            const WeightVector& omega, const WeightVector& nu);

// Refinement chain built constructively: Q(1) is the product side
//   (sum w A) o (sum v B) + (sum v A) o (sum w B)
// and Q(k) = Q(k-1) + q_increment(k). Q(n) must land on the sum side
//   (sum w)(sum v (A o B)) + (sum v)(sum w (A o B)),
// recorded as endpoint_residual.
struct QChain {
    std::vector<HermitianMatrix> values;     ///< Q(1..n)
    std::vector<HermitianMatrix> increments; ///< Q(k) - Q(k-1) for k = 2..n
    std::vector<double> partial_weight_sums_w;
    std::vector<double> partial_weight_sums_v;
    double endpoint_residual = 0.0; ///< ||Q(n) - sum-side assembly||_F
    double scale             = 0.0; ///< max ||Q(k)||_F
};

QChain q_chain(const OperatorField& f, const OperatorField& g,
               const WeightVector& omega, const WeightVector& nu,
               const Tolerances& tol = {});

// Pointwise mean bound: gap = A o B - (A m_{r,l} B) o (A m_{r,1-l} B).
// The scalar oracle refutes this for r > 0 with l strictly inside (0, 1);
// see pointwise_oracle_study.
GapReport pointwise_mean_gap(const HermitianMatrix& a, const HermitianMatrix& b,
                             double r, double lambda, const Tolerances& tol = {});

// Interpolational-mean field inequality over one weight: gap =
//   (sum a)(sum_k a_k (A_k o B_k))
//   - (sum_k a_k (A_k m_{r,l} B_k)) o (sum_k a_k (A_k m_{r,1-l} B_k)).
// Requires both fields positive increasing (std::domain_error otherwise).
GapReport gap_mean(const OperatorField& f, const OperatorField& g,
                   const WeightVector& alpha, double r, double lambda,
                   const Tolerances& tol = {});

// Exploratory two-weight variant of gap_mean. Observational only: not part of
// any pass-suite, results are reported rather than asserted.
GapReport gap_mean_two_weight(const OperatorField& f, const OperatorField& g,
                              const WeightVector& alpha, const WeightVector& beta,
                              double r, double lambda, const Tolerances& tol = {});

// Scalar brute-force oracle for the pointwise mean bound at a = 1, b = ratio:
//   ratio - F_{r,l}(ratio) * F_{r,1-l}(ratio).
double scalar_pointwise_gap(double r, double lambda, double ratio);

struct PointwiseStudyCell {
    double r;
    double lambda;
    bool   valid;       ///< min relative gap >= -1e-12 across the ratio grid
    double worst_gap;   ///< most negative relative gap found
    double worst_ratio; ///< ratio attaining it
};

struct PointwiseStudy {
    std::vector<PointwiseStudyCell> cells;
    std::vector<PointwiseStudyCell> refuted() const;
};

// Sweeps the scalar oracle over the grid; run before any mean-inequality
// campaign to pin the validity region.
PointwiseStudy pointwise_oracle_study(std::span<const double> r_grid,
                                      std::span<const double> lambda_grid,
                                      std::span<const double> ratio_grid);

// True when the scalar oracle accepts (r, lambda) across the ratio grid;
// campaigns restrict mean-inequality cells to this region.
bool pointwise_cell_valid(double r, double lambda, std::span<const double> ratio_grid);

/// default b/a grid for validity queries
std::span<const double> default_ratio_grid();

// Cell coordinates identify one verification unit: generator output plus
// weights are regenerated from (master_seed, trial, dim, n), never stored.
struct CellCoords {
    std::string   inequality; ///< thm21 | cor22 | thm31 | thm41
    std::string   generator;  ///< scaled | increasing | nonsynchronous
    std::uint64_t master_seed = 0;
    int           trial       = 0;
    Index         dim         = 1;
    Index         n           = 2;
    double        r           = 0.0;
    double        lambda      = 0.0;
};

/// substream seed a cell's generator and weights are drawn from
std::uint64_t derive_cell_seed(const CellCoords& cell);

// Runs one cell deterministically and stamps the report with its digest.
// Unknown inequality or generator names throw std::invalid_argument.
GapReport run_cell(const CellCoords& cell, const Tolerances& tol = {});

std::string encode_digest(const CellCoords& cell);
CellCoords  parse_digest(const std::string& digest);

/// re-run the exact cell a digest came from
GapReport replay_digest(const std::string& digest, const Tolerances& tol = {});

struct FalsificationReport {
    bool found      = false;
    int  trials_run = 0;
    std::optional<GapReport> counterexample; ///< first failing report
};

// Hunts a fail verdict for the named inequality over fields from the named
// generator, cycling dims, point counts and (for mean inequalities) the
// (r, lambda) grid deterministically from the seed.
FalsificationReport falsify(const std::string& inequality, const std::string& generator,
                            int trials, std::uint64_t seed, const Tolerances& tol = {});

} // namespace opcheb
