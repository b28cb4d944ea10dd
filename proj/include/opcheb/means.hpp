#pragma once

#include "opcheb/hermat.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace opcheb {

// Power-mean interpolational paths on strictly positive matrices:
//
//   A m_{r,t} B = A^{1/2} ((1-t) I + t (A^{-1/2} B A^{-1/2})^r)^{1/r} A^{1/2}
//
// with the geometric closed form A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2} when
// |r| falls below the zero_r cutoff. The family interpolates weighted harmonic
// (r = -1), geometric (r = 0) and arithmetic (r = 1) means; t weights the
// second argument, so the path runs from A at t = 0 to B at t = 1.

/// Point on the path family: power exponent r in [-1, 1], weight t in [0, 1].
struct MeanSpec {
    double r;
    double t;

    MeanSpec(double r_, double t_); // validates the ranges
};

// Scalar value of the path at (1, x): (1 - t + t x^r)^(1/r), or x^t on the
// geometric branch. Throws std::domain_error for x <= 0.
double representing_function(double r, double t, double x, double zero_r_cutoff = 1e-10);

// Requires both inputs strictly positive (min eigenvalue > psd_tol * scale),
// else std::domain_error. Callers holding merely PSD data opt into
// regularize() with an epsilon of their choice first.
HermitianMatrix power_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                           const MeanSpec& spec, const Tolerances& tol = {});

/// A + eps * I
HermitianMatrix regularize(const HermitianMatrix& a, double eps);

// Frobenius residual of the interpolation identity
//   (A m_{r,p} B) m_{r,s} (A m_{r,q} B) = A m_{r,(1-s)p + s q} B.
double check_path_identity(double r, double p, double q, double s,
                           const HermitianMatrix& a, const HermitianMatrix& b,
                           const Tolerances& tol = {});

/// One falsified axiom instance, with the full inputs for replay.
struct AxiomFailure {
    std::string axiom; ///< "monotonicity" | "transformer" | "normalization"
    int         trial;
    double      violation; ///< most negative eigenvalue slack observed
    Matrix      a, b, c, d, t;
};

struct AxiomReport {
    double        r;
    double        t;
    int           trials;
    Index         dim;
    std::uint64_t seed;
    std::vector<AxiomFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Randomized check of the mean axioms on the path point `spec`:
//  (1) joint monotonicity: A <= C, B <= D imply A s B <= C s D,
//  (3) transformer inequality: T*(A s B)T <= (T*A T) s (T*B T),
//  (4) normalization: I s I = I.
// Draws are seeded and recorded; failures are data, not errors.
AxiomReport check_mean_axioms(const MeanSpec& spec, int trials, Index dim,
                              std::uint64_t seed, const Tolerances& tol = {});

} // namespace opcheb
