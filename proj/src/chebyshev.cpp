#include "opcheb/chebyshev.hpp"

#include "opcheb/means.hpp"
#include "opcheb/products.hpp"
#include "opcheb/random.hpp"
#include "opcheb/rng.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace opcheb {

double scalar_chebyshev(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b)
{
    if (w.size() != a.size() || w.size() != b.size()) {
        throw std::invalid_argument("scalar_chebyshev: length mismatch");
    }
    double sw = 0.0, swab = 0.0, swa = 0.0, swb = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] >= 0.0)) throw std::invalid_argument("scalar_chebyshev: weights must be nonnegative");
        sw += w[i];
        swab += w[i] * a[i] * b[i];
        swa += w[i] * a[i];
        swb += w[i] * b[i];
    }
    return sw * swab - swa * swb;
}

namespace {

GapReport assemble_gap(std::string name, const std::vector<HermitianMatrix>& plus,
                       const std::vector<HermitianMatrix>& minus, const Tolerances& tol)
{
    HermitianMatrix gap = plus.front();
    double scale = plus.front().fro_norm();
    for (std::size_t i = 1; i < plus.size(); ++i) {
        gap += plus[i];
        scale = std::max(scale, plus[i].fro_norm());
    }
    for (const auto& term : minus) {
        gap -= term;
        scale = std::max(scale, term.fro_norm());
    }
    const double me   = min_eigenvalue(gap);
    const bool   pass = me >= -tol.psd_tol * std::max(1.0, scale);
    return {std::move(name), std::move(gap), me, scale, pass, {}};
}

HermitianMatrix weighted_hadamard_sum(const OperatorField& f, const OperatorField& g,
                                      const WeightVector& w)
{
    HermitianMatrix acc = HermitianMatrix::zero(f.dim());
    for (Index k = 0; k < f.size(); ++k) acc += w[k] * hadamard(f.matrix(k), g.matrix(k));
    return acc;
}

void require_pair_shape(const OperatorField& f, const OperatorField& g,
                        const WeightVector& a, const WeightVector& b, const char* who)
{
    if (f.size() != g.size() || f.dim() != g.dim()) {
        throw std::invalid_argument(std::string(who) + ": field shape mismatch");
    }
    if (a.size() != f.size() || b.size() != f.size()) {
        throw std::invalid_argument(std::string(who) + ": weight length mismatch");
    }
}

} // namespace

GapReport gap_two_weight(const OperatorField& f, const OperatorField& g,
                         const WeightVector& alpha, const WeightVector& beta,
                         const Tolerances& tol)
{
    require_pair_shape(f, g, alpha, beta, "gap_two_weight");
    const HermitianMatrix lhs1 = alpha.sum() * weighted_hadamard_sum(f, g, beta);
    const HermitianMatrix lhs2 = beta.sum() * weighted_hadamard_sum(f, g, alpha);
    const HermitianMatrix rhs1 = hadamard(integrate(f, alpha), integrate(g, beta));
    const HermitianMatrix rhs2 = hadamard(integrate(f, beta), integrate(g, alpha));
    return assemble_gap("thm21", {lhs1, lhs2}, {rhs1, rhs2}, tol);
}

GapReport gap_discrete(const OperatorField& f, const OperatorField& g,
                       const WeightVector& omega, const WeightVector& nu,
                       const Tolerances& tol)
{
    GapReport report = gap_two_weight(f, g, omega, nu, tol);
    report.name = "cor22";
    return report;
}

HermitianMatrix q_increment(Index k, const OperatorField& f, const OperatorField& g,
                            const WeightVector& omega, const WeightVector& nu)
{
    require_pair_shape(f, g, omega, nu, "q_increment");
    const Index n = f.size();
    if (k < 2 || k > n) throw std::invalid_argument("q_increment: k must satisfy 2 <= k <= n");

    const Index ki = k - 1; // 0-based
    HermitianMatrix acc = HermitianMatrix::zero(f.dim());
    for (Index j = 0; j < ki; ++j) {
        const HermitianMatrix prod =
            hadamard(f.matrix(ki) - f.matrix(j), g.matrix(ki) - g.matrix(j));
        acc += (omega[ki] * nu[j] + nu[ki] * omega[j]) * prod;
    }
    return acc;
}

QChain q_chain(const OperatorField& f, const OperatorField& g,
               const WeightVector& omega, const WeightVector& nu,
               const Tolerances& tol)
{
    (void)tol;
    require_pair_shape(f, g, omega, nu, "q_chain");
    const Index n = f.size();

    QChain chain;
    chain.partial_weight_sums_w.resize(static_cast<std::size_t>(n));
    chain.partial_weight_sums_v.resize(static_cast<std::size_t>(n));
    double ws = 0.0, vs = 0.0;
    for (Index k = 0; k < n; ++k) {
        ws += omega[k];
        vs += nu[k];
        chain.partial_weight_sums_w[static_cast<std::size_t>(k)] = ws;
        chain.partial_weight_sums_v[static_cast<std::size_t>(k)] = vs;
    }

    // product side
    HermitianMatrix q = hadamard(integrate(f, omega), integrate(g, nu)) +
                        hadamard(integrate(f, nu), integrate(g, omega));
    chain.values.push_back(q);
    chain.scale = q.fro_norm();
    for (Index k = 2; k <= n; ++k) {
        HermitianMatrix inc = q_increment(k, f, g, omega, nu);
        q += inc;
        chain.values.push_back(q);
        chain.increments.push_back(std::move(inc));
        chain.scale = std::max(chain.scale, q.fro_norm());
    }

    // sum side cross-check
    const HermitianMatrix sum_side = omega.sum() * weighted_hadamard_sum(f, g, nu) +
                                     nu.sum() * weighted_hadamard_sum(f, g, omega);
    chain.endpoint_residual = (chain.values.back() - sum_side).fro_norm();
    chain.scale = std::max(chain.scale, sum_side.fro_norm());
    return chain;
}

GapReport pointwise_mean_gap(const HermitianMatrix& a, const HermitianMatrix& b,
                             double r, double lambda, const Tolerances& tol)
{
    const HermitianMatrix lhs = hadamard(a, b);
    const HermitianMatrix rhs = hadamard(power_mean(a, b, MeanSpec(r, lambda), tol),
                                         power_mean(a, b, MeanSpec(r, 1.0 - lambda), tol));
    return assemble_gap("path1", {lhs}, {rhs}, tol);
}

namespace {

void require_positive_increasing(const OperatorField& f, const Tolerances& tol, const char* who)
{
    const FieldPairCertificate cert = check_increasing_positive(f, tol);
    if (!cert.positive || !cert.increasing) {
        throw std::domain_error(std::string(who) +
                                ": hypothesis violation, field is not positive increasing");
    }
}

GapReport mean_gap_impl(std::string name, const OperatorField& f, const OperatorField& g,
                        const WeightVector& alpha, const WeightVector& beta,
                        double r, double lambda, const Tolerances& tol)
{
    require_pair_shape(f, g, alpha, beta, name.c_str());
    require_positive_increasing(f, tol, name.c_str());
    require_positive_increasing(g, tol, name.c_str());

    const MeanSpec lower(r, lambda), upper(r, 1.0 - lambda);
    HermitianMatrix mean_lo = HermitianMatrix::zero(f.dim());
    HermitianMatrix mean_hi = HermitianMatrix::zero(f.dim());
    for (Index k = 0; k < f.size(); ++k) {
        mean_lo += alpha[k] * power_mean(f.matrix(k), g.matrix(k), lower, tol);
        mean_hi += beta[k] * power_mean(f.matrix(k), g.matrix(k), upper, tol);
    }
    const HermitianMatrix lhs = alpha.sum() * weighted_hadamard_sum(f, g, beta);
    const HermitianMatrix rhs = hadamard(mean_lo, mean_hi);
    return assemble_gap(std::move(name), {lhs}, {rhs}, tol);
}

} // namespace

GapReport gap_mean(const OperatorField& f, const OperatorField& g,
                   const WeightVector& alpha, double r, double lambda,
                   const Tolerances& tol)
{
    return mean_gap_impl("thm41", f, g, alpha, alpha, r, lambda, tol);
}

GapReport gap_mean_two_weight(const OperatorField& f, const OperatorField& g,
                              const WeightVector& alpha, const WeightVector& beta,
                              double r, double lambda, const Tolerances& tol)
{
    return mean_gap_impl("cor-final-2w", f, g, alpha, beta, r, lambda, tol);
}

double scalar_pointwise_gap(double r, double lambda, double ratio)
{
    if (!(ratio > 0.0)) throw std::domain_error("scalar_pointwise_gap: ratio must be positive");
    return ratio - representing_function(r, lambda, ratio) *
                       representing_function(r, 1.0 - lambda, ratio);
}

namespace {
constexpr double kStudyRelTol = 1e-12;

constexpr std::array<double, 11> kDefaultRatios = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5,
                                                   2.0, 3.0,  5.0, 7.5,  10.0};
} // namespace

std::span<const double> default_ratio_grid()
{
    return {kDefaultRatios.data(), kDefaultRatios.size()};
}

bool pointwise_cell_valid(double r, double lambda, std::span<const double> ratio_grid)
{
    for (double x : ratio_grid) {
        if (scalar_pointwise_gap(r, lambda, x) / std::max(1.0, x) < -kStudyRelTol) return false;
    }
    return true;
}

PointwiseStudy pointwise_oracle_study(std::span<const double> r_grid,
                                      std::span<const double> lambda_grid,
                                      std::span<const double> ratio_grid)
{
    PointwiseStudy study;
    for (double r : r_grid) {
        for (double lambda : lambda_grid) {
            PointwiseStudyCell cell{r, lambda, true, 0.0, 1.0};
            for (double x : ratio_grid) {
                const double rel = scalar_pointwise_gap(r, lambda, x) / std::max(1.0, x);
                if (rel < cell.worst_gap) {
                    cell.worst_gap   = rel;
                    cell.worst_ratio = x;
                }
            }
            cell.valid = cell.worst_gap >= -kStudyRelTol;
            study.cells.push_back(cell);
        }
    }
    return study;
}

std::vector<PointwiseStudyCell> PointwiseStudy::refuted() const
{
    std::vector<PointwiseStudyCell> out;
    for (const auto& c : cells) {
        if (!c.valid) out.push_back(c);
    }
    return out;
}

std::uint64_t derive_cell_seed(const CellCoords& cell)
{
    std::uint64_t s = cell.master_seed;
    s = mix_seed(s, static_cast<std::uint64_t>(cell.trial));
    s = mix_seed(s, static_cast<std::uint64_t>(cell.dim));
    s = mix_seed(s, static_cast<std::uint64_t>(cell.n));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(cell.r));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(cell.lambda));
    return s;
}

namespace {

std::pair<OperatorField, OperatorField> make_pair(const std::string& generator,
                                                  Index dim, Index n, std::uint64_t seed)
{
    if (generator == "scaled") return gen_scaled_pair(dim, n, seed);
    if (generator == "increasing") return gen_increasing_pair(dim, n, seed);
    if (generator == "nonsynchronous") return gen_nonsynchronous_pair(dim, n, seed);
    throw std::invalid_argument("unknown generator: " + generator);
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Composite verdict for a refinement-chain cell: increments PSD, endpoint on
// the sum side, and chain span equal to the discrete gap. Reported gap matrix
// is Q(n) - Q(1); min_eig is the worst increment eigenvalue.
GapReport run_chain_cell(const OperatorField& f, const OperatorField& g,
                         const WeightVector& omega, const WeightVector& nu,
                         const Tolerances& tol)
{
    const QChain chain = q_chain(f, g, omega, nu, tol);
    const double scale = chain.scale;

    bool pass = chain.endpoint_residual <= 1e-10 * std::max(1.0, scale);
    double worst = 0.0;
    for (const auto& inc : chain.increments) {
        const double me = min_eigenvalue(inc);
        worst = std::min(worst, me);
        if (me < -tol.psd_tol * std::max(1.0, inc.fro_norm())) pass = false;
    }

    const HermitianMatrix span = chain.values.back() - chain.values.front();
    const GapReport discrete = gap_discrete(f, g, omega, nu, tol);
    if ((span - discrete.gap).fro_norm() > 1e-10 * std::max(1.0, scale)) pass = false;

    return {"thm31", span, worst, scale, pass, {}};
}

} // namespace

GapReport run_cell(const CellCoords& cell, const Tolerances& tol)
{
    const std::uint64_t seed = derive_cell_seed(cell);
    const auto [f, g] = make_pair(cell.generator, cell.dim, cell.n, seed);
    Rng wrng(mix_seed(seed, 0x5eedULL));
    const WeightVector alpha(nonnegative_weights(cell.n, wrng));
    const WeightVector beta(nonnegative_weights(cell.n, wrng));

    GapReport report = [&]() {
        if (cell.inequality == "thm21") return gap_two_weight(f, g, alpha, beta, tol);
        if (cell.inequality == "cor22") return gap_discrete(f, g, alpha, beta, tol);
        if (cell.inequality == "thm31") return run_chain_cell(f, g, alpha, beta, tol);
        if (cell.inequality == "thm41") return gap_mean(f, g, alpha, cell.r, cell.lambda, tol);
        throw std::invalid_argument("unknown inequality: " + cell.inequality);
    }();
    report.inputs_digest = encode_digest(cell);
    return report;
}

std::string encode_digest(const CellCoords& cell)
{
    std::string d;
    d += "ineq=" + cell.inequality;
    d += ";gen=" + cell.generator;
    d += ";master=" + std::to_string(cell.master_seed);
    d += ";trial=" + std::to_string(cell.trial);
    d += ";dim=" + std::to_string(cell.dim);
    d += ";n=" + std::to_string(cell.n);
    d += ";r=" + format_double(cell.r);
    d += ";lambda=" + format_double(cell.lambda);
    return d;
}

CellCoords parse_digest(const std::string& digest)
{
    CellCoords cell;
    std::size_t pos = 0;
    while (pos < digest.size()) {
        const std::size_t semi = digest.find(';', pos);
        const std::string item = digest.substr(pos, semi == std::string::npos ? semi : semi - pos);
        pos = (semi == std::string::npos) ? digest.size() : semi + 1;

        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("parse_digest: malformed item: " + item);
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            if (key == "ineq") cell.inequality = val;
            else if (key == "gen") cell.generator = val;
            else if (key == "master") cell.master_seed = std::stoull(val);
            else if (key == "trial") cell.trial = std::stoi(val);
            else if (key == "dim") cell.dim = static_cast<Index>(std::stoll(val));
            else if (key == "n") cell.n = static_cast<Index>(std::stoll(val));
            else if (key == "r") cell.r = std::stod(val);
            else if (key == "lambda") cell.lambda = std::stod(val);
            else throw std::invalid_argument("parse_digest: unknown key: " + key);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_digest: bad value for " + key + ": " + val);
        }
    }
    if (cell.inequality.empty() || cell.generator.empty()) {
        throw std::invalid_argument("parse_digest: digest lacks inequality or generator");
    }
    return cell;
}

GapReport replay_digest(const std::string& digest, const Tolerances& tol)
{
    return run_cell(parse_digest(digest), tol);
}

FalsificationReport falsify(const std::string& inequality, const std::string& generator,
                            int trials, std::uint64_t seed, const Tolerances& tol)
{
    if (trials < 1) throw std::invalid_argument("falsify: trials must be >= 1");

    static constexpr std::array<Index, 4>  kDims    = {1, 2, 3, 4};
    static constexpr std::array<Index, 5>  kPoints  = {2, 3, 4, 5, 6};
    static constexpr std::array<double, 4> kRs      = {1.0, 0.5, -0.5, -1.0};
    static constexpr std::array<double, 3> kLambdas = {0.5, 0.25, 0.75};

    const bool uses_mean = inequality == "thm41";
    FalsificationReport result;
    for (int trial = 0; trial < trials; ++trial) {
        CellCoords cell;
        cell.inequality  = inequality;
        cell.generator   = generator;
        cell.master_seed = seed;
        cell.trial       = trial;
        cell.dim         = kDims[static_cast<std::size_t>(trial) % kDims.size()];
        cell.n           = kPoints[(static_cast<std::size_t>(trial) / kDims.size()) % kPoints.size()];
        cell.r           = uses_mean ? kRs[static_cast<std::size_t>(trial) % kRs.size()] : 0.0;
        cell.lambda      = uses_mean ? kLambdas[static_cast<std::size_t>(trial) % kLambdas.size()] : 0.0;

        ++result.trials_run;
        GapReport report = [&]() -> GapReport {
            try {
                return run_cell(cell, tol);
            } catch (const std::domain_error&) {
                // generator output violated the assembler's hypothesis gate;
                // that is not a fail verdict, keep hunting
                return {"skipped", HermitianMatrix::identity(1), 0.0, 0.0, true, encode_digest(cell)};
            }
        }();
        if (!report.pass) {
            result.found = true;
            result.counterexample = std::move(report);
            return result;
        }
    }
    return result;
}

} // namespace opcheb
