// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero when any fails.
// Usage: acceptance [path-to-cli-binary]  (the CLI path enables the
// determinism criterion, which shells out to it twice).

#include "opcheb/campaign.hpp"
#include "opcheb/chebyshev.hpp"
#include "opcheb/means.hpp"
#include "opcheb/products.hpp"
#include "opcheb/random.hpp"
#include "opcheb/rng.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace opcheb;
using nlohmann::json;

namespace {

struct Criterion {
    int         number;
    std::string name;
    bool        passed;
    double      seconds;
    std::string detail;
};

std::vector<Criterion> results;
std::string cli_path;

void run(int number, const std::string& name, const std::function<bool(std::string&)>& body)
{
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back({number, name, ok, secs, detail});
    std::printf("[%s] %2d. %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

bool criterion_embedding(std::string& detail)
{
    Rng rng(1001);
    for (int trial = 0; trial < 200; ++trial) {
        const Index dim = 1 + static_cast<Index>(rng.below(6));
        const HermitianMatrix a = random_hermitian(dim, rng);
        const HermitianMatrix b = random_hermitian(dim, rng);
        const double bound = 1e-12 * std::max(1.0, a.fro_norm() * b.fro_norm());
        const double diff =
            (hadamard(a, b) - hadamard_via_embedding(a, b)).mat().cwiseAbs().maxCoeff();
        if (diff > bound) {
            detail = "entrywise deviation " + std::to_string(diff);
            return false;
        }
    }
    return true;
}

bool criterion_schur(std::string& detail)
{
    Rng rng(1002);
    for (int trial = 0; trial < 500; ++trial) {
        const Index dim = 1 + static_cast<Index>(rng.below(6));
        const HermitianMatrix prod = hadamard(random_gram(dim, rng), random_gram(dim, rng));
        const double floor = -1e-10 * std::max(1.0, prod.fro_norm());
        const double me = min_eigenvalue(prod);
        if (me < floor) {
            detail = "min_eig " + std::to_string(me);
            return false;
        }
    }
    return true;
}

bool criterion_mean_special_cases(std::string& detail)
{
    Rng rng(1003);
    for (int trial = 0; trial < 100; ++trial) {
        const Index dim = 1 + static_cast<Index>(rng.below(5));
        const HermitianMatrix a = random_spd(dim, rng);
        const HermitianMatrix b = random_spd(dim, rng);
        const double t = rng.uniform();

        const HermitianMatrix arith = (1.0 - t) * a + t * b;
        if ((power_mean(a, b, MeanSpec(1.0, t)) - arith).fro_norm() > 1e-10 * arith.fro_norm()) {
            detail = "arithmetic closed form";
            return false;
        }
        const HermitianMatrix harm =
            power_psd((1.0 - t) * power_psd(a, -1.0) + t * power_psd(b, -1.0), -1.0);
        if ((power_mean(a, b, MeanSpec(-1.0, t)) - harm).fro_norm() > 1e-10 * harm.fro_norm()) {
            detail = "harmonic closed form";
            return false;
        }
        const HermitianMatrix geo = power_mean(a, b, MeanSpec(0.0, t));
        if ((power_mean(a, b, MeanSpec(1e-6, t)) - geo).fro_norm() > 1e-4 * geo.fro_norm()) {
            detail = "geometric branch vs r = 1e-6";
            return false;
        }
    }
    return true;
}

bool criterion_axioms(std::string& detail)
{
    int combo = 0;
    for (double r : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        for (double t : {0.25, 0.5, 0.75}) {
            const Index dim = 1 + static_cast<Index>(combo % 4);
            const AxiomReport report =
                check_mean_axioms(MeanSpec(r, t), 100, dim, 9000 + static_cast<std::uint64_t>(combo));
            if (!report.ok()) {
                detail = "failures at r=" + std::to_string(r) + " t=" + std::to_string(t);
                return false;
            }
            ++combo;
        }
    }
    return true;
}

bool criterion_path_identity(std::string& detail)
{
    Rng rng(1005);
    const std::vector<double> rs = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (int trial = 0; trial < 100; ++trial) {
        const double r = rs[static_cast<std::size_t>(trial) % rs.size()];
        const Index dim = 1 + static_cast<Index>(rng.below(4));
        const bool commuting = trial % 2 == 0;
        const HermitianMatrix a =
            commuting ? HermitianMatrix::diagonal(Eigen::VectorXd::NullaryExpr(
                            dim, [&rng](Index) { return rng.uniform(0.2, 2.0); }))
                      : random_spd(dim, rng);
        const HermitianMatrix b =
            commuting ? HermitianMatrix::diagonal(Eigen::VectorXd::NullaryExpr(
                            dim, [&rng](Index) { return rng.uniform(0.2, 2.0); }))
                      : random_spd(dim, rng);
        const double residual =
            check_path_identity(r, rng.uniform(), rng.uniform(), rng.uniform(), a, b);
        if (residual > 1e-8 * a.fro_norm()) {
            detail = "residual " + std::to_string(residual);
            return false;
        }
    }
    return true;
}

bool criterion_two_weight(std::string& detail)
{
    int cells = 0;
    for (std::uint64_t seed = 0; seed < 9; ++seed) {
        for (Index dim = 1; dim <= 5; ++dim) {
            for (Index n = 2; n <= 8; ++n) {
                CellCoords cell{"thm21", "scaled", 2100 + seed, static_cast<int>(seed),
                                dim,     n,        0.0,         0.0};
                const GapReport report = run_cell(cell);
                ++cells;
                if (!report.pass) {
                    detail = "fail at " + report.inputs_digest;
                    return false;
                }
            }
        }
    }
    detail = std::to_string(cells) + " cells";
    return cells >= 300;
}

bool criterion_chain(std::string& detail)
{
    int cells = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        for (Index dim = 1; dim <= 4; ++dim) {
            for (Index n = 2; n <= 8; ++n) {
                Rng rng(mix_seed(3100, seed * 97 + static_cast<std::uint64_t>(dim * 10 + n)));
                const auto [f, g] = gen_scaled_pair(dim, n, rng.next_u64());
                const WeightVector w(nonnegative_weights(n, rng));
                const WeightVector v(nonnegative_weights(n, rng));
                const QChain chain = q_chain(f, g, w, v);
                const double slack = 1e-10 * std::max(1.0, chain.scale);

                for (const auto& inc : chain.increments) {
                    if (!is_psd(inc)) {
                        detail = "increment not PSD";
                        return false;
                    }
                }
                for (std::size_t k = 1; k < chain.values.size(); ++k) {
                    if (!loewner_leq(chain.values[k - 1], chain.values[k])) {
                        detail = "chain not monotone";
                        return false;
                    }
                }
                if (chain.endpoint_residual > slack) {
                    detail = "endpoint residual " + std::to_string(chain.endpoint_residual);
                    return false;
                }
                const HermitianMatrix span = chain.values.back() - chain.values.front();
                const GapReport disc = gap_discrete(f, g, w, v);
                if ((span - disc.gap).fro_norm() > slack) {
                    detail = "span vs discrete gap";
                    return false;
                }
                ++cells;
            }
        }
    }
    detail = std::to_string(cells) + " cells";
    return cells >= 200;
}

bool criterion_scalar_bridge(std::string& detail)
{
    Rng rng(1008);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.below(7));
        const std::vector<double> w = nonnegative_weights(n, rng);
        const std::vector<double> a = increasing_sequence(n, rng);
        const std::vector<double> b = increasing_sequence(n, rng);

        std::vector<double> pts;
        std::vector<HermitianMatrix> am, bm;
        for (Index k = 0; k < n; ++k) {
            pts.push_back(static_cast<double>(k));
            Eigen::VectorXd va(1), vb(1);
            va << a[static_cast<std::size_t>(k)];
            vb << b[static_cast<std::size_t>(k)];
            am.push_back(HermitianMatrix::diagonal(va));
            bm.push_back(HermitianMatrix::diagonal(vb));
        }
        const GapReport report = gap_discrete(OperatorField(pts, am), OperatorField(pts, bm),
                                              WeightVector(w), WeightVector(w));
        const double t_val = scalar_chebyshev(w, a, b);
        if (std::abs(report.gap(0, 0).real() - 2.0 * t_val) > 1e-12) {
            detail = "bridge residual";
            return false;
        }
        if (t_val < -1e-12) {
            detail = "scalar Chebyshev negative on monotone data";
            return false;
        }
    }
    return true;
}

bool criterion_oracle_study_and_mean_suite(std::string& detail)
{
    // stage 1: the scalar study over the mandated grid
    const std::vector<double> rs = {-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0};
    std::vector<double> lambdas, ratios;
    for (int i = 1; i <= 9; ++i) lambdas.push_back(0.1 * i);
    for (double x : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) ratios.push_back(x);

    const PointwiseStudy study = pointwise_oracle_study(rs, lambdas, ratios);
    std::size_t refuted = 0;
    for (const auto& cell : study.cells) {
        if (cell.r <= 0.0 && !cell.valid) {
            detail = "r <= 0 cell refuted unexpectedly";
            return false;
        }
        if (!cell.valid) ++refuted;
    }
    if (refuted != study.refuted().size() || refuted == 0) {
        detail = "refuted cells not flagged";
        return false;
    }

    // stage 2: field campaign restricted to the validated region
    int cells = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        for (Index dim = 1; dim <= 4; ++dim) {
            for (Index n : {2, 4}) {
                for (double r : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                        if (!pointwise_cell_valid(r, lambda, default_ratio_grid())) continue;
                        CellCoords cell{"thm41", "increasing", 4100 + seed,
                                        static_cast<int>(seed), dim, n, r, lambda};
                        const GapReport report = run_cell(cell);
                        ++cells;
                        if (!report.pass) {
                            detail = "fail at " + report.inputs_digest;
                            return false;
                        }
                    }
                }
            }
        }
    }
    detail = std::to_string(refuted) + " refuted cells flagged, " + std::to_string(cells) +
             " validated cells pass";
    return cells >= 200;
}

bool criterion_falsification(std::string& detail)
{
    const FalsificationReport report = falsify("thm21", "nonsynchronous", 1000, 777);
    if (!report.found) {
        detail = "no violation within 1000 trials";
        return false;
    }
    detail = "violation at trial " + std::to_string(report.trials_run);
    return true;
}

bool criterion_determinism(std::string& detail)
{
    if (cli_path.empty()) {
        detail = "cli path not supplied";
        return false;
    }
    const std::string out1 = "acceptance_run1.json", out2 = "acceptance_run2.json";
    const std::string base = "\"" + cli_path + "\" verify --inequality thm21 --seed 42 --out ";
    if (std::system((base + out1 + " 2>/dev/null").c_str()) != 0 ||
        std::system((base + out2 + " 2>/dev/null").c_str()) != 0) {
        detail = "cli run failed";
        return false;
    }
    std::ifstream f1(out1), f2(out2);
    json doc1, doc2;
    f1 >> doc1;
    f2 >> doc2;
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    doc1["meta"].erase("generated_at");
    doc2["meta"].erase("generated_at");
    if (doc1 != doc2) {
        detail = "reports differ beyond the timestamp";
        return false;
    }
    detail = std::to_string(doc1["records"].size()) + " records identical";
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc > 1) cli_path = argv[1];
    const auto start = std::chrono::steady_clock::now();

    run(1, "Hadamard embedding equivalence", criterion_embedding);
    run(2, "Schur product theorem probe", criterion_schur);
    run(3, "mean special cases and r = 0 branch", criterion_mean_special_cases);
    run(4, "mean axioms across the (r, t) grid", criterion_axioms);
    run(5, "interpolation identity residuals", criterion_path_identity);
    run(6, "two-weight field inequality campaign", criterion_two_weight);
    run(7, "refinement chain campaign", criterion_chain);
    run(8, "dim-1 scalar bridge", criterion_scalar_bridge);
    run(9, "pointwise oracle study gating the mean suite", criterion_oracle_study_and_mean_suite);
    run(10, "falsification power", criterion_falsification);
    run(11, "report determinism through the cli", criterion_determinism);

    // runtime criteria: per-criterion caps plus the whole-suite budget
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool runtime_ok = total < 60.0;
    std::string runtime_detail = "total " + std::to_string(total) + " s";
    for (const auto& c : results) {
        if ((c.number == 1 || c.number == 2) && c.seconds >= 2.0) runtime_ok = false;
        if (c.number == 6 && c.seconds >= 10.0) runtime_ok = false;
    }
    results.push_back({12, "runtime budget", runtime_ok, total, runtime_detail});
    std::printf("[%s] 12. runtime budget (%.2f s) -- %s\n", runtime_ok ? "PASS" : "FAIL", total,
                runtime_detail.c_str());

    int fails = 0;
    for (const auto& c : results) {
        if (!c.passed) ++fails;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), fails);
    return fails == 0 ? 0 : 1;
}
