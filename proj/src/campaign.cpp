#include "opcheb/campaign.hpp"

#include "opcheb/means.hpp"
#include "opcheb/random.hpp"
#include "opcheb/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace opcheb {

using nlohmann::json;

namespace {

const std::vector<std::string> kInequalities = {"thm21", "cor22", "thm31", "thm41"};
const std::vector<std::string> kGenerators   = {"scaled", "increasing", "nonsynchronous"};

bool contains(const std::vector<std::string>& pool, const std::string& x)
{
    return std::find(pool.begin(), pool.end(), x) != pool.end();
}

std::vector<int> iota_range(int lo, int hi)
{
    std::vector<int> v;
    for (int x = lo; x <= hi; ++x) v.push_back(x);
    return v;
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

CampaignConfig resolve_config(CampaignConfig config, const std::string& command)
{
    const bool is_axioms = command == "axioms";

    if (!is_axioms && !contains(kInequalities, config.inequality)) {
        throw std::invalid_argument("unknown inequality: " + config.inequality);
    }

    if (config.generator.empty()) {
        if (command == "falsify") {
            config.generator = config.inequality == "thm41" ? "increasing" : "nonsynchronous";
        } else {
            config.generator = config.inequality == "thm41" ? "increasing" : "scaled";
        }
    }
    if (!contains(kGenerators, config.generator)) {
        throw std::invalid_argument("unknown generator: " + config.generator);
    }

    if (config.dims.empty()) {
        config.dims = config.inequality == "thm21" || config.inequality == "cor22"
                          ? iota_range(1, 5)
                          : iota_range(1, 4);
    }
    if (config.n_points.empty()) {
        config.n_points = config.inequality == "thm41" ? iota_range(2, 5) : iota_range(2, 8);
    }
    if (config.trials == 0) {
        if (is_axioms) config.trials = 100;
        else if (command == "falsify") config.trials = 1000;
        else if (config.inequality == "thm41") config.trials = 1;
        else if (config.inequality == "thm31") config.trials = 8;
        else config.trials = 9;
    }
    if (config.r_grid.empty()) {
        config.r_grid = (is_axioms || config.inequality == "thm41")
                            ? std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}
                            : std::vector<double>{0.0};
    }
    if (config.lambda_grid.empty()) {
        if (is_axioms) config.lambda_grid = {0.25, 0.5, 0.75};
        else if (config.inequality == "thm41") config.lambda_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
        else config.lambda_grid = {0.0};
    }

    config.tolerances.validate();
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (int d : config.dims) {
        if (d < 1) throw std::invalid_argument("dims entries must be >= 1");
    }
    for (int n : config.n_points) {
        if (n < 2) throw std::invalid_argument("n_points entries must be >= 2 (generators need two points)");
    }
    for (double r : config.r_grid) {
        if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument("r_grid entries must lie in [-1, 1]");
    }
    for (double l : config.lambda_grid) {
        if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("lambda_grid entries must lie in [0, 1]");
    }
    if (config.output_format != "json" && config.output_format != "csv") {
        throw std::invalid_argument("format must be json or csv");
    }
    return config;
}

CampaignConfig load_config_file(const std::string& path, CampaignConfig base)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw std::invalid_argument("config file must hold a JSON object");

    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "inequality") base.inequality = value.get<std::string>();
            else if (key == "generator") base.generator = value.get<std::string>();
            else if (key == "dims") base.dims = value.get<std::vector<int>>();
            else if (key == "n_points") base.n_points = value.get<std::vector<int>>();
            else if (key == "trials") base.trials = value.get<int>();
            else if (key == "seed") base.seed = value.get<std::uint64_t>();
            else if (key == "r_grid") base.r_grid = value.get<std::vector<double>>();
            else if (key == "lambda_grid") base.lambda_grid = value.get<std::vector<double>>();
            else if (key == "psd_tol") base.tolerances.psd_tol = value.get<double>();
            else if (key == "recon_tol") base.tolerances.recon_tol = value.get<double>();
            else if (key == "zero_r_cutoff") base.tolerances.zero_r_cutoff = value.get<double>();
            else if (key == "format") base.output_format = value.get<std::string>();
            else if (key == "out") base.output_path = value.get<std::string>();
            else throw std::invalid_argument("unknown config key: " + key);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument("config value error: " + std::string(e.what()));
    }
    return base;
}

bool CampaignResult::all_pass() const
{
    return std::all_of(records.begin(), records.end(),
                       [](const CellRecord& r) { return r.pass; });
}

namespace {

CellRecord record_from_report(const CellCoords& cell, const GapReport& report)
{
    return {report.name, derive_cell_seed(cell), cell.dim, cell.n,
            cell.r,      cell.lambda,            report.min_eig, report.scale,
            report.pass, report.inputs_digest};
}

} // namespace

CampaignResult run_verify_campaign(const CampaignConfig& config, std::ostream& diagnostics)
{
    const bool uses_mean = config.inequality == "thm41";

    // Mean-inequality grids go through the scalar oracle first; cells it
    // refutes are excluded from the pass-suite and reported.
    std::vector<std::pair<double, double>> mean_grid;
    if (uses_mean) {
        const PointwiseStudy study =
            pointwise_oracle_study(config.r_grid, config.lambda_grid, default_ratio_grid());
        for (const auto& cell : study.cells) {
            if (cell.valid) {
                mean_grid.emplace_back(cell.r, cell.lambda);
            } else {
                diagnostics << "note: excluded refuted cell r=" << cell.r
                            << " lambda=" << cell.lambda
                            << " (scalar oracle gap " << cell.worst_gap
                            << " at ratio " << cell.worst_ratio << ")\n";
            }
        }
    } else {
        for (double r : config.r_grid) {
            for (double l : config.lambda_grid) mean_grid.emplace_back(r, l);
        }
    }

    CampaignResult result;
    for (int trial = 0; trial < config.trials; ++trial) {
        for (int dim : config.dims) {
            for (int n : config.n_points) {
                for (const auto& [r, lambda] : mean_grid) {
                    CellCoords cell{config.inequality, config.generator, config.seed,
                                    trial,             dim,              n,
                                    r,                 lambda};
                    const GapReport report = run_cell(cell, config.tolerances);
                    result.records.push_back(record_from_report(cell, report));
                }
            }
        }
    }
    return result;
}

CampaignResult run_axioms_campaign(const CampaignConfig& config, std::ostream& diagnostics)
{
    CampaignResult result;
    int combo = 0;

    for (double r : config.r_grid) {
        for (double t : config.lambda_grid) {
            for (int dim : config.dims) {
                const std::uint64_t seed = mix_seed(config.seed, static_cast<std::uint64_t>(combo));
                const AxiomReport report =
                    check_mean_axioms(MeanSpec(r, t), config.trials, dim, seed, config.tolerances);

                double worst = 0.0;
                for (const auto& failure : report.failures) {
                    worst = std::min(worst, failure.violation);
                    diagnostics << "axiom failure: " << failure.axiom << " trial " << failure.trial
                                << " r=" << r << " t=" << t << " dim=" << dim
                                << " violation=" << failure.violation << "\n";
                    json inputs = {{"a", matrix_to_json(failure.a)}, {"b", matrix_to_json(failure.b)}};
                    if (failure.c.size() > 0) inputs["c"] = matrix_to_json(failure.c);
                    if (failure.d.size() > 0) inputs["d"] = matrix_to_json(failure.d);
                    if (failure.t.size() > 0) inputs["t"] = matrix_to_json(failure.t);
                    diagnostics << "axiom failure inputs: " << inputs.dump() << "\n";
                }

                CellCoords coords{"axioms", "axioms", config.seed, combo, dim,
                                  config.trials, r, t};
                result.records.push_back({"axioms", seed, dim, config.trials, r, t, worst, 1.0,
                                          report.ok(), encode_digest(coords)});
                ++combo;
            }
        }
    }

    // interpolation identity sweep; lambda column carries the outer weight s
    for (double r : config.r_grid) {
        for (int trial = 0; trial < config.trials; ++trial) {
            const std::uint64_t seed =
                mix_seed(mix_seed(config.seed, std::bit_cast<std::uint64_t>(r)),
                         0xb0b0ULL + static_cast<std::uint64_t>(trial));
            Rng rng(seed);
            const int  dim       = config.dims[static_cast<std::size_t>(trial) % config.dims.size()];
            const bool commuting = trial % 2 == 0;

            const double p = rng.uniform(), q = rng.uniform(), s = rng.uniform();
            HermitianMatrix a = commuting
                                    ? HermitianMatrix::diagonal(Eigen::VectorXd::NullaryExpr(
                                          dim, [&rng](Index) { return rng.uniform(0.2, 2.0); }))
                                    : random_spd(dim, rng);
            HermitianMatrix b = commuting
                                    ? HermitianMatrix::diagonal(Eigen::VectorXd::NullaryExpr(
                                          dim, [&rng](Index) { return rng.uniform(0.2, 2.0); }))
                                    : random_spd(dim, rng);

            const double residual = check_path_identity(r, p, q, s, a, b, config.tolerances);
            const bool   pass     = residual <= 1e-8 * a.fro_norm();

            CellCoords coords{"path-identity", commuting ? "commuting" : "random",
                              config.seed, trial, dim, 1, r, s};
            result.records.push_back({"path-identity", seed, dim, 1, r, s, -residual,
                                      a.fro_norm(), pass, encode_digest(coords)});
        }
    }
    return result;
}

void write_report_json(std::ostream& out, const CampaignConfig& config,
                       const CampaignResult& result)
{
    json doc;
    doc["meta"] = {{"generated_at", utc_timestamp()},
                   {"inequality", config.inequality},
                   {"seed", config.seed},
                   {"generator", config.generator}};
    json records = json::array();
    for (const auto& r : result.records) {
        records.push_back({{"inequality", r.inequality},
                           {"seed", r.seed},
                           {"dim", r.dim},
                           {"n", r.n},
                           {"r", r.r},
                           {"lambda", r.lambda},
                           {"min_eig", r.min_eig},
                           {"scale", r.scale},
                           {"verdict", r.pass ? "pass" : "fail"},
                           {"inputs_digest", r.inputs_digest}});
    }
    doc["records"] = std::move(records);
    out << doc.dump(2) << "\n";
}

void write_report_csv(std::ostream& out, const CampaignResult& result)
{
    out << "inequality,seed,dim,n,r,lambda,min_eig,scale,verdict,inputs_digest\n";
    for (const auto& r : result.records) {
        out << r.inequality << ',' << r.seed << ',' << r.dim << ',' << r.n << ','
            << format_double(r.r) << ',' << format_double(r.lambda) << ','
            << format_double(r.min_eig) << ',' << format_double(r.scale) << ','
            << (r.pass ? "pass" : "fail") << ',' << r.inputs_digest << '\n';
    }
}

namespace {

void emit_report(const CampaignConfig& config, const CampaignResult& result)
{
    const auto write = [&](std::ostream& out) {
        if (config.output_format == "csv") write_report_csv(out, result);
        else write_report_json(out, config, result);
    };
    if (config.output_path.empty()) {
        write(std::cout);
    } else {
        std::ofstream out(config.output_path);
        if (!out) throw std::invalid_argument("cannot open output path: " + config.output_path);
        write(out);
    }
}

} // namespace

int cmd_verify(const CampaignConfig& config)
{
    try {
        const CampaignConfig cfg = resolve_config(config, "verify");
        const CampaignResult result = run_verify_campaign(cfg, std::cerr);
        emit_report(cfg, result);
        const auto fails = std::count_if(result.records.begin(), result.records.end(),
                                         [](const CellRecord& r) { return !r.pass; });
        std::cerr << "verify " << cfg.inequality << ": " << result.records.size()
                  << " cells, " << fails << " fail\n";
        return result.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_axioms(const CampaignConfig& config)
{
    try {
        const CampaignConfig cfg = resolve_config(config, "axioms");
        const CampaignResult result = run_axioms_campaign(cfg, std::cerr);
        emit_report(cfg, result);
        const auto fails = std::count_if(result.records.begin(), result.records.end(),
                                         [](const CellRecord& r) { return !r.pass; });
        std::cerr << "axioms: " << result.records.size() << " cells, " << fails << " fail\n";
        return result.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_falsify(const CampaignConfig& config)
{
    try {
        const CampaignConfig cfg = resolve_config(config, "falsify");
        const FalsificationReport report =
            falsify(cfg.inequality, cfg.generator, cfg.trials, cfg.seed, cfg.tolerances);

        CampaignResult result;
        if (report.found) {
            const GapReport& cx = *report.counterexample;
            const CellCoords cell = parse_digest(cx.inputs_digest);
            result.records.push_back(record_from_report(cell, cx));
        }
        emit_report(cfg, result);

        if (report.found) {
            std::cerr << "falsify: violation found after " << report.trials_run
                      << " trials, min_eig=" << report.counterexample->min_eig
                      << "\nreplay: " << report.counterexample->inputs_digest << "\n";
            return 0;
        }
        std::cerr << "falsify: exhausted " << report.trials_run << " trials without a violation\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_demo_example(std::ostream& out)
{
    constexpr int n = 16;
    std::vector<double> f(n), g(n), h(n), k(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        f[static_cast<std::size_t>(i)] = t;
        g[static_cast<std::size_t>(i)] = 1.0 - t;
        h[static_cast<std::size_t>(i)] = std::cos(3.0 * t);
        k[static_cast<std::size_t>(i)] = std::exp(-t);
    }
    const TriangularFieldPair pair = gen_triangular_pair(f, g, h, f, g, k);

    // unit weights: both sides of the diagonal inequality collapse to sums
    Eigen::Matrix2d sum_had = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d sum_a = Eigen::Matrix2d::Zero(), sum_b = Eigen::Matrix2d::Zero();
    for (int i = 0; i < n; ++i) {
        sum_had += raw_hadamard(pair.a_mats[static_cast<std::size_t>(i)],
                                pair.b_mats[static_cast<std::size_t>(i)]);
        sum_a += pair.a_mats[static_cast<std::size_t>(i)];
        sum_b += pair.b_mats[static_cast<std::size_t>(i)];
    }
    const Eigen::Matrix2d lhs = 2.0 * n * sum_had;
    const Eigen::Matrix2d rhs = 2.0 * raw_hadamard(sum_a, sum_b);
    const Eigen::Matrix2d gap = lhs - rhs;

    double worst = 0.0;
    const bool sync = triangular_sync_check(pair, 1e-12, &worst);

    out << "triangular 2x2 field demo: " << n
        << " points on [0,1], f1=f2=t, g1=g2=1-t, unit weights\n";
    out << "difference products are diagonal PSD (synchronous check "
        << (sync ? "ok" : "FAILED") << ", worst diagonal entry " << worst << ")\n";
    out << "lhs  = diag(" << lhs(0, 0) << ", " << lhs(1, 1) << ")\n";
    out << "rhs  = diag(" << rhs(0, 0) << ", " << rhs(1, 1) << ")\n";
    out << "gap  = diag(" << gap(0, 0) << ", " << gap(1, 1) << ")\n";

    constexpr double psd_tol = 1e-8;
    const bool ok = sync && gap(0, 0) >= -psd_tol && gap(1, 1) >= -psd_tol;
    out << (ok ? "both diagonal gaps are nonnegative\n" : "diagonal gap went negative\n");
    return ok ? 0 : 1;
}

} // namespace opcheb
