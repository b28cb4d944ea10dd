#pragma once

#include "opcheb/chebyshev.hpp"
#include "opcheb/hermat.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace opcheb {

// Campaign orchestration behind the CLI: grid enumeration, report records,
// JSON/CSV emission and the exit-code contract (0 success of purpose,
// 1 purpose failure, 2 usage error).

struct CampaignConfig {
    std::string         inequality = "thm21";
    std::string         generator;   ///< empty selects the per-command default
    std::vector<int>    dims;        ///< empty selects the per-inequality default
    std::vector<int>    n_points;
    int                 trials = 0;  ///< 0 selects the per-inequality default
    std::uint64_t       seed   = 0;
    std::vector<double> r_grid;
    std::vector<double> lambda_grid;
    Tolerances          tolerances;
    std::string         output_format = "json"; ///< json | csv
    std::string         output_path;            ///< empty writes to stdout
};

// Fills empty fields with the defaults of config.inequality and the given
// command, then validates ranges. Throws std::invalid_argument on any
// violation (mapped to exit code 2 by the commands).
CampaignConfig resolve_config(CampaignConfig config, const std::string& command);

// Loads fields present in a JSON config file over the given base config.
CampaignConfig load_config_file(const std::string& path, CampaignConfig base);

/// one row of a report stream
struct CellRecord {
    std::string   inequality;
    std::uint64_t seed; ///< derived cell seed
    Index         dim;
    Index         n;
    double        r;
    double        lambda;
    double        min_eig;
    double        scale;
    bool          pass;
    std::string   inputs_digest;
};

struct CampaignResult {
    std::vector<CellRecord> records;
    bool all_pass() const;
};

// Enumerates and runs verification cells for config.inequality in sorted
// (trial, dim, n, r, lambda) order. Mean-inequality grids are restricted to
// the region validated by the scalar pointwise oracle; excluded cells are
// reported through `diagnostics` (one line each).
CampaignResult run_verify_campaign(const CampaignConfig& config, std::ostream& diagnostics);

// Axiom and path-identity sweep over r_grid x lambda_grid (lambda doubles as
// the path weight t). Falsified axiom instances are dumped, with their input
// matrices, to `diagnostics`.
CampaignResult run_axioms_campaign(const CampaignConfig& config, std::ostream& diagnostics);

void write_report_json(std::ostream& out, const CampaignConfig& config,
                       const CampaignResult& result);
void write_report_csv(std::ostream& out, const CampaignResult& result);

// CLI entry points. Reports go to config.output_path (stdout when empty);
// standard error carries diagnostics only.
int cmd_verify(const CampaignConfig& config);
int cmd_axioms(const CampaignConfig& config);
int cmd_falsify(const CampaignConfig& config);

// Reproduces the triangular 2x2 field demo at a fixed discretization
// (16 points on [0, 1], f1 = f2 = t, g1 = g2 = 1 - t, unit weights), printing
// both sides of the diagonal inequality and the entrywise gaps.
int cmd_demo_example(std::ostream& out);

} // namespace opcheb
