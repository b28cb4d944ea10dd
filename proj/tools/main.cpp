#include "opcheb/campaign.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct CliOverrides {
    std::string         config_path;
    std::string         inequality;
    std::string         generator;
    std::vector<int>    dims;
    std::vector<int>    points;
    int                 trials = 0;
    std::uint64_t       seed   = 0;
    bool                seed_given = false;
    std::vector<double> r_grid;
    std::vector<double> lambda_grid;
    std::string         format;
    std::string         out;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o)
{
    cmd->add_option("--config", o.config_path, "JSON config file; flags override its values");
    cmd->add_option("--inequality", o.inequality, "campaign name: thm21 | cor22 | thm31 | thm41");
    cmd->add_option("--generator", o.generator, "field pair generator: scaled | increasing | nonsynchronous");
    cmd->add_option("--trials", o.trials, "trial count per grid point");
    cmd->add_option("--seed", o.seed, "master seed")->each([&o](const std::string&) { o.seed_given = true; });
    cmd->add_option("--dims", o.dims, "matrix dimensions")->delimiter(',');
    cmd->add_option("--points", o.points, "field point counts")->delimiter(',');
    cmd->add_option("--r-grid", o.r_grid, "power exponents in [-1,1]")->delimiter(',');
    cmd->add_option("--lambda-grid", o.lambda_grid, "mean weights in [0,1]")->delimiter(',');
    cmd->add_option("--format", o.format, "report format: json | csv");
    cmd->add_option("--out", o.out, "report path (default: stdout)");
}

// defaults < config file < flags
opcheb::CampaignConfig build_config(const CliOverrides& o)
{
    opcheb::CampaignConfig cfg;
    if (!o.config_path.empty()) cfg = opcheb::load_config_file(o.config_path, cfg);
    if (!o.inequality.empty()) cfg.inequality = o.inequality;
    if (!o.generator.empty()) cfg.generator = o.generator;
    if (!o.dims.empty()) cfg.dims = o.dims;
    if (!o.points.empty()) cfg.n_points = o.points;
    if (o.trials != 0) cfg.trials = o.trials;
    if (o.seed_given) cfg.seed = o.seed;
    if (!o.r_grid.empty()) cfg.r_grid = o.r_grid;
    if (!o.lambda_grid.empty()) cfg.lambda_grid = o.lambda_grid;
    if (!o.format.empty()) cfg.output_format = o.format;
    if (!o.out.empty()) cfg.output_path = o.out;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"numerical certification of Chebyshev-type operator inequalities "
                 "for Hadamard products of matrix fields"};
    app.require_subcommand(1);

    CliOverrides overrides;
    CLI::App* verify  = app.add_subcommand("verify", "run a verification campaign over the grid");
    CLI::App* axioms  = app.add_subcommand("axioms", "check the mean axioms and the interpolation identity");
    CLI::App* falsify = app.add_subcommand("falsify", "hunt a violation with a hypothesis-breaking generator");
    CLI::App* demo    = app.add_subcommand("demo-example", "triangular 2x2 field demo at a fixed discretization");
    add_common_flags(verify, overrides);
    add_common_flags(axioms, overrides);
    add_common_flags(falsify, overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (demo->parsed()) return opcheb::cmd_demo_example(std::cout);
        const opcheb::CampaignConfig cfg = build_config(overrides);
        if (verify->parsed()) return opcheb::cmd_verify(cfg);
        if (axioms->parsed()) return opcheb::cmd_axioms(cfg);
        if (falsify->parsed()) return opcheb::cmd_falsify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
