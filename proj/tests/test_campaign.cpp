#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opcheb/campaign.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace opcheb;
using nlohmann::json;

namespace {

CampaignConfig tiny_thm21()
{
    CampaignConfig cfg;
    cfg.inequality = "thm21";
    cfg.dims = {1, 2};
    cfg.n_points = {2, 3};
    cfg.trials = 2;
    cfg.seed = 5;
    return cfg;
}

} // namespace

TEST_CASE("config resolution fills defaults")
{
    CampaignConfig cfg;
    cfg.inequality = "thm21";
    const CampaignConfig resolved = resolve_config(cfg, "verify");
    CHECK(resolved.generator == "scaled");
    CHECK(resolved.dims == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(resolved.n_points.size() == 7);
    CHECK(resolved.trials == 9);
    CHECK(resolved.r_grid == std::vector<double>{0.0});

    CampaignConfig mean_cfg;
    mean_cfg.inequality = "thm41";
    const CampaignConfig mean_resolved = resolve_config(mean_cfg, "verify");
    CHECK(mean_resolved.generator == "increasing");
    CHECK(mean_resolved.r_grid.size() == 5);
    CHECK(mean_resolved.lambda_grid.size() == 5);
}

TEST_CASE("config validation rejects bad values")
{
    CampaignConfig cfg = tiny_thm21();
    SUBCASE("unknown inequality")
    {
        cfg.inequality = "thm99";
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("unknown generator")
    {
        cfg.generator = "bogus";
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("r grid out of range")
    {
        cfg.r_grid = {1.5};
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("lambda grid out of range")
    {
        cfg.lambda_grid = {-0.2};
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("single-point fields cannot be generated")
    {
        cfg.n_points = {1};
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("negative trials")
    {
        cfg.trials = -3;
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("bad format")
    {
        cfg.output_format = "xml";
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
    SUBCASE("negative tolerance")
    {
        cfg.tolerances.psd_tol = -1e-8;
        CHECK_THROWS_AS(resolve_config(cfg, "verify"), std::invalid_argument);
    }
}

TEST_CASE("config file loading")
{
    const std::string path = "test_campaign_config.json";
    {
        std::ofstream out(path);
        out << R"({"inequality": "thm31", "trials": 3, "seed": 99,
                   "dims": [2], "n_points": [3, 4], "format": "csv"})";
    }
    CampaignConfig cfg = load_config_file(path, CampaignConfig{});
    CHECK(cfg.inequality == "thm31");
    CHECK(cfg.trials == 3);
    CHECK(cfg.seed == 99);
    CHECK(cfg.dims == std::vector<int>{2});
    CHECK(cfg.output_format == "csv");
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_config_file("no_such_file.json", CampaignConfig{}), std::invalid_argument);

    {
        std::ofstream out(path);
        out << R"({"inequality": )"; // truncated
    }
    CHECK_THROWS_AS(load_config_file(path, CampaignConfig{}), std::invalid_argument);
    {
        std::ofstream out(path);
        out << R"({"unknown_key": 1})";
    }
    CHECK_THROWS_AS(load_config_file(path, CampaignConfig{}), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("verify campaign runs and is deterministic")
{
    const CampaignConfig cfg = resolve_config(tiny_thm21(), "verify");
    std::ostringstream diag1, diag2;
    const CampaignResult r1 = run_verify_campaign(cfg, diag1);
    const CampaignResult r2 = run_verify_campaign(cfg, diag2);

    CHECK(r1.records.size() == 8); // trials * dims * n_points
    CHECK(r1.all_pass());
    REQUIRE(r1.records.size() == r2.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(r1.records[i].min_eig == r2.records[i].min_eig);
        CHECK(r1.records[i].scale == r2.records[i].scale);
        CHECK(r1.records[i].inputs_digest == r2.records[i].inputs_digest);
        CHECK(r1.records[i].seed == r2.records[i].seed);
    }
}

TEST_CASE("verify campaign flags violations from a hypothesis-breaking generator")
{
    CampaignConfig cfg = tiny_thm21();
    cfg.generator = "nonsynchronous";
    cfg.dims = {1};
    cfg.n_points = {2, 3};
    cfg.trials = 4;
    std::ostringstream diag;
    const CampaignResult result = run_verify_campaign(resolve_config(cfg, "verify"), diag);
    CHECK_FALSE(result.all_pass());

    // every failing record replays to the same gap computation
    for (const auto& record : result.records) {
        if (record.pass) continue;
        const GapReport replay = replay_digest(record.inputs_digest);
        CHECK(replay.min_eig == record.min_eig);
        CHECK_FALSE(replay.pass);
    }
}

TEST_CASE("command exit codes")
{
    CampaignConfig cfg = tiny_thm21();
    cfg.output_path = "test_campaign_report.tmp";

    CHECK(cmd_verify(cfg) == 0);

    cfg.generator = "nonsynchronous";
    cfg.dims = {1};
    CHECK(cmd_verify(cfg) == 1);

    cfg.generator.clear();
    cfg.inequality = "thm99";
    CHECK(cmd_verify(cfg) == 2);

    cfg.inequality = "thm21";
    cfg.r_grid = {2.0};
    CHECK(cmd_verify(cfg) == 2);
    std::remove("test_campaign_report.tmp");
}

TEST_CASE("mean campaign restricts to the oracle-validated region")
{
    CampaignConfig cfg;
    cfg.inequality = "thm41";
    cfg.dims = {1, 2};
    cfg.n_points = {2};
    cfg.trials = 1;
    cfg.r_grid = {-1.0, 0.0, 1.0};
    cfg.lambda_grid = {0.5};
    std::ostringstream diag;
    const CampaignResult result = run_verify_campaign(resolve_config(cfg, "verify"), diag);

    // r = 1, lambda = 0.5 is refuted by the scalar oracle and must be excluded
    CHECK(result.records.size() == 4); // 2 dims x 1 n x 2 surviving r values
    for (const auto& record : result.records) CHECK(record.r <= 0.0);
    CHECK(diag.str().find("excluded refuted cell") != std::string::npos);
    CHECK(result.all_pass());
}

TEST_CASE("axioms campaign")
{
    CampaignConfig cfg;
    cfg.dims = {2};
    cfg.trials = 5;
    cfg.r_grid = {1.0, -1.0};
    cfg.lambda_grid = {0.5};
    std::ostringstream diag;
    const CampaignResult result = run_axioms_campaign(resolve_config(cfg, "axioms"), diag);
    // 2 axiom combos + 2 * trials path-identity cells
    CHECK(result.records.size() == 2 + 2 * 5);
    CHECK(result.all_pass());
    for (const auto& record : result.records) {
        CHECK((record.inequality == "axioms" || record.inequality == "path-identity"));
    }
}

TEST_CASE("report serialization")
{
    const CampaignConfig cfg = resolve_config(tiny_thm21(), "verify");
    std::ostringstream diag;
    const CampaignResult result = run_verify_campaign(cfg, diag);

    SUBCASE("json schema")
    {
        std::ostringstream out;
        write_report_json(out, cfg, result);
        const json doc = json::parse(out.str());
        REQUIRE(doc.contains("meta"));
        CHECK(doc["meta"].contains("generated_at"));
        REQUIRE(doc.contains("records"));
        REQUIRE(doc["records"].size() == result.records.size());
        const json& rec = doc["records"][0];
        for (const char* key : {"inequality", "seed", "dim", "n", "r", "lambda", "min_eig",
                                "scale", "verdict", "inputs_digest"}) {
            CHECK(rec.contains(key));
        }
        CHECK(rec["verdict"] == "pass");
    }
    SUBCASE("csv header and rows")
    {
        std::ostringstream out;
        write_report_csv(out, result);
        std::istringstream lines(out.str());
        std::string header;
        std::getline(lines, header);
        CHECK(header == "inequality,seed,dim,n,r,lambda,min_eig,scale,verdict,inputs_digest");
        std::size_t rows = 0;
        for (std::string line; std::getline(lines, line);) ++rows;
        CHECK(rows == result.records.size());
    }
}

TEST_CASE("triangular demo exits cleanly")
{
    std::ostringstream out;
    CHECK(cmd_demo_example(out) == 0);
    const std::string text = out.str();
    CHECK(text.find("gap") != std::string::npos);
    CHECK(text.find("nonnegative") != std::string::npos);
}
