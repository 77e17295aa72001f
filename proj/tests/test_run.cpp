#include <doctest.h>

#include <set>
#include <sstream>

#include "symbreak/run.hpp"

using namespace symbreak;
using namespace symbreak::run;

namespace {

// Row labels of the result tables for the matrix benchmarks: 4 orderings
// by 5 linearizations.
std::vector<std::string> matrix_menu() {
    std::vector<std::string> labels;
    for (std::string kind : {"lex", "anti-lex", "gray", "anti-gray"})
        for (std::string scheme : {"row", "col", "snake", "col-snake", "spiral"})
            labels.push_back(kind + " " + scheme);
    return labels;
}

// Sequence benchmark menu: 4 orderings by 4 traversals.
std::vector<std::string> sequence_menu() {
    std::vector<std::string> labels;
    for (std::string kind : {"lex", "anti-lex", "gray", "anti-gray"}) {
        labels.push_back(kind);
        for (std::string scheme : {"rev", "outside-in", "inside-out"})
            labels.push_back(kind + " " + scheme);
    }
    return labels;
}

} // namespace

TEST_CASE("every table row label parses to a valid config") {
    auto still = models::build_still_life(2);
    for (const auto& label : matrix_menu()) {
        auto spec = parse_break(label);
        CHECK(spec.kind == BreakSpec::Kind::Leader);
        CHECK(spec.label(*still.model.shape) == label); // exact round trip
    }
    auto labs = models::build_labs(3);
    for (const auto& label : sequence_menu()) {
        auto spec = parse_break(label);
        CHECK(spec.kind == BreakSpec::Kind::Leader);
        CHECK(spec.label(*labs.model.shape) == label);
    }
    CHECK(parse_break("none").kind == BreakSpec::Kind::None);
    CHECK(parse_break("doublelex").kind == BreakSpec::Kind::DoubleLex);
    CHECK(parse_break("snakelex columnwise").variant == symmetry::SnakeLexVariant::Columnwise);
    CHECK(parse_break("snakelex rowwise").variant == symmetry::SnakeLexVariant::Rowwise);
    CHECK(parse_break("anti-gray-col-snake").scheme == symmetry::Scheme::ColSnake);
    CHECK(parse_break("strict-gray row").strict);
    CHECK_THROWS_AS(parse_break("super-lex row"), ConfigError);
    CHECK_THROWS_AS(parse_break("lex diagonal"), ConfigError);
}

TEST_CASE("cmd_solve still-life 3 with lex row finds 6") {
    RunConfig config;
    config.model = "still-life";
    config.n = 3;
    config.breaking = "lex-row";
    config.heuristic = "row";
    auto r = cmd_solve(config);
    CHECK(r.status == "optimal");
    CHECK(r.optimum == 6);
    CHECK(r.config.breaking == "lex row"); // canonical echo
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->size() == 9);
}

TEST_CASE("cmd_solve labs agrees with the oracle minimum") {
    RunConfig config;
    config.model = "labs";
    config.n = 5;
    config.breaking = "none";
    auto r = cmd_solve(config);
    CHECK(r.optimum == int(*oracle::brute_force_optimum(models::ModelKind::Labs, 5)));
}

TEST_CASE("cmd_solve queens optimum is invariant under the breaking config") {
    RunConfig config;
    config.model = "queens-armies";
    config.n = 3;
    config.breaking = "none";
    auto base = cmd_solve(config);
    config.breaking = "anti-gray-col";
    auto broken = cmd_solve(config);
    CHECK(base.optimum == broken.optimum);
    CHECK(base.optimum == 1);
}

TEST_CASE("cmd_solve rejects bad configs") {
    RunConfig config;
    config.model = "nonesuch";
    CHECK_THROWS_AS(cmd_solve(config), ConfigError);
    config.model = "free-matrix";
    CHECK_THROWS_AS(cmd_solve(config), ConfigError);
    config.model = "labs";
    config.n = 4;
    config.breaking = "lex row"; // matrix scheme on a sequence model
    CHECK_THROWS_AS(cmd_solve(config), ConfigError);
    config.breaking = "none";
    config.heuristic = "spiral-in";
    CHECK_THROWS_AS(cmd_solve(config), ConfigError);
}

TEST_CASE("result json carries the run schema") {
    RunConfig config;
    config.model = "labs";
    config.n = 4;
    config.breaking = "gray";
    auto r = cmd_solve(config);
    std::string j = result_to_json(r);
    for (const char* key : {"\"config\"", "\"model\"", "\"break\"", "\"heur\"", "\"status\"",
                            "\"optimum\"", "\"stats\"", "\"backtracks\"", "\"nodes\"",
                            "\"time_ms\"", "\"witness\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("sweep parsing and execution") {
    SUBCASE("empty sweep gives an empty table with a header") {
        auto configs = parse_sweep("# nothing here\n\n");
        CHECK(configs.empty());
        auto csv = results_to_csv(run_sweep(configs), TimeColumn::Zero);
        CHECK(csv == "config,n,backtracks,nodes,optimum,time-ms,status\n");
    }
    SUBCASE("rows run in order and keep their optima") {
        std::string sweep =
            "labs,4,none,left2right\n"
            "labs,4,gray,left2right\n"
            "labs,4,anti-gray rev,left2right\n";
        auto results = run_sweep(parse_sweep(sweep));
        REQUIRE(results.size() == 3);
        for (const auto& r : results) {
            CHECK(r.status == "optimal");
            CHECK(r.optimum == results.front().optimum);
        }
    }
    SUBCASE("a tiny node budget reports budget-exceeded rows") {
        auto results = run_sweep(parse_sweep("still-life,4,none,row\n", /*node_budget=*/10));
        REQUIRE(results.size() == 1);
        CHECK(results[0].status == "budget-exceeded");
        CHECK(!results[0].optimum.has_value());
        auto csv = results_to_csv(results, TimeColumn::Zero);
        CHECK(csv.find("budget-exceeded") != std::string::npos);
        CHECK(csv.find(",,0,budget-exceeded") != std::string::npos); // empty optimum column
    }
    SUBCASE("per-row failures do not stop the sweep") {
        auto results = run_sweep(parse_sweep("labs,4,lex row,left2right\nlabs,4,lex,left2right\n"));
        REQUIRE(results.size() == 2);
        CHECK(results[0].status.rfind("error:", 0) == 0);
        CHECK(results[1].status == "optimal");
    }
    SUBCASE("malformed sweep lines raise a config error") {
        CHECK_THROWS_AS(parse_sweep("labs,4\n"), ConfigError);
        CHECK_THROWS_AS(parse_sweep("labs,four,none,left2right\n"), ConfigError);
    }
    SUBCASE("carriage returns in sweep files are harmless") {
        auto configs = parse_sweep("labs,4,gray,left2right\r\n");
        REQUIRE(configs.size() == 1);
        CHECK(configs[0].heuristic == "left2right");
        CHECK(run_sweep(configs)[0].status == "optimal");
    }
    SUBCASE("zero-time CSVs from identical sweeps are byte-identical") {
        std::string sweep = "labs,5,gray,left2right\nstill-life,3,anti-gray snake,row\n";
        auto csv1 = results_to_csv(run_sweep(parse_sweep(sweep)), TimeColumn::Zero);
        auto csv2 = results_to_csv(run_sweep(parse_sweep(sweep)), TimeColumn::Zero);
        CHECK(csv1 == csv2);
    }
}

TEST_CASE("every heuristic name drives a solve to the same optimum") {
    for (std::string heur : {"row", "col", "snake", "col-snake", "spiral-in", "spiral-out",
                             "degree", "constr", "ff", "ff-spiral"}) {
        RunConfig config;
        config.model = "still-life";
        config.n = 3;
        config.heuristic = heur;
        auto r = cmd_solve(config);
        CHECK(r.status == "optimal");
        CHECK(r.optimum == 6);
    }
    auto labs_base = [&](const std::string& heur) {
        RunConfig config;
        config.model = "labs";
        config.n = 7;
        config.heuristic = heur;
        return cmd_solve(config);
    };
    auto expected = labs_base("left2right").optimum;
    for (std::string heur : {"right2left", "outside-in", "inside-out", "degree", "constr", "ff"})
        CHECK(labs_base(heur).optimum == expected);
    // Heuristic changes the traversal, not the answer, but it does change
    // the tree shape.
    CHECK(labs_base("left2right").stats.nodes != labs_base("inside-out").stats.nodes);
}

TEST_CASE("value order desc is accepted and preserves the optimum") {
    RunConfig config;
    config.model = "queens-armies";
    config.n = 3;
    config.value_order = "desc";
    auto desc = cmd_solve(config);
    config.value_order = "asc";
    auto asc = cmd_solve(config);
    CHECK(desc.optimum == asc.optimum);
    CHECK_THROWS_AS([&] {
        config.value_order = "sideways";
        cmd_solve(config);
    }(), ConfigError);
}

TEST_CASE("cmd_verify outcomes") {
    SUBCASE("gray row leader on the 3x3 free matrix passes") {
        auto outcome = cmd_verify("free-matrix", 3, "gray row");
        CHECK(outcome.passed);
        CHECK(outcome.rendered.find("PASS") != std::string::npos);
        CHECK(outcome.report.orbit_count == 36);
    }
    SUBCASE("doublelex passes soundness and reports incompleteness") {
        auto outcome = cmd_verify("free-matrix", 3, "doublelex");
        CHECK(outcome.passed);
        CHECK(outcome.report.multi_survivor_orbits > 0);
    }
    SUBCASE("a strict leader fails with a counterexample") {
        auto outcome = cmd_verify("free-matrix", 3, "strict-lex row");
        CHECK(!outcome.passed);
        CHECK(!outcome.report.first_counterexample.empty());
        CHECK(outcome.rendered.find("FAIL") != std::string::npos);
    }
    SUBCASE("benchmark groups verify too") {
        auto outcome = cmd_verify("labs", 4, "anti-gray");
        CHECK(outcome.passed);
        CHECK(outcome.report.leader_config);
    }
    SUBCASE("doublelex on a non-matrix-symmetric model is rejected") {
        CHECK_THROWS_AS(cmd_verify("still-life", 3, "doublelex"), ConfigError);
    }
}
