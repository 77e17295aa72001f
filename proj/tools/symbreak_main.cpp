#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symbreak/run.hpp"

namespace {

int write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
    }
    out << content;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-domain solver with symmetry breaking under "
                 "lexicographic and Gray-code orderings"};
    app.require_subcommand(1);

    std::string model = "still-life";
    int size = 3;
    std::string breaking = "none";
    std::string heuristic;
    std::string value_order = "asc";
    uint64_t node_budget = 0;
    int64_t time_budget = -1;
    std::string json_path, csv_path;

    auto* solve = app.add_subcommand("solve", "solve one configuration to proven optimality");
    solve->add_option("--model", model, "still-life | labs | queens-armies");
    solve->add_option("--size", size, "instance size n");
    solve->add_option("--break", breaking,
                      "symmetry breaking, e.g. \"none\", \"lex row\", \"anti-gray col-snake\"");
    solve->add_option("--heur", heuristic, "branching heuristic (default row / left2right)");
    solve->add_option("--value-order", value_order, "asc | desc");
    solve->add_option("--node-budget", node_budget, "abort after this many nodes (0 = off)");
    solve->add_option("--time-budget", time_budget, "abort after this many ms (<0 = off)");
    solve->add_option("--json", json_path, "write the result as JSON to this path");

    std::string sweep_path;
    std::string time_mode = "wall";
    auto* bench = app.add_subcommand("bench", "run a sweep file and emit a CSV results table");
    bench->add_option("sweep", sweep_path, "sweep file: model,n,break,heur[,value_order] per line")
        ->required();
    bench->add_option("--csv", csv_path, "write the CSV here (default stdout)");
    bench->add_option("--node-budget", node_budget, "node budget per row (0 = off)");
    bench->add_option("--time-budget", time_budget, "time budget per row in ms (<0 = off)");
    bench->add_option("--time-mode", time_mode, "wall | zero (zero pins the time column)");

    auto* verify = app.add_subcommand(
        "verify", "check soundness/completeness of a breaking config against orbit enumeration");
    verify->add_option("--model", model, "still-life | labs | queens-armies | free-matrix");
    verify->add_option("--size", size, "instance size n");
    verify->add_option("--break", breaking, "breaking config, incl. doublelex / snakelex");
    verify->add_option("--json", json_path, "write the orbit report as JSON to this path");

    int cnf_len = 3;
    std::string cnf_path;
    auto* graycnf = app.add_subcommand(
        "gray-cnf", "export the Gray ordering constraint decomposition as DIMACS CNF");
    graycnf->add_option("--len", cnf_len, "vector length n");
    graycnf->add_option("--out", cnf_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            symbreak::run::RunConfig config{model, size, breaking, heuristic,
                                            value_order, node_budget, time_budget};
            symbreak::run::RunResult result = symbreak::run::cmd_solve(config);
            std::cout << symbreak::run::result_summary(result);
            if (!json_path.empty() &&
                write_file(json_path, symbreak::run::result_to_json(result)) != 0)
                return 1;
            return 0;
        }
        if (bench->parsed()) {
            std::ifstream in(sweep_path);
            if (!in) {
                std::cerr << "cannot read sweep file " << sweep_path << "\n";
                return 1;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            auto configs = symbreak::run::parse_sweep(buffer.str(), node_budget, time_budget);
            auto results = symbreak::run::run_sweep(configs);
            auto mode = time_mode == "zero" ? symbreak::run::TimeColumn::Zero
                                            : symbreak::run::TimeColumn::Wall;
            std::string csv = symbreak::run::results_to_csv(results, mode);
            if (csv_path.empty())
                std::cout << csv;
            else if (write_file(csv_path, csv) != 0)
                return 1;
            return 0;
        }
        if (verify->parsed()) {
            symbreak::run::VerifyOutcome outcome = symbreak::run::cmd_verify(model, size, breaking);
            std::cout << outcome.rendered;
            if (!json_path.empty() && write_file(json_path, outcome.json) != 0) return 1;
            return outcome.passed ? 0 : 2;
        }
        if (graycnf->parsed()) {
            std::string text = symbreak::ordering::gray_decomposition_dimacs(cnf_len);
            if (cnf_path.empty())
                std::cout << text;
            else if (write_file(cnf_path, text) != 0)
                return 1;
            return 0;
        }
    } catch (const symbreak::GuardError& e) {
        std::cerr << "oracle guard: " << e.what() << "\n";
        return 3;
    } catch (const symbreak::BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const symbreak::ConfigError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
