// Acceptance suite: runs every acceptance criterion at its stated limit and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "symbreak/oracle.hpp"
#include "symbreak/run.hpp"

using namespace symbreak;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const std::string& name, bool ok, double elapsed, double limit,
            const std::string& detail = "") {
    bool in_time = elapsed <= limit;
    bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %-28s %7.2fs (limit %.0fs)%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                elapsed, limit, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
}

// --- criterion 1: gray ordering exactness -------------------------------------

const std::vector<std::string> kGray4 = {
    "0000", "0001", "0011", "0010", "0110", "0111", "0101", "0100",
    "1100", "1101", "1111", "1110", "1010", "1011", "1001", "1000",
};

void gray_ordering_exactness() {
    auto start = Clock::now();
    bool ok = true;
    for (size_t i = 0; i < kGray4.size(); ++i) {
        std::vector<int> digits;
        for (char c : kGray4[i]) digits.push_back(c - '0');
        ordering::Word w(digits, 2);
        ok &= ordering::gray_rank(w) == i;
        ok &= ordering::gray_unrank(i, 4, 2) == w;
    }
    for (int n = 1; n <= 10 && ok; ++n) {
        for (uint64_t p = 0; p < (uint64_t(1) << n); ++p)
            ok &= ordering::gray_rank(ordering::gray_unrank(p, n, 2)) == p;
    }
    for (int n = 1; n <= 6 && ok; ++n) {
        uint64_t total = 1;
        for (int i = 0; i < n; ++i) total *= 3;
        for (uint64_t p = 0; p < total; ++p)
            ok &= ordering::gray_rank(ordering::gray_unrank(p, n, 3)) == p;
    }
    report("gray-ordering-exactness", ok, seconds_since(start), 1.0);
}

// --- criterion 2: propagators equal the dc closure ----------------------------

bool dc_sweep(int n, bool gray) {
    auto prop = [&] {
        std::vector<ordering::VarView> x, y;
        for (int i = 0; i < n; ++i) x.push_back(ordering::VarView::plain(i));
        for (int i = 0; i < n; ++i) y.push_back(ordering::VarView::plain(n + i));
        return gray ? ordering::gray_leq_propagator(x, y, 2)
                    : ordering::lex_leq_propagator(x, y, 2);
    }();
    auto ground = [&](const std::vector<int>& a) {
        std::vector<int> xs(a.begin(), a.begin() + n), ys(a.begin() + n, a.end());
        int c = gray ? (oracle::gray_rank_recursive(xs, 2) <= oracle::gray_rank_recursive(ys, 2)
                            ? -1
                            : 1)
                     : (xs <= ys ? -1 : 1);
        return c < 0;
    };

    int vars = 2 * n;
    std::vector<int> pattern(vars, 0); // 0:{0} 1:{1} 2:{0,1}
    while (true) {
        engine::DomainState domains(vars, Domain(2));
        for (int i = 0; i < vars; ++i)
            if (pattern[i] < 2) domains[i].assign(pattern[i]);
        auto expected = oracle::dc_closure(ground, domains);
        engine::DomainState actual = domains;
        bool consistent = prop->propagate(actual);
        if (expected.failure != !consistent) return false;
        if (!expected.failure && !(actual == expected.domains)) return false;
        int pos = 0;
        while (pos < vars && ++pattern[pos] == 3) pattern[pos++] = 0;
        if (pos == vars) break;
    }
    return true;
}

void gray_propagator_dc() {
    auto start = Clock::now();
    bool ok = true;
    for (int n = 1; n <= 4 && ok; ++n) ok &= dc_sweep(n, /*gray=*/true);
    for (int n = 1; n <= 4 && ok; ++n) ok &= dc_sweep(n, /*gray=*/false);
    report("gray-propagator-dc", ok, seconds_since(start), 30.0);
}

// --- criterion 3: leader soundness and completeness ---------------------------

void leader_sound_complete() {
    bool all_ok = true;
    double worst = 0;
    std::string detail;
    auto inst = models::build_free_matrix(3, 3);
    auto group = symmetry::rowcol_symmetries(3, 3);
    for (std::string kind : {"lex", "anti-lex", "gray", "anti-gray"}) {
        for (std::string scheme : {"row", "col"}) {
            auto start = Clock::now();
            auto spec = run::parse_break(kind + " " + scheme);
            auto rep = oracle::verify_sound_complete(inst, group,
                                                     run::breaking_under_test(inst, spec));
            bool ok = rep.orbit_count == 36 && rep.sound() && rep.complete() &&
                      rep.survivor_histogram.count(1) &&
                      rep.survivor_histogram.at(1) == rep.orbit_count;
            double t = seconds_since(start);
            worst = std::max(worst, t);
            if (!ok) {
                all_ok = false;
                detail = kind + " " + scheme + ": " + rep.first_counterexample;
            }
        }
    }
    report("leader-sound-complete", all_ok && worst <= 10.0, worst, 10.0, detail);
}

// --- criterion 4: doublelex / snakelex partiality ------------------------------

void decomposition_partiality() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;
    auto inst = models::build_free_matrix(3, 3);
    auto group = symmetry::rowcol_symmetries(3, 3);
    for (std::string label : {"doublelex", "snakelex columnwise", "snakelex rowwise"}) {
        auto rep = oracle::verify_sound_complete(
            inst, group, run::breaking_under_test(inst, run::parse_break(label)));
        bool sound = rep.sound();
        bool incomplete = rep.multi_survivor_orbits >= 1;
        if (!sound || !incomplete) {
            ok = false;
            detail = label + (sound ? " unexpectedly complete" : " unsound");
        }
    }
    report("decomposition-partiality", ok, seconds_since(start), 10.0, detail);
}

// --- criterion 5: benchmark optima against brute force -------------------------

std::optional<int> solve_optimum(const std::string& model, int n, const std::string& breaking,
                                 uint64_t node_budget = 0) {
    run::RunConfig config;
    config.model = model;
    config.n = n;
    config.breaking = breaking;
    config.node_budget = node_budget;
    auto r = run::cmd_solve(config);
    return r.optimum;
}

void benchmark_optima() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;
    auto expect = [&](const std::string& model, models::ModelKind kind, int n) {
        auto engine_opt = solve_optimum(model, n, "none");
        auto oracle_opt = oracle::brute_force_optimum(kind, n);
        bool match = engine_opt && oracle_opt && *engine_opt == int(*oracle_opt);
        if (!match) {
            ok = false;
            detail += model + " n=" + std::to_string(n) + " mismatch; ";
        }
    };
    if (solve_optimum("still-life", 3, "none") != 6) {
        ok = false;
        detail += "still-life n=3 != 6; ";
    }
    expect("still-life", models::ModelKind::StillLife, 4);
    for (int n = 3; n <= 10; ++n) expect("labs", models::ModelKind::Labs, n);
    for (int n = 3; n <= 4; ++n) expect("queens-armies", models::ModelKind::QueensArmies, n);
    report("benchmark-optima", ok, seconds_since(start), 300.0, detail);
}

// --- criterion 6: optimum invariance across the breaking menus ------------------

std::vector<std::string> matrix_menu() {
    std::vector<std::string> labels;
    for (std::string kind : {"lex", "anti-lex", "gray", "anti-gray"})
        for (std::string scheme : {"row", "col", "snake", "col-snake", "spiral"})
            labels.push_back(kind + " " + scheme);
    return labels;
}

std::vector<std::string> sequence_menu() {
    std::vector<std::string> labels;
    for (std::string kind : {"lex", "anti-lex", "gray", "anti-gray"}) {
        labels.push_back(kind);
        for (std::string scheme : {"rev", "outside-in", "inside-out"})
            labels.push_back(kind + " " + scheme);
    }
    return labels;
}

void optimum_invariance() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;
    auto check_model = [&](const std::string& model, const std::vector<int>& sizes,
                           const std::vector<std::string>& menu) {
        for (int n : sizes) {
            auto base = solve_optimum(model, n, "none");
            if (!base) {
                ok = false;
                detail += model + " n=" + std::to_string(n) + " base failed; ";
                continue;
            }
            for (const auto& label : menu) {
                auto got = solve_optimum(model, n, label);
                if (got != base) {
                    ok = false;
                    detail += model + " n=" + std::to_string(n) + " '" + label + "'; ";
                }
            }
        }
    };
    check_model("still-life", {3, 4, 5}, matrix_menu());
    check_model("labs", {8, 10, 12}, sequence_menu());
    check_model("queens-armies", {3, 4, 5}, matrix_menu());
    report("optimum-invariance", ok, seconds_since(start), 900.0, detail);
}

// --- criterion 7: qualitative benefit ------------------------------------------

void qualitative_benefit() {
    auto start = Clock::now();
    run::RunConfig config;
    config.model = "still-life";
    config.n = 5;
    config.heuristic = "row";
    config.breaking = "none";
    uint64_t base_nodes = run::cmd_solve(config).stats.nodes;
    uint64_t best_nodes = base_nodes;
    std::string best;
    for (const auto& label : matrix_menu()) {
        config.breaking = label;
        uint64_t nodes = run::cmd_solve(config).stats.nodes;
        if (nodes < best_nodes) {
            best_nodes = nodes;
            best = label;
        }
    }
    bool ok = best_nodes < base_nodes;
    std::ostringstream detail;
    detail << "none=" << base_nodes << " nodes, best='" << best << "'=" << best_nodes;
    report("qualitative-benefit", ok, seconds_since(start), 900.0, detail.str());
}

// --- criterion 8: determinism regression ----------------------------------------

void determinism_regression() {
    auto start = Clock::now();
    std::ostringstream sweep;
    sweep << "still-life,4,none,row\n";
    for (const auto& label : matrix_menu()) sweep << "still-life,4," << label << ",row\n";
    auto configs = run::parse_sweep(sweep.str());
    std::string csv1 = run::results_to_csv(run::run_sweep(configs), run::TimeColumn::Zero);
    std::string csv2 = run::results_to_csv(run::run_sweep(configs), run::TimeColumn::Zero);
    bool ok = csv1 == csv2 && !csv1.empty();

    // All 21 rows must agree on the optimum column.
    auto results = run::run_sweep(configs);
    std::set<int> optima;
    for (const auto& r : results)
        if (r.optimum) optima.insert(*r.optimum);
    ok = ok && results.size() == 21 && optima.size() == 1;
    report("determinism-regression", ok, seconds_since(start), 300.0);
}

} // namespace

int main() {
    std::printf("acceptance criteria\n-------------------\n");
    gray_ordering_exactness();
    gray_propagator_dc();
    leader_sound_complete();
    decomposition_partiality();
    benchmark_optima();
    optimum_invariance();
    qualitative_benefit();
    determinism_regression();
    std::printf("-------------------\n%s (%d failed)\n", failures == 0 ? "ALL PASS" : "FAILURES",
                failures);
    return failures;
}
