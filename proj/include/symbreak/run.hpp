#ifndef SYMBREAK_RUN_HPP
#define SYMBREAK_RUN_HPP

#include <optional>
#include <string>
#include <vector>

#include "symbreak/models.hpp"
#include "symbreak/oracle.hpp"

namespace symbreak::run {

/// A symmetry-breaking method, parsed from its table-style label
/// ("anti-gray col-snake", "lex rev", "doublelex", "snakelex rowwise",
/// "none"). A "strict-" kind prefix selects the deliberately unsound
/// strict leader variant used to exercise the verifier.
struct BreakSpec {
    enum class Kind { None, Leader, DoubleLex, SnakeLex };
    Kind kind = Kind::None;
    ordering::OrderingKind order = ordering::OrderingKind::Lex;
    std::optional<symmetry::Scheme> scheme; ///< defaulted per model shape
    bool strict = false;
    symmetry::SnakeLexVariant variant = symmetry::SnakeLexVariant::Columnwise;

    std::string label(const engine::Shape& shape) const;
};

/// Accepts both space- and hyphen-joined labels ("anti-gray col", "anti-gray-col").
BreakSpec parse_break(const std::string& text);

/// Resolved scheme for a shape (row for matrices, left2right for sequences).
symmetry::Scheme default_scheme(const engine::Shape& shape);

/// Posts the breaking constraints onto the instance's model.
void apply_breaking(models::Instance& instance, const BreakSpec& spec);

/// Builds the verifier's view of a breaking config (constraint poster plus
/// leader metadata for canonical checks).
oracle::BreakingUnderTest breaking_under_test(const models::Instance& instance,
                                              const BreakSpec& spec);

models::ModelKind parse_model(const std::string& name);

/// Branching heuristic by name: row, col, snake, col-snake, spiral-in,
/// spiral-out, left2right, right2left, outside-in, inside-out, degree,
/// constr, ff (ties row/left2right), ff-spiral (ties spiral-in).
engine::HeuristicSpec parse_heuristic(const std::string& name, const models::Instance& instance);

std::string default_heuristic(const engine::Shape& shape);

struct RunConfig {
    std::string model = "still-life";
    int n = 3;
    std::string breaking = "none";
    std::string heuristic; ///< empty = model default
    std::string value_order = "asc";
    uint64_t node_budget = 0;    ///< 0 = unlimited
    int64_t time_budget_ms = -1; ///< <0 = unlimited

    std::string config_label() const;
};

struct RunResult {
    RunConfig config;
    std::string status; ///< optimal | budget-exceeded | infeasible | error: ...
    std::optional<int> optimum; ///< present iff status == optimal
    std::optional<int> incumbent;
    std::optional<std::vector<int>> witness; ///< decision variables only
    engine::SearchStats stats;
};

/// Runs one optimization configuration.
RunResult cmd_solve(const RunConfig& config);

std::string result_to_json(const RunResult& result);

/// Human-readable summary, with a board/sequence rendering of the witness.
std::string result_summary(const RunResult& result);

// --- Sweeps -------------------------------------------------------------------

/// Sweep rows are "model,n,break,heur[,value_order]" lines; '#' starts a
/// comment. Budgets apply to every row.
std::vector<RunConfig> parse_sweep(const std::string& text, uint64_t node_budget = 0,
                                   int64_t time_budget_ms = -1);

/// Runs rows in order; per-row failures become "error: ..." statuses and
/// the sweep continues.
std::vector<RunResult> run_sweep(const std::vector<RunConfig>& configs);

enum class TimeColumn { Wall, Zero };

/// CSV with columns config,n,backtracks,nodes,optimum,time-ms,status.
/// TimeColumn::Zero pins the time column for byte-identical regression files.
std::string results_to_csv(const std::vector<RunResult>& results, TimeColumn mode);

// --- Verification --------------------------------------------------------------

struct VerifyOutcome {
    oracle::OrbitReport report;
    bool passed = false;
    std::string rendered;
    std::string json;
};

/// Verifies a breaking config against the model's natural symmetry group:
/// soundness always, completeness and canonical survivors for leader
/// configs. GuardError and BudgetError propagate to the caller.
VerifyOutcome cmd_verify(const std::string& model, int n, const std::string& breaking);

} // namespace symbreak::run

#endif
