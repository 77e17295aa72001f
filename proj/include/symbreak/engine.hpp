#ifndef SYMBREAK_ENGINE_HPP
#define SYMBREAK_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symbreak/common.hpp"
#include "symbreak/domain.hpp"

namespace symbreak::engine {

/// Dense variable identifier; contiguous from 0 within a model.
using VarId = int;

/// Search-time view of all variable domains, indexed by VarId.
using DomainState = std::vector<Domain>;

/// Complete assignment, one value per variable.
using Assignment = std::vector<int>;

/// A constraint's pruning procedure. Propagators are stateless with respect
/// to the search: each call recomputes its consistency level from the
/// current domains, so one instance is shared across the whole search.
class Propagator {
public:
    virtual ~Propagator() = default;

    virtual std::string name() const = 0;

    /// Variables the propagator may read or prune.
    virtual const std::vector<VarId>& scope() const = 0;

    /// Prunes domains; returns false iff some domain would become empty.
    virtual bool propagate(DomainState& state) const = 0;

    /// Ground semantics on a complete assignment.
    virtual bool check(std::span<const int> assignment) const = 0;
};

using PropagatorPtr = std::shared_ptr<const Propagator>;

enum class Sense { Maximize, Minimize };

struct Objective {
    VarId var;
    Sense sense;
};

/// Decision-variable geometry used by linearizations and heuristics.
struct Shape {
    enum class Kind { Matrix, Sequence };
    Kind kind = Kind::Sequence;
    int rows = 0; ///< matrix rows, or sequence length
    int cols = 0; ///< matrix cols; unused for sequences

    static Shape matrix(int rows, int cols) { return {Kind::Matrix, rows, cols}; }
    static Shape sequence(int len) { return {Kind::Sequence, len, 0}; }
    int count() const { return kind == Kind::Matrix ? rows * cols : rows; }
};

/// A constraint model: variables with initial domains, propagators, an
/// optional objective, and the decision variables search branches on.
/// Models are immutable during search; distinct searches share nothing
/// mutable.
struct Model {
    std::vector<Domain> init_domains;
    std::vector<PropagatorPtr> constraints;
    std::optional<Objective> objective;
    std::optional<Shape> shape;
    std::vector<VarId> decision_vars; ///< shape position -> variable

    int num_vars() const { return int(init_domains.size()); }

    VarId add_var(Domain dom) {
        init_domains.push_back(std::move(dom));
        return VarId(init_domains.size() - 1);
    }
};

/// Appends a constraint; throws InputError if it references unknown
/// variables. No propagation happens until a solve or an explicit fixpoint.
void post(Model& model, PropagatorPtr constraint);

/// Runs all propagators to their greatest common fixpoint with a FIFO
/// queue over constraints awakened by domain changes. Registration order
/// is part of the deterministic contract. Returns false on failure, in
/// which case `state` is not meaningful.
bool propagate_fixpoint(const std::vector<PropagatorPtr>& constraints, DomainState& state);

/// Variable selection strategies for branching.
struct HeuristicSpec {
    enum class Kind {
        Static, ///< first unfixed decision variable in `order`
        Degree, ///< most co-occurring distinct variables, ties by position
        Constr, ///< occurs in most constraints, ties by position
        FF,     ///< smallest domain, ties by `order`
    };
    Kind kind = Kind::Static;
    /// Decision-variable positions in branching order (Static and FF tie-break).
    std::vector<int> order;

    static HeuristicSpec static_order(std::vector<int> order) {
        return {Kind::Static, std::move(order)};
    }
    static HeuristicSpec degree() { return {Kind::Degree, {}}; }
    static HeuristicSpec constr() { return {Kind::Constr, {}}; }
    static HeuristicSpec ff(std::vector<int> tie) { return {Kind::FF, std::move(tie)}; }
};

enum class ValueOrder { Ascending, Descending };

struct SearchLimits {
    uint64_t node_budget = std::numeric_limits<uint64_t>::max();
    int64_t time_budget_ms = -1; ///< <0 means unlimited
};

/// Backtracks count decisions whose immediate propagation failed; nodes
/// count decisions tried. Both are deterministic for a fixed model,
/// heuristic, value order and constraint registration order.
struct SearchStats {
    uint64_t backtracks = 0;
    uint64_t nodes = 0;
    uint64_t solutions = 0;
    std::optional<int> optimum;
    int64_t time_ms = 0;
};

enum class SolveStatus { Optimal, BudgetExceeded, Infeasible };

struct OptimizeResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<int> optimum;       ///< present iff status == Optimal
    std::optional<int> incumbent;     ///< best value seen, even on budget exit
    std::optional<Assignment> witness;
    SearchStats stats;
};

/// Picks the next decision variable, or nullopt when all are fixed.
/// Degree and Constr scores are computed over the posted constraint set.
std::optional<VarId> select_variable(const Model& model, const HeuristicSpec& heuristic,
                                     const DomainState& state);

/// Branch-and-bound optimization. After each incumbent with value v the
/// objective is constrained to improve on v, and search continues until
/// the tree is exhausted (status Optimal) or a budget trips.
OptimizeResult solve_optimize(const Model& model, const HeuristicSpec& heuristic,
                              ValueOrder value_order, const SearchLimits& limits = {});

struct AllSolutions {
    std::vector<Assignment> solutions; ///< in deterministic search order
    SearchStats stats;
};

/// Exhaustive enumeration of all solutions; throws BudgetError when the
/// node budget is exceeded. Intended for oracle-scale instances. An empty
/// Static order means natural position order.
AllSolutions solve_all(const Model& model, const SearchLimits& limits = {},
                       const HeuristicSpec& heuristic = HeuristicSpec{});

// --- Generic constraint toolbox -------------------------------------------

/// sum(coeffs[i] * vars[i]) relop rhs, with bounds consistency.
enum class LinRel { Le, Ge, Eq };
PropagatorPtr make_linear(std::vector<VarId> vars, std::vector<int> coeffs, LinRel rel, int rhs);

/// Extensional constraint listing the allowed tuples; domain consistent.
PropagatorPtr make_table(std::vector<VarId> vars, std::vector<std::vector<int>> tuples);

/// Indicator channeling b = (x == value), with b a 0/1 variable.
PropagatorPtr make_indicator(VarId x, int value, VarId b, int x_cap);

} // namespace symbreak::engine

#endif
