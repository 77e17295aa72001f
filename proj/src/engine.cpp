#include "symbreak/engine.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>

namespace symbreak::engine {

void post(Model& model, PropagatorPtr constraint) {
    for (VarId v : constraint->scope()) {
        if (v < 0 || v >= model.num_vars())
            throw InputError("constraint '" + constraint->name() +
                             "' references undeclared variable " + std::to_string(v));
    }
    model.constraints.push_back(std::move(constraint));
}

namespace {

// var -> constraint indices watching it, in registration order.
std::vector<std::vector<int>> build_watchers(const std::vector<PropagatorPtr>& constraints,
                                             int num_vars) {
    std::vector<std::vector<int>> watchers(num_vars);
    for (int c = 0; c < int(constraints.size()); ++c)
        for (VarId v : constraints[c]->scope()) watchers[v].push_back(c);
    return watchers;
}

class FixpointRunner {
public:
    FixpointRunner(const std::vector<PropagatorPtr>& constraints, int num_vars)
        : constraints_(constraints),
          watchers_(build_watchers(constraints, num_vars)),
          queued_(constraints.size(), false),
          sizes_(num_vars, 0) {}

    bool run(DomainState& state) {
        std::deque<int> queue;
        for (int c = 0; c < int(constraints_.size()); ++c) {
            queue.push_back(c);
            queued_[c] = true;
        }
        return drain(state, queue);
    }

    // Fixpoint seeded with the constraints watching `changed_var`, plus an
    // optional always-run constraint (the branch-and-bound cut).
    bool run_after_change(DomainState& state, VarId changed_var, int forced_constraint = -1) {
        std::deque<int> queue;
        for (int c : watchers_[changed_var]) {
            queue.push_back(c);
            queued_[c] = true;
        }
        if (forced_constraint >= 0 && !queued_[forced_constraint]) {
            queue.push_back(forced_constraint);
            queued_[forced_constraint] = true;
        }
        return drain(state, queue);
    }

private:
    bool drain(DomainState& state, std::deque<int>& queue) {
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            queued_[c] = false;
            const Propagator& p = *constraints_[c];
            for (VarId v : p.scope()) sizes_[v] = state[v].size();
            if (!p.propagate(state)) {
                // Leave no constraint marked queued for the next run.
                for (int q : queue) queued_[q] = false;
                return false;
            }
            for (VarId v : p.scope()) {
                if (state[v].size() == sizes_[v]) continue;
                for (int w : watchers_[v]) {
                    if (!queued_[w]) {
                        queue.push_back(w);
                        queued_[w] = true;
                    }
                }
            }
        }
        return true;
    }

    const std::vector<PropagatorPtr>& constraints_;
    std::vector<std::vector<int>> watchers_;
    std::vector<char> queued_;
    std::vector<int> sizes_;
};

} // namespace

bool propagate_fixpoint(const std::vector<PropagatorPtr>& constraints, DomainState& state) {
    int num_vars = int(state.size());
    FixpointRunner runner(constraints, num_vars);
    return runner.run(state);
}

namespace {

std::vector<int> natural_order(int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

// Per-position static scores for the degree and constr heuristics,
// computed once per search over the posted constraint set.
std::vector<int> degree_scores(const Model& model) {
    int n = model.num_vars();
    std::vector<std::vector<char>> adj(n);
    for (auto& row : adj) row.assign(n, 0);
    for (const auto& c : model.constraints) {
        const auto& scope = c->scope();
        for (VarId a : scope)
            for (VarId b : scope)
                if (a != b) adj[a][b] = 1;
    }
    std::vector<int> score(n, 0);
    for (int v = 0; v < n; ++v)
        score[v] = int(std::count(adj[v].begin(), adj[v].end(), 1));
    return score;
}

std::vector<int> constr_scores(const Model& model) {
    std::vector<int> score(model.num_vars(), 0);
    for (const auto& c : model.constraints)
        for (VarId v : c->scope()) ++score[v];
    return score;
}

class VariableSelector {
public:
    VariableSelector(const Model& model, const HeuristicSpec& spec) : model_(model), spec_(spec) {
        int positions = int(model.decision_vars.size());
        order_ = spec.order.empty() ? natural_order(positions) : spec.order;
        if (int(order_.size()) != positions)
            throw InputError("heuristic order does not cover all decision variables");
        if (spec.kind == HeuristicSpec::Kind::Degree) scores_ = degree_scores(model);
        if (spec.kind == HeuristicSpec::Kind::Constr) scores_ = constr_scores(model);
    }

    std::optional<VarId> select(const DomainState& state) const {
        switch (spec_.kind) {
        case HeuristicSpec::Kind::Static: {
            for (int pos : order_) {
                VarId v = model_.decision_vars[pos];
                if (!state[v].is_fixed()) return v;
            }
            break;
        }
        case HeuristicSpec::Kind::Degree:
        case HeuristicSpec::Kind::Constr: {
            std::optional<VarId> best;
            int best_score = -1;
            for (VarId v : model_.decision_vars) {
                if (state[v].is_fixed()) continue;
                if (scores_[v] > best_score) {
                    best = v;
                    best_score = scores_[v];
                }
            }
            if (best) return best;
            break;
        }
        case HeuristicSpec::Kind::FF: {
            std::optional<VarId> best;
            int best_size = std::numeric_limits<int>::max();
            for (int pos : order_) {
                VarId v = model_.decision_vars[pos];
                if (state[v].is_fixed()) continue;
                if (state[v].size() < best_size) {
                    best = v;
                    best_size = state[v].size();
                }
            }
            if (best) return best;
            break;
        }
        }
        // All decision variables fixed; fall back to any remaining variable
        // (auxiliaries are normally fixed by propagation).
        for (VarId v = 0; v < model_.num_vars(); ++v)
            if (!state[v].is_fixed()) return v;
        return std::nullopt;
    }

private:
    const Model& model_;
    HeuristicSpec spec_;
    std::vector<int> order_;
    std::vector<int> scores_;
};

// Branch-and-bound cut: objective must improve on the best incumbent.
// The bound cell is owned by the search and tightens monotonically, so the
// cut stays valid across backtracking.
class ObjectiveCut final : public Propagator {
public:
    ObjectiveCut(VarId var, Sense sense, const std::optional<int>* bound)
        : scope_{var}, sense_(sense), bound_(bound) {}

    std::string name() const override { return "objective_cut"; }
    const std::vector<VarId>& scope() const override { return scope_; }

    bool propagate(DomainState& state) const override {
        if (!bound_->has_value()) return true;
        Domain& d = state[scope_[0]];
        if (sense_ == Sense::Maximize)
            d.remove_below(**bound_ + 1);
        else
            d.remove_above(**bound_ - 1);
        return !d.empty();
    }

    bool check(std::span<const int> a) const override {
        if (!bound_->has_value()) return true;
        int v = a[scope_[0]];
        return sense_ == Sense::Maximize ? v > **bound_ : v < **bound_;
    }

private:
    std::vector<VarId> scope_;
    Sense sense_;
    const std::optional<int>* bound_;
};

class Search {
public:
    Search(const Model& model, const HeuristicSpec& heuristic, ValueOrder value_order,
           const SearchLimits& limits, bool branch_and_bound)
        : model_(model), selector_(model, heuristic), value_order_(value_order), limits_(limits) {
        constraints_ = model.constraints;
        if (branch_and_bound && model.objective) {
            constraints_.push_back(std::make_shared<ObjectiveCut>(
                model.objective->var, model.objective->sense, &incumbent_value_));
            cut_index_ = int(constraints_.size()) - 1;
        }
        runner_ = std::make_unique<FixpointRunner>(constraints_, model.num_vars());
        frames_.resize(model.num_vars() + 2);
    }

    // Returns false when the root is already inconsistent.
    bool run(const std::function<bool(const DomainState&)>& on_solution) {
        on_solution_ = on_solution;
        start_ = std::chrono::steady_clock::now();
        frames_[0] = model_.init_domains;
        bool root_ok = runner_->run(frames_[0]);
        if (root_ok) dfs(0);
        stats_.time_ms = elapsed_ms();
        return root_ok;
    }

    SearchStats& stats() { return stats_; }
    bool budget_hit() const { return budget_hit_; }
    std::optional<int>& incumbent_value() { return incumbent_value_; }

private:
    int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

    bool over_budget() {
        if (stats_.nodes >= limits_.node_budget) return true;
        if (limits_.time_budget_ms >= 0 && (stats_.nodes & 0xff) == 0 &&
            elapsed_ms() > limits_.time_budget_ms)
            return true;
        return false;
    }

    // Depth-first labeling with chronological backtracking. Returns false
    // to abort the whole search (budget, or the solution callback said stop).
    bool dfs(int depth) {
        DomainState& state = frames_[depth];
        std::optional<VarId> var = selector_.select(state);
        if (!var) {
            ++stats_.solutions;
            return on_solution_(state);
        }
        std::vector<int> values = state[*var].values();
        if (value_order_ == ValueOrder::Descending) std::reverse(values.begin(), values.end());
        for (int v : values) {
            if (over_budget()) {
                budget_hit_ = true;
                return false;
            }
            ++stats_.nodes;
            frames_[depth + 1] = state;
            frames_[depth + 1][*var].assign(v);
            int forced = incumbent_value_.has_value() ? cut_index_ : -1;
            if (!runner_->run_after_change(frames_[depth + 1], *var, forced)) {
                ++stats_.backtracks; // decision retracted right after failure
                continue;
            }
            if (!dfs(depth + 1)) return false;
        }
        return true;
    }

    const Model& model_;
    std::vector<PropagatorPtr> constraints_;
    VariableSelector selector_;
    ValueOrder value_order_;
    SearchLimits limits_;
    SearchStats stats_;
    std::vector<DomainState> frames_;
    std::unique_ptr<FixpointRunner> runner_;
    std::function<bool(const DomainState&)> on_solution_;
    std::optional<int> incumbent_value_;
    int cut_index_ = -1;
    bool budget_hit_ = false;
    std::chrono::steady_clock::time_point start_;
};

Assignment extract_assignment(const DomainState& state) {
    Assignment a(state.size());
    for (size_t i = 0; i < state.size(); ++i) a[int(i)] = state[i].value();
    return a;
}

} // namespace

std::optional<VarId> select_variable(const Model& model, const HeuristicSpec& heuristic,
                                     const DomainState& state) {
    return VariableSelector(model, heuristic).select(state);
}

OptimizeResult solve_optimize(const Model& model, const HeuristicSpec& heuristic,
                              ValueOrder value_order, const SearchLimits& limits) {
    if (!model.objective) throw InputError("solve_optimize requires a model with an objective");
    OptimizeResult result;
    Search search(model, heuristic, value_order, limits, /*branch_and_bound=*/true);
    VarId obj = model.objective->var;
    search.run([&](const DomainState& state) {
        int value = state[obj].value();
        result.incumbent = value;
        result.witness = extract_assignment(state);
        search.incumbent_value() = value; // activates the improving cut
        return true;
    });
    result.stats = search.stats();
    if (search.budget_hit()) {
        result.status = SolveStatus::BudgetExceeded;
    } else if (result.incumbent) {
        result.status = SolveStatus::Optimal;
        result.optimum = result.incumbent;
        result.stats.optimum = result.incumbent;
    } else {
        result.status = SolveStatus::Infeasible;
    }
    return result;
}

AllSolutions solve_all(const Model& model, const SearchLimits& limits,
                       const HeuristicSpec& heuristic) {
    // Any objective is ignored: every solution is enumerated exactly once.
    AllSolutions out;
    Search search(model, heuristic, ValueOrder::Ascending, limits, /*branch_and_bound=*/false);
    search.run([&](const DomainState& state) {
        out.solutions.push_back(extract_assignment(state));
        return true;
    });
    out.stats = search.stats();
    if (search.budget_hit())
        throw BudgetError("solve_all exceeded its node budget (" +
                          std::to_string(limits.node_budget) + " nodes)");
    return out;
}

} // namespace symbreak::engine
