#include <algorithm>
#include <numeric>

#include "symbreak/engine.hpp"

namespace symbreak::engine {

namespace {

// sum(coeffs[i] * vars[i]) relop rhs with bounds consistency. Eq is treated
// as the conjunction of Le and Ge.
class Linear final : public Propagator {
public:
    Linear(std::vector<VarId> vars, std::vector<int> coeffs, LinRel rel, int rhs)
        : vars_(std::move(vars)), coeffs_(std::move(coeffs)), rel_(rel), rhs_(rhs) {
        if (vars_.size() != coeffs_.size())
            throw InputError("linear constraint: vars/coeffs length mismatch");
    }

    std::string name() const override { return "linear"; }
    const std::vector<VarId>& scope() const override { return vars_; }

    bool propagate(DomainState& state) const override {
        if (rel_ == LinRel::Le || rel_ == LinRel::Eq)
            if (!prune_upper(state)) return false;
        if (rel_ == LinRel::Ge || rel_ == LinRel::Eq)
            if (!prune_lower(state)) return false;
        return true;
    }

    bool check(std::span<const int> a) const override {
        long long sum = 0;
        for (size_t i = 0; i < vars_.size(); ++i) sum += (long long)coeffs_[i] * a[vars_[i]];
        switch (rel_) {
        case LinRel::Le: return sum <= rhs_;
        case LinRel::Ge: return sum >= rhs_;
        case LinRel::Eq: return sum == rhs_;
        }
        return false;
    }

private:
    // Term bounds under the current domains.
    long long term_min(const DomainState& s, size_t i) const {
        const Domain& d = s[vars_[i]];
        return (long long)coeffs_[i] * (coeffs_[i] >= 0 ? d.min() : d.max());
    }
    long long term_max(const DomainState& s, size_t i) const {
        const Domain& d = s[vars_[i]];
        return (long long)coeffs_[i] * (coeffs_[i] >= 0 ? d.max() : d.min());
    }

    // Enforce sum <= rhs: each term may use at most rhs - min(other terms).
    bool prune_upper(DomainState& state) const {
        long long min_sum = 0;
        for (size_t i = 0; i < vars_.size(); ++i) min_sum += term_min(state, i);
        if (min_sum > rhs_) return false;
        for (size_t i = 0; i < vars_.size(); ++i) {
            long long slack = rhs_ - (min_sum - term_min(state, i));
            Domain& d = state[vars_[i]];
            if (coeffs_[i] > 0) {
                long long ub = slack >= 0 ? slack / coeffs_[i]
                                          : -((-slack + coeffs_[i] - 1) / coeffs_[i]);
                d.remove_above(int(std::min<long long>(ub, d.cap())));
            } else if (coeffs_[i] < 0) {
                // coeff*x <= slack with coeff < 0  =>  x >= ceil(slack/coeff)
                long long c = -(long long)coeffs_[i];
                long long lb = slack >= 0 ? -(slack / c) : (-slack + c - 1) / c;
                d.remove_below(int(std::max<long long>(lb, 0)));
            }
            if (d.empty()) return false;
        }
        return true;
    }

    bool prune_lower(DomainState& state) const {
        long long max_sum = 0;
        for (size_t i = 0; i < vars_.size(); ++i) max_sum += term_max(state, i);
        if (max_sum < rhs_) return false;
        for (size_t i = 0; i < vars_.size(); ++i) {
            long long need = rhs_ - (max_sum - term_max(state, i));
            Domain& d = state[vars_[i]];
            if (coeffs_[i] > 0) {
                // coeff*x >= need  =>  x >= ceil(need/coeff)
                long long lb = need >= 0 ? (need + coeffs_[i] - 1) / coeffs_[i]
                                         : -((-need) / coeffs_[i]);
                d.remove_below(int(std::max<long long>(lb, 0)));
            } else if (coeffs_[i] < 0) {
                // coeff*x >= need with coeff < 0  =>  x <= floor(need/coeff)
                long long c = -(long long)coeffs_[i];
                long long ub = need >= 0 ? -((need + c - 1) / c) : (-need) / c;
                d.remove_above(int(std::min<long long>(ub, d.cap())));
            }
            if (d.empty()) return false;
        }
        return true;
    }

    std::vector<VarId> vars_;
    std::vector<int> coeffs_;
    LinRel rel_;
    int rhs_;
};

// Extensional constraint with straightforward generalized arc consistency:
// one pass marks every (var, value) pair that appears in a currently valid
// tuple, then everything unmarked is pruned.
class Table final : public Propagator {
public:
    Table(std::vector<VarId> vars, std::vector<std::vector<int>> tuples)
        : vars_(std::move(vars)), tuples_(std::move(tuples)) {
        for (const auto& t : tuples_)
            if (t.size() != vars_.size())
                throw InputError("table constraint: tuple arity mismatch");
    }

    std::string name() const override { return "table"; }
    const std::vector<VarId>& scope() const override { return vars_; }

    bool propagate(DomainState& state) const override {
        size_t arity = vars_.size();
        if (supported_.empty()) {
            offsets_.resize(arity + 1, 0);
            for (size_t i = 0; i < arity; ++i)
                offsets_[i + 1] = offsets_[i] + state[vars_[i]].cap();
            supported_.resize(offsets_[arity]);
        }
        std::fill(supported_.begin(), supported_.end(), 0);
        bool any_valid = false;
        for (const auto& t : tuples_) {
            bool valid = true;
            for (size_t i = 0; i < arity; ++i) {
                if (!state[vars_[i]].contains(t[i])) {
                    valid = false;
                    break;
                }
            }
            if (!valid) continue;
            any_valid = true;
            for (size_t i = 0; i < arity; ++i) supported_[offsets_[i] + t[i]] = 1;
        }
        if (!any_valid) return false;
        for (size_t i = 0; i < arity; ++i) {
            Domain& d = state[vars_[i]];
            std::vector<int> vals = d.values();
            for (int v : vals)
                if (!supported_[offsets_[i] + v]) d.remove(v);
            if (d.empty()) return false;
        }
        return true;
    }

    bool check(std::span<const int> a) const override {
        for (const auto& t : tuples_) {
            bool match = true;
            for (size_t i = 0; i < vars_.size(); ++i)
                if (a[vars_[i]] != t[i]) {
                    match = false;
                    break;
                }
            if (match) return true;
        }
        return false;
    }

private:
    std::vector<VarId> vars_;
    std::vector<std::vector<int>> tuples_;
    mutable std::vector<size_t> offsets_;  // scratch layout, sized on first call
    mutable std::vector<char> supported_;  // scratch marks per (position, value)
};

} // namespace

PropagatorPtr make_linear(std::vector<VarId> vars, std::vector<int> coeffs, LinRel rel, int rhs) {
    return std::make_shared<Linear>(std::move(vars), std::move(coeffs), rel, rhs);
}

PropagatorPtr make_table(std::vector<VarId> vars, std::vector<std::vector<int>> tuples) {
    return std::make_shared<Table>(std::move(vars), std::move(tuples));
}

PropagatorPtr make_indicator(VarId x, int value, VarId b, int x_cap) {
    std::vector<std::vector<int>> tuples;
    for (int v = 0; v < x_cap; ++v) tuples.push_back({v, v == value ? 1 : 0});
    return make_table({x, b}, std::move(tuples));
}

} // namespace symbreak::engine
