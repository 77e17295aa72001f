#include "symbreak/ordering.hpp"

#include <algorithm>
#include <sstream>

namespace symbreak::ordering {

const char* kind_label(OrderingKind kind) {
    switch (kind) {
    case OrderingKind::Lex: return "lex";
    case OrderingKind::AntiLex: return "anti-lex";
    case OrderingKind::Gray: return "gray";
    case OrderingKind::AntiGray: return "anti-gray";
    }
    return "?";
}

Word::Word(std::vector<int> d, int r) : digits(std::move(d)), radix(r) {
    if (radix < 2) throw InputError("word radix must be at least 2");
    if (digits.empty()) throw InputError("word length must be at least 1");
    for (int v : digits)
        if (v < 0 || v >= radix)
            throw InputError("digit " + std::to_string(v) + " out of radix " +
                             std::to_string(radix));
}

namespace {

uint64_t checked_pow(int radix, int length) {
    uint64_t p = 1;
    for (int i = 0; i < length; ++i) {
        if (p > (uint64_t(1) << 62) / radix)
            throw InputError("radix^length does not fit in a rank");
        p *= radix;
    }
    return p;
}

} // namespace

uint64_t gray_rank(const Word& w) {
    uint64_t weight = checked_pow(w.radix, w.size());
    uint64_t rank = 0;
    bool reflected = false;
    for (int digit : w.digits) {
        weight /= w.radix;
        int effective = reflected ? w.radix - 1 - digit : digit;
        rank += uint64_t(effective) * weight;
        if (digit % 2 == 1) reflected = !reflected;
    }
    return rank;
}

Word gray_unrank(uint64_t position, int length, int radix) {
    if (length < 1) throw InputError("word length must be at least 1");
    if (radix < 2) throw InputError("word radix must be at least 2");
    uint64_t weight = checked_pow(radix, length);
    if (position >= weight)
        throw InputError("position " + std::to_string(position) + " out of range");
    std::vector<int> digits(length);
    bool reflected = false;
    for (int i = 0; i < length; ++i) {
        weight /= radix;
        int effective = int(position / weight);
        position %= weight;
        int digit = reflected ? radix - 1 - effective : effective;
        digits[i] = digit;
        if (digit % 2 == 1) reflected = !reflected;
    }
    return Word(std::move(digits), radix);
}

namespace {

// Rank comparison by scan: at the first differing digit the common
// polarity decides, without materializing ranks.
int gray_compare_scan(const Word& x, const Word& y) {
    bool reflected = false;
    for (int i = 0; i < x.size(); ++i) {
        int a = x.digits[i], b = y.digits[i];
        if (a != b) {
            bool less = reflected ? a > b : a < b;
            return less ? -1 : 1;
        }
        if (a % 2 == 1) reflected = !reflected;
    }
    return 0;
}

int lex_compare_scan(const Word& x, const Word& y) {
    for (int i = 0; i < x.size(); ++i) {
        if (x.digits[i] != y.digits[i]) return x.digits[i] < y.digits[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

int compare(OrderingKind kind, const Word& x, const Word& y) {
    if (x.size() != y.size()) throw InputError("compare: word length mismatch");
    if (x.radix != y.radix) throw InputError("compare: word radix mismatch");
    switch (kind) {
    case OrderingKind::Lex: return lex_compare_scan(x, y);
    case OrderingKind::AntiLex: return -lex_compare_scan(x, y);
    case OrderingKind::Gray: return gray_compare_scan(x, y);
    case OrderingKind::AntiGray: return -gray_compare_scan(x, y);
    }
    return 0;
}

// --- Automaton-based propagators --------------------------------------------

namespace {

constexpr int kDead = -1;

// Ordering automata over digit pairs (a, b), with at most three states.
// Pruning is one forward/backward reachability pass over the pair automaton,
// which yields the domain-consistent closure when all variables are distinct.
struct OrderingAutomaton {
    int num_states = 0;
    int start = 0;
    uint8_t accepting = 0;                    // bitmask over states
    int trans[3][3][3] = {};                  // [state][a][b] -> state or kDead

    static OrderingAutomaton lex(int radix, bool strict) {
        // state 0: prefixes equal so far; state 1: strictly ordered.
        OrderingAutomaton m;
        m.num_states = 2;
        m.start = 0;
        m.accepting = strict ? 0b10 : 0b11;
        for (int a = 0; a < radix; ++a)
            for (int b = 0; b < radix; ++b) {
                m.trans[0][a][b] = a == b ? 0 : (a < b ? 1 : kDead);
                m.trans[1][a][b] = 1;
            }
        return m;
    }

    static OrderingAutomaton gray(int radix, bool strict) {
        // state 0: polarity +1; state 1: polarity -1; state 2: ordered.
        OrderingAutomaton m;
        m.num_states = 3;
        m.start = 0;
        m.accepting = strict ? 0b100 : 0b111;
        for (int a = 0; a < radix; ++a)
            for (int b = 0; b < radix; ++b) {
                bool odd = a % 2 == 1;
                m.trans[0][a][b] = a == b ? (odd ? 1 : 0) : (a < b ? 2 : kDead);
                m.trans[1][a][b] = a == b ? (odd ? 0 : 1) : (a > b ? 2 : kDead);
                m.trans[2][a][b] = 2;
            }
        return m;
    }
};

class PairOrderingPropagator final : public engine::Propagator {
public:
    PairOrderingPropagator(std::string name, std::vector<VarView> x, std::vector<VarView> y,
                           int radix, OrderingAutomaton automaton)
        : name_(std::move(name)),
          x_(std::move(x)),
          y_(std::move(y)),
          radix_(radix),
          automaton_(automaton) {
        if (x_.size() != y_.size())
            throw InputError(name_ + ": vector length mismatch");
        if (x_.empty()) throw InputError(name_ + ": empty vectors");
        if (radix_ < 2 || radix_ > 3) throw InputError(name_ + ": unsupported radix");
        for (size_t i = 0; i < x_.size(); ++i) {
            scope_.push_back(x_[i].var);
            scope_.push_back(y_[i].var);
        }
    }

    std::string name() const override { return name_; }
    const std::vector<engine::VarId>& scope() const override { return scope_; }

    bool propagate(engine::DomainState& state) const override {
        int n = int(x_.size());
        // Mapped domains as bitmasks over [0, radix).
        std::vector<uint8_t> dx(n), dy(n);
        for (int i = 0; i < n; ++i) {
            dx[i] = mapped_mask(state, x_[i]);
            dy[i] = mapped_mask(state, y_[i]);
        }
        std::vector<uint8_t> fwd(n + 1), bwd(n + 2);
        fwd[0] = uint8_t(1 << automaton_.start);
        for (int i = 0; i < n; ++i) {
            uint8_t next = 0;
            for_transitions(fwd[i], dx[i], dy[i], [&](int, int, int, int t) {
                next |= uint8_t(1 << t);
            });
            fwd[i + 1] = next;
        }
        if ((fwd[n] & automaton_.accepting) == 0) return false;
        bwd[n] = automaton_.accepting;
        for (int i = n - 1; i >= 0; --i) {
            uint8_t prev = 0;
            for (int q = 0; q < automaton_.num_states; ++q) {
                bool ok = false;
                for_transitions(uint8_t(1 << q), dx[i], dy[i], [&](int, int, int, int t) {
                    if (bwd[i + 1] & (1 << t)) ok = true;
                });
                if (ok) prev |= uint8_t(1 << q);
            }
            bwd[i] = prev;
        }
        for (int i = 0; i < n; ++i) {
            uint8_t live = uint8_t(fwd[i] & bwd[i]);
            uint8_t keep_x = 0, keep_y = 0;
            for_transitions(live, dx[i], dy[i], [&](int, int a, int b, int t) {
                if (bwd[i + 1] & (1 << t)) {
                    keep_x |= uint8_t(1 << a);
                    keep_y |= uint8_t(1 << b);
                }
            });
            if (!prune_to(state, x_[i], keep_x)) return false;
            if (!prune_to(state, y_[i], keep_y)) return false;
        }
        return true;
    }

    bool check(std::span<const int> a) const override {
        int q = automaton_.start;
        for (size_t i = 0; i < x_.size(); ++i) {
            int av = x_[i].map[a[x_[i].var]];
            int bv = y_[i].map[a[y_[i].var]];
            q = automaton_.trans[q][av][bv];
            if (q == kDead) return false;
        }
        return (automaton_.accepting >> q) & 1;
    }

private:
    uint8_t mapped_mask(const engine::DomainState& state, const VarView& view) const {
        uint8_t mask = 0;
        state[view.var].for_each([&](int v) {
            if (v >= radix_)
                throw InputError(name_ + ": domain value " + std::to_string(v) +
                                 " exceeds radix " + std::to_string(radix_));
            mask |= uint8_t(1 << view.map[v]);
        });
        return mask;
    }

    template <typename Fn>
    void for_transitions(uint8_t states, uint8_t da, uint8_t db, Fn&& fn) const {
        for (int q = 0; q < automaton_.num_states; ++q) {
            if (!(states & (1 << q))) continue;
            for (int a = 0; a < radix_; ++a) {
                if (!(da & (1 << a))) continue;
                for (int b = 0; b < radix_; ++b) {
                    if (!(db & (1 << b))) continue;
                    int t = automaton_.trans[q][a][b];
                    if (t != kDead) fn(q, a, b, t);
                }
            }
        }
    }

    bool prune_to(engine::DomainState& state, const VarView& view, uint8_t keep_mapped) const {
        Domain& d = state[view.var];
        for (int v : d.values())
            if (!(keep_mapped & (1 << view.map[v]))) d.remove(v);
        return !d.empty();
    }

    std::string name_;
    std::vector<VarView> x_, y_;
    int radix_;
    OrderingAutomaton automaton_;
    std::vector<engine::VarId> scope_;
};

void validate_views(const std::vector<VarView>& views, int radix, const char* what) {
    for (const auto& v : views) {
        bool seen[3] = {false, false, false};
        for (int a = 0; a < radix; ++a) {
            if (v.map[a] < 0 || v.map[a] >= radix)
                throw InputError(std::string(what) + ": value map leaves radix");
            seen[v.map[a]] = true;
        }
        for (int a = 0; a < radix; ++a)
            if (!seen[a]) throw InputError(std::string(what) + ": value map is not a bijection");
    }
}

} // namespace

engine::PropagatorPtr lex_leq_propagator(std::vector<VarView> x, std::vector<VarView> y,
                                         int radix, bool strict) {
    validate_views(x, radix, "lex_leq");
    validate_views(y, radix, "lex_leq");
    return std::make_shared<PairOrderingPropagator>(
        strict ? "lex_lt" : "lex_leq", std::move(x), std::move(y), radix,
        OrderingAutomaton::lex(radix, strict));
}

engine::PropagatorPtr gray_leq_propagator(std::vector<VarView> x, std::vector<VarView> y,
                                          int radix, bool strict) {
    validate_views(x, radix, "gray_leq");
    validate_views(y, radix, "gray_leq");
    return std::make_shared<PairOrderingPropagator>(
        strict ? "gray_lt" : "gray_leq", std::move(x), std::move(y), radix,
        OrderingAutomaton::gray(radix, strict));
}

// --- Clause-level decomposition ---------------------------------------------

bool GrayAtom::eval(const std::vector<int>& x, const std::vector<int>& y,
                    const std::vector<int>& q) const {
    int i = index - 1;
    bool value = false;
    switch (kind) {
    case Kind::XEq: value = x[i] == val; break;
    case Kind::YEq: value = y[i] == val; break;
    case Kind::XleY: value = x[i] <= y[i]; break;
    case Kind::XgeY: value = x[i] >= y[i]; break;
    case Kind::XeqY: value = x[i] == y[i]; break;
    case Kind::QEq: value = q[i] == val; break;
    case Kind::QNextEq: value = q[i + 1] == val; break;
    case Kind::QNextIsQ: value = q[i + 1] == val * q[i]; break;
    }
    return negated ? !value : value;
}

bool GrayClause::eval(const std::vector<int>& x, const std::vector<int>& y,
                      const std::vector<int>& q) const {
    for (const auto& atom : atoms)
        if (atom.eval(x, y, q)) return true;
    return false;
}

bool GrayDecomposition::eval(const std::vector<int>& x, const std::vector<int>& y,
                             const std::vector<int>& q) const {
    if (!unit.eval(x, y, q)) return false;
    for (const auto& c : clauses)
        if (!c.eval(x, y, q)) return false;
    return true;
}

bool GrayDecomposition::satisfiable_for(const std::vector<int>& x,
                                        const std::vector<int>& y) const {
    // Enumerate state sequences over {+1,-1,0}^(n+1).
    std::vector<int> q(length + 1, 1);
    const int vals[3] = {1, -1, 0};
    std::vector<int> idx(length + 1, 0);
    while (true) {
        for (int i = 0; i <= length; ++i) q[i] = vals[idx[i]];
        if (eval(x, y, q)) return true;
        int pos = 0;
        while (pos <= length && ++idx[pos] == 3) idx[pos++] = 0;
        if (pos > length) return false;
    }
}

GrayDecomposition gray_decomposition_clauses(int length) {
    if (length < 1) throw InputError("decomposition needs length >= 1");
    GrayDecomposition d;
    d.length = length;
    using K = GrayAtom::Kind;
    d.unit.atoms = {{K::QEq, 1, 1}};
    for (int i = 1; i <= length; ++i) {
        // Q_i != 1 or X_i <= Y_i
        d.clauses.push_back({{{K::QEq, i, 1, true}, {K::XleY, i}}});
        // Q_i != -1 or X_i >= Y_i
        d.clauses.push_back({{{K::QEq, i, -1, true}, {K::XgeY, i}}});
        // X_i = Y_i or Q_{i+1} = 0
        d.clauses.push_back({{{K::XeqY, i}, {K::QNextEq, i, 0}}});
        // X_i = 0 or Y_i = 0 or Q_{i+1} = -Q_i  (equal ones flip polarity)
        d.clauses.push_back({{{K::XEq, i, 0}, {K::YEq, i, 0}, {K::QNextIsQ, i, -1}}});
        // X_i != 0 or Y_i != 0 or Q_{i+1} = Q_i  (equal zeros preserve state;
        // omitting this transition breaks the rank-comparison semantics)
        d.clauses.push_back({{{K::XEq, i, 0, true}, {K::YEq, i, 0, true}, {K::QNextIsQ, i, 1}}});
    }
    return d;
}

namespace {

// One-hot CNF variable numbering for the DIMACS export.
struct CnfVars {
    int n;
    int x(int i) const { return i; }                       // 1..n
    int y(int i) const { return n + i; }                   // n+1..2n
    int q(int i, int state) const {                        // states: 1:+1, 2:-1, 3:0
        int s = state == 1 ? 1 : (state == -1 ? 2 : 3);
        return 2 * n + 3 * (i - 1) + s;
    }
    int count() const { return 2 * n + 3 * (n + 1); }
};

} // namespace

std::string gray_decomposition_dimacs(int length) {
    if (length < 1) throw InputError("decomposition needs length >= 1");
    CnfVars v{length};
    std::vector<std::vector<int>> cnf;
    const int states[3] = {1, -1, 0};

    // One-hot scaffolding for each ternary state variable.
    for (int i = 1; i <= length + 1; ++i) {
        cnf.push_back({v.q(i, 1), v.q(i, -1), v.q(i, 0)});
        cnf.push_back({-v.q(i, 1), -v.q(i, -1)});
        cnf.push_back({-v.q(i, 1), -v.q(i, 0)});
        cnf.push_back({-v.q(i, -1), -v.q(i, 0)});
    }
    cnf.push_back({v.q(1, 1)}); // Q_1 = +1
    for (int i = 1; i <= length; ++i) {
        cnf.push_back({-v.q(i, 1), -v.x(i), v.y(i)});  // Q_i=1 -> X_i <= Y_i
        cnf.push_back({-v.q(i, -1), v.x(i), -v.y(i)}); // Q_i=-1 -> X_i >= Y_i
        cnf.push_back({v.x(i), -v.y(i), v.q(i + 1, 0)});  // X_i != Y_i -> Q_{i+1}=0
        cnf.push_back({-v.x(i), v.y(i), v.q(i + 1, 0)});
        for (int s : states) {
            cnf.push_back({-v.x(i), -v.y(i), -v.q(i, s), v.q(i + 1, -s)}); // equal ones flip
            cnf.push_back({v.x(i), v.y(i), -v.q(i, s), v.q(i + 1, s)});    // equal zeros hold
        }
    }

    std::ostringstream out;
    out << "c gray ordering constraint <X> <= <Y>, length " << length << "\n";
    out << "c variables: x_i -> " << 1 << ".." << length << ", y_i -> " << length + 1 << ".."
        << 2 * length << "\n";
    out << "c state Q_i one-hot: q(i,+1) q(i,-1) q(i,0) -> 2n+3(i-1)+{1,2,3}, i=1.."
        << length + 1 << "\n";
    out << "p cnf " << v.count() << " " << cnf.size() << "\n";
    for (const auto& clause : cnf) {
        for (size_t j = 0; j < clause.size(); ++j) out << clause[j] << " ";
        out << "0\n";
    }
    return out.str();
}

} // namespace symbreak::ordering
