#include "symbreak/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace symbreak::oracle {

std::vector<std::vector<int>> reflected_gray_list(int length, int radix) {
    if (length < 1 || radix < 2) throw InputError("reflected_gray_list: bad parameters");
    uint64_t total = 1;
    for (int i = 0; i < length; ++i) {
        total *= radix;
        if (total > kAssignmentGuard)
            throw GuardError("reflected_gray_list: too many words to materialize");
    }
    std::vector<std::vector<int>> list(1, std::vector<int>{});
    for (int step = 0; step < length; ++step) {
        std::vector<std::vector<int>> next;
        next.reserve(list.size() * radix);
        for (int d = 0; d < radix; ++d) {
            if (d % 2 == 0) {
                for (auto it = list.begin(); it != list.end(); ++it) {
                    std::vector<int> w{d};
                    w.insert(w.end(), it->begin(), it->end());
                    next.push_back(std::move(w));
                }
            } else {
                for (auto it = list.rbegin(); it != list.rend(); ++it) {
                    std::vector<int> w{d};
                    w.insert(w.end(), it->begin(), it->end());
                    next.push_back(std::move(w));
                }
            }
        }
        list = std::move(next);
    }
    return list;
}

namespace {

uint64_t pow_u64(int radix, int length) {
    uint64_t p = 1;
    for (int i = 0; i < length; ++i) {
        if (p > (uint64_t(1) << 62) / radix)
            throw InputError("gray_rank_recursive: rank does not fit in 64 bits");
        p *= radix;
    }
    return p;
}

uint64_t rank_rec(const std::vector<int>& w, size_t from, int radix) {
    if (from == w.size()) return 0;
    int d = w[from];
    if (d < 0 || d >= radix) throw InputError("gray_rank_recursive: digit out of radix");
    uint64_t block = pow_u64(radix, int(w.size() - from - 1));
    uint64_t inner = rank_rec(w, from + 1, radix);
    // Odd prefixes see the reversed sublist.
    return uint64_t(d) * block + (d % 2 == 0 ? inner : block - 1 - inner);
}

} // namespace

uint64_t gray_rank_recursive(const std::vector<int>& word, int radix) {
    if (word.empty()) throw InputError("gray_rank_recursive: empty word");
    return rank_rec(word, 0, radix);
}

int compare_words(ordering::OrderingKind kind, const std::vector<int>& x,
                  const std::vector<int>& y, int radix) {
    if (x.size() != y.size()) throw InputError("compare_words: length mismatch");
    using ordering::OrderingKind;
    int sign = 0;
    switch (kind) {
    case OrderingKind::Lex:
    case OrderingKind::AntiLex:
        sign = x < y ? -1 : (x == y ? 0 : 1);
        break;
    case OrderingKind::Gray:
    case OrderingKind::AntiGray: {
        uint64_t rx = gray_rank_recursive(x, radix);
        uint64_t ry = gray_rank_recursive(y, radix);
        sign = rx < ry ? -1 : (rx == ry ? 0 : 1);
        break;
    }
    }
    bool anti = kind == OrderingKind::AntiLex || kind == OrderingKind::AntiGray;
    return anti ? -sign : sign;
}

std::vector<int> canonical_in_orbit(const std::vector<int>& a,
                                    const symmetry::SymmetryGroup& group,
                                    ordering::OrderingKind kind,
                                    const symmetry::Linearization& lin, int radix) {
    if (group.size() > kGroupGuard)
        throw GuardError("canonical_in_orbit: group exceeds the size guard");
    auto project = [&](const std::vector<int>& full) {
        std::vector<int> w(lin.order.size());
        for (size_t t = 0; t < lin.order.size(); ++t) w[t] = full[lin.order[t]];
        return w;
    };
    std::vector<int> best = a;
    std::vector<int> best_word = project(a);
    for (const auto& sigma : group.elements) {
        std::vector<int> image = symmetry::apply(sigma, a);
        std::vector<int> word = project(image);
        if (compare_words(kind, word, best_word, radix) < 0) {
            best = std::move(image);
            best_word = std::move(word);
        }
    }
    return best;
}

void for_each_assignment(const std::vector<Domain>& domains,
                         const std::function<void(const std::vector<int>&)>& fn) {
    uint64_t product = 1;
    for (const auto& d : domains) {
        if (d.empty()) return;
        product *= uint64_t(d.size());
        if (product > kAssignmentGuard)
            throw GuardError("assignment space exceeds the enumeration guard of 2^22");
    }
    size_t n = domains.size();
    std::vector<std::vector<int>> values(n);
    for (size_t i = 0; i < n; ++i) values[i] = domains[i].values();
    std::vector<size_t> idx(n, 0);
    std::vector<int> a(n);
    for (size_t i = 0; i < n; ++i) a[i] = values[i][0];
    while (true) {
        fn(a);
        size_t pos = n;
        while (pos-- > 0) {
            if (++idx[pos] < values[pos].size()) {
                a[pos] = values[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            a[pos] = values[pos][0];
            if (pos == 0) return;
        }
        if (pos == size_t(-1)) return;
    }
}

DcResult dc_closure(const std::function<bool(const std::vector<int>&)>& check,
                    const std::vector<Domain>& domains) {
    size_t n = domains.size();
    std::vector<std::vector<char>> support(n);
    for (size_t i = 0; i < n; ++i) support[i].assign(domains[i].cap(), 0);
    bool any = false;
    for_each_assignment(domains, [&](const std::vector<int>& a) {
        if (!check(a)) return;
        any = true;
        for (size_t i = 0; i < n; ++i) support[i][a[i]] = 1;
    });
    DcResult result;
    if (!any) {
        result.failure = true;
        return result;
    }
    result.domains = domains;
    for (size_t i = 0; i < n; ++i)
        for (int v : domains[i].values())
            if (!support[i][v]) result.domains[i].remove(v);
    return result;
}

// --- Direct checkers ---------------------------------------------------------

bool still_life_stable(int n, const std::vector<int>& inner) {
    if (int(inner.size()) != n * n) throw InputError("still_life_stable: bad board size");
    auto alive = [&](int r, int c) {
        if (r < 0 || c < 0 || r >= n || c >= n) return 0;
        return inner[r * n + c];
    };
    // Cells two or more steps outside the board see only dead cells, so a
    // one-cell halo suffices for checking the infinite-plane embedding.
    for (int r = -1; r <= n; ++r)
        for (int c = -1; c <= n; ++c) {
            int sum = 0;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc)
                    if (dr != 0 || dc != 0) sum += alive(r + dr, c + dc);
            if (alive(r, c)) {
                if (sum < 2 || sum > 3) return false;
            } else if (sum == 3) {
                return false;
            }
        }
    return true;
}

long long labs_energy(const std::vector<int>& seq) {
    int n = int(seq.size());
    long long energy = 0;
    for (int k = 1; k <= n - 1; ++k) {
        long long corr = 0;
        for (int i = 0; i + k < n; ++i) {
            int xi = seq[i] == 0 ? 1 : -1;
            int xk = seq[i + k] == 0 ? 1 : -1;
            corr += xi * xk;
        }
        energy += corr * corr;
    }
    return energy;
}

namespace {

CheckResult check_queens(int n, const std::vector<int>& board) {
    int white = 0, black = 0;
    for (int v : board) {
        white += v == 1;
        black += v == 2;
    }
    for (int i = 0; i < n * n; ++i) {
        if (board[i] == 0) continue;
        for (int j = i + 1; j < n * n; ++j) {
            if (board[j] == 0) continue;
            int r1 = i / n, c1 = i % n, r2 = j / n, c2 = j % n;
            bool shared = r1 == r2 || c1 == c2 || r1 - r2 == c1 - c2 || r1 - r2 == c2 - c1;
            if (shared && board[i] != board[j]) return {false, 0};
        }
    }
    return {white == black, white};
}

} // namespace

CheckResult direct_check(models::ModelKind kind, int n, const std::vector<int>& a) {
    switch (kind) {
    case models::ModelKind::StillLife: {
        bool ok = still_life_stable(n, a);
        long long live = std::count(a.begin(), a.end(), 1);
        return {ok, live};
    }
    case models::ModelKind::Labs:
        return {true, labs_energy(a)};
    case models::ModelKind::QueensArmies:
        return check_queens(n, a);
    case models::ModelKind::FreeMatrix:
        return {true, 0};
    }
    throw InputError("direct_check: unknown model kind");
}

namespace {

// Exhaustive queens enumeration as depth-first search. Feasibility of the
// no-shared-line rule is monotone in placed queens, so pruning infeasible
// prefixes loses nothing.
long long queens_brute_force(int n) {
    std::vector<int> board(n * n, 0);
    long long best = -1;
    auto conflict = [&](int cell, int color) {
        int r1 = cell / n, c1 = cell % n;
        for (int j = 0; j < cell; ++j) {
            if (board[j] == 0 || board[j] == color) continue;
            int r2 = j / n, c2 = j % n;
            if (r1 == r2 || c1 == c2 || r1 - r2 == c1 - c2 || r1 - r2 == c2 - c1) return true;
        }
        return false;
    };
    std::function<void(int, int, int)> rec = [&](int cell, int white, int black) {
        if (cell == n * n) {
            if (white == black) best = std::max(best, (long long)white);
            return;
        }
        for (int v = 0; v < 3; ++v) {
            if (v != 0 && conflict(cell, v)) continue;
            board[cell] = v;
            rec(cell + 1, white + (v == 1), black + (v == 2));
        }
        board[cell] = 0;
    };
    rec(0, 0, 0);
    return best;
}

} // namespace

std::optional<long long> brute_force_optimum(models::ModelKind kind, int n) {
    switch (kind) {
    case models::ModelKind::StillLife: {
        if (uint64_t(1) << (n * n) > kAssignmentGuard)
            throw GuardError("still-life brute force exceeds the enumeration guard");
        std::optional<long long> best;
        std::vector<int> inner(n * n);
        for (uint64_t bits = 0; bits < (uint64_t(1) << (n * n)); ++bits) {
            for (int i = 0; i < n * n; ++i) inner[i] = int((bits >> i) & 1);
            if (!still_life_stable(n, inner)) continue;
            long long live = std::count(inner.begin(), inner.end(), 1);
            if (!best || live > *best) best = live;
        }
        return best;
    }
    case models::ModelKind::Labs: {
        if (uint64_t(1) << n > kAssignmentGuard)
            throw GuardError("labs brute force exceeds the enumeration guard");
        std::optional<long long> best;
        std::vector<int> seq(n);
        for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
            for (int i = 0; i < n; ++i) seq[i] = int((bits >> i) & 1);
            long long e = labs_energy(seq);
            if (!best || e < *best) best = e;
        }
        return best;
    }
    case models::ModelKind::QueensArmies: {
        uint64_t space = 1;
        for (int i = 0; i < n * n; ++i) {
            space *= 3;
            if (space > (uint64_t(1) << 27))
                throw GuardError("queens brute force exceeds the enumeration guard");
        }
        long long best = queens_brute_force(n);
        if (best < 0) return std::nullopt;
        return best;
    }
    default:
        throw InputError("brute_force_optimum: unsupported model kind");
    }
}

// --- Sound/complete verification ---------------------------------------------

namespace {

std::vector<int> project_decisions(const engine::Model& model, const engine::Assignment& full) {
    std::vector<int> out(model.decision_vars.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = full[model.decision_vars[i]];
    return out;
}

std::string render_assignment(const std::vector<int>& a) {
    std::string s;
    for (int v : a) s += char('0' + v);
    return s;
}

} // namespace

OrbitReport verify_sound_complete(const models::Instance& instance,
                                  const symmetry::SymmetryGroup& group,
                                  const BreakingUnderTest& breaking) {
    if (group.size() > kGroupGuard)
        throw GuardError("verify_sound_complete: group exceeds the size guard");
    {
        uint64_t space = 1;
        for (engine::VarId v : instance.model.decision_vars) {
            space *= uint64_t(instance.model.init_domains[v].size());
            if (space > kAssignmentGuard)
                throw GuardError("verify_sound_complete: assignment space exceeds 2^22");
        }
    }

    engine::SearchLimits limits;
    limits.node_budget = kAssignmentGuard * 8;
    engine::AllSolutions unbroken = engine::solve_all(instance.model, limits);

    std::map<std::vector<int>, int> orbit_of;
    std::vector<std::vector<int>> orbit_reps;
    std::vector<int> orbit_sizes;
    for (const auto& full : unbroken.solutions) {
        std::vector<int> sol = project_decisions(instance.model, full);
        if (orbit_of.count(sol)) continue;
        int id = int(orbit_reps.size());
        orbit_reps.push_back(sol);
        orbit_sizes.push_back(0);
        for (const auto& sigma : group.elements) {
            std::vector<int> image = symmetry::apply(sigma, sol);
            if (orbit_of.emplace(std::move(image), id).second) ++orbit_sizes[id];
        }
    }

    OrbitReport report;
    report.orbit_count = int(orbit_reps.size());
    report.total_solutions = unbroken.solutions.size();
    report.leader_config = breaking.leader.has_value();
    report.survivors_per_orbit.assign(orbit_reps.size(), 0);
    // Orbit sizes must tile the solution set exactly; anything else means
    // some group element mapped a solution to a non-solution.
    report.group_preserves_solutions = orbit_of.size() == unbroken.solutions.size();
    if (!report.group_preserves_solutions)
        report.first_counterexample = "group images do not tile the solution set (" +
                                      std::to_string(orbit_of.size()) + " images vs " +
                                      std::to_string(unbroken.solutions.size()) + " solutions)";

    engine::Model broken = instance.model;
    if (breaking.post) breaking.post(broken);
    engine::AllSolutions survivors = engine::solve_all(broken, limits);
    report.surviving_solutions = survivors.solutions.size();

    // Canonical representative per orbit, for leader configurations.
    std::vector<std::vector<int>> canonicals;
    if (breaking.leader) {
        const auto& [kind, lin] = *breaking.leader;
        for (const auto& rep : orbit_reps)
            canonicals.push_back(canonical_in_orbit(rep, group, kind, lin, instance.radix));
    }

    for (const auto& full : survivors.solutions) {
        std::vector<int> sol = project_decisions(broken, full);
        auto it = orbit_of.find(sol);
        if (it == orbit_of.end()) {
            // A breaking constraint admitted a non-solution or the group is
            // not a symmetry group of the model.
            report.canonical_mismatches.push_back("survivor outside any orbit: " +
                                                  render_assignment(sol));
            continue;
        }
        ++report.survivors_per_orbit[it->second];
        if (breaking.leader && sol != canonicals[it->second]) {
            report.canonical_mismatches.push_back(
                "orbit " + std::to_string(it->second) + ": survivor " + render_assignment(sol) +
                " != canonical " + render_assignment(canonicals[it->second]));
        }
    }

    for (int i = 0; i < report.orbit_count; ++i) {
        int s = report.survivors_per_orbit[i];
        ++report.survivor_histogram[s];
        if (s == 0) {
            ++report.unsound_orbits;
            if (report.first_counterexample.empty())
                report.first_counterexample =
                    "orbit of " + render_assignment(orbit_reps[i]) + " has no survivor";
        }
        if (s >= 2) {
            ++report.multi_survivor_orbits;
            if (report.leader_config && report.first_counterexample.empty())
                report.first_counterexample =
                    "orbit of " + render_assignment(orbit_reps[i]) + " kept " +
                    std::to_string(s) + " survivors";
        }
    }
    if (report.group_preserves_solutions &&
        report.surviving_solutions > report.total_solutions &&
        report.first_counterexample.empty())
        report.first_counterexample = "breaking constraints admitted new solutions";
    if (report.first_counterexample.empty() && !report.canonical_mismatches.empty())
        report.first_counterexample = report.canonical_mismatches.front();
    return report;
}

} // namespace symbreak::oracle
