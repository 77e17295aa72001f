#ifndef SYMBREAK_ORACLE_HPP
#define SYMBREAK_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symbreak/models.hpp"
#include "symbreak/ordering.hpp"
#include "symbreak/symmetry.hpp"

namespace symbreak::oracle {

// Brute-force ground truth. Everything here works on raw assignments and
// direct formulas; none of it reuses engine propagator code.

inline constexpr uint64_t kAssignmentGuard = uint64_t(1) << 22;
inline constexpr int kGroupGuard = 10000;

/// The reflected radix-r Gray ordering of all words of the given length,
/// built by the construction rule: prepend each digit in turn to the
/// previous list, reversing it under odd prefixes.
std::vector<std::vector<int>> reflected_gray_list(int length, int radix);

/// Position of a word in the reflected ordering, by direct recursive
/// transcription of the construction rule.
uint64_t gray_rank_recursive(const std::vector<int>& word, int radix);

/// Word comparison under any ordering kind, built on the recursive rank.
int compare_words(ordering::OrderingKind kind, const std::vector<int>& x,
                  const std::vector<int>& y, int radix);

/// The kind-least element of { apply(sigma, a) : sigma in group }, read
/// through the linearization. Throws GuardError for oversized groups.
std::vector<int> canonical_in_orbit(const std::vector<int>& a,
                                    const symmetry::SymmetryGroup& group,
                                    ordering::OrderingKind kind,
                                    const symmetry::Linearization& lin, int radix);

/// Iterates the full Cartesian product of the domains in ascending
/// odometer order (last variable fastest). Throws GuardError when the
/// product exceeds the assignment guard.
void for_each_assignment(const std::vector<Domain>& domains,
                         const std::function<void(const std::vector<int>&)>& fn);

struct DcResult {
    bool failure = false;
    std::vector<Domain> domains;
};

/// Exact domain-consistent closure of an arbitrary ground predicate: a
/// value survives iff it extends to a full satisfying assignment.
DcResult dc_closure(const std::function<bool(const std::vector<int>&)>& check,
                    const std::vector<Domain>& domains);

// --- Direct checkers ---------------------------------------------------------

struct CheckResult {
    bool feasible = false;
    long long objective = 0;
};

/// Stability of an n x n pattern embedded in an all-dead infinite plane.
bool still_life_stable(int n, const std::vector<int>& inner);

/// Aperiodic autocorrelation energy; digit 0 is +1, digit 1 is -1.
long long labs_energy(const std::vector<int>& seq);

/// Feasibility and objective of a decision assignment, by direct formula.
CheckResult direct_check(models::ModelKind kind, int n, const std::vector<int>& decisions);

/// Optimal objective value by exhaustive enumeration of the decision
/// space (guarded). nullopt when no assignment is feasible.
std::optional<long long> brute_force_optimum(models::ModelKind kind, int n);

// --- Sound/complete verification ---------------------------------------------

struct OrbitReport {
    int orbit_count = 0;
    uint64_t total_solutions = 0;
    uint64_t surviving_solutions = 0;
    std::vector<int> survivors_per_orbit;
    std::map<int, int> survivor_histogram; ///< survivors -> number of orbits
    int unsound_orbits = 0;                ///< orbits with no survivor
    int multi_survivor_orbits = 0;         ///< orbits with 2+ survivors
    std::vector<std::string> canonical_mismatches;
    std::string first_counterexample;
    bool leader_config = false;
    /// Every group image of a solution is again a solution, so orbit sizes
    /// sum to the solution count.
    bool group_preserves_solutions = true;

    bool sound() const { return unsound_orbits == 0; }
    bool complete() const { return multi_survivor_orbits == 0 && canonical_mismatches.empty(); }
};

/// How verify applies a symmetry-breaking configuration.
struct BreakingUnderTest {
    std::string label = "none";
    std::function<void(engine::Model&)> post; ///< may be empty for "none"
    /// Set for leader configurations; enables the canonical-survivor check.
    std::optional<std::pair<ordering::OrderingKind, symmetry::Linearization>> leader;
};

/// Enumerates the unbroken model, partitions its solutions into orbits of
/// `group`, re-enumerates with the breaking constraints added, and reports
/// survivors per orbit plus canonical mismatches for leader configs.
OrbitReport verify_sound_complete(const models::Instance& instance,
                                  const symmetry::SymmetryGroup& group,
                                  const BreakingUnderTest& breaking);

} // namespace symbreak::oracle

#endif
