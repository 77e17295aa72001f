#ifndef SYMBREAK_ORDERING_HPP
#define SYMBREAK_ORDERING_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "symbreak/engine.hpp"

namespace symbreak::ordering {

/// Total orders on fixed-length words. The Anti variants order exactly
/// reverse to their base: x precedes y under Anti iff y precedes x under
/// the base ordering.
enum class OrderingKind { Lex, AntiLex, Gray, AntiGray };

const char* kind_label(OrderingKind kind);

/// Fixed-length digit string over [0, radix).
struct Word {
    std::vector<int> digits;
    int radix = 2;

    Word() = default;
    Word(std::vector<int> digits, int radix);

    int size() const { return int(digits.size()); }
    bool operator==(const Word&) const = default;
};

/// 0-based position of w in the reflected radix-r Gray ordering.
///
/// Left-to-right scan with polarity p starting at +1: the effective digit
/// is w[i] when p=+1 and r-1-w[i] when p=-1; it contributes
/// effective * r^(n-1-i) to the rank, and p flips iff the raw digit w[i]
/// is odd. Requires r^n to fit in 64 bits.
uint64_t gray_rank(const Word& w);

/// Inverse of gray_rank: the word of the given length and radix at
/// `position` in the reflected Gray ordering.
Word gray_unrank(uint64_t position, int length, int radix);

/// Sign of the rank difference of x and y under the given ordering:
/// -1, 0 or +1. Works for any length (no rank materialization).
int compare(OrderingKind kind, const Word& x, const Word& y);

// --- Propagators -----------------------------------------------------------

/// A variable read through a value bijection, so ordering constraints can
/// compare a vector against a symmetry image of itself.
struct VarView {
    engine::VarId var = -1;
    std::array<int, 3> map{0, 1, 2}; // value -> mapped value, identity by default

    static VarView plain(engine::VarId v) { return {v, {0, 1, 2}}; }
};

/// <X> lex-le <Y>, domain consistent for distinct variables. With strict
/// set, equality of the vectors is rejected.
engine::PropagatorPtr lex_leq_propagator(std::vector<VarView> x, std::vector<VarView> y,
                                         int radix, bool strict = false);

/// <X> gray-le <Y> under the reflected radix-r Gray ordering, domain
/// consistent for distinct variables. The pruning follows the ordering
/// automaton with states Q_i in {+1,-1,0}, Q_1=+1: state +1 compares
/// digits directly, -1 compares them reflected, 0 means already ordered;
/// equal digits flip the state's polarity iff the common digit is odd.
engine::PropagatorPtr gray_leq_propagator(std::vector<VarView> x, std::vector<VarView> y,
                                          int radix, bool strict = false);

// --- Clause-level decomposition (binary radix) ------------------------------

/// Atoms of the Gray ordering decomposition over X_i, Y_i and the
/// automaton states Q_1..Q_{n+1} with values {+1,-1,0}.
struct GrayAtom {
    enum class Kind {
        XEq,      ///< X[i] == val (val in {0,1}); negate for !=
        YEq,      ///< Y[i] == val
        XleY,     ///< X[i] <= Y[i]
        XgeY,     ///< X[i] >= Y[i]
        XeqY,     ///< X[i] == Y[i]
        QEq,      ///< Q[i] == val (val in {+1,-1,0})
        QNextEq,  ///< Q[i+1] == val
        QNextIsQ, ///< Q[i+1] == sign * Q[i] (sign in {+1,-1})
    };
    Kind kind;
    int index;        ///< 1-based position i
    int val = 0;      ///< value or sign, depending on kind
    bool negated = false;

    bool eval(const std::vector<int>& x, const std::vector<int>& y,
              const std::vector<int>& q) const;
};

/// One clause: a disjunction of atoms.
struct GrayClause {
    std::vector<GrayAtom> atoms;
    bool eval(const std::vector<int>& x, const std::vector<int>& y,
              const std::vector<int>& q) const;
};

struct GrayDecomposition {
    int length = 0;
    GrayClause unit;                ///< Q_1 = +1
    std::vector<GrayClause> clauses; ///< 5 per position
    bool eval(const std::vector<int>& x, const std::vector<int>& y,
              const std::vector<int>& q) const;
    /// True iff some state sequence q satisfies the whole decomposition.
    bool satisfiable_for(const std::vector<int>& x, const std::vector<int>& y) const;
};

/// Clause schema over {X_i, Y_i, Q_i} for <X> gray-le <Y> on binary words,
/// including the equal-zeros state-preserving transition.
GrayDecomposition gray_decomposition_clauses(int length);

/// CNF rendering of the decomposition in DIMACS format. The ternary Q
/// variables are one-hot encoded; the header comments document the
/// variable numbering.
std::string gray_decomposition_dimacs(int length);

} // namespace symbreak::ordering

#endif
