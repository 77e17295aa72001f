#ifndef SYMBREAK_SYMMETRY_HPP
#define SYMBREAK_SYMMETRY_HPP

#include <array>
#include <string>
#include <vector>

#include "symbreak/engine.hpp"
#include "symbreak/ordering.hpp"

namespace symbreak::symmetry {

/// A variable permutation paired with per-variable value bijections.
/// Applying sigma reads an assignment through the symmetry:
///   result[i] = value_map[var_perm[i]][ a[var_perm[i]] ]
/// so posting vec <= apply(sigma, vec) realizes the leader constraint.
struct Symmetry {
    std::vector<int> var_perm;                 ///< result position -> source position
    std::vector<std::array<int, 3>> value_maps; ///< per source position

    static Symmetry identity(int n);
    bool is_identity() const;
    bool operator==(const Symmetry&) const = default;
};

std::vector<int> apply(const Symmetry& s, const std::vector<int>& assignment);

/// compose(s, t) applies t first, then s: apply(compose(s,t), a) == apply(s, apply(t, a)).
Symmetry compose(const Symmetry& s, const Symmetry& t);

/// Explicit element list, identity first.
struct SymmetryGroup {
    std::vector<Symmetry> elements;

    int size() const { return int(elements.size()); }
    bool contains(const Symmetry& s) const;
    /// Closure under composition and presence of inverses and identity.
    bool is_group() const;
};

/// The 8 symmetries of the n x n board: identity, three rotations and
/// four reflections, with identity value maps.
SymmetryGroup square_symmetries(int n);

/// The 8 sequence symmetries that preserve autocorrelation energy:
/// {identity, reverse} x {none, invert all, invert even, invert odd},
/// with even/odd taken over 1-based positions.
SymmetryGroup labs_symmetries(int n);

/// square_symmetries x {identity, swap colors 1<->2}: 16 elements.
SymmetryGroup queens_symmetries(int n);

/// All row x column permutations of an n x m matrix; guarded for oracle
/// use (throws GuardError when n! * m! exceeds the group-size guard).
SymmetryGroup rowcol_symmetries(int n, int m);

// --- Linearizations ----------------------------------------------------------

enum class Scheme {
    Row, Col, Snake, ColSnake, SpiralIn, SpiralOut,   // matrix schemes
    Left2Right, Right2Left, OutsideIn, InsideOut,     // sequence schemes
};

const char* scheme_label(Scheme s);

/// A fixed permutation flattening the decision variables of a shape, used
/// by ordering constraints and static branching.
struct Linearization {
    Scheme scheme = Scheme::Row;
    std::vector<int> order; ///< vector position -> shape position
};

/// Throws InputError on an invalid scheme/shape pairing.
Linearization linearize(const engine::Shape& shape, Scheme scheme);

// --- Symmetry-breaking constraint generation ---------------------------------

/// Posts vec <=_kind sigma(vec) for every non-identity sigma, where vec is
/// the decision variables in `lin` order. Anti kinds swap the vectors, so
/// they keep the largest element of each symmetry class. `strict` posts
/// the (deliberately unsound) strict variant, for verification tooling.
void post_leader_constraints(engine::Model& model, const SymmetryGroup& group,
                             ordering::OrderingKind kind, const Linearization& lin,
                             bool strict = false);

/// Lexicographic ordering of adjacent row pairs and adjacent column pairs.
void post_doublelex(engine::Model& model);

enum class SnakeLexVariant { Columnwise, Rowwise };

/// Snake-wise lex decomposition: each column is ordered against the next
/// two (both read in the first column's alternating vertical direction),
/// plus intertwined-row constraints on adjacent row pairs. The rowwise
/// variant transposes the matrix first.
void post_snakelex(engine::Model& model, SnakeLexVariant variant);

} // namespace symbreak::symmetry

#endif
