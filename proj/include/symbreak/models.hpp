#ifndef SYMBREAK_MODELS_HPP
#define SYMBREAK_MODELS_HPP

#include <string>

#include "symbreak/engine.hpp"
#include "symbreak/symmetry.hpp"

namespace symbreak::models {

enum class ModelKind { StillLife, Labs, QueensArmies, FreeMatrix };

const char* model_label(ModelKind kind);

/// A benchmark model plus the metadata the harness needs: the problem
/// identity, instance size, and its natural symmetry group.
struct Instance {
    engine::Model model;
    ModelKind kind;
    int n = 0;
    int radix = 2; ///< decision-variable radix
};

symmetry::SymmetryGroup natural_group(ModelKind kind, int n);

/// Maximum-density still life on an n x n board. The board is embedded in
/// an (n+2)^2 grid whose border is fixed dead, and every grid cell carries
/// a neighborhood table: a live cell has 2 or 3 live neighbours, a dead
/// cell never has exactly 3 (outer neighbours count as dead). Objective:
/// maximize the live cells of the inner board.
Instance build_still_life(int n);

/// Low-autocorrelation binary sequence of length n. Sequence digit 0
/// stands for +1 and 1 for -1; t[k][i] = (s_i != s_{i+k}) is channeled by
/// table constraints, row sums feed the squared correlations, and the
/// energy sum is minimized.
Instance build_labs(int n);

/// Peaceable armies of queens on an n x n board of 0/1/2 cells (1 white,
/// 2 black). Every cell pair sharing a row, column or diagonal forbids
/// opposite colors; army sizes are channeled and constrained equal.
/// Objective: maximize the white count.
Instance build_queens_armies(int n);

/// Unconstrained n x m binary matrix; the canvas for verifying row/column
/// symmetry breaking.
Instance build_free_matrix(int n, int m);

Instance build(ModelKind kind, int n);

} // namespace symbreak::models

#endif
