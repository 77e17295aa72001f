#include "symbreak/models.hpp"

namespace symbreak::models {

using engine::LinRel;
using engine::Model;
using engine::Shape;
using engine::VarId;

const char* model_label(ModelKind kind) {
    switch (kind) {
    case ModelKind::StillLife: return "still-life";
    case ModelKind::Labs: return "labs";
    case ModelKind::QueensArmies: return "queens-armies";
    case ModelKind::FreeMatrix: return "free-matrix";
    }
    return "?";
}

symmetry::SymmetryGroup natural_group(ModelKind kind, int n) {
    switch (kind) {
    case ModelKind::StillLife: return symmetry::square_symmetries(n);
    case ModelKind::Labs: return symmetry::labs_symmetries(n);
    case ModelKind::QueensArmies: return symmetry::queens_symmetries(n);
    case ModelKind::FreeMatrix: return symmetry::rowcol_symmetries(n, n);
    }
    throw InputError("unknown model kind");
}

Instance build_still_life(int n) {
    if (n < 1) throw InputError("still life: n must be positive");
    Instance inst{Model{}, ModelKind::StillLife, n, 2};
    Model& m = inst.model;

    // Full grid including the dead border ring, row-major.
    int g = n + 2;
    std::vector<VarId> grid(g * g);
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) {
            bool border = r == 0 || c == 0 || r == g - 1 || c == g - 1;
            grid[r * g + c] = m.add_var(border ? Domain::singleton(2, 0) : Domain(2));
        }

    // Stability rule per cell, over the cell and its in-grid neighbours.
    // Neighbours outside the grid are dead and add nothing to the sum.
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) {
            std::vector<VarId> scope{grid[r * g + c]};
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    int rr = r + dr, cc = c + dc;
                    if (rr < 0 || cc < 0 || rr >= g || cc >= g) continue;
                    scope.push_back(grid[rr * g + cc]);
                }
            std::vector<std::vector<int>> tuples;
            for (int bits = 0; bits < (1 << scope.size()); ++bits) {
                int cell = bits & 1;
                int sum = __builtin_popcount(bits >> 1);
                bool ok = cell == 1 ? (sum == 2 || sum == 3) : (sum != 3);
                if (!ok) continue;
                std::vector<int> t(scope.size());
                for (size_t i = 0; i < scope.size(); ++i) t[i] = (bits >> i) & 1;
                tuples.push_back(std::move(t));
            }
            engine::post(m, engine::make_table(scope, std::move(tuples)));
        }

    // Decision variables: the inner n x n board.
    m.shape = Shape::matrix(n, n);
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) m.decision_vars.push_back(grid[r * g + c]);

    VarId live = m.add_var(Domain(n * n + 1));
    std::vector<VarId> sum_vars = m.decision_vars;
    std::vector<int> coeffs(sum_vars.size(), 1);
    sum_vars.push_back(live);
    coeffs.push_back(-1);
    engine::post(m, engine::make_linear(sum_vars, coeffs, LinRel::Eq, 0));
    m.objective = engine::Objective{live, engine::Sense::Maximize};
    return inst;
}

Instance build_labs(int n) {
    if (n < 2) throw InputError("labs: n must be at least 2");
    Instance inst{Model{}, ModelKind::Labs, n, 2};
    Model& m = inst.model;

    std::vector<VarId> s(n);
    for (int i = 0; i < n; ++i) s[i] = m.add_var(Domain(2));
    m.shape = Shape::sequence(n);
    m.decision_vars = s;

    // t[k][i] = (s_i != s_{i+k}); the k-th row sum gives the k-th
    // autocorrelation as C_k = (n-k) - 2*S_k, and the energy adds C_k^2.
    const std::vector<std::vector<int>> xor_tuples{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    int max_energy = 0;
    for (int k = 1; k <= n - 1; ++k) max_energy += (n - k) * (n - k);

    std::vector<VarId> energy_terms;
    for (int k = 1; k <= n - 1; ++k) {
        int len = n - k;
        std::vector<VarId> row(len);
        for (int i = 0; i < len; ++i) {
            row[i] = m.add_var(Domain(2));
            engine::post(m, engine::make_table({s[i], s[i + k], row[i]}, xor_tuples));
        }
        VarId row_sum = m.add_var(Domain(len + 1));
        std::vector<VarId> vars = row;
        std::vector<int> coeffs(len, 1);
        vars.push_back(row_sum);
        coeffs.push_back(-1);
        engine::post(m, engine::make_linear(vars, coeffs, LinRel::Eq, 0));

        VarId sq = m.add_var(Domain(len * len + 1));
        std::vector<std::vector<int>> sq_tuples;
        for (int v = 0; v <= len; ++v) {
            int corr = len - 2 * v;
            sq_tuples.push_back({v, corr * corr});
        }
        engine::post(m, engine::make_table({row_sum, sq}, std::move(sq_tuples)));
        energy_terms.push_back(sq);
    }

    VarId energy = m.add_var(Domain(max_energy + 1));
    std::vector<int> coeffs(energy_terms.size(), 1);
    energy_terms.push_back(energy);
    coeffs.push_back(-1);
    engine::post(m, engine::make_linear(energy_terms, coeffs, LinRel::Eq, 0));
    m.objective = engine::Objective{energy, engine::Sense::Minimize};
    return inst;
}

Instance build_queens_armies(int n) {
    if (n < 1) throw InputError("queens armies: n must be positive");
    Instance inst{Model{}, ModelKind::QueensArmies, n, 3};
    Model& m = inst.model;

    std::vector<VarId> x(n * n);
    for (auto& v : x) v = m.add_var(Domain(3));
    m.shape = Shape::matrix(n, n);
    m.decision_vars = x;

    // No line may carry both colors: forbid (1,2) and (2,1) on every pair
    // of cells sharing a row, column or diagonal. Blocking is irrelevant:
    // any blocker on such a line is itself adjacent-on-line to both colors.
    std::vector<std::vector<int>> peace;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!((a == 1 && b == 2) || (a == 2 && b == 1))) peace.push_back({a, b});
    for (int i = 0; i < n * n; ++i)
        for (int j = i + 1; j < n * n; ++j) {
            int r1 = i / n, c1 = i % n, r2 = j / n, c2 = j % n;
            bool shared = r1 == r2 || c1 == c2 || (r1 - r2 == c1 - c2) || (r1 - r2 == c2 - c1);
            if (shared) engine::post(m, engine::make_table({x[i], x[j]}, peace));
        }

    auto count_of = [&](int color) {
        std::vector<VarId> indicators;
        for (VarId cell : x) {
            VarId b = m.add_var(Domain(2));
            engine::post(m, engine::make_indicator(cell, color, b, 3));
            indicators.push_back(b);
        }
        VarId total = m.add_var(Domain(n * n + 1));
        std::vector<int> coeffs(indicators.size(), 1);
        indicators.push_back(total);
        coeffs.push_back(-1);
        engine::post(m, engine::make_linear(indicators, coeffs, LinRel::Eq, 0));
        return total;
    };
    VarId white = count_of(1);
    VarId black = count_of(2);
    engine::post(m, engine::make_linear({white, black}, {1, -1}, LinRel::Eq, 0));
    m.objective = engine::Objective{white, engine::Sense::Maximize};
    return inst;
}

Instance build_free_matrix(int n, int m_cols) {
    if (n < 1 || m_cols < 1) throw InputError("free matrix: empty shape");
    Instance inst{Model{}, ModelKind::FreeMatrix, n, 2};
    Model& m = inst.model;
    for (int i = 0; i < n * m_cols; ++i) m.decision_vars.push_back(m.add_var(Domain(2)));
    m.shape = Shape::matrix(n, m_cols);
    return inst;
}

Instance build(ModelKind kind, int n) {
    switch (kind) {
    case ModelKind::StillLife: return build_still_life(n);
    case ModelKind::Labs: return build_labs(n);
    case ModelKind::QueensArmies: return build_queens_armies(n);
    case ModelKind::FreeMatrix: return build_free_matrix(n, n);
    }
    throw InputError("unknown model kind");
}

} // namespace symbreak::models
