#include "symbreak/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace symbreak::symmetry {

namespace {

constexpr int kGroupGuard = 10000;
constexpr std::array<int, 3> kIdMap{0, 1, 2};

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

} // namespace

Symmetry Symmetry::identity(int n) {
    return {identity_perm(n), std::vector<std::array<int, 3>>(n, kIdMap)};
}

bool Symmetry::is_identity() const {
    for (int i = 0; i < int(var_perm.size()); ++i)
        if (var_perm[i] != i || value_maps[i] != kIdMap) return false;
    return true;
}

std::vector<int> apply(const Symmetry& s, const std::vector<int>& a) {
    if (a.size() != s.var_perm.size())
        throw InputError("apply: assignment does not cover all variables");
    std::vector<int> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        int src = s.var_perm[i];
        out[i] = s.value_maps[src][a[src]];
    }
    return out;
}

Symmetry compose(const Symmetry& s, const Symmetry& t) {
    int n = int(s.var_perm.size());
    Symmetry out;
    out.var_perm.resize(n);
    out.value_maps.resize(n);
    for (int i = 0; i < n; ++i) {
        int mid = s.var_perm[i];
        int src = t.var_perm[mid];
        out.var_perm[i] = src;
        for (int v = 0; v < 3; ++v) out.value_maps[src][v] = s.value_maps[mid][t.value_maps[src][v]];
    }
    return out;
}

bool SymmetryGroup::contains(const Symmetry& s) const {
    return std::find(elements.begin(), elements.end(), s) != elements.end();
}

bool SymmetryGroup::is_group() const {
    if (elements.empty() || !elements.front().is_identity()) return false;
    for (const auto& s : elements) {
        bool has_inverse = false;
        for (const auto& t : elements) {
            Symmetry st = compose(s, t);
            if (!contains(st)) return false;
            if (st.is_identity()) has_inverse = true;
        }
        if (!has_inverse) return false;
    }
    return true;
}

namespace {

// Builds a cell-index symmetry of an n x n board from a coordinate map
// (r, c) -> source cell.
template <typename Fn>
Symmetry cell_symmetry(int n, Fn&& source_of) {
    Symmetry s = Symmetry::identity(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            auto [sr, sc] = source_of(r, c);
            s.var_perm[r * n + c] = sr * n + sc;
        }
    return s;
}

} // namespace

SymmetryGroup square_symmetries(int n) {
    if (n < 1) throw InputError("square_symmetries: n must be positive");
    using P = std::pair<int, int>;
    SymmetryGroup g;
    g.elements = {
        cell_symmetry(n, [&](int r, int c) { return P{r, c}; }),                     // identity
        cell_symmetry(n, [&](int r, int c) { return P{n - 1 - c, r}; }),             // rot 90
        cell_symmetry(n, [&](int r, int c) { return P{n - 1 - r, n - 1 - c}; }),     // rot 180
        cell_symmetry(n, [&](int r, int c) { return P{c, n - 1 - r}; }),             // rot 270
        cell_symmetry(n, [&](int r, int c) { return P{n - 1 - r, c}; }),             // flip rows
        cell_symmetry(n, [&](int r, int c) { return P{r, n - 1 - c}; }),             // flip cols
        cell_symmetry(n, [&](int r, int c) { return P{c, r}; }),                     // transpose
        cell_symmetry(n, [&](int r, int c) { return P{n - 1 - c, n - 1 - r}; }),     // anti-transpose
    };
    return g;
}

SymmetryGroup labs_symmetries(int n) {
    if (n < 1) throw InputError("labs_symmetries: n must be positive");
    constexpr std::array<int, 3> kFlip{1, 0, 2};

    Symmetry reverse = Symmetry::identity(n);
    for (int i = 0; i < n; ++i) reverse.var_perm[i] = n - 1 - i;

    auto inversion = [&](int parity_mod_2) { // flip positions with (1-based pos) % 2 == parity
        Symmetry s = Symmetry::identity(n);
        for (int i = 0; i < n; ++i)
            if ((i + 1) % 2 == parity_mod_2) s.value_maps[i] = kFlip;
        return s;
    };
    Symmetry invert_all = Symmetry::identity(n);
    for (int i = 0; i < n; ++i) invert_all.value_maps[i] = kFlip;

    std::vector<Symmetry> inversions = {Symmetry::identity(n), invert_all, inversion(0),
                                        inversion(1)}; // none, all, even, odd (1-based)
    SymmetryGroup g;
    for (const auto& rev : {Symmetry::identity(n), reverse})
        for (const auto& inv : inversions) g.elements.push_back(compose(inv, rev));
    return g;
}

SymmetryGroup queens_symmetries(int n) {
    constexpr std::array<int, 3> kColorSwap{0, 2, 1};
    SymmetryGroup square = square_symmetries(n);
    Symmetry swap = Symmetry::identity(n * n);
    for (auto& m : swap.value_maps) m = kColorSwap;
    SymmetryGroup g;
    for (const auto& s : square.elements) {
        g.elements.push_back(s);
        g.elements.push_back(compose(swap, s));
    }
    // Keep identity first.
    std::stable_partition(g.elements.begin(), g.elements.end(),
                          [](const Symmetry& s) { return s.is_identity(); });
    return g;
}

SymmetryGroup rowcol_symmetries(int n, int m) {
    if (n < 1 || m < 1) throw InputError("rowcol_symmetries: empty shape");
    long long size = 1;
    for (int i = 2; i <= n; ++i) size *= i;
    for (int i = 2; i <= m; ++i) size *= i;
    if (size > kGroupGuard)
        throw GuardError("rowcol_symmetries: group of size " + std::to_string(size) +
                         " exceeds the guard of " + std::to_string(kGroupGuard));

    std::vector<int> row_perm = identity_perm(n);
    SymmetryGroup g;
    do {
        std::vector<int> col_perm = identity_perm(m);
        do {
            Symmetry s = Symmetry::identity(n * m);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < m; ++c) s.var_perm[r * m + c] = row_perm[r] * m + col_perm[c];
            g.elements.push_back(std::move(s));
        } while (std::next_permutation(col_perm.begin(), col_perm.end()));
    } while (std::next_permutation(row_perm.begin(), row_perm.end()));
    std::stable_partition(g.elements.begin(), g.elements.end(),
                          [](const Symmetry& s) { return s.is_identity(); });
    return g;
}

// --- Linearizations ----------------------------------------------------------

const char* scheme_label(Scheme s) {
    switch (s) {
    case Scheme::Row: return "row";
    case Scheme::Col: return "col";
    case Scheme::Snake: return "snake";
    case Scheme::ColSnake: return "col-snake";
    case Scheme::SpiralIn: return "spiral-in";
    case Scheme::SpiralOut: return "spiral-out";
    case Scheme::Left2Right: return "left2right";
    case Scheme::Right2Left: return "right2left";
    case Scheme::OutsideIn: return "outside-in";
    case Scheme::InsideOut: return "inside-out";
    }
    return "?";
}

namespace {

std::vector<int> spiral_in_order(int rows, int cols) {
    std::vector<int> order;
    order.reserve(rows * cols);
    int top = 0, bottom = rows - 1, left = 0, right = cols - 1;
    while (top <= bottom && left <= right) {
        for (int c = left; c <= right; ++c) order.push_back(top * cols + c);
        for (int r = top + 1; r <= bottom; ++r) order.push_back(r * cols + right);
        if (top < bottom)
            for (int c = right - 1; c >= left; --c) order.push_back(bottom * cols + c);
        if (left < right)
            for (int r = bottom - 1; r > top; --r) order.push_back(r * cols + left);
        ++top, --bottom, ++left, --right;
    }
    return order;
}

} // namespace

Linearization linearize(const engine::Shape& shape, Scheme scheme) {
    using K = engine::Shape::Kind;
    Linearization lin;
    lin.scheme = scheme;
    bool matrix_scheme = scheme == Scheme::Row || scheme == Scheme::Col ||
                         scheme == Scheme::Snake || scheme == Scheme::ColSnake ||
                         scheme == Scheme::SpiralIn || scheme == Scheme::SpiralOut;
    if (matrix_scheme != (shape.kind == K::Matrix))
        throw InputError(std::string("linearize: scheme '") + scheme_label(scheme) +
                         "' does not fit the shape");
    int rows = shape.rows, cols = shape.cols;
    switch (scheme) {
    case Scheme::Row:
        lin.order = std::vector<int>(rows * cols);
        std::iota(lin.order.begin(), lin.order.end(), 0);
        break;
    case Scheme::Col:
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) lin.order.push_back(r * cols + c);
        break;
    case Scheme::Snake:
        for (int r = 0; r < rows; ++r) {
            if (r % 2 == 0)
                for (int c = 0; c < cols; ++c) lin.order.push_back(r * cols + c);
            else
                for (int c = cols - 1; c >= 0; --c) lin.order.push_back(r * cols + c);
        }
        break;
    case Scheme::ColSnake:
        for (int c = 0; c < cols; ++c) {
            if (c % 2 == 0)
                for (int r = 0; r < rows; ++r) lin.order.push_back(r * cols + c);
            else
                for (int r = rows - 1; r >= 0; --r) lin.order.push_back(r * cols + c);
        }
        break;
    case Scheme::SpiralIn:
        lin.order = spiral_in_order(rows, cols);
        break;
    case Scheme::SpiralOut:
        lin.order = spiral_in_order(rows, cols);
        std::reverse(lin.order.begin(), lin.order.end());
        break;
    case Scheme::Left2Right:
        lin.order = std::vector<int>(rows);
        std::iota(lin.order.begin(), lin.order.end(), 0);
        break;
    case Scheme::Right2Left:
        for (int i = rows - 1; i >= 0; --i) lin.order.push_back(i);
        break;
    case Scheme::OutsideIn:
        for (int i = 0; i < rows / 2; ++i) {
            lin.order.push_back(i);
            lin.order.push_back(rows - 1 - i);
        }
        if (rows % 2 == 1) lin.order.push_back(rows / 2);
        break;
    case Scheme::InsideOut: {
        Linearization outer = linearize(shape, Scheme::OutsideIn);
        lin.order.assign(outer.order.rbegin(), outer.order.rend());
        break;
    }
    }
    return lin;
}

// --- Symmetry-breaking constraint generation ---------------------------------

namespace {

int decision_radix(const engine::Model& model) {
    int radix = 2;
    for (engine::VarId v : model.decision_vars)
        radix = std::max(radix, model.init_domains[v].cap());
    return radix;
}

void require_shape(const engine::Model& model, const char* what) {
    if (!model.shape || model.shape->kind != engine::Shape::Kind::Matrix)
        throw InputError(std::string(what) + ": model has no matrix shape");
}

// Column `col` of an r x c position grid read downward or upward.
std::vector<int> column_positions(int rows, int cols, int col, bool downward) {
    std::vector<int> out;
    for (int r = 0; r < rows; ++r) out.push_back((downward ? r : rows - 1 - r) * cols + col);
    return out;
}

std::vector<ordering::VarView> views_at(const engine::Model& model,
                                        const std::vector<int>& positions) {
    std::vector<ordering::VarView> views;
    views.reserve(positions.size());
    for (int pos : positions) views.push_back(ordering::VarView::plain(model.decision_vars[pos]));
    return views;
}

void post_lex_on_positions(engine::Model& model, const std::vector<int>& lhs,
                           const std::vector<int>& rhs) {
    int radix = decision_radix(model);
    engine::post(model,
                 ordering::lex_leq_propagator(views_at(model, lhs), views_at(model, rhs), radix));
}

} // namespace

void post_leader_constraints(engine::Model& model, const SymmetryGroup& group,
                             ordering::OrderingKind kind, const Linearization& lin,
                             bool strict) {
    if (group.elements.empty() || !group.elements.front().is_identity())
        throw InputError("post_leader_constraints: group must include the identity first");
    int n_positions = int(model.decision_vars.size());
    if (int(lin.order.size()) != n_positions)
        throw InputError("post_leader_constraints: linearization does not cover decision vars");
    int radix = decision_radix(model);
    for (engine::VarId v : model.decision_vars)
        if (model.init_domains[v].cap() > radix || radix > 3)
            throw InputError("post_leader_constraints: decision domain exceeds ordering radix");

    using ordering::OrderingKind;
    bool anti = kind == OrderingKind::AntiLex || kind == OrderingKind::AntiGray;
    bool gray = kind == OrderingKind::Gray || kind == OrderingKind::AntiGray;

    for (const auto& sigma : group.elements) {
        if (sigma.is_identity()) continue;
        std::vector<ordering::VarView> vec, image;
        vec.reserve(n_positions);
        image.reserve(n_positions);
        for (int t = 0; t < n_positions; ++t) {
            int pos = lin.order[t];
            vec.push_back(ordering::VarView::plain(model.decision_vars[pos]));
            int src = sigma.var_perm[pos];
            ordering::VarView img;
            img.var = model.decision_vars[src];
            img.map = sigma.value_maps[src];
            image.push_back(img);
        }
        // vec <=_anti image  <=>  image <=_base vec
        auto& lhs = anti ? image : vec;
        auto& rhs = anti ? vec : image;
        engine::post(model, gray ? ordering::gray_leq_propagator(lhs, rhs, radix, strict)
                                 : ordering::lex_leq_propagator(lhs, rhs, radix, strict));
    }
}

void post_doublelex(engine::Model& model) {
    require_shape(model, "post_doublelex");
    int rows = model.shape->rows, cols = model.shape->cols;
    for (int r = 0; r + 1 < rows; ++r) {
        std::vector<int> a, b;
        for (int c = 0; c < cols; ++c) {
            a.push_back(r * cols + c);
            b.push_back((r + 1) * cols + c);
        }
        post_lex_on_positions(model, a, b);
    }
    for (int c = 0; c + 1 < cols; ++c)
        post_lex_on_positions(model, column_positions(rows, cols, c, true),
                              column_positions(rows, cols, c + 1, true));
}

void post_snakelex(engine::Model& model, SnakeLexVariant variant) {
    require_shape(model, "post_snakelex");
    int rows = model.shape->rows, cols = model.shape->cols;

    // Position grid; the rowwise variant orders the transpose.
    auto at = [&](int r, int c) {
        return variant == SnakeLexVariant::Columnwise ? r * cols + c : c * cols + r;
    };
    int n = variant == SnakeLexVariant::Columnwise ? rows : cols;
    int m = variant == SnakeLexVariant::Columnwise ? cols : rows;

    auto column = [&](int col, bool downward) {
        std::vector<int> out;
        for (int r = 0; r < n; ++r) out.push_back(at(downward ? r : n - 1 - r, col));
        return out;
    };

    // Each column against its next two, read in the first column's snake
    // direction (downward for odd columns, upward for even, 1-based).
    for (int c = 0; c < m - 1; ++c) {
        bool down = c % 2 == 0;
        post_lex_on_positions(model, column(c, down), column(c + 1, down));
        if (c + 2 < m) post_lex_on_positions(model, column(c, down), column(c + 2, down));
    }
    // Intertwined rows: odd columns take row i, even columns row i+1 on the
    // left, swapped on the right (1-based columns).
    for (int r = 0; r + 1 < n; ++r) {
        std::vector<int> lhs, rhs;
        for (int c = 0; c < m; ++c) {
            bool odd_col = c % 2 == 0;
            lhs.push_back(at(odd_col ? r : r + 1, c));
            rhs.push_back(at(odd_col ? r + 1 : r, c));
        }
        post_lex_on_positions(model, lhs, rhs);
    }
}

} // namespace symbreak::symmetry
