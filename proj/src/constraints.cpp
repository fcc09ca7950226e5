#include "permlogic/constraints.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace permlogic {

void validate_domain(const GridDomain& grid) {
    if (grid.rows.empty() || grid.rows.size() != grid.cols.size())
        throw std::invalid_argument("grid domain: need |rows| == |cols| >= 1");
    if (*grid.rows.begin() <= 0 || *grid.cols.begin() <= 0)
        throw std::invalid_argument("grid domain: coordinates must be positive");
}

void validate_constraint(const Constraint& z) {
    validate_domain(z.domain);
    if (z.k < 0) throw std::invalid_argument("constraint: k must be >= 0");
    std::map<int, int> per_row, per_col;
    for (const auto& cell : z.forbidden) {
        if (!z.domain.rows.count(cell.r) || !z.domain.cols.count(cell.c))
            throw std::invalid_argument("constraint: forbidden cell off the grid");
        if (++per_row[cell.r] > z.k || ++per_col[cell.c] > z.k)
            throw std::invalid_argument("constraint: a line exceeds the per-line cap");
    }
}

void validate_grid_permutation(const GridPermutation& gp) {
    validate_domain(gp.domain);
    std::set<int> rows_seen, cols_seen;
    for (const auto& cell : gp.elements) {
        if (!gp.domain.rows.count(cell.r) || !gp.domain.cols.count(cell.c))
            throw std::invalid_argument("grid permutation: element off the grid");
        if (!rows_seen.insert(cell.r).second || !cols_seen.insert(cell.c).second)
            throw std::invalid_argument("grid permutation: repeated row or column");
    }
    if (rows_seen.size() != gp.domain.rows.size())
        throw std::invalid_argument("grid permutation: not a bijection");
}

namespace {

/// Kuhn's augmenting-path step, visiting columns in ascending index order.
bool try_augment(int row, const std::vector<std::vector<bool>>& allowed,
                 const std::vector<bool>& col_banned, std::vector<int>& match_col,
                 std::vector<int>& match_row, std::vector<bool>& visited) {
    const int n = static_cast<int>(allowed.size());
    for (int j = 0; j < n; ++j) {
        if (!allowed[row][j] || col_banned[j] || visited[j]) continue;
        visited[j] = true;
        if (match_row[j] < 0 ||
            try_augment(match_row[j], allowed, col_banned, match_col, match_row, visited)) {
            match_col[row] = j;
            match_row[j] = row;
            return true;
        }
    }
    return false;
}

/// Whether rows `from..n-1` can be perfectly matched into the non-banned,
/// currently unused columns.
bool feasible(int from, const std::vector<std::vector<bool>>& allowed,
              const std::vector<bool>& col_banned) {
    const int n = static_cast<int>(allowed.size());
    std::vector<int> match_col(n, -1), match_row(n, -1);
    for (int i = from; i < n; ++i) {
        std::vector<bool> visited(n, false);
        if (!try_augment(i, allowed, col_banned, match_col, match_row, visited))
            return false;
    }
    return true;
}

}  // namespace

std::optional<GridPermutation> construct_permutation(const Constraint& z) {
    validate_constraint(z);
    const std::vector<int> rows(z.domain.rows.begin(), z.domain.rows.end());
    const std::vector<int> cols(z.domain.cols.begin(), z.domain.cols.end());
    const int n = static_cast<int>(rows.size());

    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, true));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (z.forbidden.count({rows[i], cols[j]})) allowed[i][j] = false;

    std::vector<bool> col_banned(n, false);
    if (!feasible(0, allowed, col_banned)) return std::nullopt;

    // Greedy lexicographically-least assignment; each tentative column choice
    // is kept only if the remaining rows still admit a perfect matching.
    GridPermutation out{z.domain, {}};
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int j = 0; j < n && !placed; ++j) {
            if (!allowed[i][j] || col_banned[j]) continue;
            col_banned[j] = true;
            if (feasible(i + 1, allowed, col_banned)) {
                out.elements.insert({rows[i], cols[j]});
                placed = true;
            } else {
                col_banned[j] = false;
            }
        }
        if (!placed) throw std::logic_error("construct_permutation: greedy step failed");
    }
    return out;
}

bool guaranteed_exists(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("guaranteed_exists: need n, k >= 0");
    return n > 2 * k;
}

namespace {

bool diag_adjacent(const Element& cell, const std::set<Element>& to) {
    return to.count({cell.r - 1, cell.c - 1}) || to.count({cell.r - 1, cell.c + 1}) ||
           to.count({cell.r + 1, cell.c - 1}) || to.count({cell.r + 1, cell.c + 1});
}

/// Coordinates whose rank in sorted order is odd (offset 0) or even (offset 1).
std::set<int> rank_class(const std::set<int>& line, int offset) {
    std::set<int> out;
    int rank = 0;
    for (int v : line) {
        if (rank % 2 == offset) out.insert(v);
        ++rank;
    }
    return out;
}

GridPermutation match_phase(const std::set<int>& rows, const std::set<int>& cols,
                            const std::set<Element>& avoid, const char* phase) {
    Constraint z{GridDomain{rows, cols}, {}, 0};
    std::map<int, int> per_row, per_col;
    for (int r : rows)
        for (int c : cols)
            if (diag_adjacent({r, c}, avoid)) {
                z.forbidden.insert({r, c});
                z.k = std::max({z.k, ++per_row[r], ++per_col[c]});
            }
    auto gp = construct_permutation(z);
    if (!gp)
        throw std::runtime_error(std::string("sparse_layer: ") + phase +
                                 " matching infeasible");
    return *gp;
}

}  // namespace

GridPermutation sparse_layer(const GridDomain& grid, const std::set<Element>& placed,
                             int min_lines) {
    validate_domain(grid);
    if (grid.size() < min_lines)
        throw std::invalid_argument("sparse_layer: grid smaller than the line threshold");

    const auto odd = match_phase(rank_class(grid.rows, 0), rank_class(grid.cols, 0),
                                 placed, "odd-rank phase");
    GridPermutation out{grid, odd.elements};

    const auto even_rows = rank_class(grid.rows, 1);
    if (!even_rows.empty()) {
        auto avoid = placed;
        avoid.insert(odd.elements.begin(), odd.elements.end());
        const auto even = match_phase(even_rows, rank_class(grid.cols, 1), avoid,
                                      "even-rank phase");
        out.elements.insert(even.elements.begin(), even.elements.end());
    }
    return out;
}

}  // namespace permlogic
