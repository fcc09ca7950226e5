#pragma once

#include <optional>
#include <set>

#include "permlogic/perm.hpp"

namespace permlogic {

/// Square grid S x T of positive row and column coordinates.
struct GridDomain {
    std::set<int> rows;
    std::set<int> cols;

    int size() const { return static_cast<int>(rows.size()); }
    auto operator<=>(const GridDomain&) const = default;
};

/// Throws std::invalid_argument unless |rows| == |cols| >= 1 and all
/// coordinates are positive.
void validate_domain(const GridDomain& grid);

/// A set of forbidden cells with at most k per row and per column.
struct Constraint {
    GridDomain domain;
    std::set<Element> forbidden;
    int k = 0;
};

/// Throws std::invalid_argument unless the domain is valid, every forbidden
/// cell lies on the grid, and no row or column holds more than k of them.
void validate_constraint(const Constraint& z);

/// A permutation over a grid: one element per row and per column.
struct GridPermutation {
    GridDomain domain;
    std::set<Element> elements;

    auto operator<=>(const GridPermutation&) const = default;
};

/// Throws std::invalid_argument unless elements form a bijection between the
/// domain's rows and columns.
void validate_grid_permutation(const GridPermutation& gp);

/// Finds a permutation over the grid avoiding every forbidden cell, or
/// returns nullopt when none exists. Deterministic: returns the
/// lexicographically least element set under row order, found by greedy
/// column choice with bipartite-matching feasibility checks.
std::optional<GridPermutation> construct_permutation(const Constraint& z);

/// Sufficient condition for a constrained permutation to exist regardless of
/// where the forbidden cells sit: n > 2k.
bool guaranteed_exists(int n, int k);

/// Builds a permutation over the grid such that no element is diagonally
/// adjacent (|dr| = |dc| = 1) to a cell of `placed` or to another element.
/// Two-phase construction: first a matching over the odd-rank subgrid, then
/// one over the even-rank subgrid avoiding the first phase's output as well.
/// Requires at least `min_lines` rows so each phase is guaranteed feasible;
/// throws std::runtime_error if a phase's matching fails anyway.
GridPermutation sparse_layer(const GridDomain& grid, const std::set<Element>& placed,
                             int min_lines = 18);

}  // namespace permlogic
