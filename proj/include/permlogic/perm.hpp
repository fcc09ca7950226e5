#pragma once

// Valued and labeled permutations: neighborhood types, maximal blocks,
// fingerprints, summaries, projections, the two surgery operations
// (cut_region, replace_block), and the minimal-model block-size bound.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace permlogic {

using Letter = std::string;
using Valuation = std::set<Letter>;

/// A valuation or the absent marker (block touching the permutation's edge).
using Boundary = std::optional<Valuation>;

struct Element {
    int r = 0;
    int c = 0;
    auto operator<=>(const Element&) const = default;
};

/// The ten neighborhood types of an ordered pair of permutation elements.
enum class NType {
    Dot,  // same element
    NE,   // r'-r = -1, c'-c = +1
    N,    // r'-r = -1, |c'-c| > 1
    NW,   // r'-r = -1, c'-c = -1
    W,    // |r'-r| > 1, c'-c = -1
    SW,   // r'-r = +1, c'-c = -1
    S,    // r'-r = +1, |c'-c| > 1
    SE,   // r'-r = +1, c'-c = +1
    E,    // |r'-r| > 1, c'-c = +1
    Inf,  // |r'-r| > 1 and |c'-c| > 1
};

std::string to_string(NType t);

/// Classify the ordered pair (a, b) of elements of one permutation.
/// Throws std::invalid_argument if the pair shares exactly one coordinate
/// (such a pair cannot belong to a permutation).
NType neighborhood_type(const Element& a, const Element& b);

/// A permutation with one valuation (set of letters) per element.
/// Rows and columns are 1-indexed; index 0 of the vectors is unused.
struct ValuedPermutation {
    int n = 0;
    std::vector<int> row_to_col;     // size n+1
    std::vector<Valuation> sigma;    // by row, size n+1

    int col_to_row(int c) const;
    bool has_element(int r, int c) const;
    Element element_in_row(int r) const { return {r, row_to_col[r]}; }
    Element element_in_col(int c) const { int r = col_to_row(c); return {r, row_to_col[r]}; }
    const Valuation& sigma_at(const Element& e) const;
    std::vector<Element> elements() const;  // in row order
};

/// Validates bijectivity and sizing; throws std::invalid_argument.
void validate_model(const ValuedPermutation& m);

/// Convenience constructor from (row, col, valuation) triples.
ValuedPermutation make_model(int n, const std::vector<std::pair<Element, Valuation>>& entries);

/// neighborhood_type with membership validation against m.
NType neighborhood_type(const ValuedPermutation& m, const Element& a, const Element& b);

/// A permutation with one alphabet letter per element.
struct LabeledPermutation {
    int n = 0;
    std::vector<int> row_to_col;       // size n+1
    std::vector<std::string> labels;   // by row, size n+1

    int col_to_row(int c) const;
};

void validate_labeled(const LabeledPermutation& lp);

enum class BlockType { Dot, SE, NE };

std::string to_string(BlockType t);

/// A maximal diagonal run. The region is [i, i+k] x [j, j+k]; the block
/// holds k+1 elements ((i+l, j+l) for SE, (i+l, j+k-l) for NE, the single
/// (i, j) for Dot with k = 0).
struct Block {
    int i = 0;   // top row
    int j = 0;   // left column
    int k = 0;   // region extent (element count minus one)
    BlockType btype = BlockType::Dot;

    std::vector<Element> elements() const;  // in row order
    auto operator<=>(const Block&) const = default;
};

/// Partition of the permutation's elements into maximal blocks, ordered by
/// top row.
std::vector<Block> maximal_blocks(int n, const std::vector<int>& row_to_col);
std::vector<Block> maximal_blocks(const ValuedPermutation& m);
std::vector<Block> maximal_blocks(const LabeledPermutation& lp);

/// Block type, boundary valuations just outside the block's region (absent at
/// the permutation's edge), and the interior valuations in row order.
struct Fingerprint {
    BlockType btype = BlockType::Dot;
    Boundary bR_minus, bR_plus;   // row neighbors: rows i-1 and i+k+1
    Boundary bD_minus, bD_plus;   // column neighbors: columns j-1 and j+k+1
    std::vector<Valuation> seq;   // interior valuations, row order

    /// Row word bR_minus . seq . bR_plus (boundaries kept as entries).
    std::vector<Boundary> tau_row() const;
    /// Column word bD_minus . seq' . bD_plus, seq' reversed for NE blocks.
    std::vector<Boundary> tau_col() const;

    auto operator<=>(const Fingerprint&) const = default;
};

std::string to_string(const Fingerprint& fp);

/// Fingerprint of a maximal block of m. Throws std::invalid_argument when b
/// is not one of m's maximal blocks.
Fingerprint fingerprint_of(const ValuedPermutation& m, const Block& b);

enum class ProjectionDir { Row, Col };

/// Labels in row order (Row) or column order (Col).
std::vector<std::string> projection(const LabeledPermutation& lp, ProjectionDir dir);

/// Fingerprints of all maximal blocks plus the valuation-count buckets:
/// vi holds the valuations occurring exactly i times in sigma.
struct Summary {
    std::set<Fingerprint> fingerprints;
    std::set<Valuation> yhat;  // every valuation occurring in the model
    std::set<Valuation> v1, v2, v3;

    auto operator<=>(const Summary&) const = default;
};

Summary summary_of(const ValuedPermutation& m);

/// Removes every element in [r+1, r2] x [c+1, c2] and renumbers the
/// surviving rows and columns contiguously (order-preserving).
/// Requires (r,c), (r2,c2) in pi with r < r2, c < c2.
ValuedPermutation cut_region(const ValuedPermutation& m, int r, int c, int r2, int c2);

/// Replaces the interior valuations of a maximal block by donor.seq.
/// Requires the donor fingerprint to share the target's header (block type
/// and all four boundary valuations) and its size.
ValuedPermutation replace_block(const ValuedPermutation& m, const Block& target,
                                const Fingerprint& donor);

/// Upper bound on the block size of minimal models with the given number of
/// distinct letters. Throws std::overflow_error when the value exceeds the
/// native 64-bit range.
std::uint64_t block_bound(int letter_count);

}  // namespace permlogic
