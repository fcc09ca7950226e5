#pragma once

// Consistency of block fingerprints with the two Scott-normal-form matrices,
// the reduction from structured satisfiability to the label-restricted
// permutation problem, and the bounded satisfiability decision built on top.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "permlogic/logic.hpp"
#include "permlogic/perm.hpp"
#include "permlogic/rlp.hpp"

namespace permlogic {

/// Valuation environment for consistency tests: every valuation occurring in
/// the model plus the buckets of those occurring exactly one, two, or three
/// times. Members of `valuations` outside every bucket occur at least four
/// times; valuations outside `valuations` do not occur at all.
struct ConsistencyContext {
    std::set<Valuation> valuations;  // all occurring valuations
    std::set<Valuation> v1, v2, v3;  // exact-count buckets, pairwise disjoint
};

/// Throws std::invalid_argument when a bucket overlaps another or contains a
/// valuation missing from `valuations`.
void validate_context(const ConsistencyContext& ctx);

/// The context carried by a model summary.
ConsistencyContext context_of(const Summary& s);

/// Whether every element of a block with fingerprint tau satisfies
/// "forall y . chi" in any model whose summary induces ctx. Pair conditions
/// cover the element itself, both in-block diagonal neighbors, the four
/// just-outside context elements, and the far (type-infinity) valuations;
/// a far check against g is imposed exactly when the context proves an
/// occurrence of g outside the element's successor window (the window holds
/// the element plus its up-to-four successor neighbors). chi must be
/// quantifier-free (std::invalid_argument otherwise).
bool consistent_universal(const Fingerprint& tau, const FormulaPtr& chi,
                          const ConsistencyContext& ctx);

/// Whether every element of a block with fingerprint tau is guaranteed some
/// witness for "exists y . psi": itself, an in-block diagonal neighbor, one
/// of the four context elements, or a far valuation whose occurrence outside
/// the element's window is certain. psi must be quantifier-free.
bool consistent_existential(const Fingerprint& tau, const FormulaPtr& psi,
                            const ConsistencyContext& ctx);

/// Conjunction over the normal form: universal consistency with snf.chi and
/// existential consistency with every entry of snf.psis.
bool consistent_with_snf(const Fingerprint& tau, const SnfFormula& snf,
                         const ConsistencyContext& ctx);

/// Canonical letter names for a summary's fingerprints: "t00", "t01", ... in
/// fingerprint order. Throws std::invalid_argument beyond 100 fingerprints.
std::vector<std::pair<Letter, Fingerprint>> fingerprint_letters(const Summary& s);

struct ReductionOutput {
    RlpInstance instance;  // alphabet letters name the summary's fingerprints
    Summary summary;
};

/// Compiles a summary into an RLP instance over its fingerprints: the row
/// language chains row words (outer boundaries absent, adjacent interiors
/// overlapping) and additionally enforces coverage of the whole fingerprint
/// set and the per-valuation occurrence buckets with counters capped at four;
/// the column language chains column words. Restrictions forbid the diagonal
/// adjacencies that would merge two blocks into a larger one. Every
/// fingerprint must be consistent with snf and the summary's context and
/// every boundary valuation must occur as an interior (std::invalid_argument
/// otherwise).
ReductionOutput reduce_to_rlp(const SnfFormula& snf, const Summary& summary);

/// Expands an RLP witness back into a concrete model: each element becomes
/// its fingerprint's block, with row ranges following the witness's row
/// order and column ranges its column order.
ValuedPermutation expand_rlp_witness(const LabeledPermutation& lp,
                                     const ReductionOutput& red);

/// Search bounds for decide_sat. max_candidates caps the number of candidate
/// block-word arrangements the summary enumeration examines; parikh_cap of 0
/// defers to the RLP solver's default.
struct SatBounds {
    int max_fingerprints = 6;                 // distinct fingerprints per summary
    int max_block_len = 3;                    // interior length per fingerprint
    int parikh_cap = 0;                       // total-length cap for the Parikh search
    std::uint64_t max_candidates = 2000000;   // enumeration step budget
};

enum class SatVerdict { Sat, UnsatWithinBounds };

std::string to_string(SatVerdict v);

struct SatResult {
    SatVerdict verdict = SatVerdict::UnsatWithinBounds;
    std::optional<ValuedPermutation> model;  // set iff verdict == Sat, verified
    SatBounds bounds;                        // echo of the search bounds
    std::uint64_t candidates = 0;            // summaries handed to the reduction
    bool exhausted = false;                  // candidate space fully enumerated
};

/// Bounded structured satisfiability: converts phi to Scott normal form,
/// enumerates candidate summaries in canonical order (total interior length
/// ascending, then composition, interior, and column-arrangement order) with
/// consistency pruning, and solves the reduced RLP instance per candidate.
/// A returned model is always verified against phi with eval_formula.
/// UnsatWithinBounds is relative to the bounds echoed in the result and to
/// the RLP solver's own search bounds. Throws std::invalid_argument on
/// non-positive bounds and propagates to_snf errors for open formulas.
SatResult decide_sat(const FormulaPtr& phi, const SatBounds& bounds = {});

}  // namespace permlogic
