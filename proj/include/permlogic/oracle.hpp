#pragma once

// Brute-force baselines: exhaustive satisfiability search over all valued
// permutations, an independently written formula evaluator, and helpers to
// expand models with the fresh letters of a normal-form conversion.
// Everything here trades speed for obvious correctness; intended for desk
// scale and for validating the main pipeline.

#include <chrono>
#include <optional>

#include "permlogic/automata.hpp"
#include "permlogic/logic.hpp"
#include "permlogic/perm.hpp"
#include "permlogic/rlp.hpp"

namespace permlogic {

/// A third verdict distinct from SAT/no-model: the time budget ran out.
enum class BruteVerdict { Sat, NoModelWithinBound, TimedOut };

struct BruteSatResult {
    BruteVerdict verdict = BruteVerdict::NoModelWithinBound;
    std::optional<ValuedPermutation> model;  // set iff verdict == Sat
};

/// Independently written recursive evaluator (no code shared with
/// eval_formula); used to cross-check the main evaluator.
bool naive_eval(const ValuedPermutation& m, const FormulaPtr& f);

/// Enumerates every model of size 1..max_n over the letters of f, in
/// canonical order (size ascending; permutations lexicographic by the
/// row-to-column vector; valuations in mixed-radix order by sorted-letter
/// bitmask, row by row), and returns the first satisfying one. No symmetry
/// pruning: the first hit is a canonical witness.
BruteSatResult brute_sat(const FormulaPtr& f, int max_n,
                         std::optional<std::chrono::milliseconds> time_cap = std::nullopt);

/// Extends every valuation of a model of the original formula with the fresh
/// letters of snf, each defined by the truth of its defining subformula.
/// The result satisfies snf whenever m satisfies the original formula.
ValuedPermutation expand_with_fresh(const ValuedPermutation& m, const SnfFormula& snf);

/// Removes all letters outside keep from every valuation.
ValuedPermutation erase_letters(const ValuedPermutation& m, const std::set<Letter>& keep);

/// Parikh vectors of all accepted words of length <= max_total, by plain
/// word enumeration and subset simulation.
std::set<ParikhVector> brute_parikh(const Nfa& a, int max_total);

/// Exhaustive search for a witness of the instance among all labeled
/// permutations of size 1..max_n, in canonical order (size, then column
/// arrangement, then labels row by row in alphabet order).
std::optional<LabeledPermutation> brute_rlp(const RlpInstance& inst, int max_n);

}  // namespace permlogic
