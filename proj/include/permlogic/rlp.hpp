#pragma once

// Label-restricted permutation problems: decide whether some labeled
// permutation has its row projection in one regular language, its column
// projection in another, and no forbidden diagonal adjacency — and build one.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "permlogic/automata.hpp"
#include "permlogic/perm.hpp"

namespace permlogic {

/// Reserved placeholder label marking contracted heavy runs inside a guess.
inline const Letter kBox = "_";

/// Marker value in Guess::g for letters guessed to occur more than theta times.
inline constexpr int kHeavy = -1;

/// Per-letter occurrence threshold separating the light-count case analysis
/// from layer-by-layer placement; above this value every layer is feasible.
inline constexpr int RLP_THRESHOLD = 17;

/// Forbidden adjacency: no element labeled a may have an element labeled b as
/// its t-neighbor, t being one of the two diagonal types SE and NE. The
/// restriction is directional: (a, SE, b) does not forbid (b, SE, a).
struct LabelRestriction {
    Letter a;
    NType t = NType::SE;
    Letter b;
    auto operator<=>(const LabelRestriction&) const = default;
};

struct RlpInstance {
    std::vector<Letter> alphabet;  // sorted, distinct, must not contain kBox
    std::set<LabelRestriction> restrictions;
    Nfa nfa1;  // row projection language
    Nfa nfa2;  // column projection language
};

/// Throws std::invalid_argument on malformed instances (unsorted or duplicate
/// alphabet, kBox in the alphabet, restriction letters or types outside the
/// instance, NFA alphabets differing from the instance alphabet).
void validate_instance(const RlpInstance& inst);

/// Occurrence guess: g maps every alphabet letter to an exact count in
/// 0..theta or to kHeavy; small is a labeled permutation over the light
/// letters plus kBox, one box per contracted heavy run.
struct Guess {
    std::map<Letter, int> g;
    LabeledPermutation small;

    std::vector<Letter> light_letters() const;  // g(a) != kHeavy, sorted
    std::vector<Letter> heavy_letters() const;  // g(a) == kHeavy, sorted
    int light_total() const;                    // sum of the light counts
};

enum class GuessIssue {
    Ok,
    BadValue,       // some g value is outside 0..theta and is not kHeavy
    BadLabel,       // small uses a label that is neither a light letter nor kBox
    TooLarge,       // |small| exceeds (1 + s)^2 + s for s = light_total()
    CountMismatch,  // some light letter does not occur exactly g(a) times
    BoxZone,        // some square region holds >= 2 elements, all of them boxes
    Restricted,     // small violates one of the restrictions
};

std::string to_string(GuessIssue issue);

/// Checks the guess conditions: exact light counts with no heavy letter in
/// small, no square region whose >= 2 elements are all boxes, restriction
/// compliance, and the size bound |small| <= (1+s)^2 + s. The optional out
/// parameter receives the first failing condition (or Ok).
bool validate_guess(const Guess& guess, const std::set<LabelRestriction>& restrictions,
                    int theta = RLP_THRESHOLD, GuessIssue* issue = nullptr);

/// Expands a guess into a full witness along a compatible word pair: light
/// letters keep the small's relative layout at the positions their letters
/// occupy in w1/w2, then each heavy letter is placed layer by layer on the
/// grid of its w1-rows and w2-columns, away from every diagonal neighborhood.
/// Requires pk(w1) == pk(w2), that w1/w2 match the small's projections with
/// each box standing for a nonempty heavy run, and that every heavy letter
/// occurs more than theta times (std::invalid_argument otherwise). Throws
/// std::runtime_error when a heavy layer's matching is infeasible, which
/// cannot happen for theta >= RLP_THRESHOLD.
LabeledPermutation build_witness(const Guess& guess, const std::vector<Letter>& w1,
                                 const std::vector<Letter>& w2,
                                 int theta = RLP_THRESHOLD);

/// True when lp's row projection is accepted by inst.nfa1, its column
/// projection by inst.nfa2, and no restriction is violated.
bool verify_witness(const LabeledPermutation& lp, const RlpInstance& inst);

struct RlpOptions {
    /// When > 0, a bounded-exhaustive fallback additionally searches every
    /// witness size up to max_word, making NONE authoritative below it.
    int max_word = 0;
    /// Total-length cap handed to the Parikh intersection; 0 picks
    /// min(default_parikh_cap, 4 * (theta + 1) * |alphabet|).
    int parikh_cap = 0;
    /// When set, verified witnesses are offered to this callback and the
    /// search continues past any it declines.
    std::function<bool(const LabeledPermutation&)> acceptor;
};

/// Deterministic search for a witness. Small-permutation sizes are tried in
/// ascending order; within one size, guesses run in canonical order (letters
/// in alphabet order, values 0..theta then kHeavy) and their valid smalls in
/// canonical order (rows filled with least column and label first, box last).
/// Each valid guess is compiled into projection patterns with boxes replaced
/// by nonempty heavy runs, intersected with the instance languages and the
/// occurrence thresholds, and tested for a common Parikh vector, from which
/// an explicit witness is built and verified. NONE means no witness was found within
/// theta, the Parikh cap, and max_word; it is authoritative for witnesses of
/// size <= max_word. When max_word > 0 and theta >= max_word the guess phase
/// cannot contribute a witness within the bound and is skipped.
std::optional<LabeledPermutation> solve_rlp(const RlpInstance& inst,
                                            int theta = RLP_THRESHOLD,
                                            const RlpOptions& opts = {});

/// A word from the input language together with a reordering into the output
/// language; p is 1-indexed, word[i-1] sits at output position p's inverse.
struct ShuffleResult {
    std::vector<Letter> word;  // accepted by the input language
    std::vector<int> p;        // p[i] = source position of output letter i+1
};

/// Searches (up to size max_n, exhaustively) for a word of the input language
/// that some permutation p rearranges into the output language while no two
/// consecutive output letters come from adjacent input positions
/// (|p(i+1) - p(i)| > 1). Runs both the reduction through solve_rlp and the
/// brute-force oracle and throws std::logic_error if they disagree.
std::optional<ShuffleResult> shuffle_check(const Nfa& input, const Nfa& output,
                                           int max_n);

}  // namespace permlogic
