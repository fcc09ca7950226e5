#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "permlogic/perm.hpp"

namespace permlogic {

/// Nondeterministic finite automaton without epsilon transitions.
/// States are 1..m; the alphabet is an ordered letter list.
struct Nfa {
    std::vector<Letter> alphabet;
    int states = 0;
    std::set<int> initial;
    std::set<int> accepting;
    std::set<std::tuple<int, Letter, int>> transitions;
};

/// Throws std::invalid_argument if any state or letter reference is invalid.
void validate_nfa(const Nfa& a);

/// Subset simulation of `word` (one letter per entry).
bool nfa_accepts(const Nfa& a, const std::vector<Letter>& word);

enum class RegexKind { Epsilon, Lit, Class, Cat, Union, Plus, Star };

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

/// Regular expression AST: literal letters, letter classes, concatenation,
/// union, plus, star, epsilon.
struct Regex {
    RegexKind kind = RegexKind::Epsilon;
    std::set<Letter> letters;  // Lit (singleton) and Class (nonempty)
    RegexPtr lhs, rhs;         // Cat/Union children; Plus/Star child in lhs
};

RegexPtr r_eps();
RegexPtr r_lit(const Letter& a);
RegexPtr r_class(const std::set<Letter>& ls);
RegexPtr r_cat(RegexPtr a, RegexPtr b);
RegexPtr r_union(RegexPtr a, RegexPtr b);
RegexPtr r_plus(RegexPtr a);
RegexPtr r_star(RegexPtr a);

std::string to_string(const RegexPtr& r);

/// Compiles a regex into an epsilon-free NFA (position construction; one
/// state per letter occurrence plus one initial state). The automaton's
/// alphabet is `alphabet` when given, otherwise the letters of the regex.
Nfa compile_regex(const RegexPtr& r);
Nfa compile_regex(const RegexPtr& r, const std::vector<Letter>& alphabet);

/// Product automaton; language = intersection. Requires equal alphabets.
Nfa nfa_intersect(const Nfa& a, const Nfa& b);

/// Accepts the words in which every letter of `heavy` occurs more than
/// `theta` times. State count is (theta+2)^|heavy|; keep both small.
Nfa threshold_automaton(const std::vector<Letter>& alphabet,
                        const std::set<Letter>& heavy, int theta);

/// Letter-occurrence counts; the domain always equals the automaton alphabet.
using ParikhVector = std::map<Letter, int>;

/// Whether some accepted word has exactly the counts of `v`. Exact: the
/// total word length is fixed by v, so the reachable profile space is finite.
bool parikh_member(const Nfa& a, const ParikhVector& v);

/// Searches for a common Parikh vector of the two languages, trying total
/// word lengths 0..cap in order and returning the lexicographically least
/// (in alphabet order) vector of the smallest feasible total. Sound
/// unconditionally (the result is re-checked with parikh_member on both
/// sides); complete only relative to cap. Monotone: enlarging cap never
/// loses a witness.
std::optional<ParikhVector> parikh_intersection_nonempty(const Nfa& a, const Nfa& b,
                                                         int cap);

/// Default total-length cap used when a caller does not choose one.
int default_parikh_cap(const Nfa& a, const Nfa& b);

/// The lexicographically least accepted word (letters compared in alphabet
/// order) whose Parikh vector is exactly v, or nullopt.
std::optional<std::vector<Letter>> parikh_witness_word(const Nfa& a,
                                                       const ParikhVector& v);

}  // namespace permlogic
