#pragma once

// Line-oriented readers and writers for the toolkit's file formats: formulas
// (.fo), valued and labeled permutations (.pm), grid constraints (.con),
// automata (.nfa), and restricted-permutation instances (.rlp). Full-line
// '#' comments and blank lines are skipped everywhere; writers take optional
// header lines, emitted as '#' comments, so commands can echo the knobs that
// produced a file.

#include <iosfwd>
#include <string>
#include <vector>

#include "permlogic/automata.hpp"
#include "permlogic/constraints.hpp"
#include "permlogic/logic.hpp"
#include "permlogic/perm.hpp"
#include "permlogic/rlp.hpp"

namespace permlogic {

using Header = std::vector<std::string>;

// Readers validate what they parse; malformed input raises std::runtime_error
// with a "line N:" prefix (formulas report line and column via ParseError).

/// Whole-stream formula text.
FormulaPtr read_formula(std::istream& in);
void write_formula(std::ostream& out, const FormulaPtr& f, const Header& header = {});

/// `n <N>` followed by N lines `<row> <col> <letters>`, letters comma-joined
/// or `-` for the empty valuation.
ValuedPermutation read_model(std::istream& in);
void write_model(std::ostream& out, const ValuedPermutation& m, const Header& header = {});

/// Labeled permutations reuse the model format with exactly one letter per
/// element, the label.
LabeledPermutation read_labeled(std::istream& in);
void write_labeled(std::ostream& out, const LabeledPermutation& lp,
                   const Header& header = {});

/// `rows <list>` / `cols <list>` / `k <int>` / `forbid <row> <col>` lines.
Constraint read_constraint(std::istream& in);
void write_constraint(std::ostream& out, const Constraint& z, const Header& header = {});

/// `alphabet <letters>` / `states <m>` / `init <list>` / `final <list>` /
/// `trans <q> <letter> <q'>` lines.
Nfa read_nfa(std::istream& in);
void write_nfa(std::ostream& out, const Nfa& a, const Header& header = {});

/// `alphabet <letters>`, `restrict <a> <SE|NE> <b>` lines, then the two
/// languages as embedded automata blocks introduced by `nfa1` and `nfa2`.
RlpInstance read_rlp(std::istream& in);
void write_rlp(std::ostream& out, const RlpInstance& inst, const Header& header = {});

}  // namespace permlogic
