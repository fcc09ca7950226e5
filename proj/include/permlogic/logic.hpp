#pragma once

// Two-variable formulas over the column- and row-successor relations:
// AST, concrete syntax, Scott-normal-form conversion, model checking over
// valued permutations, and the three-part atomic satisfaction test.

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permlogic/perm.hpp"

namespace permlogic {

enum class Var { X, Y };

Var other(Var v);
std::string to_string(Var v);

enum class FormulaKind { True, Pred, SuccR, SuccD, Not, And, Or, Exists, Forall };

/// Immutable AST node. Field usage by kind:
///   Pred: letter + var; SuccR/SuccD: var (first) + var2 (second);
///   Not/Exists/Forall: lhs (+ var for the bound variable);
///   And/Or: lhs + rhs; True: none.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind = FormulaKind::True;
    Letter letter;
    Var var = Var::X;
    Var var2 = Var::Y;
    FormulaPtr lhs, rhs;
};

FormulaPtr f_true();
FormulaPtr f_pred(const Letter& p, Var v);
FormulaPtr f_succr(Var v, Var w);
FormulaPtr f_succd(Var v, Var w);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(Var v, FormulaPtr body);
FormulaPtr f_forall(Var v, FormulaPtr body);

/// Structural equality of ASTs.
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg);
};

/// Parses the concrete grammar:
///   formula := quant | bool
///   quant   := ("forall"|"exists") var "." formula
///   bool    := or-expression; "!" binds tightest, "&" over "|", parens allowed
///   atom    := ident "(" var ")" | var "->" var | var "|>" var
///   var     := "x" | "y"
/// Quantifiers appearing as operands of connectives must be parenthesized.
/// Comments start with '#' and run to end of line.
FormulaPtr parse_formula(const std::string& text);

/// Pretty-printer; parse_formula(to_string(f)) reproduces f for every AST
/// free of True nodes (True renders as the valid tautology "!(x -> x)").
std::string to_string(const FormulaPtr& f);

/// All propositional letters occurring in f.
std::set<Letter> letters_of(const FormulaPtr& f);

bool is_quantifier_free(const FormulaPtr& f);

/// Free variables of f (subset of {x, y}).
std::set<Var> free_vars(const FormulaPtr& f);

inline bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

/// Partial assignment of the two variables to permutation elements.
struct Assignment {
    std::optional<Element> x, y;

    const std::optional<Element>& get(Var v) const { return v == Var::X ? x : y; }
    Assignment with(Var v, Element e) const {
        Assignment out = *this;
        (v == Var::X ? out.x : out.y) = e;
        return out;
    }
};

/// Model checking per the successor semantics: x->y holds iff the element
/// assigned to y sits in the column right of x's; x|>y iff in the row below.
/// Throws std::invalid_argument on an unbound free variable.
bool eval_formula(const ValuedPermutation& m, const FormulaPtr& f, const Assignment& mu);

/// One fresh letter introduced by to_snf: letter |-> body, where body is a
/// subformula over the pre-existing letters (plus earlier fresh ones) whose
/// free variables are exactly {arg}, or none when arg is absent.
struct FreshDef {
    Letter p;
    std::optional<Var> arg;
    FormulaPtr body;
};

/// Scott normal form: forall x forall y chi  AND  forall x exists y psi_i.
struct SnfFormula {
    FormulaPtr chi;                  // quantifier-free
    std::vector<FormulaPtr> psis;    // quantifier-free
    std::set<Letter> vocabulary;     // original letters plus fresh ones
    std::vector<FreshDef> fresh;     // definitions, in introduction order
};

/// Equisatisfiable conversion (linear size); fresh letters are namespaced
/// "_snf0", "_snf1", ... Throws std::invalid_argument when f is not closed.
SnfFormula to_snf(const FormulaPtr& f);

/// The SNF conjunction as a single closed formula.
FormulaPtr snf_to_formula(const SnfFormula& snf);

bool eval_snf(const ValuedPermutation& m, const SnfFormula& snf);

/// The (S) t (S') triple: valuations for x and y plus their neighborhood type.
struct AtomContext {
    Valuation s;
    NType t;
    Valuation s2;
};

/// Decides (S) t (S') |= psi for quantifier-free psi: successor atoms are
/// read off t alone, predicate atoms off the two valuations.
/// Throws std::invalid_argument when psi contains a quantifier.
bool atomic_sat(const AtomContext& ctx, const FormulaPtr& psi);

}  // namespace permlogic
