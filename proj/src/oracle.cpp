#include "permlogic/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace permlogic {

namespace {

// Deliberately written in a different style from eval_formula: explicit
// element list, slot-indexed environment, no Assignment struct.
struct NaiveEnv {
    std::optional<Element> slot[2];

    const Element& at(Var v) const { return slot[v == Var::X ? 0 : 1].value(); }
    std::optional<Element>& ref(Var v) { return slot[v == Var::X ? 0 : 1]; }
};

bool naive_rec(const ValuedPermutation& m, const std::vector<Element>& els,
               const FormulaPtr& f, NaiveEnv& env) {
    switch (f->kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::Pred: {
            const Element e = env.at(f->var);
            for (const auto& p : m.sigma[e.r])
                if (p == f->letter) return true;
            return false;
        }
        case FormulaKind::SuccR: {
            const Element a = env.at(f->var);
            const Element b = env.at(f->var2);
            return a.c + 1 == b.c;
        }
        case FormulaKind::SuccD: {
            const Element a = env.at(f->var);
            const Element b = env.at(f->var2);
            return a.r + 1 == b.r;
        }
        case FormulaKind::Not:
            return !naive_rec(m, els, f->lhs, env);
        case FormulaKind::And:
            return naive_rec(m, els, f->lhs, env) && naive_rec(m, els, f->rhs, env);
        case FormulaKind::Or:
            return naive_rec(m, els, f->lhs, env) || naive_rec(m, els, f->rhs, env);
        case FormulaKind::Exists: {
            const auto saved = env.ref(f->var);
            for (const auto& e : els) {
                env.ref(f->var) = e;
                if (naive_rec(m, els, f->lhs, env)) {
                    env.ref(f->var) = saved;
                    return true;
                }
            }
            env.ref(f->var) = saved;
            return false;
        }
        case FormulaKind::Forall: {
            const auto saved = env.ref(f->var);
            for (const auto& e : els) {
                env.ref(f->var) = e;
                if (!naive_rec(m, els, f->lhs, env)) {
                    env.ref(f->var) = saved;
                    return false;
                }
            }
            env.ref(f->var) = saved;
            return true;
        }
    }
    return false;
}

}  // namespace

bool naive_eval(const ValuedPermutation& m, const FormulaPtr& f) {
    NaiveEnv env;
    return naive_rec(m, m.elements(), f, env);
}

BruteSatResult brute_sat(const FormulaPtr& f, int max_n,
                         std::optional<std::chrono::milliseconds> time_cap) {
    const auto start = std::chrono::steady_clock::now();
    const auto letter_set = letters_of(f);
    const std::vector<Letter> letters(letter_set.begin(), letter_set.end());
    const std::size_t val_count = 1ull << letters.size();
    long long models_since_check = 0;

    // All valuations over the formula's letters, indexed by bitmask.
    std::vector<Valuation> val_table(val_count);
    for (std::size_t mask = 0; mask < val_count; ++mask)
        for (std::size_t bit = 0; bit < letters.size(); ++bit)
            if (mask & (1ull << bit)) val_table[mask].insert(letters[bit]);

    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> cols(static_cast<std::size_t>(n));
        std::iota(cols.begin(), cols.end(), 1);
        do {
            ValuedPermutation m;
            m.n = n;
            m.row_to_col.assign(static_cast<std::size_t>(n) + 1, 0);
            for (int r = 1; r <= n; ++r) m.row_to_col[r] = cols[static_cast<std::size_t>(r - 1)];
            m.sigma.assign(static_cast<std::size_t>(n) + 1, val_table[0]);

            // Mixed-radix counter over per-row valuation bitmasks; only rows
            // whose digit changed are rewritten between candidates.
            std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
            while (true) {
                if (naive_eval(m, f)) return {BruteVerdict::Sat, m};

                if (time_cap && ++models_since_check >= 1024) {
                    models_since_check = 0;
                    if (std::chrono::steady_clock::now() - start > *time_cap)
                        return {BruteVerdict::TimedOut, std::nullopt};
                }

                std::size_t pos = 0;
                while (pos < digits.size()) {
                    if (++digits[pos] < val_count) {
                        m.sigma[pos + 1] = val_table[digits[pos]];
                        break;
                    }
                    digits[pos] = 0;
                    m.sigma[pos + 1] = val_table[0];
                    ++pos;
                }
                if (pos == digits.size()) break;
            }
        } while (std::next_permutation(cols.begin(), cols.end()));
    }
    return {BruteVerdict::NoModelWithinBound, std::nullopt};
}

ValuedPermutation expand_with_fresh(const ValuedPermutation& m, const SnfFormula& snf) {
    ValuedPermutation out = m;
    for (const auto& def : snf.fresh) {
        ValuedPermutation next = out;
        for (int r = 1; r <= out.n; ++r) {
            bool holds;
            if (def.arg) {
                Assignment mu;
                mu = mu.with(*def.arg, {r, out.row_to_col[r]});
                holds = eval_formula(out, def.body, mu);
            } else {
                holds = eval_formula(out, def.body, {});
            }
            if (holds) next.sigma[r].insert(def.p);
        }
        out = std::move(next);
    }
    return out;
}

ValuedPermutation erase_letters(const ValuedPermutation& m, const std::set<Letter>& keep) {
    ValuedPermutation out = m;
    for (int r = 1; r <= m.n; ++r) {
        Valuation v;
        for (const auto& p : out.sigma[r])
            if (keep.count(p)) v.insert(p);
        out.sigma[r] = std::move(v);
    }
    return out;
}

std::set<ParikhVector> brute_parikh(const Nfa& a, int max_total) {
    validate_nfa(a);
    std::set<ParikhVector> out;
    const std::size_t k = a.alphabet.size();
    for (int len = 0; len <= max_total; ++len) {
        if (k == 0 && len > 0) break;
        std::vector<std::size_t> digits(static_cast<std::size_t>(len), 0);
        while (true) {
            std::vector<Letter> word;
            for (std::size_t d : digits) word.push_back(a.alphabet[d]);
            if (nfa_accepts(a, word)) {
                ParikhVector v;
                for (const auto& l : a.alphabet) v[l] = 0;
                for (const auto& l : word) ++v[l];
                out.insert(v);
            }
            std::size_t pos = 0;
            while (pos < digits.size()) {
                if (++digits[pos] < k) break;
                digits[pos] = 0;
                ++pos;
            }
            if (pos == digits.size()) break;
        }
    }
    return out;
}

namespace {

/// Fill labels row by row over a fixed column arrangement, tracking the row
/// automaton's state set and checking restrictions against the previous row;
/// the column word is checked once the permutation is complete.
bool brute_rlp_labels(const RlpInstance& inst, LabeledPermutation& lp, int row,
                      const std::set<int>& states) {
    if (row > lp.n) {
        bool accepted = false;
        for (int q : states)
            if (inst.nfa1.accepting.count(q)) accepted = true;
        if (!accepted) return false;
        std::vector<Letter> cw;
        for (int c = 1; c <= lp.n; ++c) cw.push_back(lp.labels[lp.col_to_row(c)]);
        return nfa_accepts(inst.nfa2, cw);
    }
    for (const auto& lab : inst.alphabet) {
        if (row >= 2) {
            const Element prev{row - 1, lp.row_to_col[row - 1]};
            const Element here{row, lp.row_to_col[row]};
            const NType down = neighborhood_type(prev, here);
            const NType up = neighborhood_type(here, prev);
            if ((down == NType::SE || down == NType::NE) &&
                inst.restrictions.count({lp.labels[row - 1], down, lab}))
                continue;
            if ((up == NType::SE || up == NType::NE) &&
                inst.restrictions.count({lab, up, lp.labels[row - 1]}))
                continue;
        }
        std::set<int> next;
        for (const auto& [p, l, q] : inst.nfa1.transitions)
            if (l == lab && states.count(p)) next.insert(q);
        if (next.empty()) continue;
        lp.labels[row] = lab;
        if (brute_rlp_labels(inst, lp, row + 1, next)) return true;
    }
    lp.labels[row] = "";
    return false;
}

}  // namespace

std::optional<LabeledPermutation> brute_rlp(const RlpInstance& inst, int max_n) {
    validate_instance(inst);
    if (max_n < 1) throw std::invalid_argument("brute_rlp: max_n < 1");
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> cols(n);
        std::iota(cols.begin(), cols.end(), 1);
        do {
            LabeledPermutation lp;
            lp.n = n;
            lp.row_to_col.assign(n + 1, 0);
            lp.labels.assign(n + 1, "");
            for (int r = 1; r <= n; ++r) lp.row_to_col[r] = cols[r - 1];
            if (brute_rlp_labels(inst, lp, 1, inst.nfa1.initial)) return lp;
        } while (std::next_permutation(cols.begin(), cols.end()));
    }
    return std::nullopt;
}

}  // namespace permlogic
