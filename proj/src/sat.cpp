#include "permlogic/sat.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "permlogic/automata.hpp"
#include "permlogic/oracle.hpp"

namespace permlogic {

namespace {

bool sat3(const Valuation& s, NType t, const Valuation& s2, const FormulaPtr& f) {
    return atomic_sat({s, t, s2}, f);
}

/// Successor window of one interior element, as valuation slots: the element
/// itself, its column neighbors from the column word, and the row-context
/// neighbors when the element sits at the block's row edge (in-block row
/// neighbors coincide with the column slots and are not repeated; distinct
/// slots are always distinct elements, by block maximality).
std::vector<Boundary> window_slots(const Fingerprint& tau,
                                   const std::vector<Boundary>& hv,
                                   const std::vector<Boundary>& vv, int idx) {
    const int m = static_cast<int>(hv.size());
    const int k0 = tau.btype == BlockType::NE ? (m - 1) - idx : idx;
    std::vector<Boundary> slots = {hv[idx - 1], hv[idx], hv[idx + 1]};
    if (k0 == 1) slots.push_back(vv[0]);
    if (k0 == m - 2) slots.push_back(vv[m - 1]);
    return slots;
}

int slot_count(const std::vector<Boundary>& slots, const Valuation& g) {
    int j = 0;
    for (const auto& s : slots)
        if (s && *s == g) ++j;
    return j;
}

/// Whether the context proves an occurrence of g outside a window holding j
/// copies of it: always when j = 0, and when the exact-count bucket j
/// excludes g for j <= 3. Window counts above the buckets' range leave the
/// total ambiguous and prove nothing.
bool far_occurrence_certain(const ConsistencyContext& ctx, const Valuation& g, int j) {
    if (j == 0) return true;
    if (j > 3) return false;
    const std::set<Valuation>& bucket = j == 1 ? ctx.v1 : j == 2 ? ctx.v2 : ctx.v3;
    return bucket.count(g) == 0;
}

const Valuation& col_first(const Fingerprint& fp) {
    return fp.btype == BlockType::NE ? fp.seq.back() : fp.seq.front();
}

const Valuation& col_last(const Fingerprint& fp) {
    return fp.btype == BlockType::NE ? fp.seq.front() : fp.seq.back();
}

/// Row-word chaining: a's trailing interior matches b's upper row context and
/// a's lower row context matches b's leading interior.
bool row_chain_ok(const Fingerprint& a, const Fingerprint& b) {
    return b.bR_minus && *b.bR_minus == a.seq.back() &&
           a.bR_plus && *a.bR_plus == b.seq.front();
}

bool col_chain_ok(const Fingerprint& a, const Fingerprint& b) {
    return b.bD_minus && *b.bD_minus == col_last(a) &&
           a.bD_plus && *a.bD_plus == col_first(b);
}

/// Row language of the reduction: chaining (outer boundaries absent,
/// adjacent letters overlapping), coverage of the whole alphabet, and
/// per-valuation occurrence counters capped at four, built as one product
/// with reachable states only.
Nfa build_row_language(const std::vector<std::pair<Letter, Fingerprint>>& fps,
                       const Summary& s) {
    const int K = static_cast<int>(fps.size());
    if (K > 20)
        throw std::invalid_argument("reduce_to_rlp: too many fingerprints for coverage");
    const std::vector<Valuation> yh(s.yhat.begin(), s.yhat.end());
    const int G = static_cast<int>(yh.size());
    std::vector<int> target(G);  // 1..3 = exact count, 4 = at least four
    for (int g = 0; g < G; ++g)
        target[g] = s.v1.count(yh[g])   ? 1
                    : s.v2.count(yh[g]) ? 2
                    : s.v3.count(yh[g]) ? 3
                                        : 4;
    std::vector<std::vector<int>> occ(K, std::vector<int>(G, 0));
    for (int t = 0; t < K; ++t)
        for (const auto& v : fps[t].second.seq) {
            const auto it = std::lower_bound(yh.begin(), yh.end(), v);
            if (it == yh.end() || *it != v)
                throw std::logic_error("reduce_to_rlp: interior valuation missing");
            ++occ[t][it - yh.begin()];
        }

    // State: last letter read (0 = none), coverage mask, capped counts.
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> keys;
    const auto intern = [&](const std::vector<int>& key) {
        const auto [it, fresh] = id.emplace(key, static_cast<int>(keys.size()) + 1);
        if (fresh) keys.push_back(key);
        return it->second;
    };

    Nfa out;
    for (const auto& [name, fp] : fps) out.alphabet.push_back(name);
    std::queue<int> work;
    work.push(intern(std::vector<int>(2 + G, 0)));
    out.initial = {1};
    while (!work.empty()) {
        const int sid = work.front();
        work.pop();
        const std::vector<int> key = keys[sid - 1];
        for (int t = 0; t < K; ++t) {
            const Fingerprint& fp = fps[t].second;
            if (key[0] == 0) {
                if (fp.bR_minus) continue;
            } else if (!row_chain_ok(fps[key[0] - 1].second, fp)) {
                continue;
            }
            std::vector<int> nx = key;
            nx[0] = t + 1;
            nx[1] = key[1] | (1 << t);
            for (int g = 0; g < G; ++g) nx[2 + g] = std::min(4, key[2 + g] + occ[t][g]);
            const std::size_t before = keys.size();
            const int nid = intern(nx);
            if (keys.size() > before) work.push(nid);
            out.transitions.insert({sid, fps[t].first, nid});
        }
    }
    out.states = static_cast<int>(keys.size());
    const int full = (1 << K) - 1;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        const auto& key = keys[i];
        if (key[0] == 0 || fps[key[0] - 1].second.bR_plus || key[1] != full) continue;
        bool counts_ok = true;
        for (int g = 0; g < G && counts_ok; ++g)
            counts_ok = key[2 + g] == target[g] || (target[g] == 4 && key[2 + g] == 4);
        if (counts_ok) out.accepting.insert(i + 1);
    }
    return out;
}

/// Column language: chaining over the column words only (the projections
/// share one letter multiset, so coverage and counting on the row side
/// already bind both).
Nfa build_col_language(const std::vector<std::pair<Letter, Fingerprint>>& fps) {
    const int K = static_cast<int>(fps.size());
    Nfa out;
    for (const auto& [name, fp] : fps) out.alphabet.push_back(name);
    out.states = K + 1;
    out.initial = {1};
    for (int t = 0; t < K; ++t) {
        if (!fps[t].second.bD_minus) out.transitions.insert({1, fps[t].first, 2 + t});
        if (!fps[t].second.bD_plus) out.accepting.insert(2 + t);
        for (int u = 0; u < K; ++u)
            if (col_chain_ok(fps[t].second, fps[u].second))
                out.transitions.insert({2 + t, fps[u].first, 2 + u});
    }
    return out;
}

}  // namespace

void validate_context(const ConsistencyContext& ctx) {
    const auto inside = [&](const std::set<Valuation>& b, const char* name) {
        for (const auto& v : b)
            if (!ctx.valuations.count(v))
                throw std::invalid_argument(std::string("validate_context: ") + name +
                                            " contains a non-occurring valuation");
    };
    inside(ctx.v1, "v1");
    inside(ctx.v2, "v2");
    inside(ctx.v3, "v3");
    for (const auto& v : ctx.v1)
        if (ctx.v2.count(v) || ctx.v3.count(v))
            throw std::invalid_argument("validate_context: buckets overlap");
    for (const auto& v : ctx.v2)
        if (ctx.v3.count(v)) throw std::invalid_argument("validate_context: buckets overlap");
}

ConsistencyContext context_of(const Summary& s) { return {s.yhat, s.v1, s.v2, s.v3}; }

bool consistent_universal(const Fingerprint& tau, const FormulaPtr& chi,
                          const ConsistencyContext& ctx) {
    if (!is_quantifier_free(chi))
        throw std::invalid_argument("consistent_universal: chi must be quantifier-free");
    if (tau.seq.empty())
        throw std::invalid_argument("consistent_universal: empty fingerprint");
    const auto hv = tau.tau_col();
    const auto vv = tau.tau_row();
    const int m = static_cast<int>(hv.size());

    // Reflexive pairs of every block element.
    for (int i = 1; i <= m - 2; ++i)
        if (!sat3(*hv[i], NType::Dot, *hv[i], chi)) return false;
    // Column contexts sit west of the first and east of the last element of
    // the column word (maximality keeps them at least two rows away).
    if (hv[0] && !sat3(*hv[1], NType::W, *hv[0], chi)) return false;
    if (hv[m - 1] && !sat3(*hv[m - 2], NType::E, *hv[m - 1], chi)) return false;
    // In-block diagonal pairs, both directions.
    for (int i = 1; i + 1 <= m - 2; ++i) {
        if (tau.btype == BlockType::SE) {
            if (!sat3(*hv[i], NType::SE, *hv[i + 1], chi)) return false;
            if (!sat3(*hv[i + 1], NType::NW, *hv[i], chi)) return false;
        } else if (tau.btype == BlockType::NE) {
            if (!sat3(*hv[i], NType::NE, *hv[i + 1], chi)) return false;
            if (!sat3(*hv[i + 1], NType::SW, *hv[i], chi)) return false;
        }
    }
    // Far pairs: every occurring valuation with a certain occurrence outside
    // the element's successor window.
    for (int i = 1; i <= m - 2; ++i) {
        const auto slots = window_slots(tau, hv, vv, i);
        for (const auto& g : ctx.valuations) {
            if (!far_occurrence_certain(ctx, g, slot_count(slots, g))) continue;
            if (!sat3(*hv[i], NType::Inf, g, chi)) return false;
        }
    }
    // Row contexts sit north of the first and south of the last row.
    if (vv[0] && !sat3(*vv[1], NType::N, *vv[0], chi)) return false;
    if (vv[m - 1] && !sat3(*vv[m - 2], NType::S, *vv[m - 1], chi)) return false;
    return true;
}

bool consistent_existential(const Fingerprint& tau, const FormulaPtr& psi,
                            const ConsistencyContext& ctx) {
    if (!is_quantifier_free(psi))
        throw std::invalid_argument("consistent_existential: psi must be quantifier-free");
    if (tau.seq.empty())
        throw std::invalid_argument("consistent_existential: empty fingerprint");
    const auto hv = tau.tau_col();
    const auto vv = tau.tau_row();
    const int m = static_cast<int>(hv.size());

    for (int i = 1; i <= m - 2; ++i) {
        const int k0 = tau.btype == BlockType::NE ? (m - 1) - i : i;
        const Valuation& self = *hv[i];
        bool ok = sat3(self, NType::Dot, self, psi);
        // Column contexts witness only the edge elements of the column word.
        if (!ok && i == m - 2 && hv[m - 1]) ok = sat3(self, NType::E, *hv[m - 1], psi);
        if (!ok && i == 1 && hv[0]) ok = sat3(self, NType::W, *hv[0], psi);
        // In-block diagonal neighbors.
        if (!ok && tau.btype == BlockType::SE) {
            if (i + 1 <= m - 2) ok = sat3(self, NType::SE, *hv[i + 1], psi);
            if (!ok && i - 1 >= 1) ok = sat3(self, NType::NW, *hv[i - 1], psi);
        }
        if (!ok && tau.btype == BlockType::NE) {
            if (i + 1 <= m - 2) ok = sat3(self, NType::NE, *hv[i + 1], psi);
            if (!ok && i - 1 >= 1) ok = sat3(self, NType::SW, *hv[i - 1], psi);
        }
        // A far valuation certainly occurring outside the window.
        if (!ok) {
            const auto slots = window_slots(tau, hv, vv, i);
            for (const auto& g : ctx.valuations) {
                if (!far_occurrence_certain(ctx, g, slot_count(slots, g))) continue;
                if (sat3(self, NType::Inf, g, psi)) {
                    ok = true;
                    break;
                }
            }
        }
        // Row contexts witness the edge elements of the row word.
        if (!ok && k0 == m - 2 && vv[m - 1]) ok = sat3(self, NType::S, *vv[m - 1], psi);
        if (!ok && k0 == 1 && vv[0]) ok = sat3(self, NType::N, *vv[0], psi);
        if (!ok) return false;
    }
    return true;
}

bool consistent_with_snf(const Fingerprint& tau, const SnfFormula& snf,
                         const ConsistencyContext& ctx) {
    if (!consistent_universal(tau, snf.chi, ctx)) return false;
    for (const auto& psi : snf.psis)
        if (!consistent_existential(tau, psi, ctx)) return false;
    return true;
}

std::vector<std::pair<Letter, Fingerprint>> fingerprint_letters(const Summary& s) {
    if (s.fingerprints.size() > 100)
        throw std::invalid_argument("fingerprint_letters: more than 100 fingerprints");
    std::vector<std::pair<Letter, Fingerprint>> out;
    int i = 0;
    for (const auto& fp : s.fingerprints) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "t%02d", i++);
        out.emplace_back(buf, fp);
    }
    return out;
}

ReductionOutput reduce_to_rlp(const SnfFormula& snf, const Summary& summary) {
    if (summary.fingerprints.empty())
        throw std::invalid_argument("reduce_to_rlp: empty fingerprint set");
    std::set<Valuation> interiors;
    for (const auto& fp : summary.fingerprints) {
        if (fp.seq.empty())
            throw std::invalid_argument("reduce_to_rlp: empty fingerprint");
        for (const auto& v : fp.seq) interiors.insert(v);
    }
    if (interiors != summary.yhat)
        throw std::invalid_argument(
            "reduce_to_rlp: yhat must equal the interior valuations");
    for (const auto& fp : summary.fingerprints)
        for (const Boundary& b : {fp.bR_minus, fp.bR_plus, fp.bD_minus, fp.bD_plus})
            if (b && !summary.yhat.count(*b))
                throw std::invalid_argument(
                    "reduce_to_rlp: boundary valuation never occurs");
    const ConsistencyContext ctx = context_of(summary);
    validate_context(ctx);
    for (const auto& fp : summary.fingerprints)
        if (!consistent_with_snf(fp, snf, ctx))
            throw std::invalid_argument("reduce_to_rlp: inconsistent fingerprint " +
                                        to_string(fp));

    const auto fps = fingerprint_letters(summary);
    ReductionOutput out;
    out.summary = summary;
    for (const auto& [name, fp] : fps) out.instance.alphabet.push_back(name);
    // Forbid the diagonal adjacencies that would merge two blocks into a
    // larger one: a corner element meets the neighbor's corner exactly when
    // neither block is of the opposite diagonal type.
    for (const auto& [na, fa] : fps)
        for (const auto& [nb, fb] : fps) {
            if (fa.btype != BlockType::NE && fb.btype != BlockType::NE)
                out.instance.restrictions.insert({na, NType::SE, nb});
            if (fa.btype != BlockType::SE && fb.btype != BlockType::SE)
                out.instance.restrictions.insert({na, NType::NE, nb});
        }
    out.instance.nfa1 = build_row_language(fps, summary);
    out.instance.nfa2 = build_col_language(fps);
    validate_instance(out.instance);
    return out;
}

ValuedPermutation expand_rlp_witness(const LabeledPermutation& lp,
                                     const ReductionOutput& red) {
    validate_labeled(lp);
    std::map<Letter, Fingerprint> by_name;
    for (const auto& [name, fp] : fingerprint_letters(red.summary)) by_name[name] = fp;
    const int nb = lp.n;
    std::vector<const Fingerprint*> fp_at(nb + 1, nullptr);  // by grid row
    for (int r = 1; r <= nb; ++r) {
        const auto it = by_name.find(lp.labels[r]);
        if (it == by_name.end())
            throw std::invalid_argument("expand_rlp_witness: label outside the summary");
        fp_at[r] = &it->second;
    }
    std::vector<int> row_start(nb + 2, 1), col_start(nb + 2, 1);
    for (int r = 1; r <= nb; ++r)
        row_start[r + 1] = row_start[r] + static_cast<int>(fp_at[r]->seq.size());
    for (int c = 1; c <= nb; ++c)
        col_start[c + 1] =
            col_start[c] + static_cast<int>(fp_at[lp.col_to_row(c)]->seq.size());

    ValuedPermutation m;
    m.n = row_start[nb + 1] - 1;
    m.row_to_col.assign(m.n + 1, 0);
    m.sigma.assign(m.n + 1, {});
    for (int r = 1; r <= nb; ++r) {
        const Fingerprint& fp = *fp_at[r];
        const int k = static_cast<int>(fp.seq.size()) - 1;
        const int top = row_start[r];
        const int left = col_start[lp.row_to_col[r]];
        for (int l = 0; l <= k; ++l) {
            m.row_to_col[top + l] =
                fp.btype == BlockType::NE ? left + k - l : left + l;
            m.sigma[top + l] = fp.seq[l];
        }
    }
    validate_model(m);
    return m;
}

std::string to_string(SatVerdict v) {
    return v == SatVerdict::Sat ? "SAT" : "UNSAT-WITHIN-BOUNDS";
}

namespace {

/// Witness-word size bound handed to the RLP solver's exhaustive fallback;
/// keeps NONE authoritative for arrangements of up to this many blocks.
constexpr int kRlpWordBound = 8;

/// Canonical enumeration of candidate summaries: block words of increasing
/// total interior length, each column arrangement of a word contributing the
/// summary it induces (row contexts from the word order, column contexts
/// from the arrangement).
struct SummarySearch {
    SummarySearch(const SnfFormula& s, const SatBounds& b, const FormulaPtr& p)
        : snf(s), bounds(b), phi(p) {}

    const SnfFormula& snf;
    const SatBounds& bounds;
    const FormulaPtr& phi;
    std::set<Letter> keep;              // letters of phi, for the result model
    std::vector<Valuation> pool;        // interior-feasible valuations, sorted
    ConsistencyContext loose;           // no occurring valuations: skips far checks
    ConsistencyContext optimistic;      // pool occurring, no exact buckets
    int F = 1, B = 1;

    std::uint64_t steps = 0;
    std::uint64_t emitted = 0;
    bool out_of_budget = false;
    std::set<Summary> seen;
    std::map<Fingerprint, bool> positional;  // context-free consistency cache
    std::optional<ValuedPermutation> model;  // over the original letters

    struct Blk {
        BlockType t = BlockType::Dot;
        std::vector<Valuation> seq;
        auto operator<=>(const Blk&) const = default;
    };
    std::vector<Blk> word;
    std::map<Blk, bool> dead_cache;

    bool stop() const { return model.has_value() || out_of_budget; }

    bool budget_step() {
        if (++steps > bounds.max_candidates) out_of_budget = true;
        return out_of_budget;
    }

    void run() {
        for (int total = 1; total <= F * B && !stop(); ++total)
            for (int blocks = 1; blocks <= std::min(total, F) && !stop(); ++blocks) {
                word.clear();
                compose(total, blocks);
            }
    }

    /// Choose the next block's interior length and type.
    void compose(int remaining, int blocks_left) {
        if (stop()) return;
        if (blocks_left == 0) {
            if (remaining == 0) arrange();
            return;
        }
        for (int len = 1; len <= std::min(B, remaining) && !stop(); ++len) {
            const int rest = remaining - len;
            if (rest < blocks_left - 1 || rest > (blocks_left - 1) * B) continue;
            if (len == 1) {
                word.push_back({BlockType::Dot, std::vector<Valuation>(1)});
                fill_block(rest, blocks_left - 1, 0);
                word.pop_back();
            } else {
                for (const BlockType t : {BlockType::SE, BlockType::NE}) {
                    word.push_back({t, std::vector<Valuation>(len)});
                    fill_block(rest, blocks_left - 1, 0);
                    word.pop_back();
                    if (stop()) break;
                }
            }
        }
    }

    /// Necessary condition on consecutive interiors of one diagonal block
    /// (both directions of the in-block pair).
    bool diag_pair_ok(BlockType t, const Valuation& prev, const Valuation& cur) const {
        if (t == BlockType::SE)
            return sat3(prev, NType::SE, cur, snf.chi) &&
                   sat3(cur, NType::NW, prev, snf.chi);
        return sat3(cur, NType::NE, prev, snf.chi) &&
               sat3(prev, NType::SW, cur, snf.chi);
    }

    /// Whether some existential matrix can never be witnessed by one of the
    /// block's interiors, whatever contexts and buckets the block acquires.
    /// Every exact witness case is covered by an optimistic one here, so a
    /// dead block can appear in no consistent fingerprint.
    bool block_dead(const Blk& b) {
        if (snf.psis.empty()) return false;
        const auto it = dead_cache.find(b);
        if (it != dead_cache.end()) return it->second;
        const int len = static_cast<int>(b.seq.size());
        bool dead = false;
        for (int i = 0; i < len && !dead; ++i) {
            const Valuation& self = b.seq[i];
            const bool col_first = b.t == BlockType::NE ? i == len - 1 : i == 0;
            const bool col_last = b.t == BlockType::NE ? i == 0 : i == len - 1;
            for (const auto& psi : snf.psis) {
                bool ok = sat3(self, NType::Dot, self, psi);
                if (!ok && b.t == BlockType::SE) {
                    if (i + 1 < len) ok = sat3(self, NType::SE, b.seq[i + 1], psi);
                    if (!ok && i > 0) ok = sat3(self, NType::NW, b.seq[i - 1], psi);
                }
                if (!ok && b.t == BlockType::NE) {
                    if (i + 1 < len) ok = sat3(self, NType::SW, b.seq[i + 1], psi);
                    if (!ok && i > 0) ok = sat3(self, NType::NE, b.seq[i - 1], psi);
                }
                for (auto g = pool.begin(); !ok && g != pool.end(); ++g)
                    ok = sat3(self, NType::Inf, *g, psi) ||
                         (col_first && sat3(self, NType::W, *g, psi)) ||
                         (col_last && sat3(self, NType::E, *g, psi)) ||
                         (i == 0 && sat3(self, NType::N, *g, psi)) ||
                         (i == len - 1 && sat3(self, NType::S, *g, psi));
                if (!ok) {
                    dead = true;
                    break;
                }
            }
        }
        dead_cache.emplace(b, dead);
        return dead;
    }

    void fill_block(int rest, int blocks_left, int slot) {
        if (stop()) return;
        Blk& b = word.back();
        if (slot == static_cast<int>(b.seq.size())) {
            if (!block_dead(b)) compose(rest, blocks_left);
            return;
        }
        for (const Valuation& v : pool) {
            if (budget_step()) return;
            if (slot > 0 && !diag_pair_ok(b.t, b.seq[slot - 1], v)) continue;
            b.seq[slot] = v;
            fill_block(rest, blocks_left, slot + 1);
            if (stop()) return;
        }
    }

    static const Valuation& blk_col_first(const Blk& b) {
        return b.t == BlockType::NE ? b.seq.back() : b.seq.front();
    }
    static const Valuation& blk_col_last(const Blk& b) {
        return b.t == BlockType::NE ? b.seq.front() : b.seq.back();
    }

    /// A complete row word: check its row contexts, then try every column
    /// arrangement of its blocks.
    void arrange() {
        if (budget_step()) return;
        const int mb = static_cast<int>(word.size());
        for (int b = 0; b < mb; ++b) {
            if (b > 0 && !sat3(word[b].seq.front(), NType::N, word[b - 1].seq.back(),
                               snf.chi))
                return;
            if (b + 1 < mb && !sat3(word[b].seq.back(), NType::S,
                                    word[b + 1].seq.front(), snf.chi))
                return;
        }
        std::vector<int> perm(mb);
        std::iota(perm.begin(), perm.end(), 0);
        const auto less = [&](int a, int b) { return word[a] < word[b]; };
        std::sort(perm.begin(), perm.end(), less);
        do {
            if (budget_step()) return;
            emit_arrangement(perm);
            if (stop()) return;
        } while (std::next_permutation(perm.begin(), perm.end(), less));
    }

    bool positionally_consistent(const Fingerprint& fp) {
        const auto it = positional.find(fp);
        if (it != positional.end()) return it->second;
        bool ok = consistent_universal(fp, snf.chi, loose);
        for (std::size_t i = 0; ok && i < snf.psis.size(); ++i)
            ok = consistent_existential(fp, snf.psis[i], optimistic);
        positional.emplace(fp, ok);
        return ok;
    }

    void emit_arrangement(const std::vector<int>& perm) {
        const int mb = static_cast<int>(word.size());
        std::vector<Fingerprint> fps(mb);
        for (int b = 0; b < mb; ++b) {
            fps[b].btype = word[b].t;
            fps[b].seq = word[b].seq;
            if (b > 0) fps[b].bR_minus = word[b - 1].seq.back();
            if (b + 1 < mb) fps[b].bR_plus = word[b + 1].seq.front();
        }
        for (int j = 0; j < mb; ++j) {
            const int b = perm[j];
            if (j > 0) fps[b].bD_minus = blk_col_last(word[perm[j - 1]]);
            if (j + 1 < mb) fps[b].bD_plus = blk_col_first(word[perm[j + 1]]);
        }
        std::set<Fingerprint> fpset(fps.begin(), fps.end());
        if (static_cast<int>(fpset.size()) > F) return;
        for (const auto& fp : fpset)
            if (!positionally_consistent(fp)) return;

        Summary proto;
        proto.fingerprints = std::move(fpset);
        std::map<Valuation, int> base;  // occurrences forced by coverage
        for (const auto& fp : proto.fingerprints)
            for (const auto& v : fp.seq) ++base[v];
        for (const auto& kv : base) proto.yhat.insert(kv.first);
        const std::vector<std::pair<Valuation, int>> floors(base.begin(), base.end());
        buckets(proto, floors, 0);
    }

    /// Assign each occurring valuation an exact-count bucket of at least its
    /// forced occurrence count, or the at-least-four bucket.
    void buckets(Summary& proto, const std::vector<std::pair<Valuation, int>>& floors,
                 std::size_t gi) {
        if (stop()) return;
        if (gi == floors.size()) {
            emit_summary(proto);
            return;
        }
        const auto& [g, floor] = floors[gi];
        for (int choice = 1; choice <= 4 && !stop(); ++choice) {
            if (choice <= 3) {
                if (choice < floor) continue;
                auto& bucket = choice == 1 ? proto.v1 : choice == 2 ? proto.v2 : proto.v3;
                bucket.insert(g);
                buckets(proto, floors, gi + 1);
                bucket.erase(g);
            } else {
                buckets(proto, floors, gi + 1);
            }
        }
    }

    void emit_summary(const Summary& s) {
        if (budget_step()) return;
        if (!seen.insert(s).second) return;
        const ConsistencyContext ctx = context_of(s);
        for (const auto& fp : s.fingerprints)
            if (!consistent_with_snf(fp, snf, ctx)) return;
        ++emitted;
        const ReductionOutput red = reduce_to_rlp(snf, s);
        RlpOptions opts;
        opts.max_word = kRlpWordBound;
        opts.parikh_cap = bounds.parikh_cap;
        opts.acceptor = [this, &red, &s](const LabeledPermutation& lp) {
            const ValuedPermutation cand = expand_rlp_witness(lp, red);
            if (summary_of(cand) != s) return false;
            if (!eval_snf(cand, snf)) return false;
            ValuedPermutation user = erase_letters(cand, keep);
            if (!eval_formula(user, phi, Assignment{})) return false;
            model = std::move(user);
            return true;
        };
        solve_rlp(red.instance, 0, opts);
    }
};

}  // namespace

SatResult decide_sat(const FormulaPtr& phi, const SatBounds& bounds) {
    if (!phi) throw std::invalid_argument("decide_sat: null formula");
    if (bounds.max_fingerprints < 1 || bounds.max_block_len < 1)
        throw std::invalid_argument("decide_sat: bounds must be at least 1");
    if (bounds.parikh_cap < 0)
        throw std::invalid_argument("decide_sat: negative parikh_cap");

    SatResult res;
    res.bounds = bounds;
    const SnfFormula snf = to_snf(phi);
    if (snf.vocabulary.size() > 16)
        throw std::invalid_argument("decide_sat: vocabulary too large to enumerate");

    SummarySearch search{snf, bounds, phi};
    search.keep = letters_of(phi);
    search.F = bounds.max_fingerprints;
    search.B = bounds.max_block_len;
    // Interior-feasible valuations: each element must satisfy chi reflexively.
    const std::vector<Letter> vocab(snf.vocabulary.begin(), snf.vocabulary.end());
    for (std::uint32_t mask = 0; mask < (1u << vocab.size()); ++mask) {
        Valuation v;
        for (std::size_t i = 0; i < vocab.size(); ++i)
            if (mask & (1u << i)) v.insert(vocab[i]);
        if (sat3(v, NType::Dot, v, snf.chi)) search.pool.push_back(v);
    }
    std::sort(search.pool.begin(), search.pool.end());
    search.optimistic.valuations = {search.pool.begin(), search.pool.end()};

    search.run();
    res.candidates = search.emitted;
    if (search.model) {
        res.verdict = SatVerdict::Sat;
        res.model = std::move(search.model);
    } else {
        res.exhausted = !search.out_of_budget;
    }
    return res;
}

}  // namespace permlogic
