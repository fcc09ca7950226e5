#include "permlogic/rlp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "permlogic/constraints.hpp"
#include "permlogic/oracle.hpp"

namespace permlogic {

void validate_instance(const RlpInstance& inst) {
    if (inst.alphabet.empty()) throw std::invalid_argument("rlp: empty alphabet");
    if (!std::is_sorted(inst.alphabet.begin(), inst.alphabet.end()) ||
        std::adjacent_find(inst.alphabet.begin(), inst.alphabet.end()) !=
            inst.alphabet.end())
        throw std::invalid_argument("rlp: alphabet must be sorted and distinct");
    if (std::binary_search(inst.alphabet.begin(), inst.alphabet.end(), kBox))
        throw std::invalid_argument("rlp: the box label is reserved");
    for (const auto& r : inst.restrictions) {
        if (r.t != NType::NE && r.t != NType::SE)
            throw std::invalid_argument("rlp: restriction type must be NE or SE");
        if (!std::binary_search(inst.alphabet.begin(), inst.alphabet.end(), r.a) ||
            !std::binary_search(inst.alphabet.begin(), inst.alphabet.end(), r.b))
            throw std::invalid_argument("rlp: restriction letter outside the alphabet");
    }
    validate_nfa(inst.nfa1);
    validate_nfa(inst.nfa2);
    if (inst.nfa1.alphabet != inst.alphabet || inst.nfa2.alphabet != inst.alphabet)
        throw std::invalid_argument("rlp: NFA alphabets must equal the instance alphabet");
}

std::vector<Letter> Guess::light_letters() const {
    std::vector<Letter> out;
    for (const auto& [l, v] : g)
        if (v != kHeavy) out.push_back(l);
    return out;
}

std::vector<Letter> Guess::heavy_letters() const {
    std::vector<Letter> out;
    for (const auto& [l, v] : g)
        if (v == kHeavy) out.push_back(l);
    return out;
}

int Guess::light_total() const {
    int s = 0;
    for (const auto& [l, v] : g)
        if (v != kHeavy) s += v;
    return s;
}

std::string to_string(GuessIssue issue) {
    switch (issue) {
        case GuessIssue::Ok: return "ok";
        case GuessIssue::BadValue: return "value outside the threshold range";
        case GuessIssue::BadLabel: return "label outside the light letters";
        case GuessIssue::TooLarge: return "size bound exceeded";
        case GuessIssue::CountMismatch: return "light letter count mismatch";
        case GuessIssue::BoxZone: return "all-box square region";
        case GuessIssue::Restricted: return "restriction violated";
    }
    throw std::invalid_argument("guess issue: unknown value");
}

namespace {

/// Ordered restriction test for two elements in consecutive rows: the upper
/// element sits at (r, cu), the lower one at (r+1, cl).
bool diag_violates(const std::set<LabelRestriction>& restrictions, const Letter& upper,
                   int cu, const Letter& lower, int cl) {
    if (cl == cu + 1) return restrictions.count({upper, NType::SE, lower}) > 0;
    if (cl == cu - 1) return restrictions.count({lower, NType::NE, upper}) > 0;
    return false;
}

/// True when some square region [i, i+l] x [j, j+l] (i, j, l >= 0; regions
/// may hang off the grid) holds >= 2 elements, all of them boxes.
bool has_box_zone(const LabeledPermutation& lp) {
    const int n = lp.n;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int l = 0; l <= n; ++l) {
                int boxes = 0;
                bool other = false;
                for (int r = std::max(i, 1); r <= std::min(i + l, n) && !other; ++r) {
                    const int c = lp.row_to_col[r];
                    if (c < std::max(j, 1) || c > j + l) continue;
                    if (lp.labels[r] == kBox)
                        ++boxes;
                    else
                        other = true;
                }
                if (!other && boxes >= 2) return true;
            }
    return false;
}

}  // namespace

bool validate_guess(const Guess& guess, const std::set<LabelRestriction>& restrictions,
                    int theta, GuessIssue* issue) {
    if (theta < 0) throw std::invalid_argument("validate_guess: negative theta");
    const auto fail = [&](GuessIssue i) {
        if (issue) *issue = i;
        return false;
    };
    if (issue) *issue = GuessIssue::Ok;

    for (const auto& [l, v] : guess.g)
        if (v != kHeavy && (v < 0 || v > theta)) return fail(GuessIssue::BadValue);

    const auto& lp = guess.small;
    validate_labeled(lp);
    const auto light = guess.light_letters();
    std::map<Letter, int> counts;
    for (int r = 1; r <= lp.n; ++r) {
        const auto& lab = lp.labels[r];
        if (lab == kBox) continue;
        if (!std::binary_search(light.begin(), light.end(), lab))
            return fail(GuessIssue::BadLabel);
        ++counts[lab];
    }
    for (const auto& l : light)
        if (counts[l] != guess.g.at(l)) return fail(GuessIssue::CountMismatch);

    const int s = guess.light_total();
    if (lp.n > (1 + s) * (1 + s) + s) return fail(GuessIssue::TooLarge);

    if (has_box_zone(lp)) return fail(GuessIssue::BoxZone);

    for (int r = 1; r < lp.n; ++r)
        if (diag_violates(restrictions, lp.labels[r], lp.row_to_col[r], lp.labels[r + 1],
                          lp.row_to_col[r + 1]))
            return fail(GuessIssue::Restricted);
    return true;
}

namespace {

/// Projection pattern as an automaton: light letters literally, each box as a
/// nonempty run of heavy letters. Empty heavy set with a box present yields
/// the empty language.
Nfa pattern_nfa(const std::vector<Letter>& proj, const std::vector<Letter>& heavy,
                const std::vector<Letter>& alphabet) {
    const bool has_box = std::find(proj.begin(), proj.end(), kBox) != proj.end();
    if (has_box && heavy.empty()) {
        Nfa dead;
        dead.alphabet = alphabet;
        dead.states = 1;
        dead.initial = {1};
        return dead;
    }
    const std::set<Letter> heavy_set(heavy.begin(), heavy.end());
    RegexPtr re = r_eps();
    for (const auto& l : proj)
        re = r_cat(re, l == kBox ? r_plus(r_class(heavy_set)) : r_lit(l));
    return compile_regex(re, alphabet);
}

std::vector<Letter> row_word(const LabeledPermutation& lp) {
    const auto p = projection(lp, ProjectionDir::Row);
    return {p.begin(), p.end()};
}

std::vector<Letter> col_word(const LabeledPermutation& lp) {
    const auto p = projection(lp, ProjectionDir::Col);
    return {p.begin(), p.end()};
}

}  // namespace

LabeledPermutation build_witness(const Guess& guess, const std::vector<Letter>& w1,
                                 const std::vector<Letter>& w2, int theta) {
    if (guess.g.empty()) throw std::invalid_argument("build_witness: empty alphabet");
    if (guess.g.count(kBox)) throw std::invalid_argument("build_witness: box in g");
    GuessIssue issue = GuessIssue::Ok;
    if (!validate_guess(guess, {}, theta, &issue))
        throw std::invalid_argument("build_witness: invalid guess: " + to_string(issue));
    if (w1.size() != w2.size())
        throw std::invalid_argument("build_witness: word lengths differ");

    std::vector<Letter> alphabet;
    for (const auto& [l, v] : guess.g) alphabet.push_back(l);
    std::map<Letter, int> pk1, pk2;
    for (const auto& l : w1) {
        if (!guess.g.count(l)) throw std::invalid_argument("build_witness: letter outside g");
        ++pk1[l];
    }
    for (const auto& l : w2) {
        if (!guess.g.count(l)) throw std::invalid_argument("build_witness: letter outside g");
        ++pk2[l];
    }
    if (pk1 != pk2) throw std::invalid_argument("build_witness: Parikh vectors differ");

    const auto heavy = guess.heavy_letters();
    if (!nfa_accepts(pattern_nfa(row_word(guess.small), heavy, alphabet), w1) ||
        !nfa_accepts(pattern_nfa(col_word(guess.small), heavy, alphabet), w2))
        throw std::invalid_argument("build_witness: words incompatible with the guess");

    const int m = static_cast<int>(w1.size());
    const auto& small = guess.small;

    // Light letters keep the small's layout at the positions their letters
    // occupy in the words: the t-th non-box row goes to the row of the t-th
    // light letter of w1, and likewise for columns against w2.
    std::vector<int> lightpos1, lightpos2;
    for (int p = 1; p <= m; ++p) {
        if (guess.g.at(w1[p - 1]) != kHeavy) lightpos1.push_back(p);
        if (guess.g.at(w2[p - 1]) != kHeavy) lightpos2.push_back(p);
    }
    std::vector<int> nonbox_rows, nonbox_cols;
    for (int r = 1; r <= small.n; ++r)
        if (small.labels[r] != kBox) nonbox_rows.push_back(r);
    for (int c = 1; c <= small.n; ++c)
        if (small.labels[small.col_to_row(c)] != kBox) nonbox_cols.push_back(c);
    if (lightpos1.size() != nonbox_rows.size() || lightpos2.size() != nonbox_cols.size())
        throw std::logic_error("build_witness: light position count mismatch");
    std::map<int, std::size_t> colrank;
    for (std::size_t u = 0; u < nonbox_cols.size(); ++u) colrank[nonbox_cols[u]] = u;

    LabeledPermutation out;
    out.n = m;
    out.row_to_col.assign(m + 1, 0);
    out.labels.assign(m + 1, "");
    std::set<Element> placed;
    for (std::size_t t = 0; t < nonbox_rows.size(); ++t) {
        const int sr = nonbox_rows[t];
        const int nr = lightpos1[t];
        const int nc = lightpos2[colrank.at(small.row_to_col[sr])];
        const Letter& lab = small.labels[sr];
        if (w1[nr - 1] != lab || w2[nc - 1] != lab)
            throw std::logic_error("build_witness: base label misalignment");
        out.row_to_col[nr] = nc;
        out.labels[nr] = lab;
        placed.insert({nr, nc});
    }

    // Heavy letters layer by layer, each on the grid of its word positions,
    // kept clear of every diagonal neighborhood.
    for (const auto& h : heavy) {
        GridDomain grid;
        for (int p = 1; p <= m; ++p) {
            if (w1[p - 1] == h) grid.rows.insert(p);
            if (w2[p - 1] == h) grid.cols.insert(p);
        }
        const auto layer = sparse_layer(grid, placed, theta + 1);
        for (const auto& e : layer.elements) {
            out.row_to_col[e.r] = e.c;
            out.labels[e.r] = h;
            placed.insert(e);
        }
    }
    validate_labeled(out);
    return out;
}

bool verify_witness(const LabeledPermutation& lp, const RlpInstance& inst) {
    validate_instance(inst);
    validate_labeled(lp);
    if (lp.n == 0) return false;
    for (int r = 1; r <= lp.n; ++r)
        if (!std::binary_search(inst.alphabet.begin(), inst.alphabet.end(), lp.labels[r]))
            return false;
    if (!nfa_accepts(inst.nfa1, row_word(lp)) || !nfa_accepts(inst.nfa2, col_word(lp)))
        return false;
    for (int r = 1; r < lp.n; ++r)
        if (diag_violates(inst.restrictions, lp.labels[r], lp.row_to_col[r],
                          lp.labels[r + 1], lp.row_to_col[r + 1]))
            return false;
    return true;
}

namespace {

/// Verify a candidate and offer it to the caller's acceptor; true stops the
/// search with `result` set.
bool deliver(const LabeledPermutation& lp, const RlpInstance& inst,
             const RlpOptions& opts, bool must_verify,
             std::optional<LabeledPermutation>* result) {
    if (!verify_witness(lp, inst)) {
        if (must_verify)
            throw std::logic_error("solve_rlp: built witness failed verification");
        return false;
    }
    if (opts.acceptor && !opts.acceptor(lp)) return false;
    *result = lp;
    return true;
}

/// Guess-directed search state for one occurrence guess: enumerates the valid
/// small permutations of one size in canonical order (rows top-down, least
/// column first, then labels with the box last) and hands each to `sink`.
struct SmallEnum {
    const RlpInstance& inst;
    int theta;
    std::map<Letter, int> quota;  // remaining light occurrences
    int boxes_left = 0;
    LabeledPermutation cur;
    std::vector<bool> col_used;
    std::vector<Element> boxes;
    std::function<bool(const LabeledPermutation&)> sink;  // true stops

    /// Finalized all-box region test: any square region whose rows are all
    /// already placed and that holds >= 2 elements, all boxes, can never be
    /// repaired by later rows.
    bool box_zone_final(int row) const {
        for (std::size_t x = 0; x < boxes.size(); ++x)
            for (std::size_t y = x + 1; y < boxes.size(); ++y) {
                const Element& e = boxes[x];
                const Element& f = boxes[y];
                const int rmin = std::min(e.r, f.r), rmax = std::max(e.r, f.r);
                const int cmin = std::min(e.c, f.c), cmax = std::max(e.c, f.c);
                const int d = std::max(rmax - rmin, cmax - cmin);
                const int ihi = std::min(rmin, row - d);
                for (int i = std::max(0, rmax - d); i <= ihi; ++i)
                    for (int left = std::max(0, cmax - d); left <= cmin; ++left) {
                        bool other = false;
                        for (int r = std::max(i, 1); r <= i + d && !other; ++r) {
                            const int c = cur.row_to_col[r];
                            if (c < std::max(left, 1) || c > left + d) continue;
                            if (cur.labels[r] != kBox) other = true;
                        }
                        if (!other) return true;
                    }
            }
        return false;
    }

    bool try_labels(int row, int col) {
        cur.row_to_col[row] = col;
        std::vector<Letter> labels;
        for (const auto& [l, q] : quota)
            if (q > 0) labels.push_back(l);
        if (boxes_left > 0) labels.push_back(kBox);
        for (const auto& lab : labels) {
            if (row >= 2 && diag_violates(inst.restrictions, cur.labels[row - 1],
                                          cur.row_to_col[row - 1], lab, col))
                continue;
            cur.labels[row] = lab;
            const bool is_box = lab == kBox;
            if (is_box) {
                --boxes_left;
                boxes.push_back({row, col});
            } else {
                --quota[lab];
            }
            const bool stop = box_zone_final(row) ? false : place(row + 1);
            if (is_box) {
                ++boxes_left;
                boxes.pop_back();
            } else {
                ++quota[lab];
            }
            if (stop) return true;
        }
        cur.row_to_col[row] = 0;
        cur.labels[row] = "";
        return false;
    }

    bool place(int row) {
        if (row > cur.n) return sink(cur);
        for (int col = 1; col <= cur.n; ++col) {
            if (col_used[col]) continue;
            col_used[col] = true;
            const bool stop = try_labels(row, col);
            col_used[col] = false;
            if (stop) return true;
        }
        return false;
    }

    bool run(int size) {
        cur.n = size;
        cur.row_to_col.assign(size + 1, 0);
        cur.labels.assign(size + 1, "");
        col_used.assign(size + 1, false);
        boxes.clear();
        return place(1);
    }
};

/// One guess-phase candidate: the all-light case offers the small itself;
/// otherwise the projection patterns are intersected with the instance
/// languages and the occurrence threshold, a common Parikh vector is sought,
/// and an explicit witness is built from the extracted word pair.
bool try_small(const RlpInstance& inst, const Guess& guess, int theta,
               const RlpOptions& opts, const Nfa* base1, const Nfa* base2,
               std::optional<LabeledPermutation>* result) {
    if (guess.heavy_letters().empty())
        return deliver(guess.small, inst, opts, false, result);

    const auto heavy = guess.heavy_letters();
    const Nfa a1 = nfa_intersect(*base1, pattern_nfa(row_word(guess.small), heavy,
                                                     inst.alphabet));
    const Nfa a2 = nfa_intersect(*base2, pattern_nfa(col_word(guess.small), heavy,
                                                     inst.alphabet));
    const int cap = opts.parikh_cap > 0
                        ? opts.parikh_cap
                        : std::min(default_parikh_cap(a1, a2),
                                   4 * (theta + 1) * static_cast<int>(inst.alphabet.size()));
    const auto v = parikh_intersection_nonempty(a1, a2, cap);
    if (!v) return false;
    const auto w1 = parikh_witness_word(a1, *v);
    const auto w2 = parikh_witness_word(a2, *v);
    if (!w1 || !w2)
        throw std::logic_error("solve_rlp: no word realizes the common Parikh vector");
    LabeledPermutation witness;
    try {
        witness = build_witness(guess, *w1, *w2, theta);
    } catch (const std::runtime_error&) {
        return false;  // a layer below the guaranteed threshold came out infeasible
    }
    return deliver(witness, inst, opts, true, result);
}

std::optional<LabeledPermutation> guess_phase(const RlpInstance& inst, int theta,
                                              const RlpOptions& opts) {
    const int k = static_cast<int>(inst.alphabet.size());

    // All occurrence guesses in canonical order: letters in alphabet order,
    // per-letter values 0..theta and then kHeavy (encoded as theta + 1).
    struct Candidate {
        std::vector<int> digit;
        int s = 0;            // light total
        bool heavy = false;   // some letter guessed heavy
        int min_size = 0, max_size = 0;
    };
    std::vector<Candidate> candidates;
    std::vector<int> digit(k, 0);
    while (true) {
        Candidate c;
        c.digit = digit;
        for (int i = 0; i < k; ++i) {
            if (digit[i] == theta + 1)
                c.heavy = true;
            else
                c.s += digit[i];
        }
        // A heavy guess needs at least one box; an all-light one exactly none.
        c.min_size = c.heavy ? c.s + 1 : c.s;
        c.max_size = c.heavy ? c.s + (1 + c.s) * (1 + c.s) : c.s;
        if (c.min_size >= 1) candidates.push_back(std::move(c));
        int pos = k - 1;
        while (pos >= 0 && digit[pos] == theta + 1) digit[pos--] = 0;
        if (pos < 0) break;
        ++digit[pos];
    }
    int global_max = 0;
    for (const auto& c : candidates) global_max = std::max(global_max, c.max_size);

    // Threshold-automaton products depend only on the heavy letter set.
    std::map<std::set<Letter>, std::pair<Nfa, Nfa>> bases;
    std::optional<LabeledPermutation> result;

    // Smallest witnesses first: candidate sizes ascending, guesses in
    // canonical order within each size.
    for (int size = 1; size <= global_max && !result; ++size) {
        for (const auto& c : candidates) {
            if (size < c.min_size || size > c.max_size) continue;
            Guess guess;
            for (int i = 0; i < k; ++i)
                guess.g[inst.alphabet[i]] =
                    c.digit[i] == theta + 1 ? kHeavy : c.digit[i];
            const Nfa* base1 = nullptr;
            const Nfa* base2 = nullptr;
            if (c.heavy) {
                const auto heavy_list = guess.heavy_letters();
                const std::set<Letter> key(heavy_list.begin(), heavy_list.end());
                auto it = bases.find(key);
                if (it == bases.end()) {
                    const Nfa gt = threshold_automaton(inst.alphabet, key, theta);
                    it = bases.emplace(key, std::make_pair(nfa_intersect(inst.nfa1, gt),
                                                           nfa_intersect(inst.nfa2, gt)))
                             .first;
                }
                base1 = &it->second.first;
                base2 = &it->second.second;
            }
            SmallEnum en{inst, theta, {}, size - c.s, {}, {}, {}, {}};
            for (const auto& l : guess.light_letters()) en.quota[l] = guess.g.at(l);
            en.sink = [&](const LabeledPermutation& small) {
                Guess g2{guess.g, small};
                GuessIssue issue = GuessIssue::Ok;
                if (!validate_guess(g2, inst.restrictions, theta, &issue)) return false;
                return try_small(inst, g2, theta, opts, base1, base2, &result);
            };
            if (en.run(size)) break;
        }
    }
    return result;
}

/// can[m][q]: some accepting state is reachable from q in exactly m steps.
std::vector<std::vector<bool>> finish_table(const Nfa& a, int max_len) {
    std::vector<std::vector<bool>> can(max_len + 1, std::vector<bool>(a.states + 1, false));
    for (int q : a.accepting) can[0][q] = true;
    for (int m = 1; m <= max_len; ++m)
        for (const auto& [p, l, q] : a.transitions)
            if (can[m - 1][q]) can[m][p] = true;
    return can;
}

/// Lexicographic enumeration of the accepted words of one length; an optional
/// componentwise limit prunes letters already used up.
bool each_accepted_word(const Nfa& a, int n, const std::vector<std::vector<bool>>& can,
                        const std::map<Letter, int>* limit, std::vector<Letter>& word,
                        std::map<Letter, int>& used, const std::set<int>& states,
                        const std::function<bool(const std::vector<Letter>&)>& f) {
    const int pos = static_cast<int>(word.size());
    if (pos == n) return f(word);
    for (const auto& l : a.alphabet) {
        if (limit) {
            const auto it = limit->find(l);
            if (it == limit->end() || used[l] >= it->second) continue;
        }
        std::set<int> next;
        for (const auto& [p, tl, q] : a.transitions)
            if (tl == l && states.count(p)) next.insert(q);
        bool viable = false;
        for (int q : next)
            if (can[n - pos - 1][q]) {
                viable = true;
                break;
            }
        if (!viable) continue;
        word.push_back(l);
        ++used[l];
        const bool stop = each_accepted_word(a, n, can, limit, word, used, next, f);
        word.pop_back();
        --used[l];
        if (stop) return true;
    }
    return false;
}

/// Column assignment for a fixed word pair: row r may use exactly the columns
/// whose w2 letter matches w1[r], checked against the restrictions row by row.
bool assign_columns(const RlpInstance& inst, const std::vector<Letter>& w1,
                    const std::vector<Letter>& w2, LabeledPermutation& lp, int row,
                    std::vector<bool>& col_used,
                    const std::function<bool(const LabeledPermutation&)>& f) {
    const int n = lp.n;
    if (row > n) return f(lp);
    for (int c = 1; c <= n; ++c) {
        if (col_used[c] || w2[c - 1] != w1[row - 1]) continue;
        if (row >= 2 && diag_violates(inst.restrictions, lp.labels[row - 1],
                                      lp.row_to_col[row - 1], w1[row - 1], c))
            continue;
        lp.row_to_col[row] = c;
        lp.labels[row] = w1[row - 1];
        col_used[c] = true;
        const bool stop = assign_columns(inst, w1, w2, lp, row + 1, col_used, f);
        col_used[c] = false;
        if (stop) return true;
    }
    return false;
}

/// Bounded-exhaustive fallback: every witness size up to max_word, row words
/// in lexicographic order, column words with the same Parikh vector, columns
/// assigned least first.
std::optional<LabeledPermutation> bounded_phase(const RlpInstance& inst,
                                                const RlpOptions& opts) {
    std::optional<LabeledPermutation> result;
    for (int n = 1; n <= opts.max_word && !result; ++n) {
        const auto can1 = finish_table(inst.nfa1, n);
        const auto can2 = finish_table(inst.nfa2, n);
        std::vector<Letter> w1, w2;
        std::map<Letter, int> used1, used2;
        each_accepted_word(
            inst.nfa1, n, can1, nullptr, w1, used1, inst.nfa1.initial,
            [&](const std::vector<Letter>& rw) {
                std::map<Letter, int> limit;
                for (const auto& l : rw) ++limit[l];
                return each_accepted_word(
                    inst.nfa2, n, can2, &limit, w2, used2, inst.nfa2.initial,
                    [&](const std::vector<Letter>& cw) {
                        LabeledPermutation lp;
                        lp.n = n;
                        lp.row_to_col.assign(n + 1, 0);
                        lp.labels.assign(n + 1, "");
                        std::vector<bool> col_used(n + 1, false);
                        return assign_columns(
                            inst, rw, cw, lp, 1, col_used,
                            [&](const LabeledPermutation& w) {
                                return deliver(w, inst, opts, true, &result);
                            });
                    });
            });
    }
    return result;
}

}  // namespace

std::optional<LabeledPermutation> solve_rlp(const RlpInstance& inst, int theta,
                                            const RlpOptions& opts) {
    validate_instance(inst);
    if (theta < 0) throw std::invalid_argument("solve_rlp: negative theta");
    if (opts.max_word < 0) throw std::invalid_argument("solve_rlp: negative max_word");
    if (opts.parikh_cap < 0) throw std::invalid_argument("solve_rlp: negative parikh_cap");

    // With theta at or above the size bound the guess phase can only produce
    // witnesses the fallback covers anyway, so it is skipped.
    const bool skip_guesses = opts.max_word > 0 && theta >= opts.max_word;
    if (!skip_guesses)
        if (auto w = guess_phase(inst, theta, opts)) return w;
    if (opts.max_word > 0)
        if (auto w = bounded_phase(inst, opts)) return w;
    return std::nullopt;
}

std::optional<ShuffleResult> shuffle_check(const Nfa& input, const Nfa& output,
                                           int max_n) {
    if (max_n < 1) throw std::invalid_argument("shuffle_check: max_n < 1");
    if (input.alphabet != output.alphabet)
        throw std::invalid_argument("shuffle_check: alphabets differ");

    RlpInstance inst;
    inst.alphabet = input.alphabet;
    for (const auto& a : inst.alphabet)
        for (const auto& b : inst.alphabet) {
            inst.restrictions.insert({a, NType::NE, b});
            inst.restrictions.insert({a, NType::SE, b});
        }
    inst.nfa1 = output;  // rows carry the reordered word
    inst.nfa2 = input;   // columns carry the source word
    RlpOptions opts;
    opts.max_word = max_n;

    const auto solved = solve_rlp(inst, max_n, opts);
    const auto bruted = brute_rlp(inst, max_n);
    if (solved.has_value() != bruted.has_value())
        throw std::logic_error("shuffle_check: solver and brute-force routes disagree");
    if (!solved) return std::nullopt;

    ShuffleResult res;
    res.word = col_word(*solved);
    res.p.assign(solved->row_to_col.begin() + 1, solved->row_to_col.end());
    return res;
}

}  // namespace permlogic
