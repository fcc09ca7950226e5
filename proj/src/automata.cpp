#include "permlogic/automata.hpp"

#include <algorithm>
#include <stdexcept>

namespace permlogic {

void validate_nfa(const Nfa& a) {
    if (a.states < 0) throw std::invalid_argument("nfa: negative state count");
    std::set<Letter> sigma(a.alphabet.begin(), a.alphabet.end());
    if (sigma.size() != a.alphabet.size())
        throw std::invalid_argument("nfa: duplicate alphabet letter");
    auto check_state = [&](int q) {
        if (q < 1 || q > a.states) throw std::invalid_argument("nfa: state out of range");
    };
    for (int q : a.initial) check_state(q);
    for (int q : a.accepting) check_state(q);
    for (const auto& [p, l, q] : a.transitions) {
        check_state(p);
        check_state(q);
        if (!sigma.count(l)) throw std::invalid_argument("nfa: transition letter unknown");
    }
}

bool nfa_accepts(const Nfa& a, const std::vector<Letter>& word) {
    std::set<int> cur = a.initial;
    for (const auto& l : word) {
        std::set<int> next;
        for (const auto& [p, tl, q] : a.transitions)
            if (tl == l && cur.count(p)) next.insert(q);
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    for (int q : cur)
        if (a.accepting.count(q)) return true;
    return false;
}

namespace {

RegexPtr rnode(Regex r) { return std::make_shared<const Regex>(std::move(r)); }

}  // namespace

RegexPtr r_eps() { return rnode({RegexKind::Epsilon, {}, nullptr, nullptr}); }

RegexPtr r_lit(const Letter& a) { return rnode({RegexKind::Lit, {a}, nullptr, nullptr}); }

RegexPtr r_class(const std::set<Letter>& ls) {
    if (ls.empty()) throw std::invalid_argument("regex: empty letter class");
    return rnode({RegexKind::Class, ls, nullptr, nullptr});
}

RegexPtr r_cat(RegexPtr a, RegexPtr b) {
    return rnode({RegexKind::Cat, {}, std::move(a), std::move(b)});
}

RegexPtr r_union(RegexPtr a, RegexPtr b) {
    return rnode({RegexKind::Union, {}, std::move(a), std::move(b)});
}

RegexPtr r_plus(RegexPtr a) { return rnode({RegexKind::Plus, {}, std::move(a), nullptr}); }

RegexPtr r_star(RegexPtr a) { return rnode({RegexKind::Star, {}, std::move(a), nullptr}); }

std::string to_string(const RegexPtr& r) {
    switch (r->kind) {
        case RegexKind::Epsilon:
            return "()";
        case RegexKind::Lit:
            return *r->letters.begin();
        case RegexKind::Class: {
            std::string out = "[";
            for (const auto& l : r->letters) out += (out.size() > 1 ? " " : "") + l;
            return out + "]";
        }
        case RegexKind::Cat:
            return to_string(r->lhs) + " " + to_string(r->rhs);
        case RegexKind::Union:
            return "(" + to_string(r->lhs) + " | " + to_string(r->rhs) + ")";
        case RegexKind::Plus:
            return "(" + to_string(r->lhs) + ")+";
        case RegexKind::Star:
            return "(" + to_string(r->lhs) + ")*";
    }
    return "";
}

namespace {

/// Position-construction bookkeeping for one regex subtree.
struct GlushkovInfo {
    bool nullable = false;
    std::set<int> first, last;
};

struct GlushkovBuild {
    std::vector<std::set<Letter>> pos_letters;  // position index -> letters
    std::vector<std::set<int>> follow;          // position index -> successors

    GlushkovInfo walk(const RegexPtr& r) {
        GlushkovInfo info;
        switch (r->kind) {
            case RegexKind::Epsilon:
                info.nullable = true;
                return info;
            case RegexKind::Lit:
            case RegexKind::Class: {
                const int p = static_cast<int>(pos_letters.size());
                pos_letters.push_back(r->letters);
                follow.emplace_back();
                info.first = info.last = {p};
                return info;
            }
            case RegexKind::Cat: {
                const auto a = walk(r->lhs);
                const auto b = walk(r->rhs);
                info.nullable = a.nullable && b.nullable;
                info.first = a.first;
                if (a.nullable) info.first.insert(b.first.begin(), b.first.end());
                info.last = b.last;
                if (b.nullable) info.last.insert(a.last.begin(), a.last.end());
                for (int p : a.last) follow[p].insert(b.first.begin(), b.first.end());
                return info;
            }
            case RegexKind::Union: {
                const auto a = walk(r->lhs);
                const auto b = walk(r->rhs);
                info.nullable = a.nullable || b.nullable;
                info.first = a.first;
                info.first.insert(b.first.begin(), b.first.end());
                info.last = a.last;
                info.last.insert(b.last.begin(), b.last.end());
                return info;
            }
            case RegexKind::Plus:
            case RegexKind::Star: {
                const auto a = walk(r->lhs);
                info.nullable = a.nullable || r->kind == RegexKind::Star;
                info.first = a.first;
                info.last = a.last;
                for (int p : a.last) follow[p].insert(a.first.begin(), a.first.end());
                return info;
            }
        }
        return info;
    }
};

std::set<Letter> regex_letters(const RegexPtr& r) {
    std::set<Letter> out = r->letters;
    if (r->lhs) {
        auto l = regex_letters(r->lhs);
        out.insert(l.begin(), l.end());
    }
    if (r->rhs) {
        auto l = regex_letters(r->rhs);
        out.insert(l.begin(), l.end());
    }
    return out;
}

}  // namespace

Nfa compile_regex(const RegexPtr& r) {
    const auto ls = regex_letters(r);
    return compile_regex(r, std::vector<Letter>(ls.begin(), ls.end()));
}

Nfa compile_regex(const RegexPtr& r, const std::vector<Letter>& alphabet) {
    const std::set<Letter> sigma(alphabet.begin(), alphabet.end());
    for (const auto& l : regex_letters(r))
        if (!sigma.count(l))
            throw std::invalid_argument("compile_regex: regex letter not in alphabet");

    GlushkovBuild build;
    const auto info = build.walk(r);

    // State 1 is the fresh initial state; position p becomes state p + 2.
    Nfa out;
    out.alphabet = alphabet;
    out.states = static_cast<int>(build.pos_letters.size()) + 1;
    out.initial = {1};
    if (info.nullable) out.accepting.insert(1);
    for (int p : info.last) out.accepting.insert(p + 2);
    for (int p : info.first)
        for (const auto& l : build.pos_letters[static_cast<std::size_t>(p)])
            out.transitions.insert({1, l, p + 2});
    for (std::size_t p = 0; p < build.follow.size(); ++p)
        for (int q : build.follow[p])
            for (const auto& l : build.pos_letters[static_cast<std::size_t>(q)])
                out.transitions.insert({static_cast<int>(p) + 2, l, q + 2});
    return out;
}

Nfa nfa_intersect(const Nfa& a, const Nfa& b) {
    validate_nfa(a);
    validate_nfa(b);
    if (a.alphabet != b.alphabet)
        throw std::invalid_argument("nfa_intersect: alphabets differ");

    auto id = [&](int p, int q) { return (p - 1) * b.states + q; };
    Nfa out;
    out.alphabet = a.alphabet;
    out.states = a.states * b.states;
    for (int p : a.initial)
        for (int q : b.initial) out.initial.insert(id(p, q));
    for (int p : a.accepting)
        for (int q : b.accepting) out.accepting.insert(id(p, q));
    for (const auto& [p, l, p2] : a.transitions)
        for (const auto& [q, l2, q2] : b.transitions)
            if (l == l2) out.transitions.insert({id(p, q), l, id(p2, q2)});
    return out;
}

Nfa threshold_automaton(const std::vector<Letter>& alphabet,
                        const std::set<Letter>& heavy, int theta) {
    if (theta < 0) throw std::invalid_argument("threshold_automaton: theta must be >= 0");
    std::vector<Letter> hs;  // heavy letters in alphabet order
    for (const auto& l : alphabet)
        if (heavy.count(l)) hs.push_back(l);
    if (hs.size() != heavy.size())
        throw std::invalid_argument("threshold_automaton: heavy letter not in alphabet");

    // One counter per heavy letter, saturating at theta + 1; the state is the
    // mixed-radix encoding of the counter vector.
    const int radix = theta + 2;
    int count = 1;
    for (std::size_t i = 0; i < hs.size(); ++i) count *= radix;
    auto encode = [&](const std::vector<int>& digits) {
        int v = 0;
        for (int d : digits) v = v * radix + d;
        return v + 1;
    };

    Nfa out;
    out.alphabet = alphabet;
    out.states = count;
    out.initial = {encode(std::vector<int>(hs.size(), 0))};
    out.accepting = {encode(std::vector<int>(hs.size(), theta + 1))};

    std::vector<int> digits(hs.size(), 0);
    for (int s = 0; s < count; ++s) {
        int rem = s;
        for (std::size_t i = hs.size(); i-- > 0;) {
            digits[i] = rem % radix;
            rem /= radix;
        }
        for (const auto& l : alphabet) {
            auto next = digits;
            for (std::size_t i = 0; i < hs.size(); ++i)
                if (hs[i] == l && next[i] <= theta) ++next[i];
            out.transitions.insert({s + 1, l, encode(next)});
        }
    }
    return out;
}

namespace {

using Profile = std::vector<int>;  // counts aligned with the alphabet order

void check_vector_domain(const Nfa& a, const ParikhVector& v) {
    if (v.size() != a.alphabet.size())
        throw std::invalid_argument("parikh: vector domain must equal the alphabet");
    for (const auto& l : a.alphabet) {
        auto it = v.find(l);
        if (it == v.end())
            throw std::invalid_argument("parikh: vector domain must equal the alphabet");
        if (it->second < 0) throw std::invalid_argument("parikh: negative count");
    }
}

/// One BFS layer: all (state, profile) pairs reachable with one more letter,
/// keeping profiles within the componentwise limit when one is given.
std::set<std::pair<int, Profile>> advance_layer(
    const Nfa& a, const std::set<std::pair<int, Profile>>& frontier,
    const Profile* limit) {
    std::map<Letter, std::size_t> index;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) index[a.alphabet[i]] = i;
    std::set<std::pair<int, Profile>> next;
    for (const auto& [p, l, q] : a.transitions) {
        const std::size_t li = index.at(l);
        for (const auto& [state, prof] : frontier) {
            if (state != p) continue;
            if (limit && prof[li] + 1 > (*limit)[li]) continue;
            Profile np = prof;
            ++np[li];
            next.insert({q, std::move(np)});
        }
    }
    return next;
}

std::set<std::pair<int, Profile>> initial_layer(const Nfa& a) {
    std::set<std::pair<int, Profile>> out;
    for (int q : a.initial) out.insert({q, Profile(a.alphabet.size(), 0)});
    return out;
}

std::set<Profile> accepting_profiles(const Nfa& a,
                                     const std::set<std::pair<int, Profile>>& layer) {
    std::set<Profile> out;
    for (const auto& [state, prof] : layer)
        if (a.accepting.count(state)) out.insert(prof);
    return out;
}

}  // namespace

bool parikh_member(const Nfa& a, const ParikhVector& v) {
    validate_nfa(a);
    check_vector_domain(a, v);
    Profile target(a.alphabet.size(), 0);
    int total = 0;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        target[i] = v.at(a.alphabet[i]);
        total += target[i];
    }
    auto layer = initial_layer(a);
    for (int t = 0; t < total && !layer.empty(); ++t)
        layer = advance_layer(a, layer, &target);
    for (const auto& [state, prof] : layer)
        if (prof == target && a.accepting.count(state)) return true;
    return false;
}

std::optional<ParikhVector> parikh_intersection_nonempty(const Nfa& a, const Nfa& b,
                                                         int cap) {
    validate_nfa(a);
    validate_nfa(b);
    if (a.alphabet != b.alphabet)
        throw std::invalid_argument("parikh_intersection_nonempty: alphabets differ");
    if (cap < 1) throw std::invalid_argument("parikh_intersection_nonempty: cap < 1");

    auto la = initial_layer(a);
    auto lb = initial_layer(b);
    for (int total = 0; total <= cap; ++total) {
        const auto pa = accepting_profiles(a, la);
        const auto pb = accepting_profiles(b, lb);
        std::vector<Profile> common;
        std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                              std::back_inserter(common));
        if (!common.empty()) {
            ParikhVector v;
            for (std::size_t i = 0; i < a.alphabet.size(); ++i)
                v[a.alphabet[i]] = common.front()[i];
            if (!parikh_member(a, v) || !parikh_member(b, v))
                throw std::logic_error("parikh_intersection_nonempty: witness re-check failed");
            return v;
        }
        if (total < cap) {
            la = advance_layer(a, la, nullptr);
            lb = advance_layer(b, lb, nullptr);
            if (la.empty() || lb.empty()) break;
        }
    }
    return std::nullopt;
}

int default_parikh_cap(const Nfa& a, const Nfa& b) {
    return (a.states + b.states) * static_cast<int>(a.alphabet.size()) * 64;
}

namespace {

/// Depth-first search over (state set, remaining counts); letters are tried in
/// alphabet order, so the first word found is the lexicographically least one.
bool witness_rec(const Nfa& a, const std::vector<int>& states, Profile& remaining,
                 int left, std::vector<Letter>& word,
                 std::set<std::pair<std::vector<int>, Profile>>& dead) {
    if (left == 0) {
        for (int q : states)
            if (a.accepting.count(q)) return true;
        return false;
    }
    const auto key = std::make_pair(states, remaining);
    if (dead.count(key)) return false;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        if (remaining[i] == 0) continue;
        const Letter& l = a.alphabet[i];
        std::set<int> next;
        for (const auto& [p, tl, q] : a.transitions)
            if (tl == l && std::find(states.begin(), states.end(), p) != states.end())
                next.insert(q);
        if (next.empty()) continue;
        --remaining[i];
        word.push_back(l);
        if (witness_rec(a, std::vector<int>(next.begin(), next.end()), remaining,
                        left - 1, word, dead))
            return true;
        word.pop_back();
        ++remaining[i];
    }
    dead.insert(key);
    return false;
}

}  // namespace

std::optional<std::vector<Letter>> parikh_witness_word(const Nfa& a,
                                                       const ParikhVector& v) {
    validate_nfa(a);
    check_vector_domain(a, v);
    Profile remaining(a.alphabet.size(), 0);
    int total = 0;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        remaining[i] = v.at(a.alphabet[i]);
        total += remaining[i];
    }
    std::vector<Letter> word;
    std::set<std::pair<std::vector<int>, Profile>> dead;
    if (witness_rec(a, std::vector<int>(a.initial.begin(), a.initial.end()),
                    remaining, total, word, dead))
        return word;
    return std::nullopt;
}

}  // namespace permlogic
