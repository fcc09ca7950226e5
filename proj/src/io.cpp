#include "permlogic/io.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace permlogic {

namespace {

/// Splits a stream into significant lines of whitespace tokens, skipping
/// blank lines and full-line '#' comments, with one-line lookahead.
struct LineReader {
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& tokens) {
        if (pending_) {
            tokens = std::move(*pending_);
            pending_.reset();
            return true;
        }
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            std::istringstream ls(line);
            tokens.clear();
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (tokens.empty() || tokens[0][0] == '#') continue;
            return true;
        }
        return false;
    }

    void push_back(std::vector<std::string> tokens) { pending_ = std::move(tokens); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("line " + std::to_string(lineno_) + ": " + msg);
    }

    /// next() that fails at end of input instead of returning false.
    std::vector<std::string> expect(const std::string& what) {
        std::vector<std::string> tokens;
        if (!next(tokens)) fail("expected " + what + ", got end of input");
        return tokens;
    }

    /// expect() whose first token must be the given keyword.
    std::vector<std::string> expect_key(const std::string& key) {
        auto tokens = expect("'" + key + "' line");
        if (tokens[0] != key) fail("expected '" + key + "', got '" + tokens[0] + "'");
        return tokens;
    }

    int parse_int(const std::string& tok) const {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            fail("expected an integer, got '" + tok + "'");
        }
    }

private:
    std::istream& in_;
    int lineno_ = 0;
    std::optional<std::vector<std::string>> pending_;
};

void write_header(std::ostream& out, const Header& header) {
    for (const auto& line : header) out << "# " << line << "\n";
}

std::string valuation_text(const Valuation& v) {
    if (v.empty()) return "-";
    std::string s;
    for (const auto& l : v) {
        if (!s.empty()) s += ",";
        s += l;
    }
    return s;
}

Valuation parse_valuation(LineReader& r, const std::string& tok) {
    Valuation v;
    if (tok == "-") return v;
    std::size_t start = 0;
    while (start <= tok.size()) {
        const std::size_t comma = tok.find(',', start);
        const std::string letter = tok.substr(start, comma - start);
        if (letter.empty()) r.fail("empty letter in valuation '" + tok + "'");
        v.insert(letter);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return v;
}

/// Common shape of .pm files: `n <N>` plus one line per element.
struct RawModel {
    int n = 0;
    std::vector<std::vector<std::string>> entries;  // token lines, size 3 each
};

RawModel read_raw_model(LineReader& r) {
    RawModel raw;
    const auto head = r.expect_key("n");
    if (head.size() != 2) r.fail("expected 'n <size>'");
    raw.n = r.parse_int(head[1]);
    if (raw.n < 1) r.fail("size must be positive");
    for (int i = 0; i < raw.n; ++i) {
        auto tokens = r.expect("an element line");
        if (tokens.size() != 3) r.fail("expected '<row> <col> <letters>'");
        raw.entries.push_back(std::move(tokens));
    }
    std::vector<std::string> extra;
    if (r.next(extra)) r.fail("unexpected trailing line");
    return raw;
}

Nfa read_nfa_block(LineReader& r) {
    Nfa a;
    const auto alpha = r.expect_key("alphabet");
    for (std::size_t i = 1; i < alpha.size(); ++i) a.alphabet.push_back(alpha[i]);
    const auto states = r.expect_key("states");
    if (states.size() != 2) r.fail("expected 'states <count>'");
    a.states = r.parse_int(states[1]);
    const auto init = r.expect_key("init");
    for (std::size_t i = 1; i < init.size(); ++i) a.initial.insert(r.parse_int(init[i]));
    const auto fin = r.expect_key("final");
    for (std::size_t i = 1; i < fin.size(); ++i) a.accepting.insert(r.parse_int(fin[i]));
    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        if (tokens[0] != "trans") {
            r.push_back(std::move(tokens));
            break;
        }
        if (tokens.size() != 4) r.fail("expected 'trans <state> <letter> <state>'");
        a.transitions.insert({r.parse_int(tokens[1]), tokens[2], r.parse_int(tokens[3])});
    }
    validate_nfa(a);
    return a;
}

void write_nfa_block(std::ostream& out, const Nfa& a) {
    out << "alphabet";
    for (const auto& l : a.alphabet) out << " " << l;
    out << "\nstates " << a.states << "\ninit";
    for (int q : a.initial) out << " " << q;
    out << "\nfinal";
    for (int q : a.accepting) out << " " << q;
    out << "\n";
    for (const auto& [q, l, q2] : a.transitions)
        out << "trans " << q << " " << l << " " << q2 << "\n";
}

}  // namespace

FormulaPtr read_formula(std::istream& in) {
    std::ostringstream text;
    text << in.rdbuf();
    return parse_formula(text.str());
}

void write_formula(std::ostream& out, const FormulaPtr& f, const Header& header) {
    write_header(out, header);
    out << to_string(f) << "\n";
}

ValuedPermutation read_model(std::istream& in) {
    LineReader r(in);
    const RawModel raw = read_raw_model(r);
    std::vector<std::pair<Element, Valuation>> entries;
    for (const auto& tokens : raw.entries)
        entries.push_back({{r.parse_int(tokens[0]), r.parse_int(tokens[1])},
                           parse_valuation(r, tokens[2])});
    return make_model(raw.n, entries);
}

void write_model(std::ostream& out, const ValuedPermutation& m, const Header& header) {
    write_header(out, header);
    out << "n " << m.n << "\n";
    for (int rr = 1; rr <= m.n; ++rr)
        out << rr << " " << m.row_to_col[rr] << " " << valuation_text(m.sigma[rr])
            << "\n";
}

LabeledPermutation read_labeled(std::istream& in) {
    LineReader r(in);
    const RawModel raw = read_raw_model(r);
    LabeledPermutation lp;
    lp.n = raw.n;
    lp.row_to_col.assign(raw.n + 1, 0);
    lp.labels.assign(raw.n + 1, "");
    for (const auto& tokens : raw.entries) {
        const int row = r.parse_int(tokens[0]);
        if (row < 1 || row > raw.n || lp.row_to_col[row] != 0)
            r.fail("bad or repeated row " + tokens[0]);
        const Valuation v = parse_valuation(r, tokens[2]);
        if (v.size() != 1) r.fail("expected exactly one label, got '" + tokens[2] + "'");
        lp.row_to_col[row] = r.parse_int(tokens[1]);
        lp.labels[row] = *v.begin();
    }
    validate_labeled(lp);
    return lp;
}

void write_labeled(std::ostream& out, const LabeledPermutation& lp,
                   const Header& header) {
    write_header(out, header);
    out << "n " << lp.n << "\n";
    for (int rr = 1; rr <= lp.n; ++rr)
        out << rr << " " << lp.row_to_col[rr] << " " << lp.labels[rr] << "\n";
}

Constraint read_constraint(std::istream& in) {
    LineReader r(in);
    Constraint z;
    const auto rows = r.expect_key("rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        z.domain.rows.insert(r.parse_int(rows[i]));
    const auto cols = r.expect_key("cols");
    for (std::size_t i = 1; i < cols.size(); ++i)
        z.domain.cols.insert(r.parse_int(cols[i]));
    const auto k = r.expect_key("k");
    if (k.size() != 2) r.fail("expected 'k <int>'");
    z.k = r.parse_int(k[1]);
    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        if (tokens[0] != "forbid" || tokens.size() != 3)
            r.fail("expected 'forbid <row> <col>'");
        z.forbidden.insert({r.parse_int(tokens[1]), r.parse_int(tokens[2])});
    }
    validate_constraint(z);
    return z;
}

void write_constraint(std::ostream& out, const Constraint& z, const Header& header) {
    write_header(out, header);
    out << "rows";
    for (int rr : z.domain.rows) out << " " << rr;
    out << "\ncols";
    for (int c : z.domain.cols) out << " " << c;
    out << "\nk " << z.k << "\n";
    for (const auto& e : z.forbidden) out << "forbid " << e.r << " " << e.c << "\n";
}

Nfa read_nfa(std::istream& in) {
    LineReader r(in);
    const Nfa a = read_nfa_block(r);
    std::vector<std::string> extra;
    if (r.next(extra)) r.fail("unexpected trailing line");
    return a;
}

void write_nfa(std::ostream& out, const Nfa& a, const Header& header) {
    write_header(out, header);
    write_nfa_block(out, a);
}

RlpInstance read_rlp(std::istream& in) {
    LineReader r(in);
    RlpInstance inst;
    const auto alpha = r.expect_key("alphabet");
    for (std::size_t i = 1; i < alpha.size(); ++i) inst.alphabet.push_back(alpha[i]);
    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        if (tokens[0] != "restrict") {
            r.push_back(std::move(tokens));
            break;
        }
        if (tokens.size() != 4) r.fail("expected 'restrict <a> <SE|NE> <b>'");
        if (tokens[2] != "SE" && tokens[2] != "NE")
            r.fail("restriction direction must be SE or NE, got '" + tokens[2] + "'");
        inst.restrictions.insert(
            {tokens[1], tokens[2] == "SE" ? NType::SE : NType::NE, tokens[3]});
    }
    r.expect_key("nfa1");
    inst.nfa1 = read_nfa_block(r);
    r.expect_key("nfa2");
    inst.nfa2 = read_nfa_block(r);
    std::vector<std::string> extra;
    if (r.next(extra)) r.fail("unexpected trailing line");
    validate_instance(inst);
    return inst;
}

void write_rlp(std::ostream& out, const RlpInstance& inst, const Header& header) {
    write_header(out, header);
    out << "alphabet";
    for (const auto& l : inst.alphabet) out << " " << l;
    out << "\n";
    for (const auto& rs : inst.restrictions)
        out << "restrict " << rs.a << " " << (rs.t == NType::SE ? "SE" : "NE") << " "
            << rs.b << "\n";
    out << "nfa1\n";
    write_nfa_block(out, inst.nfa1);
    out << "nfa2\n";
    write_nfa_block(out, inst.nfa2);
}

}  // namespace permlogic
