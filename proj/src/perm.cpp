#include "permlogic/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace permlogic {

std::string to_string(NType t) {
    switch (t) {
        case NType::Dot: return "•";
        case NType::NE:  return "↗";
        case NType::N:   return "↑";
        case NType::NW:  return "↖";
        case NType::W:   return "←";
        case NType::SW:  return "↙";
        case NType::S:   return "↓";
        case NType::SE:  return "↘";
        case NType::E:   return "→";
        case NType::Inf: return "∞";
    }
    return "?";
}

NType neighborhood_type(const Element& a, const Element& b) {
    const int dr = b.r - a.r;
    const int dc = b.c - a.c;
    if (dr == 0 && dc == 0) return NType::Dot;
    if (dr == 0 || dc == 0)
        throw std::invalid_argument(
            "neighborhood_type: distinct elements sharing a row or column");
    if (dr == 1) {
        if (dc == 1) return NType::SE;
        if (dc == -1) return NType::SW;
        return NType::S;
    }
    if (dr == -1) {
        if (dc == 1) return NType::NE;
        if (dc == -1) return NType::NW;
        return NType::N;
    }
    if (dc == 1) return NType::E;
    if (dc == -1) return NType::W;
    return NType::Inf;
}

int ValuedPermutation::col_to_row(int c) const {
    for (int r = 1; r <= n; ++r)
        if (row_to_col[r] == c) return r;
    throw std::invalid_argument("col_to_row: column out of range");
}

bool ValuedPermutation::has_element(int r, int c) const {
    return r >= 1 && r <= n && row_to_col[r] == c;
}

const Valuation& ValuedPermutation::sigma_at(const Element& e) const {
    if (!has_element(e.r, e.c))
        throw std::invalid_argument("sigma_at: element not in permutation");
    return sigma[e.r];
}

std::vector<Element> ValuedPermutation::elements() const {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r) out.push_back({r, row_to_col[r]});
    return out;
}

void validate_model(const ValuedPermutation& m) {
    if (m.n < 1) throw std::invalid_argument("model: n must be positive");
    if (m.row_to_col.size() != static_cast<std::size_t>(m.n) + 1 ||
        m.sigma.size() != static_cast<std::size_t>(m.n) + 1)
        throw std::invalid_argument("model: vector sizes must be n+1");
    std::vector<bool> used(static_cast<std::size_t>(m.n) + 1, false);
    for (int r = 1; r <= m.n; ++r) {
        const int c = m.row_to_col[r];
        if (c < 1 || c > m.n) throw std::invalid_argument("model: column out of range");
        if (used[static_cast<std::size_t>(c)])
            throw std::invalid_argument("model: column used twice");
        used[static_cast<std::size_t>(c)] = true;
    }
}

ValuedPermutation make_model(int n, const std::vector<std::pair<Element, Valuation>>& entries) {
    if (entries.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("make_model: entry count must equal n");
    ValuedPermutation m;
    m.n = n;
    m.row_to_col.assign(static_cast<std::size_t>(n) + 1, 0);
    m.sigma.assign(static_cast<std::size_t>(n) + 1, {});
    for (const auto& [e, val] : entries) {
        if (e.r < 1 || e.r > n) throw std::invalid_argument("make_model: row out of range");
        if (m.row_to_col[e.r] != 0) throw std::invalid_argument("make_model: row used twice");
        m.row_to_col[e.r] = e.c;
        m.sigma[e.r] = val;
    }
    validate_model(m);
    return m;
}

NType neighborhood_type(const ValuedPermutation& m, const Element& a, const Element& b) {
    if (!m.has_element(a.r, a.c) || !m.has_element(b.r, b.c))
        throw std::invalid_argument("neighborhood_type: element not in permutation");
    return neighborhood_type(a, b);
}

int LabeledPermutation::col_to_row(int c) const {
    for (int r = 1; r <= n; ++r)
        if (row_to_col[r] == c) return r;
    throw std::invalid_argument("col_to_row: column out of range");
}

void validate_labeled(const LabeledPermutation& lp) {
    if (lp.n < 1) throw std::invalid_argument("labeled permutation: n must be positive");
    if (lp.row_to_col.size() != static_cast<std::size_t>(lp.n) + 1 ||
        lp.labels.size() != static_cast<std::size_t>(lp.n) + 1)
        throw std::invalid_argument("labeled permutation: vector sizes must be n+1");
    std::vector<bool> used(static_cast<std::size_t>(lp.n) + 1, false);
    for (int r = 1; r <= lp.n; ++r) {
        const int c = lp.row_to_col[r];
        if (c < 1 || c > lp.n)
            throw std::invalid_argument("labeled permutation: column out of range");
        if (used[static_cast<std::size_t>(c)])
            throw std::invalid_argument("labeled permutation: column used twice");
        used[static_cast<std::size_t>(c)] = true;
        if (lp.labels[r].empty())
            throw std::invalid_argument("labeled permutation: empty label");
    }
}

std::string to_string(BlockType t) {
    switch (t) {
        case BlockType::Dot: return "•";
        case BlockType::SE:  return "↘";
        case BlockType::NE:  return "↗";
    }
    return "?";
}

std::vector<Element> Block::elements() const {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    for (int l = 0; l <= k; ++l) {
        if (btype == BlockType::NE)
            out.push_back({i + l, j + k - l});
        else
            out.push_back({i + l, j + l});
    }
    return out;
}

std::vector<Block> maximal_blocks(int n, const std::vector<int>& row_to_col) {
    std::vector<Block> out;
    int r = 1;
    while (r <= n) {
        const int c0 = row_to_col[r];
        int len = 0;  // extent of the run starting at row r
        int dir = 0;
        if (r + 1 <= n && std::abs(row_to_col[r + 1] - c0) == 1) {
            dir = row_to_col[r + 1] - c0;
            len = 1;
            while (r + len + 1 <= n &&
                   row_to_col[r + len + 1] - row_to_col[r + len] == dir)
                ++len;
        }
        Block b;
        b.i = r;
        b.k = len;
        if (len == 0) {
            b.j = c0;
            b.btype = BlockType::Dot;
        } else if (dir == 1) {
            b.j = c0;
            b.btype = BlockType::SE;
        } else {
            b.j = c0 - len;
            b.btype = BlockType::NE;
        }
        out.push_back(b);
        r += len + 1;
    }
    return out;
}

std::vector<Block> maximal_blocks(const ValuedPermutation& m) {
    return maximal_blocks(m.n, m.row_to_col);
}

std::vector<Block> maximal_blocks(const LabeledPermutation& lp) {
    return maximal_blocks(lp.n, lp.row_to_col);
}

std::vector<Boundary> Fingerprint::tau_row() const {
    std::vector<Boundary> out;
    out.reserve(seq.size() + 2);
    out.push_back(bR_minus);
    for (const auto& v : seq) out.push_back(v);
    out.push_back(bR_plus);
    return out;
}

std::vector<Boundary> Fingerprint::tau_col() const {
    std::vector<Boundary> out;
    out.reserve(seq.size() + 2);
    out.push_back(bD_minus);
    if (btype == BlockType::NE)
        for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(*it);
    else
        for (const auto& v : seq) out.push_back(v);
    out.push_back(bD_plus);
    return out;
}

namespace {

std::string valuation_str(const Valuation& v) {
    if (v.empty()) return "{}";
    std::string s = "{";
    bool first = true;
    for (const auto& p : v) {
        if (!first) s += ",";
        s += p;
        first = false;
    }
    return s + "}";
}

std::string boundary_str(const Boundary& b) {
    return b ? valuation_str(*b) : "_";
}

}  // namespace

std::string to_string(const Fingerprint& fp) {
    std::ostringstream os;
    os << "(" << to_string(fp.btype) << ", " << boundary_str(fp.bR_minus) << ", "
       << boundary_str(fp.bR_plus) << ", " << boundary_str(fp.bD_minus) << ", "
       << boundary_str(fp.bD_plus) << ", ";
    for (std::size_t idx = 0; idx < fp.seq.size(); ++idx) {
        if (idx) os << " ";
        os << valuation_str(fp.seq[idx]);
    }
    os << ")";
    return os.str();
}

Fingerprint fingerprint_of(const ValuedPermutation& m, const Block& b) {
    const auto blocks = maximal_blocks(m);
    if (std::find(blocks.begin(), blocks.end(), b) == blocks.end())
        throw std::invalid_argument("fingerprint_of: block is not maximal in the model");
    Fingerprint fp;
    fp.btype = b.btype;
    if (b.i - 1 >= 1) fp.bR_minus = m.sigma[b.i - 1];
    if (b.i + b.k + 1 <= m.n) fp.bR_plus = m.sigma[b.i + b.k + 1];
    if (b.j - 1 >= 1) fp.bD_minus = m.sigma[m.col_to_row(b.j - 1)];
    if (b.j + b.k + 1 <= m.n) fp.bD_plus = m.sigma[m.col_to_row(b.j + b.k + 1)];
    for (int l = 0; l <= b.k; ++l) fp.seq.push_back(m.sigma[b.i + l]);
    return fp;
}

std::vector<std::string> projection(const LabeledPermutation& lp, ProjectionDir dir) {
    std::vector<std::string> word;
    word.reserve(static_cast<std::size_t>(lp.n));
    if (dir == ProjectionDir::Row) {
        for (int r = 1; r <= lp.n; ++r) word.push_back(lp.labels[r]);
    } else {
        for (int c = 1; c <= lp.n; ++c) word.push_back(lp.labels[lp.col_to_row(c)]);
    }
    return word;
}

Summary summary_of(const ValuedPermutation& m) {
    Summary s;
    for (const auto& b : maximal_blocks(m)) s.fingerprints.insert(fingerprint_of(m, b));
    std::map<Valuation, int> counts;
    for (int r = 1; r <= m.n; ++r) {
        ++counts[m.sigma[r]];
        s.yhat.insert(m.sigma[r]);
    }
    for (const auto& [val, cnt] : counts) {
        if (cnt == 1) s.v1.insert(val);
        else if (cnt == 2) s.v2.insert(val);
        else if (cnt == 3) s.v3.insert(val);
    }
    return s;
}

ValuedPermutation cut_region(const ValuedPermutation& m, int r, int c, int r2, int c2) {
    if (!m.has_element(r, c) || !m.has_element(r2, c2))
        throw std::invalid_argument("cut_region: corner elements must be in the permutation");
    if (!(r < r2 && c < c2))
        throw std::invalid_argument("cut_region: corners must satisfy r < r2 and c < c2");
    std::vector<Element> keep;
    for (const auto& e : m.elements()) {
        const bool inside = e.r >= r + 1 && e.r <= r2 && e.c >= c + 1 && e.c <= c2;
        if (!inside) keep.push_back(e);
    }
    std::vector<int> rows, cols;
    for (const auto& e : keep) rows.push_back(e.r);
    for (const auto& e : keep) cols.push_back(e.c);
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    auto rank = [](const std::vector<int>& sorted, int v) {
        return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                sorted.begin()) + 1;
    };
    std::vector<std::pair<Element, Valuation>> entries;
    for (const auto& e : keep)
        entries.push_back({{rank(rows, e.r), rank(cols, e.c)}, m.sigma[e.r]});
    return make_model(static_cast<int>(keep.size()), entries);
}

ValuedPermutation replace_block(const ValuedPermutation& m, const Block& target,
                                const Fingerprint& donor) {
    const Fingerprint have = fingerprint_of(m, target);  // validates maximality
    if (donor.btype != have.btype || donor.bR_minus != have.bR_minus ||
        donor.bR_plus != have.bR_plus || donor.bD_minus != have.bD_minus ||
        donor.bD_plus != have.bD_plus)
        throw std::invalid_argument("replace_block: donor header mismatch");
    if (donor.seq.size() != have.seq.size())
        throw std::invalid_argument("replace_block: donor size mismatch");
    ValuedPermutation out = m;
    for (int l = 0; l <= target.k; ++l)
        out.sigma[target.i + l] = donor.seq[static_cast<std::size_t>(l)];
    return out;
}

std::uint64_t block_bound(int letter_count) {
    if (letter_count < 0) throw std::invalid_argument("block_bound: negative letter count");
    const int L = letter_count;
    if (L > 14) throw std::overflow_error("block_bound: value exceeds 64-bit range");
    const std::uint64_t a = 3ull << (4 * L + 3);
    const std::uint64_t b = 1ull << (3 * (L + 1));
    const std::uint64_t c = 3ull << L;
    return a + b + c;
}

}  // namespace permlogic
