#pragma once

// Shared helpers for the test suites: deterministic random generators for
// permutations, models, and valuations. All tests seed their own engines so
// every run is reproducible.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "permlogic/perm.hpp"

namespace testgen {

using Rng = std::mt19937;

inline std::vector<int> random_row_to_col(Rng& rng, int n) {
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 1);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::vector<int> row_to_col(static_cast<std::size_t>(n) + 1, 0);
    for (int r = 1; r <= n; ++r) row_to_col[r] = cols[static_cast<std::size_t>(r - 1)];
    return row_to_col;
}

inline permlogic::Valuation random_valuation(Rng& rng, const std::vector<std::string>& letters) {
    permlogic::Valuation v;
    for (const auto& p : letters)
        if (std::uniform_int_distribution<int>(0, 1)(rng)) v.insert(p);
    return v;
}

inline permlogic::ValuedPermutation random_model(Rng& rng, int n,
                                                 const std::vector<std::string>& letters) {
    permlogic::ValuedPermutation m;
    m.n = n;
    m.row_to_col = random_row_to_col(rng, n);
    m.sigma.assign(static_cast<std::size_t>(n) + 1, {});
    for (int r = 1; r <= n; ++r) m.sigma[r] = random_valuation(rng, letters);
    return m;
}

inline permlogic::LabeledPermutation random_labeled(Rng& rng, int n,
                                                    const std::vector<std::string>& alphabet) {
    permlogic::LabeledPermutation lp;
    lp.n = n;
    lp.row_to_col = random_row_to_col(rng, n);
    lp.labels.assign(static_cast<std::size_t>(n) + 1, "");
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int r = 1; r <= n; ++r) lp.labels[r] = alphabet[pick(rng)];
    return lp;
}

}  // namespace testgen
