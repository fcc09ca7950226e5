// Command-line surface for the toolkit: model checking, bounded
// satisfiability, Scott normal form, label-restricted permutation solving,
// constrained permutation construction, and automata utilities.
//
// Exit codes: 0 = positive verdict, 1 = negative verdict within bounds,
// 2 = input or usage error, 3 = budget exceeded before a verdict.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "permlogic/constraints.hpp"
#include "permlogic/io.hpp"
#include "permlogic/logic.hpp"
#include "permlogic/oracle.hpp"
#include "permlogic/perm.hpp"
#include "permlogic/rlp.hpp"
#include "permlogic/sat.hpp"

namespace pl = permlogic;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

/// Reads one file through `reader`, prefixing errors with the path.
template <typename Reader>
auto load(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    try {
        return reader(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

template <typename Writer>
void store(const std::string& path, Writer writer) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::string block_type_name(pl::BlockType t) {
    switch (t) {
        case pl::BlockType::Dot: return "Dot";
        case pl::BlockType::SE: return "SE";
        case pl::BlockType::NE: return "NE";
    }
    return "?";
}

/// Parses "a=2,b=1" into a Parikh vector over the given alphabet; letters
/// not mentioned count zero.
pl::ParikhVector parse_counts(const std::string& text,
                              const std::vector<pl::Letter>& alphabet) {
    pl::ParikhVector v;
    for (const auto& a : alphabet) v[a] = 0;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("counts: expected letter=count, got '" + item + "'");
        const std::string letter = item.substr(0, eq);
        const std::string num = item.substr(eq + 1);
        if (!v.count(letter))
            throw std::runtime_error("counts: letter '" + letter +
                                     "' is not in the automaton alphabet");
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(num, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != num.size() || value < 0)
            throw std::runtime_error("counts: bad count '" + num + "'");
        v[letter] = value;
    }
    return v;
}

struct SatArgs {
    std::string formula, out;
    int max_fingerprints = 6;
    int block_len = 3;
    int parikh_cap = 0;
    std::uint64_t max_candidates = 2000000;
    bool oracle = false;
    int max_size = 5;
    int time_cap_ms = 0;
};

int cmd_sat(const SatArgs& a) {
    const auto f = load(a.formula, pl::read_formula);
    if (a.oracle) {
        std::optional<std::chrono::milliseconds> cap;
        if (a.time_cap_ms > 0) cap = std::chrono::milliseconds(a.time_cap_ms);
        const auto res = pl::brute_sat(f, a.max_size, cap);
        if (res.verdict == pl::BruteVerdict::TimedOut) {
            std::cerr << "budget exceeded: oracle time cap of " << a.time_cap_ms
                      << " ms reached before a verdict\n";
            return kExitBudget;
        }
        if (res.verdict == pl::BruteVerdict::Sat) {
            if (!a.out.empty())
                store(a.out, [&](std::ostream& os) {
                    pl::write_model(os, *res.model,
                                    {"oracle max-size=" + std::to_string(a.max_size)});
                });
            std::cout << "SAT\n";
            return kExitYes;
        }
        std::cerr << "no model with at most " << a.max_size << " elements\n";
        std::cout << "UNSAT-WITHIN-BOUNDS\n";
        return kExitNo;
    }
    pl::SatBounds bounds;
    bounds.max_fingerprints = a.max_fingerprints;
    bounds.max_block_len = a.block_len;
    bounds.parikh_cap = a.parikh_cap;
    bounds.max_candidates = a.max_candidates;
    const std::string knobs =
        "max-fingerprints=" + std::to_string(bounds.max_fingerprints) +
        " block-len=" + std::to_string(bounds.max_block_len) +
        " parikh-cap=" + std::to_string(bounds.parikh_cap) +
        " max-candidates=" + std::to_string(bounds.max_candidates);
    const auto res = pl::decide_sat(f, bounds);
    if (res.verdict == pl::SatVerdict::Sat) {
        if (!a.out.empty())
            store(a.out,
                  [&](std::ostream& os) { pl::write_model(os, *res.model, {knobs}); });
        std::cout << pl::to_string(res.verdict) << "\n";
        return kExitYes;
    }
    if (!res.exhausted) {
        std::cerr << "budget exceeded: stopped after the step budget (" << knobs
                  << ") without finishing the search\n";
        return kExitBudget;
    }
    std::cerr << "no model within " << knobs << "\n";
    std::cout << pl::to_string(res.verdict) << "\n";
    return kExitNo;
}

int cmd_check(const std::string& model_path, const std::string& formula_path) {
    const auto m = load(model_path, pl::read_model);
    const auto f = load(formula_path, pl::read_formula);
    if (!pl::is_closed(f))
        throw std::runtime_error(formula_path + ": formula must be closed");
    if (pl::eval_formula(m, f, {})) {
        std::cout << "OK\n";
        return kExitYes;
    }
    std::cout << "FAIL\n";
    return kExitNo;
}

int cmd_snf(const std::string& formula_path, const std::string& out) {
    const auto f = load(formula_path, pl::read_formula);
    const auto g = pl::snf_to_formula(pl::to_snf(f));
    if (!out.empty())
        store(out, [&](std::ostream& os) {
            pl::write_formula(os, g, {"scott normal form"});
        });
    std::cout << pl::to_string(g) << "\n";
    return kExitYes;
}

int cmd_rlp_solve(const std::string& inst_path, int theta, int max_word,
                  int parikh_cap, const std::string& out) {
    const auto inst = load(inst_path, pl::read_rlp);
    pl::RlpOptions opts;
    opts.max_word = max_word;
    opts.parikh_cap = parikh_cap;
    const auto w = pl::solve_rlp(inst, theta, opts);
    if (!w) {
        std::cerr << "no witness within theta=" << theta << " max-word=" << max_word
                  << " parikh-cap=" << parikh_cap << "\n";
        std::cout << "NO\n";
        return kExitNo;
    }
    if (!out.empty())
        store(out, [&](std::ostream& os) {
            pl::write_labeled(os, *w,
                              {"theta=" + std::to_string(theta) +
                               " max-word=" + std::to_string(max_word) +
                               " parikh-cap=" + std::to_string(parikh_cap)});
        });
    std::cout << "YES\n";
    return kExitYes;
}

int cmd_rlp_verify(const std::string& inst_path, const std::string& witness_path) {
    const auto inst = load(inst_path, pl::read_rlp);
    const auto w = load(witness_path, pl::read_labeled);
    if (pl::verify_witness(w, inst)) {
        std::cout << "OK\n";
        return kExitYes;
    }
    std::cout << "FAIL\n";
    return kExitNo;
}

int cmd_perm_construct(const std::string& constraint_path, const std::string& out) {
    const auto z = load(constraint_path, pl::read_constraint);
    const auto gp = pl::construct_permutation(z);
    if (!gp) {
        std::cout << "NO\n";
        return kExitNo;
    }
    std::cout << "YES\n";
    for (const auto& e : gp->elements) std::cout << e.r << " " << e.c << "\n";
    if (!out.empty())
        store(out, [&](std::ostream& os) {
            os << "# k=" << z.k << "\n";
            for (const auto& e : gp->elements) os << e.r << " " << e.c << "\n";
        });
    return kExitYes;
}

int cmd_perm_blocks(const std::string& model_path) {
    const auto m = load(model_path, pl::read_model);
    for (const auto& b : pl::maximal_blocks(m))
        std::cout << block_type_name(b.btype) << " " << b.i << " " << b.j << " "
                  << b.k << "\n";
    return kExitYes;
}

int cmd_perm_fingerprints(const std::string& model_path) {
    const auto m = load(model_path, pl::read_model);
    for (const auto& fp : pl::summary_of(m).fingerprints)
        std::cout << pl::to_string(fp) << "\n";
    return kExitYes;
}

int cmd_nfa_parikh(const std::string& nfa_path, const std::string& counts) {
    const auto a = load(nfa_path, pl::read_nfa);
    const auto v = parse_counts(counts, a.alphabet);
    if (pl::parikh_member(a, v)) {
        std::cout << "YES\n";
        return kExitYes;
    }
    std::cout << "NO\n";
    return kExitNo;
}

int cmd_nfa_intersect(const std::string& path1, const std::string& path2, int cap) {
    const auto a = load(path1, pl::read_nfa);
    const auto b = load(path2, pl::read_nfa);
    const int effective = cap > 0 ? cap : pl::default_parikh_cap(a, b);
    const auto v = pl::parikh_intersection_nonempty(a, b, effective);
    if (!v) {
        std::cerr << "no common Parikh vector of total length at most " << effective
                  << "\n";
        std::cout << "NO\n";
        return kExitNo;
    }
    std::cout << "YES\n";
    bool first = true;
    for (const auto& [letter, count] : *v) {
        std::cout << (first ? "" : " ") << letter << "=" << count;
        first = false;
    }
    std::cout << "\n";
    return kExitYes;
}

int cmd_shuffle(const std::string& input_path, const std::string& output_path,
                int max_size) {
    const auto input = load(input_path, pl::read_nfa);
    const auto output = load(output_path, pl::read_nfa);
    const auto res = pl::shuffle_check(input, output, max_size);
    if (!res) {
        std::cerr << "no rearrangeable word of size at most " << max_size << "\n";
        std::cout << "NO\n";
        return kExitNo;
    }
    std::cout << "YES\n";
    for (std::size_t i = 0; i < res->word.size(); ++i)
        std::cout << (i ? " " : "") << res->word[i];
    std::cout << "\n";
    for (std::size_t i = 0; i < res->p.size(); ++i)
        std::cout << (i ? " " : "") << res->p[i];
    std::cout << "\n";
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision toolkit for two-variable logic over permutations "
                 "with two successor relations"};
    app.require_subcommand(1);
    int rc = kExitUsage;

    std::string model_path, formula_path, out_path;
    auto* check = app.add_subcommand("check", "Evaluate a formula on a model");
    check->add_option("--model", model_path, "model file (.pm)")->required();
    check->add_option("--formula", formula_path, "formula file (.fo)")->required();
    check->callback([&] { rc = cmd_check(model_path, formula_path); });

    SatArgs sat_args;
    auto* sat = app.add_subcommand("sat", "Decide bounded satisfiability");
    sat->add_option("--formula", sat_args.formula, "formula file (.fo)")->required();
    sat->add_option("--max-fingerprints", sat_args.max_fingerprints,
                    "fingerprints per candidate summary");
    sat->add_option("--block-len", sat_args.block_len, "interior length per block");
    sat->add_option("--parikh-cap", sat_args.parikh_cap,
                    "total-length cap for the Parikh search (0 = automatic)");
    sat->add_option("--max-candidates", sat_args.max_candidates,
                    "enumeration step budget");
    sat->add_option("--out", sat_args.out, "write the model here on SAT (.pm)");
    sat->add_flag("--oracle", sat_args.oracle, "exhaustive search instead of the pipeline");
    sat->add_option("--max-size", sat_args.max_size, "oracle model size bound");
    sat->add_option("--time-cap", sat_args.time_cap_ms,
                    "oracle time cap in milliseconds (0 = none)");
    sat->callback([&] { rc = cmd_sat(sat_args); });

    std::string snf_formula, snf_out;
    auto* snf = app.add_subcommand("snf", "Print the Scott normal form of a formula");
    snf->add_option("--formula", snf_formula, "formula file (.fo)")->required();
    snf->add_option("--out", snf_out, "also write the result here (.fo)");
    snf->callback([&] { rc = cmd_snf(snf_formula, snf_out); });

    auto* rlp = app.add_subcommand("rlp", "Label-restricted permutation problems");
    rlp->require_subcommand(1);
    std::string rlp_instance, rlp_out, rlp_witness;
    int rlp_theta = pl::RLP_THRESHOLD, rlp_max_word = 0, rlp_cap = 0;
    auto* rlp_solve = rlp->add_subcommand("solve", "Search for a witness");
    rlp_solve->add_option("--instance", rlp_instance, "instance file (.rlp)")->required();
    rlp_solve->add_option("--theta", rlp_theta, "light/heavy occurrence threshold");
    rlp_solve->add_option("--max-word", rlp_max_word,
                          "exhaustive fallback size bound (0 = none)");
    rlp_solve->add_option("--parikh-cap", rlp_cap,
                          "total-length cap for the Parikh search (0 = automatic)");
    rlp_solve->add_option("--out", rlp_out, "write the witness here on YES (.pm)");
    rlp_solve->callback(
        [&] { rc = cmd_rlp_solve(rlp_instance, rlp_theta, rlp_max_word, rlp_cap, rlp_out); });
    auto* rlp_verify = rlp->add_subcommand("verify", "Check a witness against an instance");
    rlp_verify->add_option("--instance", rlp_instance, "instance file (.rlp)")->required();
    rlp_verify->add_option("--witness", rlp_witness, "witness file (.pm)")->required();
    rlp_verify->callback([&] { rc = cmd_rlp_verify(rlp_instance, rlp_witness); });

    auto* perm = app.add_subcommand("perm", "Permutation structure utilities");
    perm->require_subcommand(1);
    std::string con_path, con_out, perm_model;
    auto* construct = perm->add_subcommand("construct",
                                           "Build a permutation avoiding forbidden cells");
    construct->add_option("--constraint", con_path, "constraint file (.con)")->required();
    construct->add_option("--out", con_out, "write the element list here");
    construct->callback([&] { rc = cmd_perm_construct(con_path, con_out); });
    auto* blocks = perm->add_subcommand("blocks", "List the maximal blocks of a model");
    blocks->add_option("--model", perm_model, "model file (.pm)")->required();
    blocks->callback([&] { rc = cmd_perm_blocks(perm_model); });
    auto* fps = perm->add_subcommand("fingerprints",
                                     "List the block fingerprints of a model");
    fps->add_option("--model", perm_model, "model file (.pm)")->required();
    fps->callback([&] { rc = cmd_perm_fingerprints(perm_model); });

    auto* nfa = app.add_subcommand("nfa", "Automata utilities");
    nfa->require_subcommand(1);
    std::string nfa_path, nfa_path2, counts;
    int cap = 0;
    auto* parikh = nfa->add_subcommand("parikh",
                                       "Test Parikh-image membership of a count vector");
    parikh->add_option("--nfa", nfa_path, "automaton file (.nfa)")->required();
    parikh->add_option("--counts", counts, "letter counts, e.g. a=2,b=1");
    parikh->callback([&] { rc = cmd_nfa_parikh(nfa_path, counts); });
    auto* intersect = nfa->add_subcommand(
        "intersect", "Search for a common Parikh vector of two languages");
    intersect->add_option("--nfa1", nfa_path, "first automaton (.nfa)")->required();
    intersect->add_option("--nfa2", nfa_path2, "second automaton (.nfa)")->required();
    intersect->add_option("--cap", cap, "total-length cap (0 = automatic)");
    intersect->callback([&] { rc = cmd_nfa_intersect(nfa_path, nfa_path2, cap); });

    std::string shuffle_in, shuffle_out;
    int shuffle_max = 6;
    auto* shuffle = app.add_subcommand(
        "shuffle", "Find a word rearrangeable between two languages without "
                   "adjacent source positions");
    shuffle->add_option("--input", shuffle_in, "input language (.nfa)")->required();
    shuffle->add_option("--output", shuffle_out, "output language (.nfa)")->required();
    shuffle->add_option("--max-size", shuffle_max, "word size bound");
    shuffle->callback([&] { rc = cmd_shuffle(shuffle_in, shuffle_out, shuffle_max); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
