#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "helpers.hpp"
#include "permlogic/logic.hpp"
#include "permlogic/oracle.hpp"

using namespace permlogic;

namespace {

ValuedPermutation figure_model() {
    return make_model(4, {
        {{1, 3}, {"p", "q"}},
        {{2, 2}, {"q"}},
        {{3, 4}, {"q", "r"}},
        {{4, 1}, {"r"}},
    });
}

FormulaPtr figure_formula_ast() {
    return f_forall(Var::X, f_forall(Var::Y,
        f_not(f_and(f_and(f_succr(Var::X, Var::Y), f_succd(Var::Y, Var::X)),
                    f_pred("p", Var::X)))));
}

/// Random closed formula: quantifiers, connectives, atoms over in-scope vars.
FormulaPtr random_formula(testgen::Rng& rng, int depth, const std::vector<Letter>& letters,
                          std::set<Var> scope) {
    std::uniform_int_distribution<int> d6(0, 5);
    const bool must_quantify = scope.empty();
    const bool can_atom = !scope.empty();
    int kind = d6(rng);
    if (depth <= 0) kind = 5;  // atom (or forced quantifier below)
    if (must_quantify) kind = std::uniform_int_distribution<int>(0, 1)(rng);
    switch (kind) {
        case 0:
        case 1: {
            if (depth <= 0 && can_atom) break;  // fall through to atom
            const Var v = std::uniform_int_distribution<int>(0, 1)(rng) ? Var::X : Var::Y;
            auto inner = scope;
            inner.insert(v);
            FormulaPtr body = random_formula(rng, depth - 1, letters, inner);
            return kind == 0 ? f_forall(v, body) : f_exists(v, body);
        }
        case 2:
            return f_not(random_formula(rng, depth - 1, letters, scope));
        case 3:
            return f_and(random_formula(rng, depth - 1, letters, scope),
                         random_formula(rng, depth - 1, letters, scope));
        case 4:
            return f_or(random_formula(rng, depth - 1, letters, scope),
                        random_formula(rng, depth - 1, letters, scope));
        default:
            break;
    }
    // Atom over in-scope variables.
    std::vector<Var> vars(scope.begin(), scope.end());
    std::uniform_int_distribution<std::size_t> pv(0, vars.size() - 1);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: {
            std::uniform_int_distribution<std::size_t> pl(0, letters.size() - 1);
            return f_pred(letters[pl(rng)], vars[pv(rng)]);
        }
        case 1:
            return f_succr(vars[pv(rng)], vars[pv(rng)]);
        default:
            return f_succd(vars[pv(rng)], vars[pv(rng)]);
    }
}

/// Random quantifier-free formula over both variables.
FormulaPtr random_qf(testgen::Rng& rng, int depth, const std::vector<Letter>& letters) {
    if (depth <= 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        auto var = [&] {
            return std::uniform_int_distribution<int>(0, 1)(rng) ? Var::X : Var::Y;
        };
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
            case 0: {
                std::uniform_int_distribution<std::size_t> pl(0, letters.size() - 1);
                return f_pred(letters[pl(rng)], var());
            }
            case 1:
                return f_succr(var(), var());
            default:
                return f_succd(var(), var());
        }
    }
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
            return f_not(random_qf(rng, depth - 1, letters));
        case 1:
            return f_and(random_qf(rng, depth - 1, letters),
                         random_qf(rng, depth - 1, letters));
        default:
            return f_or(random_qf(rng, depth - 1, letters),
                        random_qf(rng, depth - 1, letters));
    }
}

}  // namespace

TEST_CASE("parse_formula basic shapes") {
    const auto f = parse_formula("forall x. p(x)");
    REQUIRE(f->kind == FormulaKind::Forall);
    CHECK(f->var == Var::X);
    REQUIRE(f->lhs->kind == FormulaKind::Pred);
    CHECK(f->lhs->letter == "p");
    CHECK(f->lhs->var == Var::X);
}

TEST_CASE("parse_formula accepts the running example formula") {
    const auto f = parse_formula("forall x. forall y. !((x -> y) & (y |> x) & p(x))");
    CHECK(formula_equal(f, figure_formula_ast()));
}

TEST_CASE("parse_formula precedence and parentheses") {
    CHECK(formula_equal(parse_formula("p(x) & q(x) | r(x)"),
                        f_or(f_and(f_pred("p", Var::X), f_pred("q", Var::X)),
                             f_pred("r", Var::X))));
    CHECK(formula_equal(parse_formula("p(x) | q(x) & r(x)"),
                        f_or(f_pred("p", Var::X),
                             f_and(f_pred("q", Var::X), f_pred("r", Var::X)))));
    CHECK(formula_equal(parse_formula("!p(x) & q(y)"),
                        f_and(f_not(f_pred("p", Var::X)), f_pred("q", Var::Y))));
    CHECK(formula_equal(parse_formula("(exists y. x -> y) | p(x)"),
                        f_or(f_exists(Var::Y, f_succr(Var::X, Var::Y)),
                             f_pred("p", Var::X))));
    CHECK(formula_equal(parse_formula("x |> y"), f_succd(Var::X, Var::Y)));
    CHECK(formula_equal(parse_formula("# leading comment\np(x) # trailing\n"),
                        f_pred("p", Var::X)));
}

TEST_CASE("parse_formula rejects bad input with positions") {
    try {
        parse_formula("forall z. p(z)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 8);
    }
    CHECK_THROWS_AS(parse_formula("p(x"), ParseError);
    CHECK_THROWS_AS(parse_formula("x -> z"), ParseError);
    CHECK_THROWS_AS(parse_formula("p(x) p(y)"), ParseError);
    CHECK_THROWS_AS(parse_formula("p(x) & forall y. q(y)"), ParseError);
    CHECK_THROWS_AS(parse_formula("x - y"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
}

TEST_CASE("pretty-printer round-trips random formulas") {
    testgen::Rng rng(20240814);
    for (int iter = 0; iter < 400; ++iter) {
        const auto f = random_formula(rng, 4, {"p", "q"}, {});
        const auto text = to_string(f);
        INFO(text);
        const auto back = parse_formula(text);
        REQUIRE(formula_equal(f, back));
    }
}

TEST_CASE("eval_formula on the running example") {
    const auto m = figure_model();
    CHECK(eval_formula(m, figure_formula_ast(), {}));
    CHECK_FALSE(eval_formula(m, parse_formula("forall x. p(x)"), {}));
    CHECK(eval_formula(m, parse_formula("exists x. p(x) & q(x)"), {}));
}

TEST_CASE("eval_formula successor semantics") {
    const auto one = make_model(1, {{{1, 1}, {"p"}}});
    CHECK_FALSE(eval_formula(one, parse_formula("exists x. exists y. x -> y"), {}));
    CHECK_FALSE(eval_formula(one, parse_formula("exists x. x -> x"), {}));

    const auto id2 = make_model(2, {{{1, 1}, {}}, {{2, 2}, {}}});
    CHECK(eval_formula(id2, parse_formula("exists x. exists y. (x -> y) & (x |> y)"), {}));
    CHECK_FALSE(eval_formula(id2,
        parse_formula("exists x. exists y. (x -> y) & !(x |> y)"), {}));

    ValuedPermutation swap2 = make_model(2, {{{1, 2}, {}}, {{2, 1}, {}}});
    CHECK(eval_formula(swap2, parse_formula("exists x. exists y. (y -> x) & (x |> y)"), {}));
}

TEST_CASE("eval_formula rejects unbound variables") {
    const auto one = make_model(1, {{{1, 1}, {"p"}}});
    CHECK_THROWS_AS(eval_formula(one, f_pred("p", Var::X), {}), std::invalid_argument);
}

TEST_CASE("eval_formula agrees with the naive evaluator") {
    testgen::Rng rng(20240815);
    for (int iter = 0; iter < 400; ++iter) {
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        const auto m = testgen::random_model(rng, n, {"p", "q"});
        const auto f = random_formula(rng, 4, {"p", "q"}, {});
        REQUIRE(eval_formula(m, f, {}) == naive_eval(m, f));
    }
}

TEST_CASE("to_snf keeps already-normal conjuncts verbatim") {
    const auto snf = to_snf(parse_formula("forall x. exists y. x -> y"));
    CHECK(snf.chi->kind == FormulaKind::True);
    REQUIRE(snf.psis.size() == 1);
    CHECK(formula_equal(snf.psis[0], f_succr(Var::X, Var::Y)));
    CHECK(snf.fresh.empty());
    CHECK(snf.vocabulary.empty());

    const auto fig = to_snf(figure_formula_ast());
    CHECK(fig.psis.empty());
    CHECK(fig.fresh.empty());
    CHECK(formula_equal(fig.chi,
        f_not(f_and(f_and(f_succr(Var::X, Var::Y), f_succd(Var::Y, Var::X)),
                    f_pred("p", Var::X)))));
}

TEST_CASE("to_snf realizes a bare existential as a psi") {
    const auto snf = to_snf(parse_formula("exists x. p(x)"));
    CHECK(snf.chi->kind == FormulaKind::True);
    REQUIRE(snf.psis.size() == 1);
    CHECK(formula_equal(snf.psis[0], f_pred("p", Var::Y)));
}

TEST_CASE("to_snf rejects open formulas") {
    CHECK_THROWS_AS(to_snf(parse_formula("p(x)")), std::invalid_argument);
    CHECK_THROWS_AS(to_snf(parse_formula("forall x. x -> y")), std::invalid_argument);
}

TEST_CASE("to_snf output is quantifier-free and linear-sized") {
    testgen::Rng rng(20240816);
    for (int iter = 0; iter < 100; ++iter) {
        const auto f = random_formula(rng, 4, {"p", "q"}, {});
        const auto snf = to_snf(f);
        CHECK(is_quantifier_free(snf.chi));
        for (const auto& psi : snf.psis) CHECK(is_quantifier_free(psi));
        for (const auto& fd : snf.fresh) {
            CHECK(fd.p.rfind("_snf", 0) == 0);
            CHECK(snf.vocabulary.count(fd.p));
        }
    }
}

TEST_CASE("to_snf is equisatisfiable at bounded size") {
    testgen::Rng rng(20240817);
    int corpus = 0;
    while (corpus < 50) {
        const auto f = random_formula(rng, 4, {"p", "q"}, {});
        const auto snf = to_snf(f);
        if (snf.fresh.size() > 2) continue;  // keep the brute-force side tractable
        ++corpus;
        const auto direct = brute_sat(f, 4);
        REQUIRE(direct.verdict != BruteVerdict::TimedOut);
        const auto normal = brute_sat(snf_to_formula(snf), 4);
        REQUIRE(normal.verdict != BruteVerdict::TimedOut);
        INFO(to_string(f));
        REQUIRE((direct.verdict == BruteVerdict::Sat) ==
                (normal.verdict == BruteVerdict::Sat));
        if (direct.verdict == BruteVerdict::Sat) {
            // Expanding the direct model with the fresh letters satisfies the SNF.
            const auto expanded = expand_with_fresh(*direct.model, snf);
            REQUIRE(eval_snf(expanded, snf));
        }
        if (normal.verdict == BruteVerdict::Sat) {
            // Erasing the fresh letters from an SNF model satisfies the original.
            const auto erased = erase_letters(*normal.model, letters_of(f));
            REQUIRE(naive_eval(erased, f));
        }
    }
}

TEST_CASE("atomic_sat matches the worked examples") {
    const auto psi = f_and(f_succr(Var::X, Var::Y),
                           f_or(f_pred("a", Var::X), f_not(f_pred("b", Var::Y))));
    CHECK(atomic_sat({{"b"}, NType::NE, {"a", "c"}}, psi));
    CHECK_FALSE(atomic_sat({{"a"}, NType::S, {"a", "b"}}, psi));
    CHECK_FALSE(atomic_sat({{"p"}, NType::Dot, {"p"}}, f_succr(Var::X, Var::Y)));
}

TEST_CASE("atomic_sat rejects quantified input") {
    CHECK_THROWS_AS(atomic_sat({{}, NType::Dot, {}},
                               f_exists(Var::Y, f_succr(Var::X, Var::Y))),
                    std::invalid_argument);
}

TEST_CASE("atomic_sat agrees with eval on witness models for every type") {
    struct Witness {
        NType t;
        ValuedPermutation m;
        Element e1, e2;
    };
    auto mk = [](int n, std::vector<std::pair<Element, Valuation>> entries) {
        return make_model(n, entries);
    };
    testgen::Rng rng(20240818);
    for (int iter = 0; iter < 300; ++iter) {
        const Valuation s = testgen::random_valuation(rng, {"a", "b"});
        const Valuation s2 = testgen::random_valuation(rng, {"a", "b"});
        std::vector<Witness> wits = {
            {NType::Dot, mk(1, {{{1, 1}, s}}), {1, 1}, {1, 1}},
            {NType::SE, mk(2, {{{1, 1}, s}, {{2, 2}, s2}}), {1, 1}, {2, 2}},
            {NType::SW, mk(2, {{{1, 2}, s}, {{2, 1}, s2}}), {1, 2}, {2, 1}},
            {NType::NE, mk(2, {{{1, 2}, s2}, {{2, 1}, s}}), {2, 1}, {1, 2}},
            {NType::NW, mk(2, {{{1, 1}, s2}, {{2, 2}, s}}), {2, 2}, {1, 1}},
            {NType::S, mk(3, {{{1, 1}, s}, {{2, 3}, s2}, {{3, 2}, {}}}), {1, 1}, {2, 3}},
            {NType::N, mk(3, {{{1, 1}, s2}, {{2, 3}, s}, {{3, 2}, {}}}), {2, 3}, {1, 1}},
            {NType::E, mk(3, {{{1, 1}, s}, {{2, 3}, {}}, {{3, 2}, s2}}), {1, 1}, {3, 2}},
            {NType::W, mk(3, {{{1, 1}, s2}, {{2, 3}, {}}, {{3, 2}, s}}), {3, 2}, {1, 1}},
            {NType::Inf, mk(3, {{{1, 1}, s}, {{2, 2}, {}}, {{3, 3}, s2}}), {1, 1}, {3, 3}},
        };
        const auto psi = random_qf(rng, 3, {"a", "b"});
        for (const auto& w : wits) {
            if (w.t == NType::Dot && s != s2) continue;
            const Valuation& ys = (w.t == NType::Dot) ? s : s2;
            Assignment mu;
            mu = mu.with(Var::X, w.e1).with(Var::Y, w.e2);
            REQUIRE(neighborhood_type(w.m, w.e1, w.e2) == w.t);
            INFO(to_string(psi));
            REQUIRE(atomic_sat({s, w.t, ys}, psi) == eval_formula(w.m, psi, mu));
        }
    }
}
