#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "permlogic/io.hpp"
#include "permlogic/sat.hpp"

using namespace permlogic;

namespace {

template <typename T, typename Reader>
T reparse(Reader reader, const std::string& text) {
    std::istringstream in(text);
    return reader(in);
}

}  // namespace

TEST_CASE("model files round-trip") {
    const ValuedPermutation m = make_model(
        3, {{{1, 2}, {"p", "q"}}, {{2, 3}, {}}, {{3, 1}, {"q"}}});
    std::ostringstream out;
    write_model(out, m, {"made by a test"});
    CHECK(out.str().substr(0, 2) == "# ");
    const ValuedPermutation back = reparse<ValuedPermutation>(read_model, out.str());
    CHECK(back.n == m.n);
    CHECK(back.row_to_col == m.row_to_col);
    CHECK(back.sigma == m.sigma);
}

TEST_CASE("model files accept comments and reject malformed lines") {
    const std::string good =
        "# a comment\n\nn 2\n1 2 -\n# interleaved\n2 1 p\n";
    const ValuedPermutation m = reparse<ValuedPermutation>(read_model, good);
    CHECK(m.n == 2);
    CHECK(m.sigma[1].empty());
    CHECK(m.sigma[2] == Valuation{"p"});

    const auto fails = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_model(in), std::exception);
    };
    fails("n x\n");
    fails("n 2\n1 2 -\n");                  // missing element line
    fails("n 1\n1 1 -\nextra\n");           // trailing garbage
    fails("n 2\n1 2 -\n1 1 p\n");           // repeated row
    fails("n 1\n1 1 p,\n");                 // empty letter
    std::istringstream in("n 2\n1 2 -\n");
    try {
        read_model(in);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("labeled permutation files require a single label") {
    LabeledPermutation lp;
    lp.n = 2;
    lp.row_to_col = {0, 2, 1};
    lp.labels = {"", "a", "b"};
    std::ostringstream out;
    write_labeled(out, lp);
    const LabeledPermutation back =
        reparse<LabeledPermutation>(read_labeled, out.str());
    CHECK(back.n == 2);
    CHECK(back.row_to_col == lp.row_to_col);
    CHECK(back.labels == lp.labels);

    std::istringstream two("n 1\n1 1 a,b\n");
    CHECK_THROWS_AS(read_labeled(two), std::runtime_error);
    std::istringstream none("n 1\n1 1 -\n");
    CHECK_THROWS_AS(read_labeled(none), std::runtime_error);
}

TEST_CASE("formula files round-trip") {
    const std::string text = "# the running example\nforall x . forall y . "
                             "!(x -> y & y |> x & p(x))\n";
    const FormulaPtr f = reparse<FormulaPtr>(read_formula, text);
    std::ostringstream out;
    write_formula(out, f, {"normalized"});
    const FormulaPtr back = reparse<FormulaPtr>(read_formula, out.str());
    CHECK(formula_equal(f, back));
}

TEST_CASE("constraint files round-trip") {
    Constraint z;
    z.domain.rows = {1, 3, 5};
    z.domain.cols = {2, 4, 6};
    z.k = 1;
    z.forbidden = {{1, 2}, {3, 6}};
    std::ostringstream out;
    write_constraint(out, z);
    const Constraint back = reparse<Constraint>(read_constraint, out.str());
    CHECK(back.domain == z.domain);
    CHECK(back.forbidden == z.forbidden);
    CHECK(back.k == z.k);

    std::istringstream wrong_order("cols 1\nrows 1\nk 0\n");
    CHECK_THROWS_AS(read_constraint(wrong_order), std::runtime_error);
    std::istringstream too_many("rows 1\ncols 1\nk 0\nforbid 1 1\n");
    CHECK_THROWS_AS(read_constraint(too_many), std::invalid_argument);
}

TEST_CASE("nfa files round-trip") {
    Nfa a;
    a.alphabet = {"a", "b"};
    a.states = 2;
    a.initial = {1};
    a.accepting = {2};
    a.transitions = {{1, "a", 1}, {1, "b", 2}, {2, "b", 2}};
    std::ostringstream out;
    write_nfa(out, a, {"two states"});
    const Nfa back = reparse<Nfa>(read_nfa, out.str());
    CHECK(back.alphabet == a.alphabet);
    CHECK(back.states == a.states);
    CHECK(back.initial == a.initial);
    CHECK(back.accepting == a.accepting);
    CHECK(back.transitions == a.transitions);

    // An automaton accepting nothing still round-trips.
    Nfa none = a;
    none.accepting.clear();
    std::ostringstream out2;
    write_nfa(out2, none);
    CHECK(reparse<Nfa>(read_nfa, out2.str()).accepting.empty());

    std::istringstream bad("alphabet a\nstates 1\ninit 1\nfinal 1\ntrans 1 a\n");
    CHECK_THROWS_AS(read_nfa(bad), std::runtime_error);
}

TEST_CASE("instance files round-trip through the reduction output") {
    const SnfFormula snf = to_snf(parse_formula("forall x . forall y . p(x)"));
    Fingerprint fp;
    fp.btype = BlockType::Dot;
    fp.seq = {Valuation{"p"}};
    Summary s;
    s.fingerprints = {fp};
    s.yhat = {Valuation{"p"}};
    s.v1 = {Valuation{"p"}};
    const ReductionOutput red = reduce_to_rlp(snf, s);

    std::ostringstream out;
    write_rlp(out, red.instance, {"singleton reduction"});
    const RlpInstance back = reparse<RlpInstance>(read_rlp, out.str());
    CHECK(back.alphabet == red.instance.alphabet);
    CHECK(back.restrictions == red.instance.restrictions);
    CHECK(back.nfa1.transitions == red.instance.nfa1.transitions);
    CHECK(back.nfa2.accepting == red.instance.nfa2.accepting);

    RlpOptions opts;
    opts.max_word = 4;
    const auto w = solve_rlp(back, 0, opts);
    REQUIRE(w.has_value());
    CHECK(w->n == 1);

    std::istringstream bad_dir(
        "alphabet a\nrestrict a XX a\nnfa1\nalphabet a\nstates 1\ninit 1\nfinal "
        "1\nnfa2\nalphabet a\nstates 1\ninit 1\nfinal 1\n");
    CHECK_THROWS_AS(read_rlp(bad_dir), std::runtime_error);
}
