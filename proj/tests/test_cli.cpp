#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

/// Runs the tool with the given arguments, capturing standard output.
/// `merge_stderr` folds diagnostics into the captured text.
RunResult run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(PERMLOGIC_BIN) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "permlogic_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string file(const std::string& name, const std::string& content) {
    const fs::path p = workdir() / name;
    std::ofstream out(p);
    out << content;
    REQUIRE(out.good());
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return text;
}

const std::string kFig1bFormula =
    "forall x . forall y . !(x -> y & y |> x & p(x))\n";
const std::string kFig1bModel = "n 4\n1 3 p,q\n2 2 q\n3 4 q,r\n4 1 r\n";
const std::string kContradiction = "(exists x . p(x)) & (forall x . !p(x))\n";
const std::string kTrivialRlp =
    "alphabet a\n"
    "nfa1\nalphabet a\nstates 2\ninit 1\nfinal 2\ntrans 1 a 2\n"
    "nfa2\nalphabet a\nstates 2\ninit 1\nfinal 2\ntrans 1 a 2\n";

}  // namespace

TEST_CASE("check evaluates models against formulas") {
    const auto model = file("fig1b.pm", kFig1bModel);
    const auto formula = file("fig1b.fo", kFig1bFormula);
    const auto ok = run("check --model " + model + " --formula " + formula);
    CHECK(ok.code == 0);
    CHECK(ok.out == "OK\n");

    const auto allp = file("allp.fo", "forall x . p(x)\n");
    const auto fail = run("check --model " + model + " --formula " + allp);
    CHECK(fail.code == 1);
    CHECK(fail.out == "FAIL\n");
}

TEST_CASE("sat finds a verified model and reports bounded unsatisfiability") {
    const auto formula = file("fig1b.fo", kFig1bFormula);
    const auto witness = (workdir() / "sat_model.pm").string();
    const auto sat = run("sat --formula " + formula + " --max-fingerprints 4 " +
                         "--block-len 2 --out " + witness);
    CHECK(sat.code == 0);
    CHECK(sat.out == "SAT\n");
    // Round-trip: the emitted model passes check with the same formula, and
    // its header echoes the effective knobs.
    const auto back = run("check --model " + witness + " --formula " + formula);
    CHECK(back.code == 0);
    CHECK(back.out == "OK\n");
    CHECK(slurp(witness).find("max-fingerprints=4 block-len=2") != std::string::npos);

    const auto contra = file("contradiction.fo", kContradiction);
    const auto unsat =
        run("sat --formula " + contra + " --max-fingerprints 4 --block-len 2");
    CHECK(unsat.code == 1);
    CHECK(unsat.out == "UNSAT-WITHIN-BOUNDS\n");
}

TEST_CASE("sat reports an exceeded budget distinctly") {
    const auto contra = file("contradiction.fo", kContradiction);
    const auto res = run("sat --formula " + contra + " --max-candidates 1", true);
    CHECK(res.code == 3);
    CHECK(res.out.find("budget exceeded") != std::string::npos);
}

TEST_CASE("sat oracle mode agrees with the pipeline") {
    const auto formula = file("fig1b.fo", kFig1bFormula);
    const auto witness = (workdir() / "oracle_model.pm").string();
    const auto sat =
        run("sat --formula " + formula + " --oracle --max-size 2 --out " + witness);
    CHECK(sat.code == 0);
    CHECK(sat.out == "SAT\n");
    const auto back = run("check --model " + witness + " --formula " + formula);
    CHECK(back.code == 0);

    const auto contra = file("contradiction.fo", kContradiction);
    const auto unsat = run("sat --formula " + contra + " --oracle --max-size 3");
    CHECK(unsat.code == 1);
    CHECK(unsat.out == "UNSAT-WITHIN-BOUNDS\n");
}

TEST_CASE("snf prints a normal form that check accepts as equisatisfiable") {
    const auto formula = file("fig1b.fo", kFig1bFormula);
    const auto out = (workdir() / "fig1b_snf.fo").string();
    const auto res = run("snf --formula " + formula + " --out " + out);
    CHECK(res.code == 0);
    CHECK_FALSE(res.out.empty());
    // The written file parses: sat on it must reach a verdict, and the
    // original formula is satisfiable, so its normal form is too.
    const auto sat = run("sat --formula " + out);
    CHECK(sat.code == 0);
}

TEST_CASE("rlp solve emits a witness that rlp verify accepts") {
    const auto inst = file("trivial.rlp", kTrivialRlp);
    const auto witness = (workdir() / "rlp_witness.pm").string();
    const auto solve = run("rlp solve --instance " + inst + " --out " + witness);
    CHECK(solve.code == 0);
    CHECK(solve.out == "YES\n");
    CHECK(slurp(witness).find("theta=17") != std::string::npos);
    const auto verify = run("rlp verify --instance " + inst + " --witness " + witness);
    CHECK(verify.code == 0);
    CHECK(verify.out == "OK\n");

    // A mismatched witness fails verification.
    const auto two = file("two.pm", "n 2\n1 1 a\n2 2 a\n");
    const auto bad = run("rlp verify --instance " + inst + " --witness " + two);
    CHECK(bad.code == 1);
    CHECK(bad.out == "FAIL\n");
}

TEST_CASE("rlp solve answers NO for an empty-language instance") {
    const std::string text =
        "alphabet a\n"
        "nfa1\nalphabet a\nstates 2\ninit 1\nfinal 2\ntrans 1 a 2\n"
        "nfa2\nalphabet a\nstates 3\ninit 1\nfinal 3\ntrans 1 a 2\ntrans 2 a 3\n";
    const auto inst = file("mismatch.rlp", text);
    const auto res = run("rlp solve --instance " + inst + " --max-word 3");
    CHECK(res.code == 1);
    CHECK(res.out == "NO\n");
}

TEST_CASE("perm construct prints the chosen elements") {
    const auto con = file("small.con", "rows 1 2 3 4\ncols 1 2 3 4\nk 1\n"
                                       "forbid 1 1\nforbid 2 2\n");
    const auto res = run("perm construct --constraint " + con);
    CHECK(res.code == 0);
    CHECK(res.out.substr(0, 4) == "YES\n");
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 5);

    const auto stuck = file("stuck.con", "rows 1\ncols 1\nk 1\nforbid 1 1\n");
    const auto no = run("perm construct --constraint " + stuck);
    CHECK(no.code == 1);
    CHECK(no.out == "NO\n");
}

TEST_CASE("perm blocks and fingerprints list the model structure") {
    const auto model = file("fig1b.pm", kFig1bModel);
    const auto blocks = run("perm blocks --model " + model);
    CHECK(blocks.code == 0);
    CHECK(blocks.out == "NE 1 2 1\nDot 3 4 0\nDot 4 1 0\n");
    const auto fps = run("perm fingerprints --model " + model);
    CHECK(fps.code == 0);
    CHECK(std::count(fps.out.begin(), fps.out.end(), '\n') == 3);
}

TEST_CASE("nfa parikh and intersect answer membership questions") {
    const auto astar = file("astar.nfa",
                            "alphabet a\nstates 1\ninit 1\nfinal 1\ntrans 1 a 1\n");
    const auto yes = run("nfa parikh --nfa " + astar + " --counts a=3");
    CHECK(yes.code == 0);
    CHECK(yes.out == "YES\n");

    const auto one = file("one_a.nfa",
                          "alphabet a\nstates 2\ninit 1\nfinal 2\ntrans 1 a 2\n");
    const auto no = run("nfa parikh --nfa " + one + " --counts a=2");
    CHECK(no.code == 1);
    CHECK(no.out == "NO\n");

    const auto both = run("nfa intersect --nfa1 " + astar + " --nfa2 " + one);
    CHECK(both.code == 0);
    CHECK(both.out == "YES\na=1\n");
}

TEST_CASE("shuffle prints a rearrangement with no adjacent sources") {
    const auto abstar = file("abstar.nfa",
                             "alphabet a b\nstates 2\ninit 1\nfinal 1\n"
                             "trans 1 a 2\ntrans 2 b 1\n");
    const auto bbaa = file("bbaa.nfa",
                           "alphabet a b\nstates 5\ninit 1\nfinal 5\n"
                           "trans 1 b 2\ntrans 2 b 3\ntrans 3 a 4\ntrans 4 a 5\n");
    const auto res = run("shuffle --input " + abstar + " --output " + bbaa +
                         " --max-size 4");
    CHECK(res.code == 0);
    CHECK(res.out.substr(0, 4) == "YES\n");

    const auto one_a = file("one_a.nfa",
                            "alphabet a b\nstates 2\ninit 1\nfinal 2\ntrans 1 a 2\n");
    const auto one_b = file("one_b.nfa",
                            "alphabet a b\nstates 2\ninit 1\nfinal 2\ntrans 1 b 2\n");
    const auto no = run("shuffle --input " + one_a + " --output " + one_b +
                        " --max-size 3");
    CHECK(no.code == 1);
    CHECK(no.out == "NO\n");
}

TEST_CASE("malformed inputs exit with code 2 and position info") {
    const auto formula = file("fig1b.fo", kFig1bFormula);
    const auto bad = file("bad.pm", "n x\n");
    const auto res = run("check --model " + bad + " --formula " + formula, true);
    CHECK(res.code == 2);
    CHECK(res.out.find("line 1") != std::string::npos);

    const auto usage = run("nosuch");
    CHECK(usage.code == 2);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const auto formula = file("fig1b.fo", kFig1bFormula);
    const auto w1 = (workdir() / "det1.pm").string();
    const auto w2 = (workdir() / "det2.pm").string();
    const auto a = run("sat --formula " + formula + " --out " + w1);
    const auto b = run("sat --formula " + formula + " --out " + w2);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(slurp(w1) == slurp(w2));

    const auto model = file("fig1b.pm", kFig1bModel);
    const auto f1 = run("perm fingerprints --model " + model);
    const auto f2 = run("perm fingerprints --model " + model);
    CHECK(f1.out == f2.out);
}
