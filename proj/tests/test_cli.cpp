#include "doctest.h"

#include "intuit/cli.hpp"
#include "intuit/kripke.hpp"
#include "intuit/proof_io.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace intuit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// A scratch directory removed at the end of each test case.
struct Scratch {
    Scratch() {
        std::random_device rd;
        dir = fs::temp_directory_path() / ("intuit_cli_" + std::to_string(rd()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name)) << content;
        return path(name);
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    fs::path dir;
};

const char* kHilbertProof =
    "1. p -> ((p -> p) -> p) [ax 1]\n"
    "2. (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) [ax 2]\n"
    "3. (p -> (p -> p)) -> (p -> p) [mp 1 2]\n"
    "4. p -> (p -> p) [ax 1]\n"
    "5. p -> p [mp 4 3]\n";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("regression matrix of exit codes") {
        Scratch s;
        std::string hilbert = s.write("h.txt", kHilbertProof);
        std::string bad_hilbert = s.write("bad.txt", "1. p -> (q -> p) [ax 2]\n");
        std::string model = s.write("m.txt", "worlds: w0 w1\nleq: w0<=w1\ndomain: d0\np @ w1\n");
        std::string corpus = s.write("corpus.txt", "# axioms\np -> (q -> p)\np & q -> p\n((p -> q) -> p) -> p\n");
        REQUIRE(invoke({"prove", "--calc", "g3int", "p -> p", "-o", s.path("pp.json")}).code == 0);

        struct Row {
            std::vector<std::string> args;
            int code;
        };
        const std::vector<Row> matrix = {
            {{"parse", "p -> (q -> p)"}, 0},
            {{"parse", "p -> "}, 2},
            {{"parse", "--as", "nested", "p -> q, [r -> s]"}, 0},
            {{"prove", "--calc", "nint-star", "--depth", "10", "p -> (q -> p)"}, 0},
            {{"prove", "--calc", "g3int", "--depth", "12", "((p -> q) -> p) -> p"}, 1},
            {{"prove", "--calc", "nosuch", "p"}, 2},
            {{"prove", "--calc", "nint-star", "--depth", "0", "p -> p"}, 2},
            {{"check", s.path("pp.json")}, 0},
            {{"check", s.path("missing.json")}, 2},
            {{"translate", "w<=v, v: p => w: q"}, 0},
            {{"translate", "w<=v, v<=w => w: q"}, 1},
            {{"eliminate", s.path("pp.json"), "--to-nested", "-o", s.path("pp_nested.json")}, 0},
            {{"model-eval", model, "p | ~p", "--world", "w0"}, 1},
            {{"model-eval", model, "~~p"}, 0},
            {{"countermodel", "--max-worlds", "3", "((p->q)->p)->p"}, 0},
            {{"countermodel", "--max-worlds", "3", "p -> p"}, 1},
            {{"fuzz-soundness", "--corpus", corpus, "--models", "50"}, 0},
            {{"hilbert-check", hilbert}, 0},
            {{"hilbert-check", bad_hilbert}, 2},
            {{"frobnicate"}, 2},
        };
        REQUIRE(matrix.size() == 20);
        for (const Row& r : matrix) {
            std::string joined;
            for (const auto& a : r.args) joined += a + " ";
            CAPTURE(joined);
            CHECK(invoke(r.args).code == r.code);
        }
    }

    TEST_CASE("a broken eigenvariable is an input error with the node path") {
        Scratch s;
        REQUIRE(invoke({"prove", "--calc", "g3int", "q -> (p -> p)", "-o", s.path("p.json")}).code == 0);
        auto j = nlohmann::json::parse(s.read("p.json"));
        REQUIRE(j["proof"]["premises"][0]["rule"] == "imp_r");
        j["proof"]["premises"][0]["witness"]["v"] = "w";
        s.write("broken.json", j.dump(2));
        Outcome o = invoke({"check", "--calc", "g3int", s.path("broken.json")});
        CHECK(o.code == 2);
        CHECK(o.err.find("[0]") != std::string::npos);
    }

    TEST_CASE("written files round-trip") {
        Scratch s;
        // Proof files.
        REQUIRE(invoke({"prove", "--calc", "g3int", "(p -> q) -> (q -> r) -> p -> r", "-o", s.path("a.json")}).code ==
                0);
        CHECK(invoke({"check", s.path("a.json")}).code == 0);
        Outcome e = invoke({"eliminate", s.path("a.json"), "-o", s.path("b.json")});
        REQUIRE(e.code == 0);
        CHECK(e.out.find("rules_eliminated") != std::string::npos);
        CHECK(invoke({"check", s.path("b.json")}).code == 0);
        CHECK(parse_proof(s.read("b.json")).calculus == "g3int-restricted");
        REQUIRE(invoke({"eliminate", s.path("b.json"), "--to-nested", "-o", s.path("c.json")}).code == 0);
        CHECK(invoke({"check", s.path("c.json")}).code == 0);
        CHECK(parse_proof(s.read("c.json")).is_nested());

        // Model files.
        REQUIRE(invoke({"countermodel", "--max-worlds", "4", "~p | ~~p", "-o", s.path("m.txt")}).code == 0);
        KripkeModel m = parse_model(s.read("m.txt"));
        CHECK(format_model(m) == s.read("m.txt"));
        CHECK(invoke({"model-eval", s.path("m.txt"), "~p | ~~p"}).code == 1);

        // Sequent files, both directions and through the parser.
        REQUIRE(invoke({"translate", "w<=v, w<=u, w: p => v: q, u: r", "-o", s.path("n.txt")}).code == 0);
        REQUIRE(invoke({"translate", "-i", s.path("n.txt"), "--to", "labelled", "-o", s.path("l.txt")}).code == 0);
        REQUIRE(invoke({"parse", "-i", s.path("l.txt"), "-o", s.path("l2.txt")}).code == 0);
        CHECK(s.read("l.txt") == s.read("l2.txt"));
        REQUIRE(invoke({"translate", "-i", s.path("l.txt"), "-o", s.path("n2.txt")}).code == 0);
        CHECK(parse_nested(s.read("n.txt")) == parse_nested(s.read("n2.txt")));

        // Dot export.
        Outcome d = invoke({"parse", "--format", "dot", "w<=v => v: p"});
        CHECK(d.code == 0);
        CHECK(d.out.find("digraph") != std::string::npos);
    }

    TEST_CASE("seeded fuzzing is reproducible") {
        Outcome a = invoke({"fuzz-soundness", "--seed", "7", "--count", "20", "--models", "20"});
        Outcome b = invoke({"fuzz-soundness", "--seed", "7", "--count", "20", "--models", "20"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("violations: 0") != std::string::npos);
    }
}
