#include "intuit/cli.hpp"

#include "intuit/graph.hpp"
#include "intuit/hilbert.hpp"
#include "intuit/kripke.hpp"
#include "intuit/proof_io.hpp"
#include "intuit/search.hpp"
#include "intuit/transform.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace intuit::cli {

namespace {

// Bad user input detected by the front end itself.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A negative but well-formed answer; the message goes to stdout.
struct Negative {
    std::string message;
};

struct Options {
    std::uint64_t seed = 0;
    std::string output;

    std::string text;
    std::string input;
    std::string as = "auto";
    std::string format = "text";

    std::string calc = "nint-star";  // prove, fuzz-soundness
    std::string check_calc;          // check: empty means the file's
    int depth = 12;
    bool no_loop_check = false;
    int param_budget = 1;
    bool sequent = false;

    std::string to;
    bool to_nested = false;

    std::string model_file;
    std::string world;

    int max_worlds = 3;
    int domain_size = 1;

    int models = 100;
    int count = 50;
    std::string corpus;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes through a temporary file so readers never see a partial document.
void write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) throw InputError("cannot write '" + path + "'");
        o << content;
        if (!o) throw InputError("cannot write '" + path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw InputError("cannot write '" + path + "': " + ec.message());
}

// Emits a document to the output file, or to `out` when none was given.
void emit(const Options& o, std::ostream& out, const std::string& doc) {
    if (o.output.empty() || o.output == "-") out << doc;
    else write_file(o.output, doc);
}

std::string trim(std::string s) {
    auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
    return s;
}

std::string argument(const Options& o) {
    if (!o.input.empty()) return trim(read_file(o.input));
    if (o.text.empty()) throw InputError("no input given");
    return o.text;
}

bool is_nested_calculus(const std::string& c) {
    auto ns = nested_calculus_names();
    return std::find(ns.begin(), ns.end(), c) != ns.end();
}

bool is_labelled_calculus(const std::string& c) {
    auto ls = labelled_calculus_names();
    return std::find(ls.begin(), ls.end(), c) != ls.end();
}

void require_calculus(const std::string& c) {
    if (!is_nested_calculus(c) && !is_labelled_calculus(c)) throw InputError("unknown calculus '" + c + "'");
}

std::string path_str(const std::vector<int>& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

int cmd_parse(const Options& o, std::ostream& out) {
    std::string text = argument(o);
    std::string as = o.as;
    if (as == "auto") as = text.find("=>") != std::string::npos ? "labelled" : "formula";
    if (as == "formula") {
        if (o.format == "dot") throw InputError("dot output needs a sequent");
        emit(o, out, parse_formula(text).str() + "\n");
    } else if (as == "labelled") {
        LabelledSequent s = parse_labelled(text);
        emit(o, out, o.format == "dot" ? graph_of_labelled(s).dot() : s.str() + "\n");
    } else if (as == "nested") {
        NestedSequent s = parse_nested(text);
        emit(o, out, o.format == "dot" ? graph_of_nested(s).dot() : s.str() + "\n");
    } else {
        throw InputError("--as must be formula, labelled, nested or auto");
    }
    return kOk;
}

SearchConfig search_config(const Options& o) {
    SearchConfig c;
    c.calculus = o.calc;
    c.depth_bound = o.depth;
    c.loop_check = !o.no_loop_check;
    c.parameter_budget = o.param_budget;
    c.seed = o.seed;
    if (o.depth < 1 || o.param_budget < 1) throw InputError("--depth and --param-budget must be at least 1");
    return c;
}

template <class R>
Negative not_found(const R& r, const SearchConfig& c) {
    std::ostringstream os;
    os << "not found within bounds: calculus " << c.calculus << ", depth " << c.depth_bound << ", nodes " << r.nodes
       << (r.bound_hit ? ", depth bound reached" : ", search space exhausted");
    return {os.str()};
}

int cmd_prove(const Options& o, std::ostream& out, std::ostream& err) {
    require_calculus(o.calc);
    SearchConfig c = search_config(o);
    std::string text = argument(o);
    if (is_nested_calculus(o.calc)) {
        NestedSequent goal;
        if (o.sequent) goal = parse_nested(text);
        else goal.succ.push_back(parse_formula(text));
        auto r = prove_nested(goal, c);
        if (!r.proof) throw not_found(r, c);
        emit(o, out, format_proof(o.calc, *r.proof));
        err << "proof found: height " << r.proof->height() << ", " << r.nodes << " nodes searched\n";
        return kOk;
    }
    LabelledSequent goal;
    if (o.sequent) {
        goal = parse_labelled(text);
    } else {
        Formula f = parse_formula(text);
        for (const std::string& a : params_of(f)) goal.dom.push_back({a, "w"});
        goal.succ.push_back({"w", f});
    }
    auto r = prove_labelled(goal, c);
    if (!r.proof) throw not_found(r, c);
    emit(o, out, format_proof(o.calc, *r.proof));
    err << "proof found: height " << r.proof->height() << ", " << r.nodes << " nodes searched\n";
    return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    ProofDocument doc = parse_proof(read_file(o.input));
    std::string calc = o.check_calc.empty() ? doc.calculus : o.check_calc;
    require_calculus(calc);
    CheckResult r;
    if (doc.is_nested()) {
        if (!is_nested_calculus(calc)) throw InputError("nested proof cannot be checked in " + calc);
        r = check_nested_derivation(nested_calculus(calc), std::get<NestedDerivation>(doc.proof));
    } else {
        if (!is_labelled_calculus(calc)) throw InputError("labelled proof cannot be checked in " + calc);
        r = check_derivation(labelled_calculus(calc), std::get<LabelledDerivation>(doc.proof));
    }
    if (!r) throw InputError("invalid derivation at node " + path_str(r.path) + ": " + r.message);
    out << "valid " << calc << " derivation\n";
    return kOk;
}

int cmd_translate(const Options& o, std::ostream& out) {
    std::string text = argument(o);
    std::string to = o.to;
    if (to.empty()) to = text.find("=>") != std::string::npos ? "nested" : "labelled";
    if (to == "nested") {
        LabelledSequent s = parse_labelled(text);
        if (TreelikeResult t = is_treelike(s); !t)
            throw Negative{std::string("not treelike: ") + violation_name(t.violation) +
                           (t.detail.empty() ? "" : " (" + t.detail + ")")};
        NestedSequent n = nestify(s);
        emit(o, out, o.format == "dot" ? graph_of_nested(n).dot() : n.str() + "\n");
    } else if (to == "labelled") {
        LabelledSequent s = labelify(parse_nested(text));
        emit(o, out, o.format == "dot" ? graph_of_labelled(s).dot() : s.str() + "\n");
    } else {
        throw InputError("--to must be nested or labelled");
    }
    return kOk;
}

int cmd_eliminate(const Options& o, std::ostream& out, std::ostream& err) {
    ProofDocument doc = parse_proof(read_file(o.input));
    if (doc.is_nested()) throw InputError("eliminate needs a labelled derivation");
    auto r = eliminate_structural(std::get<LabelledDerivation>(doc.proof));
    std::string report = r.report.str();
    std::string proof = format_proof(r.report.target_calculus, r.derivation);
    if (o.to_nested) {
        auto n = proof_to_nested(r.derivation);
        report += "nested translation:\n" + n.report.str();
        proof = format_proof(n.report.target_calculus, n.derivation);
    }
    emit(o, out, proof);
    (o.output.empty() || o.output == "-" ? err : out) << report;
    return kOk;
}

int cmd_model_eval(const Options& o, std::ostream& out) {
    KripkeModel m = parse_model(read_file(o.model_file));
    Formula f = parse_formula(o.text);
    if (!params_of(f).empty()) throw InputError("model-eval takes a formula without parameters");
    KripkeModel::Mask forced = forcing_set(m, f);
    for (int w = 0; w < m.size(); ++w)
        out << m.worlds()[static_cast<std::size_t>(w)] << ": " << ((forced >> w) & 1 ? "forced" : "not forced")
            << "\n";
    if (!o.world.empty()) {
        auto w = m.world_index(o.world);
        if (!w) throw InputError("no world named '" + o.world + "'");
        if (!((forced >> *w) & 1)) throw Negative{"not forced at " + o.world};
        return kOk;
    }
    if (forced != m.all()) throw Negative{"not forced at every world"};
    return kOk;
}

int cmd_countermodel(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.max_worlds < 1 || o.max_worlds > 8) throw InputError("--max-worlds must be between 1 and 8");
    if (o.domain_size < 1) throw InputError("--domain-size must be at least 1");
    Formula f = parse_formula(argument(o));
    auto cm = find_countermodel(f, o.max_worlds, o.domain_size);
    if (!cm) throw Negative{"no countermodel with at most " + std::to_string(o.max_worlds) + " worlds"};
    emit(o, out, format_model(cm->first));
    (o.output.empty() || o.output == "-" ? err : out)
        << "refuted at world " << cm->first.worlds()[static_cast<std::size_t>(cm->second)] << "\n";
    return kOk;
}

std::vector<Formula> corpus(const Options& o) {
    std::vector<Formula> out;
    if (!o.corpus.empty()) {
        std::istringstream in(read_file(o.corpus));
        for (std::string line; std::getline(in, line);) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            out.push_back(parse_formula(line));
        }
        return out;
    }
    // Seeded random implications and conjunctions over p, q, r.
    std::mt19937_64 rng(o.seed);
    std::function<Formula(int)> gen = [&](int depth) -> Formula {
        if (depth == 0 || rng() % 4 == 0) return Formula::atom(std::string(1, static_cast<char>('p' + rng() % 3)));
        switch (rng() % 4) {
            case 0: return Formula::conj(gen(depth - 1), gen(depth - 1));
            case 1: return Formula::disj(gen(depth - 1), gen(depth - 1));
            case 2: return Formula::impl(gen(depth - 1), gen(depth - 1));
            default: return Formula::neg(gen(depth - 1));
        }
    };
    for (int i = 0; i < o.count; ++i) out.push_back(gen(3));
    return out;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
    if (o.models < 1 || o.count < 1) throw InputError("--models and --count must be at least 1");
    require_calculus(o.calc);
    if (!is_nested_calculus(o.calc)) throw InputError("fuzz-soundness runs the nested prover");
    SearchConfig c = search_config(o);
    std::vector<Formula> goals = corpus(o);
    int proved = 0;
    long checks = 0;
    std::vector<std::string> violations;
    for (std::size_t i = 0; i < goals.size(); ++i) {
        const Formula& f = goals[i];
        if (!is_propositional(f)) throw InputError("corpus formula is not propositional: " + f.str());
        NestedSequent goal;
        goal.succ.push_back(f);
        auto r = prove_nested(goal, c);
        if (!r.proof) continue;
        ++proved;
        if (!check_nested_derivation(nested_calculus(o.calc), *r.proof))
            violations.push_back(f.str() + ": proof fails checking");
        const Formula& concl = r.proof->conclusion.succ.at(0);
        EnumerateOptions e;
        e.random = true;
        e.count = static_cast<std::size_t>(o.models);
        e.seed = o.seed + i;
        e.max_worlds = 4;
        e.atoms = predicates_of(concl);
        enumerate_models(e, [&](const KripkeModel& m) {
            ++checks;
            if (forcing_set(m, concl) != m.all()) violations.push_back(f.str() + ": refuted by\n" + format_model(m));
            return true;
        });
    }
    out << "goals: " << goals.size() << "\nproved: " << proved << "\nmodel checks: " << checks
        << "\nviolations: " << violations.size() << "\n";
    for (const std::string& v : violations) out << "violation: " << v << "\n";
    return violations.empty() ? kOk : kBreach;
}

int cmd_hilbert(const Options& o, std::ostream& out) {
    HilbertDerivation d = parse_hilbert(read_file(o.input));
    HilbertResult r = check_hilbert(d);
    if (!r) throw InputError("invalid Hilbert derivation at step " + std::to_string(r.failing_step + 1) + ": " +
                             r.message);
    out << "valid Hilbert derivation of " << d.steps.back().formula.str() << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Labelled and nested proof tools for intuitionistic logic", "intuit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "seed for all randomness")->capture_default_str();

    auto output = [&](CLI::App* s) { s->add_option("-o,--output", o.output, "output file (default stdout)"); };
    auto text_or_file = [&](CLI::App* s, const char* what) {
        s->add_option("text", o.text, what);
        s->add_option("-i,--input", o.input, "read the argument from a file");
    };

    CLI::App* parse = app.add_subcommand("parse", "parse and print a formula or sequent");
    text_or_file(parse, "formula or sequent text");
    parse->add_option("--as", o.as, "formula, labelled, nested or auto")->capture_default_str();
    parse->add_option("--format", o.format, "text or dot")->check(CLI::IsMember({"text", "dot"}));
    output(parse);

    CLI::App* prove = app.add_subcommand("prove", "backward proof search");
    text_or_file(prove, "goal formula (or sequent with --sequent)");
    prove->add_option("--calc", o.calc, "calculus id")->capture_default_str();
    prove->add_option("--depth", o.depth, "depth bound")->capture_default_str();
    prove->add_option("--param-budget", o.param_budget, "fresh parameters per branch")->capture_default_str();
    prove->add_flag("--no-loop-check", o.no_loop_check, "disable the loop check");
    prove->add_flag("--sequent", o.sequent, "the goal is a sequent");
    output(prove);

    CLI::App* check = app.add_subcommand("check", "check a proof file");
    check->add_option("file", o.input, "proof file")->required();
    check->add_option("--calc", o.check_calc, "calculus id (default: the file's)");

    CLI::App* translate = app.add_subcommand("translate", "labelled <-> nested sequents");
    text_or_file(translate, "sequent text");
    translate->add_option("--to", o.to, "nested or labelled (default: the other kind)");
    translate->add_option("--format", o.format, "text or dot")->check(CLI::IsMember({"text", "dot"}));
    output(translate);

    CLI::App* elim = app.add_subcommand("eliminate", "eliminate structural and derived rules");
    elim->add_option("file", o.input, "labelled proof file")->required();
    elim->add_flag("--to-nested", o.to_nested, "also translate to a nested proof");
    output(elim);

    CLI::App* meval = app.add_subcommand("model-eval", "evaluate a formula on a model file");
    meval->add_option("model", o.model_file, "model file")->required();
    meval->add_option("formula", o.text, "formula")->required();
    meval->add_option("--world", o.world, "world to test (default: all)");

    CLI::App* cm = app.add_subcommand("countermodel", "search finite countermodels");
    text_or_file(cm, "formula");
    cm->add_option("--max-worlds", o.max_worlds, "world bound")->capture_default_str();
    cm->add_option("--domain-size", o.domain_size, "domain size for first-order formulae")->capture_default_str();
    output(cm);

    CLI::App* fuzz = app.add_subcommand("fuzz-soundness", "prove corpus goals and test them on seeded models");
    fuzz->add_option("--corpus", o.corpus, "file with one formula per line (default: seeded random goals)");
    fuzz->add_option("--count", o.count, "random goals when no corpus is given")->capture_default_str();
    fuzz->add_option("--models", o.models, "models per proved goal")->capture_default_str();
    fuzz->add_option("--calc", o.calc, "nested calculus id")->capture_default_str();
    fuzz->add_option("--depth", o.depth, "depth bound")->capture_default_str();

    CLI::App* hilbert = app.add_subcommand("hilbert-check", "check a Hilbert derivation file");
    hilbert->add_option("file", o.input, "derivation file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (parse->parsed()) return cmd_parse(o, out);
        if (prove->parsed()) return cmd_prove(o, out, err);
        if (check->parsed()) return cmd_check(o, out);
        if (translate->parsed()) return cmd_translate(o, out);
        if (elim->parsed()) return cmd_eliminate(o, out, err);
        if (meval->parsed()) return cmd_model_eval(o, out);
        if (cm->parsed()) return cmd_countermodel(o, out, err);
        if (fuzz->parsed()) return cmd_fuzz(o, out);
        if (hilbert->parsed()) return cmd_hilbert(o, out);
    } catch (const Negative& n) {
        out << n.message << "\n";
        return kNegative;
    } catch (const TransformError& e) {
        err << "error: " << e.what() << "\n";
        return e.breach ? kBreach : kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const ProofFormatError& e) {
        err << "proof file error: " << e.what() << "\n";
        return kInputError;
    } catch (const NotTreelike& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kBreach;
    }
    return kInputError;
}

}  // namespace intuit::cli
