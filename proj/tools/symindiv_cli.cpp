// symindiv: command-line front end.
//
// Exit codes: 0 success, 1 a verification failed, 2 a budgeted search ran
// out, 3 invalid input or a term parse error.

#include "symindiv/acceptance.hpp"
#include "symindiv/constructions.hpp"
#include "symindiv/embeddings.hpp"
#include "symindiv/indivisibility.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <iostream>

using namespace symindiv;
using json = nlohmann::ordered_json;

namespace {

namespace defaults {
constexpr Index kSize = 32;
constexpr Index kSteps = 16;
constexpr Index kBudget = 65536;
constexpr Index kBacktrack = 8;
}  // namespace defaults

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitInvalid = 3;

struct Options {
    std::vector<std::string> terms;
    std::string term;  // single-term verbs
    Index size = defaults::kSize;
    Index steps = defaults::kSteps;
    Index budget = defaults::kBudget;
    Index backtrack = defaults::kBacktrack;
    Index n = 2;
    std::string color;
    std::string coloring;
    std::string format = "edges";
    std::string symbol;
    std::vector<Index> tuple;
    std::string suite = "all";
    std::string as;
    bool ordered = false;
};

// Prints either the text form or `{"verb":..., "result":...}`.
class Output {
public:
    Output(std::string verb, const Options& o) : verb_(std::move(verb)), json_(o.format == "json") {}
    void emit(const std::string& text, const json& doc) const {
        if (json_) std::cout << json{{"verb", verb_}, {"result", doc}}.dump(2) << '\n';
        else std::cout << text;
    }

private:
    std::string verb_;
    bool json_;
};

json pairs_json(const PartialIsomorphism& m) {
    auto a = json::array();
    for (const auto& [s, t] : m.pairs) a.push_back({s, t});
    return a;
}

int report_exhausted(const Output& out, const Exhausted& ex) {
    std::string text = "exhausted\nstage: " + ex.stage + "\n";
    if (ex.stuck_index) text += "stuck_index: " + std::to_string(*ex.stuck_index) + "\n";
    text += "detail: " + ex.detail + "\n";
    PartialIsomorphism deepest{ex.deepest};
    if (!deepest.pairs.empty()) text += "deepest:\n" + dump_pairs(deepest);
    json doc{{"status", "exhausted"},
             {"stage", ex.stage},
             {"stuck_index", ex.stuck_index ? json(*ex.stuck_index) : json()},
             {"detail", ex.detail},
             {"deepest", pairs_json(deepest)}};
    out.emit(text, doc);
    std::cerr << "exhausted: " << ex.stage << ": " << ex.detail << '\n';
    return kExitExhausted;
}

std::optional<Color> parse_color_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "red") return kRed;
    if (s == "blue") return kBlue;
    Color c = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), c);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidInput("--color expects red, blue or a colour number, got '" + s + "'");
    return c;
}

// ------------------------------------------------------------------- verbs

int cmd_prefix(const Options& o) {
    auto s = eval(o.terms.at(0));
    auto f = prefix(s, o.size);
    Output("prefix", o).emit(f.serialize(), f.to_json());
    return kExitOk;
}

int cmd_query(const Options& o) {
    auto s = eval(o.terms.at(0));
    const auto sym = o.symbol.empty() ? std::size_t{0} : s.signature().index_of(o.symbol);
    if (o.tuple.size() != s.signature()[sym].arity)
        throw InvalidInput("symbol " + s.signature()[sym].name + " has arity " +
                           std::to_string(s.signature()[sym].arity) + ", got " + std::to_string(o.tuple.size()) +
                           " indices");
    const bool holds = s.holds(sym, o.tuple);
    Output("query", o).emit(holds ? "true\n" : "false\n",
                            json{{"symbol", s.signature()[sym].name}, {"tuple", o.tuple}, {"holds", holds}});
    return kExitOk;
}

int cmd_embed(const Options& o) {
    auto a = eval(o.terms.at(0));
    auto u = eval(o.terms.at(1));
    GreedyOptions g;
    g.respect_enum_order = o.ordered;
    g.steps = o.steps;
    g.witness_budget = o.budget;
    g.backtrack_depth = o.backtrack;
    auto r = greedy_embedding(a, u, g);
    Output out("embed", o);
    if (!found(r)) return report_exhausted(out, exhausted(r));
    const auto& e = value(r);
    out.emit(e.dump(), json{{"strategy", strategy_name(e.strategy())}, {"pairs", pairs_json(e.resolved())}});
    return kExitOk;
}

int cmd_bnf(const Options& o) {
    auto s = eval(o.terms.at(0));
    auto t = eval(o.terms.at(1));
    auto r = back_and_forth(s, t, o.steps, o.budget);
    Output out("bnf", o);
    if (!found(r)) return report_exhausted(out, exhausted(r));
    out.emit(dump_pairs(value(r)), json{{"pairs", pairs_json(value(r))}});
    return kExitOk;
}

int cmd_color_experiment(const Options& o) {
    auto u = eval(o.terms.at(0));
    auto target = eval(o.terms.at(1));
    if (o.coloring.empty()) throw InvalidInput("color-experiment requires --coloring");
    auto c = Coloring::parse(o.coloring);
    SearchOptions s;
    s.steps = o.steps;
    s.witness_budget = o.budget;
    s.backtrack_depth = o.backtrack;
    s.respect_enum_order = o.ordered;
    auto r = find_monochromatic_copy(u, c, target, parse_color_flag(o.color), s);
    Output out("color-experiment", o);
    if (!found(r)) return report_exhausted(out, exhausted(r));
    const auto& m = value(r);
    out.emit("coloring: " + to_string(c) + "\ncolor: " + color_name(m.color) + "\n" + m.embedding.dump(),
             json{{"coloring", to_string(c)},
                  {"color", color_name(m.color)},
                  {"strategy", strategy_name(m.embedding.strategy())},
                  {"pairs", pairs_json(m.embedding.resolved())}});
    return kExitOk;
}

int cmd_decode(const Options& o) {
    auto t = parse_term(o.terms.at(0));
    auto s = eval(t);
    std::string as = o.as;
    if (as.empty()) as = s.signature().is_order() ? "order" : "graph";
    Output out("decode", o);
    if (as == "graph") {
        auto d = decode_graph(t, o.budget);
        out.emit("graph: " + to_string(d.graph) + "\ncertificate: " + d.certificate.to_json().dump() + "\n",
                 json{{"graph", to_string(d.graph)}, {"certificate", d.certificate.to_json()}});
        return kExitOk;
    }
    if (as != "order") throw InvalidInput("--as expects graph or order");
    auto r = decode_order(t, o.budget);
    if (!found(r)) return report_exhausted(out, exhausted(r));
    const auto& d = value(r);
    json doc{{"order", to_string(d.order)},
             {"indices", d.indices},
             {"provenance_match", d.provenance_match ? json(*d.provenance_match) : json()},
             {"certificate", d.certificate.to_json()}};
    std::string text = "order: " + to_string(d.order) + "\nindices:";
    for (Index i : d.indices) text += " " + std::to_string(i);
    text += "\ncertificate: " + d.certificate.to_json().dump() + "\n";
    out.emit(text, doc);
    return kExitOk;
}

int cmd_obstruct(const Options& o) {
    auto [swap, fixed] = gamma_star_obstruction(o.n, o.size);
    json doc = json::array({swap.to_json(), fixed.to_json()});
    std::string text;
    for (const auto* c : {&swap, &fixed}) {
        const auto j = c->to_json();
        text += j["kind"].get<std::string>() + " passed=" + (c->passed() ? "true" : "false") + "\n";
        for (const auto& e : c->evidence) {
            text += " ";
            for (Index i : e.tuple) text += " " + std::to_string(i);
            text += std::string(" expected=") + (e.expected ? "1" : "0") + " observed=" + (e.observed ? "1" : "0") + "\n";
        }
    }
    Output("obstruct", o).emit(text, doc);
    return swap.passed() && fixed.passed() ? kExitOk : kExitFailed;
}

int cmd_demo_reduct(const Options& o) {
    auto report = reduct_counterexample_demo(o.size, o.steps, o.budget);
    // The report is a structured document in either format.
    std::cout << report.to_json().dump(2) << '\n';
    if (report.exhausted) {
        std::cerr << "exhausted: " << report.exhausted->stage << ": " << report.exhausted->detail << '\n';
        return kExitExhausted;
    }
    return report.passed() ? kExitOk : kExitFailed;
}

int cmd_verify(const Options& o) {
    std::vector<acceptance::CriterionResult> results;
    if (o.suite == "all") {
        results = acceptance::run_all();
    } else {
        int id = 0;
        auto [ptr, ec] = std::from_chars(o.suite.data(), o.suite.data() + o.suite.size(), id);
        if (ec != std::errc() || ptr != o.suite.data() + o.suite.size())
            throw InvalidInput("--suite expects all or a criterion number 1.." +
                               std::to_string(acceptance::kCriterionCount));
        results.push_back(acceptance::run_criterion(id));
    }
    bool all = true;
    for (const auto& r : results) {
        std::cout << acceptance::format_line(r) << '\n';
        all = all && r.passed;
    }
    return all ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computable presentations of countable structures and symmetric-indivisibility experiments"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "edges (text) or json")
            ->check(CLI::IsMember({"edges", "json"}))
            ->capture_default_str();
    };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("--steps", o.steps, "points to resolve")->capture_default_str();
        sub->add_option("--budget", o.budget, "witness search bound")->capture_default_str();
        sub->add_option("--backtrack", o.backtrack, "backtracking depth")->capture_default_str();
        sub->add_flag("--ordered", o.ordered, "require strictly increasing targets");
    };

    auto* prefix_cmd = app.add_subcommand("prefix", "dump the induced prefix of a term");
    prefix_cmd->add_option("term", o.term, "construction term")->required();
    prefix_cmd->add_option("--size", o.size, "prefix size")->capture_default_str();
    add_format(prefix_cmd);

    auto* query_cmd = app.add_subcommand("query", "evaluate one relation tuple");
    query_cmd->add_option("term", o.term, "construction term")->required();
    query_cmd->add_option("indices", o.tuple, "tuple indices")->required();
    query_cmd->add_option("--symbol", o.symbol, "relation symbol (default: first)");
    add_format(query_cmd);

    auto* embed_cmd = app.add_subcommand("embed", "greedy embedding of SOURCE into TARGET");
    embed_cmd->add_option("terms", o.terms, "SOURCE TARGET")->required()->expected(2);
    add_search(embed_cmd);
    add_format(embed_cmd);

    auto* bnf_cmd = app.add_subcommand("bnf", "back-and-forth between two structures");
    bnf_cmd->add_option("terms", o.terms, "S T")->required()->expected(2);
    bnf_cmd->add_option("--steps", o.steps, "alternating steps")->capture_default_str();
    bnf_cmd->add_option("--budget", o.budget, "witness search bound")->capture_default_str();
    add_format(bnf_cmd);

    auto* color_cmd = app.add_subcommand("color-experiment", "monochromatic copy of TARGET inside U");
    color_cmd->add_option("terms", o.terms, "U TARGET")->required()->expected(2);
    color_cmd->add_option("--coloring", o.coloring,
                          "parity | mod:k:r | gammastar-part | threshold:n | list:c0,c1,...:default")
        ->required();
    color_cmd->add_option("--color", o.color, "restrict to one colour (red, blue or a number)");
    add_search(color_cmd);
    add_format(color_cmd);

    auto* decode_cmd = app.add_subcommand("decode", "decode an encoded graph or order");
    decode_cmd->add_option("term", o.term, "encoded term")->required();
    decode_cmd->add_option("--budget", o.budget, "search bound")->capture_default_str();
    decode_cmd->add_option("--as", o.as, "graph or order (default: by signature)")
        ->check(CLI::IsMember({"graph", "order"}));
    add_format(decode_cmd);

    auto* obstruct_cmd = app.add_subcommand("obstruct", "gammastar obstruction certificates");
    obstruct_cmd->add_option("--n", o.n, "clique block (>= 2)")->capture_default_str();
    obstruct_cmd->add_option("--size", o.size, "prefix size")->capture_default_str();
    add_format(obstruct_cmd);

    auto* demo_cmd = app.add_subcommand("demo-reduct", "the reduct counterexample demonstration");
    demo_cmd->add_option("--size", o.size, "prefix size")->capture_default_str();
    demo_cmd->add_option("--steps", o.steps, "embedding points")->capture_default_str();
    demo_cmd->add_option("--budget", o.budget, "witness search bound")->capture_default_str();
    add_format(demo_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run acceptance criteria");
    verify_cmd->add_option("--suite", o.suite, "all or a criterion number")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    if (!o.term.empty()) o.terms.insert(o.terms.begin(), o.term);

    try {
        if (*prefix_cmd) return cmd_prefix(o);
        if (*query_cmd) return cmd_query(o);
        if (*embed_cmd) return cmd_embed(o);
        if (*bnf_cmd) return cmd_bnf(o);
        if (*color_cmd) return cmd_color_experiment(o);
        if (*decode_cmd) return cmd_decode(o);
        if (*obstruct_cmd) return cmd_obstruct(o);
        if (*demo_cmd) return cmd_demo_reduct(o);
        if (*verify_cmd) return cmd_verify(o);
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const SignatureMismatch& e) {
        std::cerr << "signature mismatch: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NotAnEncoding& e) {
        std::cerr << "not an encoding: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitInvalid;
}
