#include "symindiv/term.hpp"

#include <cctype>
#include <charconv>

namespace symindiv {

namespace {

Term make(TermKind kind, std::vector<Term> children = {}, Index param = 0) {
    auto n = std::make_shared<TermNode>();
    n->kind = kind;
    n->children = std::move(children);
    n->param = param;
    return n;
}

void require_child(const Term& t, const char* where) {
    if (!t) throw InvalidInput(std::string("missing subterm for ") + where);
}

}  // namespace

namespace term {

Term rado() { return make(TermKind::kRado); }
Term rationals() { return make(TermKind::kRationals); }

Term gamma_k(Index k) {
    if (k < 1) throw InvalidInput("gammak requires a finite k >= 1");
    return make(TermKind::kGammaK, {}, k);
}

Term hyper(Index n) {
    if (n < 2) throw InvalidInput("hyper requires n >= 2");
    if (n > 64) throw InvalidInput("hyper arity above 64 is not supported");
    return make(TermKind::kHyper, {}, n);
}

Term finite_graph(Index m, std::vector<std::pair<Index, Index>> edges) {
    for (auto& [i, j] : edges) {
        if (i >= m || j >= m) throw InvalidInput("finite-graph edge outside universe");
        if (i == j) throw InvalidInput("finite-graph loop at " + std::to_string(i));
    }
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::kFiniteGraph;
    n->param = m;
    n->edges = std::move(edges);
    return n;
}

Term finite_order(Index m) { return make(TermKind::kFiniteOrder, {}, m); }

Term disjoint_union(Term left, Term right) {
    require_child(left, "union");
    require_child(right, "union");
    return make(TermKind::kUnion, {std::move(left), std::move(right)});
}

Term concat(Term left, Term right) {
    require_child(left, "concat");
    require_child(right, "concat");
    return make(TermKind::kConcat, {std::move(left), std::move(right)});
}

Term lex_q(Term child) {
    require_child(child, "lexq");
    return make(TermKind::kLexQ, {std::move(child)});
}

Term gamma_star() { return make(TermKind::kGammaStar); }

Term endow(Term child) {
    require_child(child, "endow");
    return make(TermKind::kEndow, {std::move(child)});
}

Term henson(Term child) {
    require_child(child, "henson");
    return make(TermKind::kHenson, {std::move(child)});
}

Term reduct(Term child, std::vector<std::string> keep) {
    require_child(child, "reduct");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::kReduct;
    n->children = {std::move(child)};
    n->symbols = std::move(keep);
    return n;
}

Term encode_graph(Term child) {
    require_child(child, "encode-graph");
    return make(TermKind::kEncodeGraph, {std::move(child)});
}

Term encode_order(Term child) {
    require_child(child, "encode-order");
    return make(TermKind::kEncodeOrder, {std::move(child)});
}

}  // namespace term

const char* kind_name(TermKind kind) {
    switch (kind) {
        case TermKind::kRado: return "rado";
        case TermKind::kRationals: return "rationals";
        case TermKind::kGammaK: return "gammak";
        case TermKind::kHyper: return "hyper";
        case TermKind::kFiniteGraph: return "finite-graph";
        case TermKind::kFiniteOrder: return "finite-order";
        case TermKind::kUnion: return "union";
        case TermKind::kConcat: return "concat";
        case TermKind::kLexQ: return "lexq";
        case TermKind::kGammaStar: return "gammastar";
        case TermKind::kEndow: return "endow";
        case TermKind::kHenson: return "henson";
        case TermKind::kReduct: return "reduct";
        case TermKind::kEncodeGraph: return "encode-graph";
        case TermKind::kEncodeOrder: return "encode-order";
    }
    return "?";
}

std::string to_string(const Term& t) {
    if (!t) return "(?)";
    std::string out = "(";
    out += kind_name(t->kind);
    switch (t->kind) {
        case TermKind::kGammaK:
        case TermKind::kHyper:
        case TermKind::kFiniteOrder:
            out += " " + std::to_string(t->param);
            break;
        case TermKind::kFiniteGraph:
            out += " " + std::to_string(t->param);
            for (const auto& [i, j] : t->edges) out += " (" + std::to_string(i) + " " + std::to_string(j) + ")";
            break;
        default:
            break;
    }
    for (const auto& c : t->children) out += " " + to_string(c);
    for (const auto& s : t->symbols) out += " " + s;
    return out + ")";
}

bool structurally_equal(const Term& a, const Term& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->param != b->param || a->edges != b->edges || a->symbols != b->symbols ||
        a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!structurally_equal(a->children[i], b->children[i])) return false;
    return true;
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term parse_all() {
        Term t = parse_term();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(pos_, std::string("'") + c + "'");
        ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    std::string_view word(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        if (start == pos_) throw ParseError(pos_, what);
        return text_.substr(start, pos_ - start);
    }

    Index number(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        auto w = word(what);
        Index v = 0;
        auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc() || ptr != w.data() + w.size()) throw ParseError(start, what);
        return v;
    }

    Term parse_term() {
        expect('(');
        std::size_t head_at = pos_;
        auto head = word("a term head");
        Term t;
        if (head == "rado") {
            t = term::rado();
        } else if (head == "rationals") {
            t = term::rationals();
        } else if (head == "gammak") {
            skip_ws();
            std::size_t at = pos_;
            auto w = word("k");
            if (w == "omega" || w == "w" || w == "inf")
                throw InvalidInput("gammak needs a finite k >= 1; k = omega has no finite-digit presentation",
                                   "byte " + std::to_string(at));
            pos_ = at;
            Index k = number("a natural number k");
            if (k < 1) throw InvalidInput("gammak requires k >= 1", "byte " + std::to_string(at));
            t = term::gamma_k(k);
        } else if (head == "hyper") {
            skip_ws();
            std::size_t at = pos_;
            Index n = number("a natural number n");
            if (n < 2) throw InvalidInput("hyper requires n >= 2", "byte " + std::to_string(at));
            t = term::hyper(n);
        } else if (head == "finite-graph") {
            skip_ws();
            std::size_t at = pos_;
            Index m = number("a vertex count");
            std::vector<std::pair<Index, Index>> edges;
            while (peek('(')) {
                expect('(');
                Index i = number("an edge endpoint");
                Index j = number("an edge endpoint");
                expect(')');
                edges.emplace_back(i, j);
            }
            try {
                t = term::finite_graph(m, std::move(edges));
            } catch (const InvalidInput& e) {
                throw InvalidInput(e.what(), "byte " + std::to_string(at));
            }
        } else if (head == "finite-order") {
            t = term::finite_order(number("a natural number m"));
        } else if (head == "union" || head == "concat") {
            Term a = parse_term();
            Term b = parse_term();
            t = head == "union" ? term::disjoint_union(a, b) : term::concat(a, b);
        } else if (head == "lexq") {
            t = term::lex_q(parse_term());
        } else if (head == "gammastar") {
            t = term::gamma_star();
        } else if (head == "endow") {
            t = term::endow(parse_term());
        } else if (head == "henson") {
            t = term::henson(parse_term());
        } else if (head == "reduct") {
            Term c = parse_term();
            std::vector<std::string> keep;
            while (!peek(')')) {
                if (pos_ >= text_.size()) throw ParseError(pos_, "a symbol name or ')'");
                keep.emplace_back(word("a symbol name"));
            }
            t = term::reduct(c, std::move(keep));
        } else if (head == "encode-graph") {
            t = term::encode_graph(parse_term());
        } else if (head == "encode-order") {
            t = term::encode_order(parse_term());
        } else {
            throw ParseError(head_at,
                             "one of rado, rationals, gammak, hyper, finite-graph, finite-order, union, concat, "
                             "lexq, gammastar, endow, henson, reduct, encode-graph, encode-order");
        }
        expect(')');
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace symindiv
