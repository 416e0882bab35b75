#pragma once

// Closed construction terms: the names of every structure the library can build.

#include "symindiv/errors.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symindiv {

enum class TermKind {
    kRado,
    kRationals,
    kGammaK,
    kHyper,
    kFiniteGraph,
    kFiniteOrder,
    kUnion,
    kConcat,
    kLexQ,
    kGammaStar,
    kEndow,
    kHenson,
    kReduct,
    kEncodeGraph,
    kEncodeOrder,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    TermKind kind;
    std::vector<Term> children;
    Index param = 0;                                 // k, n or m
    std::vector<std::pair<Index, Index>> edges;      // finite-graph only
    std::vector<std::string> symbols;                // reduct only
};

namespace term {

Term rado();
Term rationals();
Term gamma_k(Index k);
Term hyper(Index n);
Term finite_graph(Index m, std::vector<std::pair<Index, Index>> edges);
Term finite_order(Index m);
Term disjoint_union(Term left, Term right);
Term concat(Term left, Term right);
Term lex_q(Term child);
Term gamma_star();
Term endow(Term child);
Term henson(Term child);
Term reduct(Term child, std::vector<std::string> keep);
Term encode_graph(Term child);
Term encode_order(Term child);

}  // namespace term

/// Canonical ASCII form; `parse_term(to_string(t))` is structurally equal to `t`.
std::string to_string(const Term& t);

/// Parses the parenthesized grammar. Whitespace-insensitive. Throws ParseError
/// with a byte offset on malformed text, InvalidInput on out-of-range parameters.
Term parse_term(std::string_view text);

bool structurally_equal(const Term& a, const Term& b);

const char* kind_name(TermKind kind);

}  // namespace symindiv
