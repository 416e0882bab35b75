#pragma once

// Evaluation of construction terms to countable structures, with fixed
// canonical enumerations:
//
//   union / concat   interleave: 2i is the left side's i, 2i+1 the right side's i,
//                    continuing sequentially on the larger side once the
//                    smaller finite side runs out.
//   lexq(A)          pair index pi(i, j) -> (a_i, q_j); Cantor pairing when A is
//                    infinite, i + |A| * j when A is finite.
//   gammastar        block n starts at n(n+1)/2: first g_n, then the n slots of K_n.
//   endow(A)         adds "<e", the index order.
//   henson(G)        closure; see HensonIndex.

#include "symindiv/core.hpp"
#include "symindiv/term.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace symindiv {

inline constexpr const char* kEndowSymbol = "<e";

/// Throws InvalidInput naming the path to the first ill-formed node.
CountableStructure eval(const Term& t);
CountableStructure eval(std::string_view term_text);

// --------------------------------------------------------- enumerations

enum class Side { kLeft = 0, kRight = 1 };

struct SideIndex {
    Side side;
    Index local;

    friend bool operator==(const SideIndex&, const SideIndex&) = default;
};

/// Merged enumeration of two universes of the given sizes (nullopt = infinite).
SideIndex split_interleaved(Index k, std::optional<Index> left, std::optional<Index> right);
Index join_interleaved(SideIndex s, std::optional<Index> left, std::optional<Index> right);

Index cantor_pair(Index i, Index j);
std::pair<Index, Index> cantor_unpair(Index z);

/// Pair index of (a_i, q_j) inside lexq(A) for |A| = a_size.
Index lexq_pair(Index i, Index j, std::optional<Index> a_size);
std::pair<Index, Index> lexq_unpair(Index z, std::optional<Index> a_size);

// ------------------------------------------------------------ gammastar

struct GammaVertex {
    Index m;
    friend bool operator==(const GammaVertex&, const GammaVertex&) = default;
};
struct CliqueVertex {
    Index n;
    Index slot;
    friend bool operator==(const CliqueVertex&, const CliqueVertex&) = default;
};
using GammaStarClass = std::variant<GammaVertex, CliqueVertex>;

GammaStarClass gamma_star_classify(Index v);
Index gamma_star_index(const GammaStarClass& c);
bool gamma_star_edge(Index u, Index v);
/// Degree in the full (infinite) graph; nullopt means infinite.
std::optional<Index> gamma_star_eventual_degree(Index v);

// -------------------------------------------------------- henson closure
//
// Witness slot p carries (S, t): S a finite set of closure indices given as a
// bitmask, t a stage. Slots are grouped in levels L = max(bitlen(S), t + 1);
// within a level they are ordered by bitmask (colex order on sets) and then
// stage. w(S, t) is adjacent exactly to the members of S among earlier
// vertices, so every finite S gets infinitely many witnesses.

struct WitnessSlot {
    std::uint64_t members = 0;  // bitmask over closure indices
    Index stage = 0;
    friend bool operator==(const WitnessSlot&, const WitnessSlot&) = default;
};

struct HensonGraphVertex {
    Index vertex;
    friend bool operator==(const HensonGraphVertex&, const HensonGraphVertex&) = default;
};
using HensonClass = std::variant<HensonGraphVertex, WitnessSlot>;

WitnessSlot henson_slot(Index p);
Index henson_slot_index(const WitnessSlot& w);
HensonClass henson_classify(Index k, std::optional<Index> graph_size);
Index henson_index(const HensonClass& c, std::optional<Index> graph_size);

// -------------------------------------------------------------- decoders

struct GraphCertificate {
    Index prefix_size = 0;
    Index left_vertices = 0;
    bool left_connected = false;
    Index cross_edges = 0;
    /// Components of the right side inside the prefix, in right-side indices.
    std::vector<std::vector<Index>> right_components;

    nlohmann::ordered_json to_json() const;
};

struct DecodedGraph {
    Term graph;
    GraphCertificate certificate;
};

/// Provenance decoder for encode-graph(g) / union(rado, g). Throws NotAnEncoding
/// for any other head; throws InvalidInput if the component certificate fails.
DecodedGraph decode_graph(const Term& t, Index budget);

struct DensityWitness {
    Index low, high, between;
};

struct OrderCertificate {
    Index x = 0, y = 0;
    Index examined = 0;
    std::vector<DensityWitness> density;
    std::vector<std::pair<Index, Index>> gaps;

    nlohmann::ordered_json to_json() const;
};

struct DecodedOrder {
    /// The provenance child when it matches the structural answer, else finite-order(m).
    Term order;
    std::vector<Index> indices;  // decoded elements, increasing
    FiniteStructure decoded;
    std::optional<bool> provenance_match;
    OrderCertificate certificate;
};

/// Structural decode of Q + {x} + {y} + A: looks for gap pairs among the first
/// budget/8 indices, testing density with witnesses below `budget`.
Outcome<DecodedOrder> decode_order(const Term& t, Index budget);

}  // namespace symindiv
