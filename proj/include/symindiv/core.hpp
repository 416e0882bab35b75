#pragma once

// Signatures, finite structures, countable structures given by membership
// oracles, partial isomorphisms, reducts and age membership.
//
// Every universe is an initial segment of the naturals (or all of them): an
// element *is* its index in the canonical enumeration of its term.

#include "symindiv/errors.hpp"
#include "symindiv/term.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symindiv {

enum class SymbolKind {
    kSymmetricIrreflexive,
    kStrictTotalOrder,
    kPlain,
};

struct Symbol {
    std::string name;
    std::size_t arity = 2;
    SymbolKind kind = SymbolKind::kSymmetricIrreflexive;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
public:
    Signature() = default;
    /// Throws InvalidInput on duplicate names, bad arities or groups naming undeclared symbols.
    explicit Signature(std::vector<Symbol> symbols,
                       std::vector<std::vector<std::string>> edge_disjoint_groups = {});

    static Signature graph(std::string name = "E");
    static Signature order(std::string name = "<");

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    const std::vector<std::vector<std::string>>& edge_disjoint_groups() const noexcept { return groups_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws InvalidInput for undeclared names.
    std::size_t index_of(std::string_view name) const;

    /// Exactly one binary symmetric-irreflexive symbol.
    bool is_graph() const;
    /// Exactly one strict total order.
    bool is_order() const;
    bool has_order_symbol() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
    std::vector<std::vector<std::string>> groups_;
};

/// Structural compatibility: same number of symbols with matching arity and
/// kind position by position. Names are labels and may differ.
bool compatible(const Signature& a, const Signature& b);
void require_compatible(const Signature& a, const Signature& b);

std::string to_string(const Signature& sig);

using Tuple = std::vector<Index>;

/// Normalizes a tuple for storage: symmetric tuples are sorted ascending.
/// Returns nullopt when the tuple can never hold for the symbol's kind.
std::optional<Tuple> normalize(const Symbol& symbol, std::span<const Index> tuple);

class FiniteStructure {
public:
    FiniteStructure() = default;
    FiniteStructure(Signature signature, Index size);

    const Signature& signature() const noexcept { return signature_; }
    Index size() const noexcept { return size_; }

    /// Adds a tuple (symmetric tuples in any orientation). Throws InvalidInput
    /// for wrong arity or out-of-universe entries.
    void add(std::size_t symbol, std::span<const Index> tuple);
    void add(std::size_t symbol, std::initializer_list<Index> tuple) {
        add(symbol, std::span<const Index>(tuple.begin(), tuple.size()));
    }
    bool holds(std::size_t symbol, std::span<const Index> tuple) const;
    bool holds(std::size_t symbol, std::initializer_list<Index> tuple) const {
        return holds(symbol, std::span<const Index>(tuple.begin(), tuple.size()));
    }
    const std::set<Tuple>& tuples(std::size_t symbol) const { return relations_.at(symbol); }

    /// Human-readable descriptions of every violated structural invariant.
    std::vector<std::string> violations() const;
    void validate() const;

    /// Text block: "size m", then per symbol "rel <name> <arity>" and its
    /// tuples one per line in lexicographic order.
    std::string serialize() const;
    nlohmann::ordered_json to_json() const;

    friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

private:
    Signature signature_;
    Index size_ = 0;
    std::vector<std::set<Tuple>> relations_;
};

/// Membership oracle behind a countable structure. Implementations receive
/// tuples already normalized (in range, symmetric tuples sorted and distinct,
/// order pairs distinct) and must be pure.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual bool holds(std::size_t symbol, std::span<const Index> tuple) const = 0;
};

class CountableStructure {
public:
    CountableStructure(Signature signature, std::optional<Index> size,
                       std::shared_ptr<const Oracle> oracle, Term provenance);

    const Signature& signature() const noexcept { return signature_; }
    /// nullopt for an infinite universe.
    std::optional<Index> size() const noexcept { return size_; }
    bool is_infinite() const noexcept { return !size_.has_value(); }
    bool contains(Index i) const noexcept { return !size_ || i < *size_; }
    const Term& provenance() const noexcept { return provenance_; }

    /// Total: false for out-of-universe entries, wrong arity, or tuples the
    /// symbol's kind excludes (repeats in symmetric relations, reflexive pairs).
    bool holds(std::size_t symbol, std::span<const Index> tuple) const;
    bool holds(std::size_t symbol, std::initializer_list<Index> tuple) const {
        return holds(symbol, std::span<const Index>(tuple.begin(), tuple.size()));
    }
    bool holds(std::string_view symbol, std::initializer_list<Index> tuple) const {
        return holds(signature_.index_of(symbol), tuple);
    }

    /// Number of universe elements below `bound`.
    Index count_below(Index bound) const noexcept { return size_ ? std::min(*size_, bound) : bound; }

private:
    Signature signature_;
    std::optional<Index> size_;
    std::shared_ptr<const Oracle> oracle_;
    Term provenance_;
};

/// A finite injective index map; pairs kept sorted by source index.
struct PartialIsomorphism {
    std::vector<std::pair<Index, Index>> pairs;

    std::optional<Index> image(Index source) const;
    std::optional<Index> preimage(Index target) const;
    bool in_domain(Index source) const { return image(source).has_value(); }
    bool in_range(Index target) const { return preimage(target).has_value(); }
    void insert(Index source, Index target);
    PartialIsomorphism inverse() const;
    std::size_t size() const noexcept { return pairs.size(); }

    friend bool operator==(const PartialIsomorphism&, const PartialIsomorphism&) = default;
};

FiniteStructure prefix(const CountableStructure& s, Index m);

/// Induced substructure on strictly increasing `indices`, relabelled 0..len-1.
/// Throws InvalidInput for duplicates, unsorted lists or indices outside the universe.
FiniteStructure induced(const CountableStructure& s, std::span<const Index> indices);

/// Throws SignatureMismatch when signatures are incompatible.
bool is_partial_isomorphism(const CountableStructure& src, const CountableStructure& dst,
                            const PartialIsomorphism& map);

/// Whether `map ∪ {source ↦ target}` is still a partial isomorphism, assuming
/// `map` already is one. Only tuples through the new pair are examined.
bool extends_partial_isomorphism(const CountableStructure& src, const CountableStructure& dst,
                                 const PartialIsomorphism& map, Index source, Index target);

CountableStructure reduct(const CountableStructure& s, const std::vector<std::string>& keep);

/// Exhaustive backtracking search for an embedding of `f` into prefix(s, budget).
Outcome<PartialIsomorphism> age_member(const FiniteStructure& f, const CountableStructure& s,
                                       Index budget);

/// Wraps a finite structure as a countable one (finite universe).
CountableStructure as_countable(const FiniteStructure& f, Term provenance);

}  // namespace symindiv
