#pragma once

// Embeddings built one point at a time: extension-witness search, greedy and
// back-and-forth constructions, the Henson-style closure of a graph, section
// embeddings A -> A[Q], and automorphism extension along symmetric embeddings.
//
// Witness selection is always first-hit (least index), so every run is
// reproducible from its arguments.

#include "symindiv/core.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symindiv {

using Color = std::uint32_t;
inline constexpr Color kRed = 0;
inline constexpr Color kBlue = 1;

using ColorFn = std::function<Color(Index)>;

/// Restricts witnesses to a single colour class of the target.
struct ColorFilter {
    ColorFn color_of;
    Color color = kRed;
};

struct ExtensionQuery {
    CountableStructure source;
    PartialIsomorphism base;  // source -> target, assumed to be a partial isomorphism
    Index new_source = 0;
    std::vector<Index> exclude;
    std::optional<Index> min_target;  // witnesses must be strictly greater
    std::optional<ColorFilter> color_filter;
};

/// Least w in [start, budget) such that base ∪ {new_source ↦ w} is a partial
/// isomorphism and w passes exclude / min_target / colour constraints.
Outcome<Index> find_extension_witness(const CountableStructure& target, const ExtensionQuery& q,
                                      Index budget, Index start = 0);

enum class Strategy { kGreedy, kSection, kHensonInclusion, kComposite };

const char* strategy_name(Strategy s);

/// A growing partial isomorphism between two structures. extend() refuses any
/// pair that would break the partial-isomorphism contract, so the resolved map
/// is valid at every state and never shrinks.
class LazyEmbedding {
public:
    LazyEmbedding(CountableStructure source, CountableStructure target, Strategy strategy);

    const CountableStructure& source() const noexcept { return source_; }
    const CountableStructure& target() const noexcept { return target_; }
    Strategy strategy() const noexcept { return strategy_; }
    const PartialIsomorphism& resolved() const noexcept { return resolved_; }
    std::optional<Index> operator()(Index source) const { return resolved_.image(source); }

    /// Throws InvalidInput if the pair breaks injectivity or relation preservation.
    void extend(Index source, Index target);

    /// "strategy: <tag>" followed by "i -> j" lines in source order.
    std::string dump() const;

private:
    CountableStructure source_;
    CountableStructure target_;
    Strategy strategy_;
    PartialIsomorphism resolved_;
};

std::string dump_pairs(const PartialIsomorphism& map);

struct GreedyOptions {
    bool respect_enum_order = false;
    Index steps = 16;
    Index witness_budget = 65536;
    Index backtrack_depth = 8;
    std::optional<ColorFilter> color_filter;
};

/// Resolves source indices 0..steps-1 in order with first-hit witnesses. When
/// stuck at some index, retries with the last 1, 2, ..., backtrack_depth
/// choices undone (each re-searched strictly above its previous witness)
/// before reporting Exhausted. age(a) ⊆ age(u) is assumed, not checked.
Outcome<LazyEmbedding> greedy_embedding(const CountableStructure& a, const CountableStructure& u,
                                        const GreedyOptions& options);

/// Alternates forward (least unresolved S index) and backward (least
/// unresolved T index) extension steps.
Outcome<PartialIsomorphism> back_and_forth(const CountableStructure& s, const CountableStructure& t,
                                           Index steps, Index witness_budget);

/// An embedding whose image is symmetrically embedded: every automorphism of
/// the image extends to the ambient structure (see extend_automorphism).
class SymmetricEmbeddingHandle {
public:
    enum class Kind { kSection, kHensonInclusion, kComposite };

    /// a -> lexq(a), i ↦ pi(i, q_index).
    static SymmetricEmbeddingHandle section(CountableStructure a, CountableStructure lexq, Index q_index);
    /// g -> henson(g), the inclusion of the graph vertices.
    static SymmetricEmbeddingHandle henson_inclusion(CountableStructure g, CountableStructure closure);
    /// parts applied first to last; throws SignatureMismatch when links disagree.
    static SymmetricEmbeddingHandle composite(std::vector<SymmetricEmbeddingHandle> parts);
    static SymmetricEmbeddingHandle identity(CountableStructure s);

    Kind kind() const noexcept { return kind_; }
    const CountableStructure& source() const noexcept { return *source_; }
    const CountableStructure& target() const noexcept { return *target_; }
    std::optional<Index> q_index() const noexcept { return q_; }
    const std::vector<SymmetricEmbeddingHandle>& parts() const noexcept { return parts_; }

    /// Throws InvalidInput for indices outside the source universe.
    Index apply(Index source) const;
    std::optional<Index> preimage(Index target) const;

    /// The underlying LazyEmbedding resolved on source indices 0..count-1.
    LazyEmbedding resolve(Index count) const;

private:
    SymmetricEmbeddingHandle(Kind kind, CountableStructure source, CountableStructure target);

    Kind kind_;
    std::shared_ptr<const CountableStructure> source_;
    std::shared_ptr<const CountableStructure> target_;
    std::optional<Index> q_;
    std::vector<SymmetricEmbeddingHandle> parts_;
};

struct HensonClosure {
    CountableStructure closure;
    SymmetricEmbeddingHandle inclusion;
};

/// Throws InvalidInput unless g has a graph signature.
HensonClosure henson_closure(const CountableStructure& g);

/// Section of a linear order into its lexicographic product with Q.
SymmetricEmbeddingHandle section_embedding(const CountableStructure& a, Index q_index);

/// Extends `sigma`, a finite partial automorphism of the ambient structure
/// whose domain and range lie in h's image, to the query points. Points the
/// finite sigma does not determine are left out of the result.
/// Throws InvalidInput if sigma leaves the image or is not a partial isomorphism.
PartialIsomorphism extend_automorphism(const SymmetricEmbeddingHandle& h, const PartialIsomorphism& sigma,
                                       const std::vector<Index>& query);

}  // namespace symindiv
