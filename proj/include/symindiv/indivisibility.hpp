#pragma once

// Colorings, monochromatic-copy search, the Γ* counterexample certificates,
// the transfer pipeline that moves a symmetric monochromatic copy from M to a
// mutually symmetrically embeddable N, and the reduct demonstration.

#include "symindiv/core.hpp"
#include "symindiv/embeddings.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace symindiv {

// ------------------------------------------------------------------ colorings

namespace coloring {
struct Parity {};                     // even = red
struct Mod { Index k; Index r; };     // (i + r) mod k, k colours
struct GammaStarPart {};              // red iff a Γ vertex of gammastar
struct Threshold { Index n; };        // red iff i < n
struct Explicit {
    std::vector<Color> colors;
    Color fallback = kRed;
};
}  // namespace coloring

using ColoringSpec = std::variant<coloring::Parity, coloring::Mod, coloring::GammaStarPart, coloring::Threshold,
                                  coloring::Explicit>;

class Coloring {
public:
    /// Throws InvalidInput for Mod with k < 2 or colours outside the palette.
    explicit Coloring(ColoringSpec spec);

    /// Grammar: parity | mod:k:r | gammastar-part | threshold:n | list:c0,c1,...:default
    static Coloring parse(std::string_view text);

    const ColoringSpec& spec() const noexcept { return spec_; }
    Color palette_size() const noexcept;
    Color operator()(Index i) const;
    ColorFn fn() const;

private:
    ColoringSpec spec_;
};

Color color_of(const Coloring& c, Index i);
std::string to_string(const Coloring& c);
std::string color_name(Color c);

/// Maximum degree (inside prefix(u, prefix_size)) of a vertex of each colour,
/// indexed by colour; -1 when a colour does not occur. Uses symbol 0.
std::vector<long long> prefix_color_max_degree(const CountableStructure& u, const Coloring& c, Index prefix_size);

// ------------------------------------------------------ monochromatic copies

struct MonochromaticCopy {
    LazyEmbedding embedding;
    Color color;
};

struct SearchOptions {
    Index steps = 16;
    Index witness_budget = 65536;
    Index backtrack_depth = 8;
    bool respect_enum_order = false;
};

/// Greedy search for a copy of `target` inside `u` whose whole range has one
/// colour: the given colour only, or each palette colour in order. Successes
/// are re-validated (uniform colour, partial isomorphism) before returning.
Outcome<MonochromaticCopy> find_monochromatic_copy(const CountableStructure& u, const ColorFn& color_of,
                                                   Color palette_size, const CountableStructure& target,
                                                   std::optional<Color> color, const SearchOptions& options);
Outcome<MonochromaticCopy> find_monochromatic_copy(const CountableStructure& u, const Coloring& c,
                                                   const CountableStructure& target, std::optional<Color> color,
                                                   const SearchOptions& options);

// ---------------------------------------------------- Γ* obstruction certificates

struct EvidenceCheck {
    std::vector<Index> tuple;
    bool expected;
    bool observed;

    friend bool operator==(const EvidenceCheck&, const EvidenceCheck&) = default;
};

struct TranspositionAutomorphism {
    Index n, i, j;  // swap of indices i, j (the first two slots of K_n)
    friend bool operator==(const TranspositionAutomorphism&, const TranspositionAutomorphism&) = default;
};

struct GammaFixedPoint {
    Index from_block, to_block;  // the pair (g_from, g_to)
    Index from, to;              // their gammastar indices
    friend bool operator==(const GammaFixedPoint&, const GammaFixedPoint&) = default;
};

struct ObstructionCertificate {
    std::variant<TranspositionAutomorphism, GammaFixedPoint> kind;
    Index prefix_size = 0;
    std::vector<EvidenceCheck> evidence;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
    friend bool operator==(const ObstructionCertificate&, const ObstructionCertificate&) = default;
};

/// (a) swap of K_n's first two slots; (b) the pair (g_{n-1}, g_n).
/// Throws InvalidInput for n < 2 or a prefix that does not cover block n.
std::pair<ObstructionCertificate, ObstructionCertificate> gamma_star_obstruction(Index n, Index prefix_size);

/// Recomputes the evidence from the certificate's kind and prefix size.
ObstructionCertificate replay(const ObstructionCertificate& cert);

// ------------------------------------------------------------- transfer

enum class SymmetricStatus { kCertified, kClaimed };
const char* status_name(SymmetricStatus s);

struct BaseCopy {
    LazyEmbedding embedding;  // M -> M
    Color color;
    bool certified = false;   // whether the copy is known to be symmetrically embedded
};

/// Finds a monochromatic copy of M inside M under the given colouring, resolved
/// on source indices 0..steps-1.
using BaseFinder = std::function<Outcome<BaseCopy>(const CountableStructure& m, const ColorFn& color_of,
                                                   Color palette_size, Index steps, Index budget)>;

/// Greedy monochromatic search; results are tagged claimed.
BaseFinder greedy_base_finder(Index backtrack_depth = 8);

struct HopReport {
    std::string name;
    bool certified = false;
    PartialIsomorphism map;
};

struct TransferReport {
    std::vector<HopReport> hops;
    LazyEmbedding final_embedding;
    Color color;
    bool monochromatic = false;
    bool composition_verified = false;
    SymmetricStatus symmetric_status = SymmetricStatus::kClaimed;

    nlohmann::ordered_json to_json() const;
};

/// N -> M -> (monochromatic copy in M) -> N. Throws SignatureMismatch when M
/// and N disagree; Exhausted names the hop that ran out.
Outcome<TransferReport> transfer_symmetric_copy(const CountableStructure& m, const CountableStructure& n,
                                                const SymmetricEmbeddingHandle& e_m_to_n,
                                                const SymmetricEmbeddingHandle& e_n_to_m, const Coloring& c,
                                                const BaseFinder& base_finder, Index steps, Index budget);

// ------------------------------------------------------------ reduct demo

/// Exhaustively enumerates injective self-maps of each prefix of size <= max_size
/// and returns the non-identity ones that are embeddings (empty = rigid).
std::vector<std::vector<Index>> nontrivial_prefix_self_embeddings(const CountableStructure& s, Index max_size);

struct DemoStage {
    std::string name;
    std::string status;  // "passed", "failed" or "exhausted"
    std::string detail;
    nlohmann::ordered_json data;
};

struct DemoReport {
    Index prefix_size = 0, steps = 0, budget = 0;
    std::vector<DemoStage> stages;
    std::optional<Exhausted> exhausted;  // the first stage that ran out of budget

    bool passed() const;
    /// Versioned document; the hash covers everything but itself.
    nlohmann::ordered_json to_json() const;
    std::string hash() const;
};

DemoReport reduct_counterexample_demo(Index prefix_size, Index steps, Index budget);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace symindiv
