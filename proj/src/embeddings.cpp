#include "symindiv/embeddings.hpp"

#include "symindiv/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace symindiv {

Outcome<Index> find_extension_witness(const CountableStructure& target, const ExtensionQuery& q, Index budget,
                                      Index start) {
    Index lo = start;
    if (q.min_target) lo = std::max(lo, *q.min_target + 1);
    const Index hi = target.count_below(budget);
    for (Index w = lo; w < hi; ++w) {
        if (std::find(q.exclude.begin(), q.exclude.end(), w) != q.exclude.end()) continue;
        if (q.color_filter && q.color_filter->color_of(w) != q.color_filter->color) continue;
        if (extends_partial_isomorphism(q.source, target, q.base, q.new_source, w)) return w;
    }
    return Exhausted{"find_extension_witness", q.new_source,
                     "no witness for source " + std::to_string(q.new_source) + " in [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + ")",
                     q.base.pairs};
}

// ------------------------------------------------------------ LazyEmbedding

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::kGreedy: return "greedy";
        case Strategy::kSection: return "section";
        case Strategy::kHensonInclusion: return "henson-inclusion";
        case Strategy::kComposite: return "composite";
    }
    return "?";
}

LazyEmbedding::LazyEmbedding(CountableStructure source, CountableStructure target, Strategy strategy)
    : source_(std::move(source)), target_(std::move(target)), strategy_(strategy) {
    require_compatible(source_.signature(), target_.signature());
}

void LazyEmbedding::extend(Index source, Index target) {
    if (!extends_partial_isomorphism(source_, target_, resolved_, source, target))
        throw InvalidInput("extending by " + std::to_string(source) + " -> " + std::to_string(target) +
                           " breaks the partial isomorphism");
    resolved_.insert(source, target);
}

std::string dump_pairs(const PartialIsomorphism& map) {
    std::ostringstream out;
    for (const auto& [s, t] : map.pairs) out << s << " -> " << t << '\n';
    return out.str();
}

std::string LazyEmbedding::dump() const {
    return std::string("strategy: ") + strategy_name(strategy_) + "\n" + dump_pairs(resolved_);
}

// ------------------------------------------------------------------ greedy

namespace {

PartialIsomorphism prefix_map(const std::vector<Index>& targets) {
    PartialIsomorphism m;
    m.pairs.reserve(targets.size());
    for (Index i = 0; i < targets.size(); ++i) m.pairs.emplace_back(i, targets[i]);
    return m;
}

PartialIsomorphism as_pairs(const std::vector<Index>& targets) { return prefix_map(targets); }

}  // namespace

Outcome<LazyEmbedding> greedy_embedding(const CountableStructure& a, const CountableStructure& u,
                                        const GreedyOptions& options) {
    require_compatible(a.signature(), u.signature());
    const Index steps = a.count_below(options.steps);

    auto search = [&](const std::vector<Index>& targets, Index lo) -> std::optional<Index> {
        ExtensionQuery q{a, prefix_map(targets), static_cast<Index>(targets.size()), {}, std::nullopt,
                         options.color_filter};
        if (options.respect_enum_order && !targets.empty()) q.min_target = targets.back();
        auto r = find_extension_witness(u, q, options.witness_budget, lo);
        if (found(r)) return value(r);
        return std::nullopt;
    };
    // Extends greedily; the first search starts at `lo_first`, later ones at 0.
    auto forward = [&](std::vector<Index>& targets, Index lo_first) {
        Index lo = lo_first;
        while (targets.size() < steps) {
            auto w = search(targets, lo);
            lo = 0;
            if (!w) return false;
            targets.push_back(*w);
        }
        return true;
    };
    auto finish = [&](const std::vector<Index>& targets) {
        LazyEmbedding e(a, u, Strategy::kGreedy);
        for (Index i = 0; i < targets.size(); ++i) e.extend(i, targets[i]);
        return e;
    };

    std::vector<Index> targets;
    if (forward(targets, 0)) return finish(targets);
    std::vector<Index> deepest = targets;
    while (true) {
        const std::size_t stuck = targets.size();
        const std::vector<Index> snapshot = targets;
        bool progressed = false;
        for (Index k = 1; k <= options.backtrack_depth && k <= stuck; ++k) {
            std::vector<Index> attempt(snapshot.begin(), snapshot.end() - static_cast<std::ptrdiff_t>(k));
            const Index previous = snapshot[stuck - k];
            if (forward(attempt, previous + 1)) return finish(attempt);
            if (attempt.size() > deepest.size()) deepest = attempt;
            if (attempt.size() > stuck) {
                targets = std::move(attempt);
                progressed = true;
                break;
            }
        }
        if (!progressed)
            return Exhausted{"greedy_embedding", static_cast<Index>(stuck),
                             "no witness below " + std::to_string(options.witness_budget) + " for source " +
                                 std::to_string(stuck) + " after backtracking up to " +
                                 std::to_string(options.backtrack_depth) + " choices",
                             as_pairs(deepest).pairs};
    }
}

// ---------------------------------------------------------- back and forth

Outcome<PartialIsomorphism> back_and_forth(const CountableStructure& s, const CountableStructure& t, Index steps,
                                           Index witness_budget) {
    require_compatible(s.signature(), t.signature());
    PartialIsomorphism map;
    for (Index step = 0; step < steps; ++step) {
        if (step % 2 == 0) {
            Index b = 0;
            while (map.in_domain(b)) ++b;
            if (!s.contains(b)) continue;
            auto w = find_extension_witness(t, ExtensionQuery{s, map, b, {}, std::nullopt, std::nullopt},
                                            witness_budget);
            if (!found(w))
                return Exhausted{"back_and_forth/forth", b,
                                 "no image for source index " + std::to_string(b) + " below " +
                                     std::to_string(witness_budget),
                                 map.pairs};
            map.insert(b, value(w));
        } else {
            Index c = 0;
            while (map.in_range(c)) ++c;
            if (!t.contains(c)) continue;
            auto inv = map.inverse();
            auto v = find_extension_witness(s, ExtensionQuery{t, inv, c, {}, std::nullopt, std::nullopt},
                                            witness_budget);
            if (!found(v))
                return Exhausted{"back_and_forth/back", c,
                                 "no preimage for target index " + std::to_string(c) + " below " +
                                     std::to_string(witness_budget),
                                 map.pairs};
            map.insert(value(v), c);
        }
    }
    return map;
}

// ------------------------------------------------------- symmetric handles

SymmetricEmbeddingHandle::SymmetricEmbeddingHandle(Kind kind, CountableStructure source, CountableStructure target)
    : kind_(kind),
      source_(std::make_shared<const CountableStructure>(std::move(source))),
      target_(std::make_shared<const CountableStructure>(std::move(target))) {}

SymmetricEmbeddingHandle SymmetricEmbeddingHandle::section(CountableStructure a, CountableStructure lexq,
                                                           Index q_index) {
    if (!lexq.provenance() || lexq.provenance()->kind != TermKind::kLexQ)
        throw InvalidInput("section target must be a lexq structure");
    require_compatible(a.signature(), lexq.signature());
    SymmetricEmbeddingHandle h(Kind::kSection, std::move(a), std::move(lexq));
    h.q_ = q_index;
    return h;
}

SymmetricEmbeddingHandle SymmetricEmbeddingHandle::henson_inclusion(CountableStructure g, CountableStructure closure) {
    if (!closure.provenance() || closure.provenance()->kind != TermKind::kHenson)
        throw InvalidInput("henson inclusion target must be a henson closure");
    require_compatible(g.signature(), closure.signature());
    return SymmetricEmbeddingHandle(Kind::kHensonInclusion, std::move(g), std::move(closure));
}

SymmetricEmbeddingHandle SymmetricEmbeddingHandle::composite(std::vector<SymmetricEmbeddingHandle> parts) {
    if (parts.empty()) throw InvalidInput("composite needs at least one part; use identity()");
    for (std::size_t i = 1; i < parts.size(); ++i)
        require_compatible(parts[i - 1].target().signature(), parts[i].source().signature());
    SymmetricEmbeddingHandle h(Kind::kComposite, parts.front().source(), parts.back().target());
    h.parts_ = std::move(parts);
    return h;
}

SymmetricEmbeddingHandle SymmetricEmbeddingHandle::identity(CountableStructure s) {
    return SymmetricEmbeddingHandle(Kind::kComposite, s, s);
}

Index SymmetricEmbeddingHandle::apply(Index i) const {
    if (!source_->contains(i)) throw InvalidInput("index " + std::to_string(i) + " outside the handle's source");
    switch (kind_) {
        case Kind::kSection: return lexq_pair(i, *q_, source_->size());
        case Kind::kHensonInclusion: return henson_index(HensonGraphVertex{i}, source_->size());
        case Kind::kComposite:
            for (const auto& p : parts_) i = p.apply(i);
            return i;
    }
    return i;
}

std::optional<Index> SymmetricEmbeddingHandle::preimage(Index k) const {
    switch (kind_) {
        case Kind::kSection: {
            auto [i, j] = lexq_unpair(k, source_->size());
            if (j != *q_ || !source_->contains(i)) return std::nullopt;
            return i;
        }
        case Kind::kHensonInclusion: {
            auto c = henson_classify(k, source_->size());
            if (auto g = std::get_if<HensonGraphVertex>(&c)) return g->vertex;
            return std::nullopt;
        }
        case Kind::kComposite: {
            std::optional<Index> cur = k;
            for (auto it = parts_.rbegin(); it != parts_.rend() && cur; ++it) cur = it->preimage(*cur);
            if (cur && !source_->contains(*cur)) return std::nullopt;
            return cur;
        }
    }
    return std::nullopt;
}

LazyEmbedding SymmetricEmbeddingHandle::resolve(Index count) const {
    Strategy s = kind_ == Kind::kSection           ? Strategy::kSection
                 : kind_ == Kind::kHensonInclusion ? Strategy::kHensonInclusion
                                                   : Strategy::kComposite;
    LazyEmbedding e(*source_, *target_, s);
    const Index n = source_->count_below(count);
    for (Index i = 0; i < n; ++i) e.extend(i, apply(i));
    return e;
}

HensonClosure henson_closure(const CountableStructure& g) {
    if (!g.signature().is_graph()) throw InvalidInput("henson closure needs a graph signature");
    if (!g.provenance()) throw InvalidInput("henson closure needs a structure with a construction term");
    auto closure = eval(term::henson(g.provenance()));
    auto inclusion = SymmetricEmbeddingHandle::henson_inclusion(g, closure);
    return {std::move(closure), std::move(inclusion)};
}

SymmetricEmbeddingHandle section_embedding(const CountableStructure& a, Index q_index) {
    if (!a.signature().is_order()) throw InvalidInput("section embedding needs a linear order");
    if (!a.provenance()) throw InvalidInput("section embedding needs a structure with a construction term");
    return SymmetricEmbeddingHandle::section(a, eval(term::lex_q(a.provenance())), q_index);
}

// ---------------------------------------------------- automorphism extension

namespace {

using PointMap = std::function<std::optional<Index>(Index)>;

PointMap extend_along(const SymmetricEmbeddingHandle& h, PointMap sigma);

PointMap extend_section(const SymmetricEmbeddingHandle& h, PointMap sigma) {
    return [h, sigma](Index z) -> std::optional<Index> {
        const auto a_size = h.source().size();
        auto [i, j] = lexq_unpair(z, a_size);
        auto moved = sigma(h.apply(i));
        if (!moved) return std::nullopt;
        auto i2 = h.preimage(*moved);
        if (!i2) return std::nullopt;
        return lexq_pair(*i2, j, a_size);
    };
}

PointMap extend_henson(const SymmetricEmbeddingHandle& h, PointMap sigma) {
    const auto g_size = h.source().size();
    auto memo = std::make_shared<std::map<Index, std::optional<Index>>>();
    auto self = std::make_shared<PointMap>();
    *self = [g_size, sigma, memo, self_weak = std::weak_ptr<PointMap>(self)](Index k) -> std::optional<Index> {
        if (auto it = memo->find(k); it != memo->end()) return it->second;
        auto rec = self_weak.lock();
        std::optional<Index> out;
        auto c = henson_classify(k, g_size);
        if (std::holds_alternative<HensonGraphVertex>(c)) {
            out = sigma(k);
        } else {
            const auto w = std::get<WitnessSlot>(c);
            std::uint64_t moved = 0;
            bool ok = true;
            for (std::uint64_t bits = w.members; bits && ok; bits &= bits - 1) {
                auto e = (*rec)(static_cast<Index>(std::countr_zero(bits)));
                if (!e || *e >= 64) ok = false;
                else moved |= std::uint64_t{1} << *e;
            }
            if (ok) {
                try {
                    out = henson_index(WitnessSlot{moved, w.stage}, g_size);
                } catch (const InvalidInput&) {
                    out = std::nullopt;
                }
            }
        }
        memo->emplace(k, out);
        return out;
    };
    // The returned closure keeps `self` alive for the recursion.
    return [self](Index k) { return (*self)(k); };
}

PointMap extend_composite(const SymmetricEmbeddingHandle& h, PointMap sigma) {
    PointMap current = std::move(sigma);
    const auto& parts = h.parts();
    if (parts.empty()) return current;
    // sigma lives on the image of the whole chain inside the last target. Pull
    // it back to the image of the first part, extend there, then push each
    // extension through the next part and extend again.
    std::vector<PointMap> pulled(parts.size());
    pulled.back() = current;
    for (std::size_t i = parts.size() - 1; i > 0; --i) {
        const auto outer = parts[i];
        const auto next = pulled[i];
        pulled[i - 1] = [outer, next](Index b) -> std::optional<Index> {
            auto moved = next(outer.apply(b));
            if (!moved) return std::nullopt;
            return outer.preimage(*moved);
        };
    }
    PointMap ext = extend_along(parts[0], pulled[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto part = parts[i];
        const auto inner = ext;
        PointMap on_image = [part, inner](Index c) -> std::optional<Index> {
            auto b = part.preimage(c);
            if (!b) return std::nullopt;
            auto moved = inner(*b);
            if (!moved || !part.source().contains(*moved)) return std::nullopt;
            return part.apply(*moved);
        };
        ext = extend_along(part, on_image);
    }
    return ext;
}

PointMap extend_along(const SymmetricEmbeddingHandle& h, PointMap sigma) {
    switch (h.kind()) {
        case SymmetricEmbeddingHandle::Kind::kSection: return extend_section(h, std::move(sigma));
        case SymmetricEmbeddingHandle::Kind::kHensonInclusion: return extend_henson(h, std::move(sigma));
        case SymmetricEmbeddingHandle::Kind::kComposite: return extend_composite(h, std::move(sigma));
    }
    return sigma;
}

}  // namespace

PartialIsomorphism extend_automorphism(const SymmetricEmbeddingHandle& h, const PartialIsomorphism& sigma,
                                       const std::vector<Index>& query) {
    for (const auto& [from, to] : sigma.pairs)
        if (!h.preimage(from) || !h.preimage(to))
            throw InvalidInput("sigma moves " + std::to_string(from) + " -> " + std::to_string(to) +
                               " outside the embedded image");
    if (!is_partial_isomorphism(h.target(), h.target(), sigma))
        throw InvalidInput("sigma is not a partial automorphism of the embedded image");
    PointMap base = [sigma](Index k) { return sigma.image(k); };
    PointMap ext = extend_along(h, base);
    PartialIsomorphism out;
    std::vector<Index> q = query;
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    for (Index k : q) {
        if (!h.target().contains(k)) continue;
        if (auto m = ext(k)) out.insert(k, *m);
    }
    return out;
}

}  // namespace symindiv
