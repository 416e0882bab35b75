#include "symindiv/core.hpp"

#include "combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace symindiv {

namespace detail {

Index triangular_root(Index v) {
    auto n = static_cast<Index>((std::sqrt(8.0L * static_cast<long double>(v) + 1.0L) - 1.0L) / 2.0L);
    while (n > 0 && n * (n + 1) / 2 > v) --n;
    while ((n + 1) * (n + 2) / 2 <= v) ++n;
    return n;
}

Index binomial_capped(Index n, Index k, Index cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (Index i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r >= cap) return cap;
    }
    return static_cast<Index>(r);
}

}  // namespace detail

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<Symbol> symbols, std::vector<std::vector<std::string>> groups)
    : symbols_(std::move(symbols)), groups_(std::move(groups)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& s = symbols_[i];
        if (s.name.empty()) throw InvalidInput("symbol names must be non-empty");
        if (s.arity == 0) throw InvalidInput("symbol " + s.name + " has arity 0");
        if (s.kind == SymbolKind::kSymmetricIrreflexive && s.arity < 2)
            throw InvalidInput("symmetric-irreflexive symbol " + s.name + " needs arity >= 2");
        if (s.kind == SymbolKind::kStrictTotalOrder && s.arity != 2)
            throw InvalidInput("order symbol " + s.name + " must be binary");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[j].name == s.name) throw InvalidInput("duplicate symbol " + s.name);
    }
    for (const auto& g : groups_)
        for (const auto& name : g)
            if (!find(name)) throw InvalidInput("edge-disjoint group names undeclared symbol " + name);
}

Signature Signature::graph(std::string name) {
    return Signature({Symbol{std::move(name), 2, SymbolKind::kSymmetricIrreflexive}});
}

Signature Signature::order(std::string name) {
    return Signature({Symbol{std::move(name), 2, SymbolKind::kStrictTotalOrder}});
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw InvalidInput("unknown symbol " + std::string(name));
}

bool Signature::is_graph() const {
    return symbols_.size() == 1 && symbols_[0].arity == 2 &&
           symbols_[0].kind == SymbolKind::kSymmetricIrreflexive;
}

bool Signature::is_order() const {
    return symbols_.size() == 1 && symbols_[0].kind == SymbolKind::kStrictTotalOrder;
}

bool Signature::has_order_symbol() const {
    return std::any_of(symbols_.begin(), symbols_.end(),
                       [](const Symbol& s) { return s.kind == SymbolKind::kStrictTotalOrder; });
}

bool compatible(const Signature& a, const Signature& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].arity != b[i].arity || a[i].kind != b[i].kind) return false;
    return true;
}

void require_compatible(const Signature& a, const Signature& b) {
    if (!compatible(a, b))
        throw SignatureMismatch("signature " + to_string(a) + " is not compatible with " + to_string(b));
}

std::string to_string(const Signature& sig) {
    std::string out = "{";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i) out += ", ";
        out += sig[i].name + "/" + std::to_string(sig[i].arity);
        switch (sig[i].kind) {
            case SymbolKind::kSymmetricIrreflexive: out += " sym"; break;
            case SymbolKind::kStrictTotalOrder: out += " order"; break;
            case SymbolKind::kPlain: break;
        }
    }
    return out + "}";
}

std::optional<Tuple> normalize(const Symbol& symbol, std::span<const Index> tuple) {
    if (tuple.size() != symbol.arity) return std::nullopt;
    Tuple t(tuple.begin(), tuple.end());
    switch (symbol.kind) {
        case SymbolKind::kSymmetricIrreflexive:
            std::sort(t.begin(), t.end());
            if (std::adjacent_find(t.begin(), t.end()) != t.end()) return std::nullopt;
            break;
        case SymbolKind::kStrictTotalOrder:
            if (t[0] == t[1]) return std::nullopt;
            break;
        case SymbolKind::kPlain:
            break;
    }
    return t;
}

// ---------------------------------------------------------- FiniteStructure

FiniteStructure::FiniteStructure(Signature signature, Index size)
    : signature_(std::move(signature)), size_(size), relations_(signature_.size()) {}

void FiniteStructure::add(std::size_t symbol, std::span<const Index> tuple) {
    const auto& sym = signature_[symbol];
    if (tuple.size() != sym.arity)
        throw InvalidInput("tuple for " + sym.name + " has wrong arity");
    for (Index i : tuple)
        if (i >= size_) throw InvalidInput("tuple entry " + std::to_string(i) + " outside universe");
    auto t = normalize(sym, tuple);
    if (!t) throw InvalidInput("tuple violates the kind of " + sym.name);
    relations_[symbol].insert(std::move(*t));
}

bool FiniteStructure::holds(std::size_t symbol, std::span<const Index> tuple) const {
    if (symbol >= relations_.size()) return false;
    auto t = normalize(signature_[symbol], tuple);
    return t && relations_[symbol].count(*t) > 0;
}

std::vector<std::string> FiniteStructure::violations() const {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < signature_.size(); ++s) {
        const auto& sym = signature_[s];
        for (const auto& t : relations_[s]) {
            if (t.size() != sym.arity) out.push_back(sym.name + ": tuple of wrong arity");
            for (Index i : t)
                if (i >= size_) out.push_back(sym.name + ": entry outside universe");
            if (sym.kind == SymbolKind::kSymmetricIrreflexive &&
                !std::is_sorted(t.begin(), t.end(), std::less_equal<>{}))
                out.push_back(sym.name + ": symmetric tuple not stored strictly increasing");
        }
        if (sym.kind == SymbolKind::kStrictTotalOrder) {
            for (Index i = 0; i < size_; ++i) {
                if (holds(s, {i, i})) out.push_back(sym.name + ": reflexive at " + std::to_string(i));
                for (Index j = i + 1; j < size_; ++j) {
                    bool ij = holds(s, {i, j}), ji = holds(s, {j, i});
                    if (ij == ji)
                        out.push_back(sym.name + ": not total/antisymmetric on " + std::to_string(i) +
                                      "," + std::to_string(j));
                }
            }
            for (const auto& ab : relations_[s])
                for (const auto& bc : relations_[s])
                    if (ab[1] == bc[0] && !holds(s, {ab[0], bc[1]}))
                        out.push_back(sym.name + ": not transitive through " + std::to_string(ab[1]));
        }
    }
    for (const auto& group : signature_.edge_disjoint_groups()) {
        std::map<Tuple, std::string> owner;
        for (const auto& name : group) {
            auto s = signature_.index_of(name);
            for (auto t : relations_[s]) {
                std::sort(t.begin(), t.end());
                auto [it, fresh] = owner.emplace(t, name);
                if (!fresh && it->second != name)
                    out.push_back("edge-disjoint group shared by " + it->second + " and " + name);
            }
        }
    }
    return out;
}

void FiniteStructure::validate() const {
    auto v = violations();
    if (!v.empty()) throw InvalidInput("finite structure invariant violated: " + v.front());
}

std::string FiniteStructure::serialize() const {
    std::ostringstream out;
    out << "size " << size_ << '\n';
    for (std::size_t s = 0; s < signature_.size(); ++s) {
        out << "rel " << signature_[s].name << ' ' << signature_[s].arity << '\n';
        for (const auto& t : relations_[s]) {
            for (std::size_t k = 0; k < t.size(); ++k) out << (k ? " " : "") << t[k];
            out << '\n';
        }
    }
    return out.str();
}

nlohmann::ordered_json FiniteStructure::to_json() const {
    nlohmann::ordered_json j;
    j["size"] = size_;
    j["relations"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < signature_.size(); ++s) {
        nlohmann::ordered_json r;
        r["name"] = signature_[s].name;
        r["arity"] = signature_[s].arity;
        r["tuples"] = nlohmann::ordered_json::array();
        for (const auto& t : relations_[s]) r["tuples"].push_back(t);
        j["relations"].push_back(std::move(r));
    }
    return j;
}

// ------------------------------------------------------- CountableStructure

CountableStructure::CountableStructure(Signature signature, std::optional<Index> size,
                                       std::shared_ptr<const Oracle> oracle, Term provenance)
    : signature_(std::move(signature)), size_(size), oracle_(std::move(oracle)),
      provenance_(std::move(provenance)) {}

bool CountableStructure::holds(std::size_t symbol, std::span<const Index> tuple) const {
    if (symbol >= signature_.size()) return false;
    for (Index i : tuple)
        if (!contains(i)) return false;
    auto t = normalize(signature_[symbol], tuple);
    return t && oracle_->holds(symbol, *t);
}

// ------------------------------------------------------ PartialIsomorphism

std::optional<Index> PartialIsomorphism::image(Index source) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), source,
                               [](const auto& p, Index s) { return p.first < s; });
    if (it != pairs.end() && it->first == source) return it->second;
    return std::nullopt;
}

std::optional<Index> PartialIsomorphism::preimage(Index target) const {
    for (const auto& [s, t] : pairs)
        if (t == target) return s;
    return std::nullopt;
}

void PartialIsomorphism::insert(Index source, Index target) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), source,
                               [](const auto& p, Index s) { return p.first < s; });
    if (it != pairs.end() && it->first == source)
        throw InvalidInput("source index " + std::to_string(source) + " already mapped");
    pairs.insert(it, {source, target});
}

PartialIsomorphism PartialIsomorphism::inverse() const {
    PartialIsomorphism inv;
    for (const auto& [s, t] : pairs) inv.insert(t, s);
    return inv;
}

// --------------------------------------------------------------- operations

namespace {

// Calls fn(tuple) for every tuple over `elems` that the symbol's kind admits.
template <class Fn>
bool for_each_candidate_tuple(const Symbol& sym, std::span<const Index> elems, Fn&& fn) {
    Tuple t(sym.arity);
    switch (sym.kind) {
        case SymbolKind::kSymmetricIrreflexive:
            return detail::for_each_combination(elems.size(), sym.arity, [&](auto c) {
                for (std::size_t k = 0; k < c.size(); ++k) t[k] = elems[c[k]];
                return fn(std::span<const Index>(t));
            });
        case SymbolKind::kStrictTotalOrder:
            for (std::size_t a = 0; a < elems.size(); ++a)
                for (std::size_t b = 0; b < elems.size(); ++b) {
                    if (a == b) continue;
                    t[0] = elems[a];
                    t[1] = elems[b];
                    if (!fn(std::span<const Index>(t))) return false;
                }
            return true;
        case SymbolKind::kPlain:
            return detail::for_each_word(elems.size(), sym.arity, [&](auto w) {
                for (std::size_t k = 0; k < w.size(); ++k) t[k] = elems[w[k]];
                return fn(std::span<const Index>(t));
            });
    }
    return true;
}

class FiniteOracle final : public Oracle {
public:
    explicit FiniteOracle(FiniteStructure f) : f_(std::move(f)) {}
    bool holds(std::size_t symbol, std::span<const Index> tuple) const override {
        return f_.holds(symbol, tuple);
    }

private:
    FiniteStructure f_;
};

}  // namespace

FiniteStructure prefix(const CountableStructure& s, Index m) {
    std::vector<Index> idx(s.count_below(m));
    for (Index i = 0; i < idx.size(); ++i) idx[i] = i;
    return induced(s, idx);
}

FiniteStructure induced(const CountableStructure& s, std::span<const Index> indices) {
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (k > 0 && indices[k] <= indices[k - 1])
            throw InvalidInput(indices[k] == indices[k - 1] ? "duplicate index " + std::to_string(indices[k])
                                                             : "indices must be strictly increasing");
        if (!s.contains(indices[k]))
            throw InvalidInput("index " + std::to_string(indices[k]) + " outside the universe");
    }
    FiniteStructure f(s.signature(), indices.size());
    std::vector<Index> local(indices.size());
    for (Index i = 0; i < local.size(); ++i) local[i] = i;
    Tuple image;
    for (std::size_t sym = 0; sym < s.signature().size(); ++sym) {
        for_each_candidate_tuple(s.signature()[sym], local, [&](std::span<const Index> t) {
            image.assign(t.size(), 0);
            for (std::size_t k = 0; k < t.size(); ++k) image[k] = indices[t[k]];
            if (s.holds(sym, image)) f.add(sym, t);
            return true;
        });
    }
    return f;
}

bool is_partial_isomorphism(const CountableStructure& src, const CountableStructure& dst,
                            const PartialIsomorphism& map) {
    require_compatible(src.signature(), dst.signature());
    std::vector<Index> domain;
    std::vector<Index> range;
    for (const auto& [a, b] : map.pairs) {
        if (!src.contains(a) || !dst.contains(b)) return false;
        domain.push_back(a);
        range.push_back(b);
    }
    auto sorted = range;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    std::vector<Index> positions(domain.size());
    for (Index i = 0; i < positions.size(); ++i) positions[i] = i;
    Tuple from, to;
    for (std::size_t sym = 0; sym < src.signature().size(); ++sym) {
        bool ok = for_each_candidate_tuple(src.signature()[sym], positions, [&](std::span<const Index> t) {
            from.assign(t.size(), 0);
            to.assign(t.size(), 0);
            for (std::size_t k = 0; k < t.size(); ++k) {
                from[k] = domain[t[k]];
                to[k] = range[t[k]];
            }
            return src.holds(sym, from) == dst.holds(sym, to);
        });
        if (!ok) return false;
    }
    return true;
}

bool extends_partial_isomorphism(const CountableStructure& src, const CountableStructure& dst,
                                 const PartialIsomorphism& map, Index source, Index target) {
    if (!src.contains(source) || !dst.contains(target)) return false;
    if (map.in_domain(source) || map.in_range(target)) return false;
    // Position 0 is the new pair; every examined tuple must use it.
    std::vector<Index> domain{source};
    std::vector<Index> range{target};
    for (const auto& [a, b] : map.pairs) {
        domain.push_back(a);
        range.push_back(b);
    }
    std::vector<Index> positions(domain.size());
    for (Index i = 0; i < positions.size(); ++i) positions[i] = i;
    Tuple from, to;
    for (std::size_t sym = 0; sym < src.signature().size(); ++sym) {
        const auto& symbol = src.signature()[sym];
        auto check = [&](std::span<const Index> t) {
            if (std::find(t.begin(), t.end(), Index{0}) == t.end()) return true;
            from.assign(t.size(), 0);
            to.assign(t.size(), 0);
            for (std::size_t k = 0; k < t.size(); ++k) {
                from[k] = domain[t[k]];
                to[k] = range[t[k]];
            }
            return src.holds(sym, from) == dst.holds(sym, to);
        };
        bool ok = true;
        if (symbol.kind == SymbolKind::kSymmetricIrreflexive) {
            // Tuples through position 0: 0 plus an (arity-1)-subset of the rest.
            Tuple t(symbol.arity);
            t[0] = 0;
            ok = detail::for_each_combination(positions.size() - 1, symbol.arity - 1, [&](auto c) {
                for (std::size_t k = 0; k < c.size(); ++k) t[k + 1] = c[k] + 1;
                return check(t);
            });
        } else {
            ok = for_each_candidate_tuple(symbol, positions, check);
        }
        if (!ok) return false;
    }
    return true;
}

namespace {

class ReductOracle final : public Oracle {
public:
    ReductOracle(CountableStructure base, std::vector<std::size_t> kept)
        : base_(std::move(base)), kept_(std::move(kept)) {}
    bool holds(std::size_t symbol, std::span<const Index> tuple) const override {
        return base_.holds(kept_[symbol], tuple);
    }

private:
    CountableStructure base_;
    std::vector<std::size_t> kept_;
};

}  // namespace

CountableStructure reduct(const CountableStructure& s, const std::vector<std::string>& keep) {
    std::vector<std::size_t> kept;
    for (const auto& name : keep) {
        auto i = s.signature().find(name);
        if (!i) throw InvalidInput("reduct to undeclared symbol " + name);
        kept.push_back(*i);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<Symbol> symbols;
    for (auto i : kept) symbols.push_back(s.signature()[i]);
    std::vector<std::vector<std::string>> groups;
    for (const auto& g : s.signature().edge_disjoint_groups()) {
        std::vector<std::string> sub;
        for (const auto& name : g)
            if (std::find(keep.begin(), keep.end(), name) != keep.end()) sub.push_back(name);
        if (sub.size() > 1) groups.push_back(std::move(sub));
    }
    std::vector<std::string> names;
    for (auto i : kept) names.push_back(s.signature()[i].name);
    Term provenance = s.provenance() ? term::reduct(s.provenance(), names) : nullptr;
    return CountableStructure(Signature(std::move(symbols), std::move(groups)), s.size(),
                              std::make_shared<ReductOracle>(s, std::move(kept)), std::move(provenance));
}

CountableStructure as_countable(const FiniteStructure& f, Term provenance) {
    return CountableStructure(f.signature(), f.size(), std::make_shared<FiniteOracle>(f),
                              std::move(provenance));
}

Outcome<PartialIsomorphism> age_member(const FiniteStructure& f, const CountableStructure& s,
                                       Index budget) {
    require_compatible(f.signature(), s.signature());
    const auto src = as_countable(f, nullptr);
    const Index n = s.count_below(budget);
    PartialIsomorphism map;
    // next[i] is the next candidate target to try for source i.
    std::vector<Index> next(f.size() + 1, 0);
    Index depth = 0;
    while (true) {
        if (depth == f.size()) return map;
        bool placed = false;
        for (Index w = next[depth]; w < n; ++w) {
            if (extends_partial_isomorphism(src, s, map, depth, w)) {
                map.insert(depth, w);
                next[depth] = w + 1;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++depth;
            next[depth] = 0;
            continue;
        }
        if (depth == 0)
            return Exhausted{"age_member", std::nullopt,
                             "no embedding into the prefix of size " + std::to_string(n), {}};
        --depth;
        map.pairs.erase(std::remove_if(map.pairs.begin(), map.pairs.end(),
                                       [&](const auto& p) { return p.first == depth; }),
                        map.pairs.end());
    }
}

}  // namespace symindiv
