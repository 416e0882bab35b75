#include "symindiv/constructions.hpp"

#include "combinatorics.hpp"
#include "symindiv/generators.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace symindiv {

// ------------------------------------------------------------ enumerations

SideIndex split_interleaved(Index k, std::optional<Index> left, std::optional<Index> right) {
    if (!left && !right) return {k % 2 == 0 ? Side::kLeft : Side::kRight, k / 2};
    const Index shorter = std::min(left.value_or(UINT64_MAX), right.value_or(UINT64_MAX));
    if (k / 2 < shorter) return {k % 2 == 0 ? Side::kLeft : Side::kRight, k / 2};
    const bool left_longer = !left || (right && *left > *right);
    return {left_longer ? Side::kLeft : Side::kRight, shorter + (k - 2 * shorter)};
}

Index join_interleaved(SideIndex s, std::optional<Index> left, std::optional<Index> right) {
    const Index shorter = std::min(left.value_or(UINT64_MAX), right.value_or(UINT64_MAX));
    if (s.local < shorter || (!left && !right)) return 2 * s.local + static_cast<Index>(s.side);
    return 2 * shorter + (s.local - shorter);
}

Index cantor_pair(Index i, Index j) { return (i + j) * (i + j + 1) / 2 + j; }

std::pair<Index, Index> cantor_unpair(Index z) {
    Index w = detail::triangular_root(z);
    Index j = z - w * (w + 1) / 2;
    return {w - j, j};
}

Index lexq_pair(Index i, Index j, std::optional<Index> a_size) {
    if (!a_size) return cantor_pair(i, j);
    return i + *a_size * j;
}

std::pair<Index, Index> lexq_unpair(Index z, std::optional<Index> a_size) {
    if (!a_size) return cantor_unpair(z);
    return {z % *a_size, z / *a_size};
}

// --------------------------------------------------------------- gammastar

GammaStarClass gamma_star_classify(Index v) {
    Index n = detail::triangular_root(v);
    Index offset = v - n * (n + 1) / 2;
    if (offset == 0) return GammaVertex{n};
    return CliqueVertex{n, offset - 1};
}

Index gamma_star_index(const GammaStarClass& c) {
    if (auto g = std::get_if<GammaVertex>(&c)) return g->m * (g->m + 1) / 2;
    const auto& k = std::get<CliqueVertex>(c);
    if (k.n == 0 || k.slot >= k.n) throw InvalidInput("clique slot out of range");
    return k.n * (k.n + 1) / 2 + 1 + k.slot;
}

bool gamma_star_edge(Index u, Index v) {
    if (u == v) return false;
    auto cu = gamma_star_classify(u);
    auto cv = gamma_star_classify(v);
    auto gu = std::get_if<GammaVertex>(&cu);
    auto gv = std::get_if<GammaVertex>(&cv);
    if (gu && gv) return rado_edge(gu->m, gv->m);
    Index bu = gu ? gu->m : std::get<CliqueVertex>(cu).n;
    Index bv = gv ? gv->m : std::get<CliqueVertex>(cv).n;
    return bu == bv;
}

std::optional<Index> gamma_star_eventual_degree(Index v) {
    auto c = gamma_star_classify(v);
    if (auto k = std::get_if<CliqueVertex>(&c)) return k->n;
    return std::nullopt;
}

// ---------------------------------------------------------- henson closure

namespace {

// Number of slots in levels 1..L: L * 2^L.
unsigned __int128 slots_through(Index level) {
    return static_cast<unsigned __int128>(level) << level;
}

}  // namespace

WitnessSlot henson_slot(Index p) {
    Index level = 1;
    while (slots_through(level) <= p) ++level;
    Index k = p - static_cast<Index>(slots_through(level - 1));
    const Index half = Index{1} << (level - 1);
    if (k < half) return {k, level - 1};
    Index rest = k - half;
    return {half + rest / level, rest % level};
}

Index henson_slot_index(const WitnessSlot& w) {
    const Index bits = static_cast<Index>(std::bit_width(w.members));
    const Index level = std::max(bits, w.stage + 1);
    if (level > 57) throw InvalidInput("witness slot beyond the representable range");
    Index base = static_cast<Index>(slots_through(level - 1));
    const Index half = Index{1} << (level - 1);
    if (bits < level) return base + w.members;
    return base + half + (w.members - half) * level + w.stage;
}

HensonClass henson_classify(Index k, std::optional<Index> graph_size) {
    if (!graph_size || k < 2 * *graph_size) {
        if (k % 2 == 0) return HensonGraphVertex{k / 2};
        return henson_slot(k / 2);
    }
    return henson_slot(k - *graph_size);
}

Index henson_index(const HensonClass& c, std::optional<Index> graph_size) {
    if (auto g = std::get_if<HensonGraphVertex>(&c)) {
        if (graph_size && g->vertex >= *graph_size) throw InvalidInput("graph vertex outside G");
        return 2 * g->vertex;
    }
    Index p = henson_slot_index(std::get<WitnessSlot>(c));
    if (!graph_size || p < *graph_size) return 2 * p + 1;
    return p + *graph_size;
}

// ------------------------------------------------------------------- eval

namespace {

class FiniteOrderOracle final : public Oracle {
public:
    bool holds(std::size_t, std::span<const Index> t) const override { return t[0] < t[1]; }
};

class UnionOracle final : public Oracle {
public:
    UnionOracle(CountableStructure l, CountableStructure r) : l_(std::move(l)), r_(std::move(r)) {}
    bool holds(std::size_t symbol, std::span<const Index> t) const override {
        std::vector<Index> local(t.size());
        std::optional<Side> side;
        for (std::size_t k = 0; k < t.size(); ++k) {
            auto s = split_interleaved(t[k], l_.size(), r_.size());
            if (side && *side != s.side) return false;
            side = s.side;
            local[k] = s.local;
        }
        return (*side == Side::kLeft ? l_ : r_).holds(symbol, local);
    }

private:
    CountableStructure l_, r_;
};

class ConcatOracle final : public Oracle {
public:
    ConcatOracle(CountableStructure l, CountableStructure r) : l_(std::move(l)), r_(std::move(r)) {}
    bool holds(std::size_t, std::span<const Index> t) const override {
        auto a = split_interleaved(t[0], l_.size(), r_.size());
        auto b = split_interleaved(t[1], l_.size(), r_.size());
        if (a.side != b.side) return a.side == Side::kLeft;
        return (a.side == Side::kLeft ? l_ : r_).holds(0, {a.local, b.local});
    }

private:
    CountableStructure l_, r_;
};

class LexQOracle final : public Oracle {
public:
    explicit LexQOracle(CountableStructure a) : a_(std::move(a)) {}
    bool holds(std::size_t, std::span<const Index> t) const override {
        auto [i1, j1] = lexq_unpair(t[0], a_.size());
        auto [i2, j2] = lexq_unpair(t[1], a_.size());
        if (i1 != i2) return a_.holds(0, {i1, i2});
        return rationals_less(j1, j2);
    }

private:
    CountableStructure a_;
};

class GammaStarOracle final : public Oracle {
public:
    bool holds(std::size_t, std::span<const Index> t) const override { return gamma_star_edge(t[0], t[1]); }
};

class EndowOracle final : public Oracle {
public:
    explicit EndowOracle(CountableStructure base) : base_(std::move(base)) {}
    bool holds(std::size_t symbol, std::span<const Index> t) const override {
        if (symbol < base_.signature().size()) return base_.holds(symbol, t);
        return t[0] < t[1];
    }

private:
    CountableStructure base_;
};

class ForwardOracle final : public Oracle {
public:
    explicit ForwardOracle(CountableStructure base) : base_(std::move(base)) {}
    bool holds(std::size_t symbol, std::span<const Index> t) const override { return base_.holds(symbol, t); }

private:
    CountableStructure base_;
};

class HensonOracle final : public Oracle {
public:
    explicit HensonOracle(CountableStructure g) : g_(std::move(g)) {}
    bool holds(std::size_t, std::span<const Index> t) const override {
        const Index u = t[0], v = t[1];  // u < v
        auto cv = henson_classify(v, g_.size());
        if (auto w = std::get_if<WitnessSlot>(&cv)) return u < 64 && ((w->members >> u) & 1U) != 0;
        auto cu = henson_classify(u, g_.size());
        auto gu = std::get_if<HensonGraphVertex>(&cu);
        return gu && g_.holds(0, {gu->vertex, std::get<HensonGraphVertex>(cv).vertex});
    }

private:
    CountableStructure g_;
};

std::optional<Index> sum_sizes(std::optional<Index> a, std::optional<Index> b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

CountableStructure eval_at(const Term& t, const std::string& path);

CountableStructure eval_child(const Term& t, std::size_t i, const std::string& path) {
    return eval_at(t->children.at(i), path + "/" + kind_name(t->kind) + "." + std::to_string(i));
}

CountableStructure eval_at(const Term& t, const std::string& path) {
    if (!t) throw InvalidInput("null term", path.empty() ? "/" : path);
    const std::string here = path + "/" + kind_name(t->kind);
    switch (t->kind) {
        case TermKind::kRado:
            return make_generator(RadoSpec{});
        case TermKind::kRationals:
            return make_generator(RationalsSpec{});
        case TermKind::kGammaK:
            if (t->param < 1) throw InvalidInput("gammak requires k >= 1", here);
            return make_generator(GammaKSpec{t->param});
        case TermKind::kHyper:
            if (t->param < 2) throw InvalidInput("hyper requires n >= 2", here);
            return make_generator(HyperSpec{t->param});
        case TermKind::kFiniteGraph: {
            FiniteStructure f(Signature::graph("E"), t->param);
            for (const auto& [i, j] : t->edges) {
                if (i >= t->param || j >= t->param || i == j) throw InvalidInput("bad finite-graph edge", here);
                f.add(0, {i, j});
            }
            return as_countable(f, t);
        }
        case TermKind::kFiniteOrder:
            return {Signature::order("<"), t->param, std::make_shared<FiniteOrderOracle>(), t};
        case TermKind::kUnion: {
            auto l = eval_child(t, 0, path);
            auto r = eval_child(t, 1, path);
            if (!compatible(l.signature(), r.signature()))
                throw InvalidInput("union children have incompatible signatures", here);
            if (l.signature().has_order_symbol()) throw InvalidInput("union of ordered structures", here);
            auto size = sum_sizes(l.size(), r.size());
            auto sig = l.signature();
            return {sig, size, std::make_shared<UnionOracle>(std::move(l), std::move(r)), t};
        }
        case TermKind::kConcat: {
            auto l = eval_child(t, 0, path);
            auto r = eval_child(t, 1, path);
            if (!l.signature().is_order() || !r.signature().is_order())
                throw InvalidInput("concat needs linear orders on both sides", here);
            auto size = sum_sizes(l.size(), r.size());
            auto sig = l.signature();
            return {sig, size, std::make_shared<ConcatOracle>(std::move(l), std::move(r)), t};
        }
        case TermKind::kLexQ: {
            auto a = eval_child(t, 0, path);
            if (!a.signature().is_order()) throw InvalidInput("lexq needs a linear order", here);
            std::optional<Index> size;
            if (a.size() == Index{0}) size = 0;
            auto sig = a.signature();
            return {sig, size, std::make_shared<LexQOracle>(std::move(a)), t};
        }
        case TermKind::kGammaStar:
            return {Signature::graph("E"), std::nullopt, std::make_shared<GammaStarOracle>(), t};
        case TermKind::kEndow: {
            auto a = eval_child(t, 0, path);
            if (a.signature().find(kEndowSymbol)) throw InvalidInput("structure is already endowed", here);
            auto symbols = a.signature().symbols();
            symbols.push_back({kEndowSymbol, 2, SymbolKind::kStrictTotalOrder});
            Signature sig(std::move(symbols), a.signature().edge_disjoint_groups());
            auto size = a.size();
            return {std::move(sig), size, std::make_shared<EndowOracle>(std::move(a)), t};
        }
        case TermKind::kHenson: {
            auto g = eval_child(t, 0, path);
            if (!g.signature().is_graph()) throw InvalidInput("henson closure needs a graph", here);
            auto sig = g.signature();
            return {sig, std::nullopt, std::make_shared<HensonOracle>(std::move(g)), t};
        }
        case TermKind::kReduct: {
            auto a = eval_child(t, 0, path);
            for (const auto& s : t->symbols)
                if (!a.signature().find(s)) throw InvalidInput("reduct to undeclared symbol " + s, here);
            auto r = reduct(a, t->symbols);
            return {r.signature(), r.size(), std::make_shared<ForwardOracle>(r), t};
        }
        case TermKind::kEncodeGraph: {
            auto g = eval_child(t, 0, path);
            if (!g.signature().is_graph()) throw InvalidInput("encode-graph needs a graph", here);
            auto u = eval_at(term::disjoint_union(term::rado(), t->children[0]), here);
            return {u.signature(), u.size(), std::make_shared<ForwardOracle>(u), t};
        }
        case TermKind::kEncodeOrder: {
            auto a = eval_child(t, 0, path);
            if (!a.signature().is_order()) throw InvalidInput("encode-order needs a linear order", here);
            auto x = term::concat(term::rationals(), term::finite_order(1));
            auto xy = term::concat(x, term::finite_order(1));
            auto e = eval_at(term::concat(xy, t->children[0]), here);
            return {e.signature(), e.size(), std::make_shared<ForwardOracle>(e), t};
        }
    }
    throw InvalidInput("unknown term kind", here);
}

}  // namespace

CountableStructure eval(const Term& t) { return eval_at(t, ""); }

CountableStructure eval(std::string_view term_text) { return eval(parse_term(term_text)); }

// ---------------------------------------------------------------- decoders

nlohmann::ordered_json GraphCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["prefix_size"] = prefix_size;
    j["left_vertices"] = left_vertices;
    j["left_connected"] = left_connected;
    j["cross_edges"] = cross_edges;
    j["right_components"] = right_components;
    return j;
}

DecodedGraph decode_graph(const Term& t, Index budget) {
    Term g;
    if (t && t->kind == TermKind::kEncodeGraph) {
        g = t->children[0];
    } else if (t && t->kind == TermKind::kUnion && t->children[0]->kind == TermKind::kRado) {
        g = t->children[1];
    } else {
        throw NotAnEncoding("decode_graph expects encode-graph(g) or union(rado, g), got " + to_string(t));
    }
    const auto s = eval(t);
    const auto right = eval(g);
    const Index n = s.count_below(budget);

    GraphCertificate cert;
    cert.prefix_size = n;
    std::vector<SideIndex> where(n);
    for (Index k = 0; k < n; ++k) where[k] = split_interleaved(k, std::nullopt, right.size());

    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (Index u = 0; u < n; ++u)
        for (Index v = u + 1; v < n; ++v) {
            if (!s.holds(0, {u, v})) continue;
            if (where[u].side != where[v].side) {
                ++cert.cross_edges;
                continue;
            }
            parent[find(u)] = find(v);
        }

    std::map<Index, std::vector<Index>> right_parts;
    std::optional<Index> left_root;
    cert.left_connected = true;
    for (Index k = 0; k < n; ++k) {
        if (where[k].side == Side::kLeft) {
            ++cert.left_vertices;
            if (!left_root) left_root = find(k);
            else if (find(k) != *left_root) cert.left_connected = false;
        } else {
            right_parts[find(k)].push_back(where[k].local);
        }
    }
    for (auto& [root, members] : right_parts) cert.right_components.push_back(std::move(members));
    std::sort(cert.right_components.begin(), cert.right_components.end());

    if (cert.cross_edges != 0 || !cert.left_connected)
        throw InvalidInput("component certificate failed for " + to_string(t));
    return {g, std::move(cert)};
}

nlohmann::ordered_json OrderCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["x"] = x;
    j["y"] = y;
    j["examined"] = examined;
    j["gaps"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : gaps) j["gaps"].push_back({a, b});
    j["density"] = nlohmann::ordered_json::array();
    for (const auto& d : density) j["density"].push_back({d.low, d.between, d.high});
    return j;
}

Outcome<DecodedOrder> decode_order(const Term& t, Index budget) {
    const auto s = eval(t);
    if (!s.signature().is_order()) throw InvalidInput("decode_order needs a linear order, got " + to_string(t));
    const Index n = s.count_below(budget);
    const Index examined = std::min(n, std::max<Index>(2, budget / 8));

    std::vector<Index> sorted(examined);
    std::iota(sorted.begin(), sorted.end(), Index{0});
    std::sort(sorted.begin(), sorted.end(), [&](Index a, Index b) { return s.holds(0, {a, b}); });

    OrderCertificate cert;
    cert.examined = examined;
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
        const Index a = sorted[k], b = sorted[k + 1];
        std::optional<Index> between;
        for (Index w = 0; w < n && !between; ++w)
            if (s.holds(0, {a, w}) && s.holds(0, {w, b})) between = w;
        if (between)
            cert.density.push_back({a, b, *between});
        else
            cert.gaps.emplace_back(a, b);
    }
    if (cert.gaps.empty())
        return Exhausted{"decode_order", std::nullopt,
                         "no gap pair among the first " + std::to_string(examined) +
                             " elements; every examined pair has a density witness below " + std::to_string(n),
                         {}};
    cert.x = cert.gaps.front().first;
    cert.y = cert.gaps.front().second;

    DecodedOrder out;
    for (Index z = 0; z < n; ++z)
        if (s.holds(0, {cert.y, z})) out.indices.push_back(z);
    out.decoded = induced(s, out.indices);
    out.order = term::finite_order(out.indices.size());
    if (t->kind == TermKind::kEncodeOrder) {
        const auto expected = prefix(eval(t->children[0]), out.indices.size());
        const bool match = expected.size() == out.decoded.size() && expected.tuples(0) == out.decoded.tuples(0);
        out.provenance_match = match;
        if (match) out.order = t->children[0];
    }
    out.certificate = std::move(cert);
    return out;
}

}  // namespace symindiv
