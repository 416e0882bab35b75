#include "symindiv/generators.hpp"

#include "combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace symindiv {

std::string to_string(const Rational& q) {
    if (q.den == 1) return std::to_string(q.num);
    return std::to_string(q.num) + "/" + std::to_string(q.den);
}

bool rado_edge(Index i, Index j) {
    if (i == j) return false;
    const Index a = std::min(i, j);
    Index b = std::max(i, j);
    return a < 64 && ((b >> a) & 1U) != 0;
}

Rational calkin_wilf(Index i) {
    // Breadth-first position i+1 in the Calkin-Wilf tree: walk the bits below
    // the leading one; 0 goes to a/(a+b), 1 goes to (a+b)/b.
    unsigned __int128 node = static_cast<unsigned __int128>(i) + 1;
    int depth = 0;
    while ((node >> (depth + 1)) != 0) ++depth;
    std::int64_t a = 1, b = 1;
    for (int bit = depth - 1; bit >= 0; --bit) {
        if ((node >> bit) & 1U)
            a += b;
        else
            b += a;
    }
    return {a, b};
}

Rational rationals_value(Index i) {
    auto [p, q] = calkin_wilf(i);
    if (p >= q) return {p - q, q};
    return {p - q, p};
}

Index rationals_index(const Rational& q) {
    // Invert the order isomorphism, then walk the Calkin-Wilf tree upwards.
    std::int64_t a, b;
    if (q.num >= 0) {
        a = q.num + q.den;
        b = q.den;
    } else {
        a = q.den;
        b = q.den - q.num;
    }
    unsigned __int128 node = 1;
    int depth = 0;
    unsigned __int128 path = 0;
    while (!(a == 1 && b == 1)) {
        if (a > b) {
            path |= static_cast<unsigned __int128>(1) << depth;
            a -= b;
        } else {
            b -= a;
        }
        ++depth;
        if (depth > 120) throw InvalidInput("rational " + to_string(q) + " too deep to index");
    }
    for (int bit = depth - 1; bit >= 0; --bit) node = (node << 1) | ((path >> bit) & 1U);
    if (node - 1 > UINT64_MAX) throw InvalidInput("rational " + to_string(q) + " too deep to index");
    return static_cast<Index>(node - 1);
}

bool rationals_less(Index i, Index j) {
    return rationals_value(i) < rationals_value(j);
}

Index gamma_k_color(Index k, Index i, Index j) {
    if (k < 1) throw InvalidInput("gamma_k requires k >= 1");
    if (i == j) return 0;
    const Index a = std::min(i, j);
    Index b = std::max(i, j);
    const Index base = k + 1;
    for (Index d = 0; d < a; ++d) {
        b /= base;
        if (b == 0) return 0;
    }
    return b % base;
}

Index colex_rank(std::span<const Index> sorted_subset, Index cap) {
    Index rank = 0;
    for (std::size_t i = 0; i < sorted_subset.size(); ++i) {
        Index c = detail::binomial_capped(sorted_subset[i], i + 1, cap);
        if (c >= cap - rank) return cap;
        rank += c;
    }
    return rank;
}

bool hyper_edge(Index n, std::span<const Index> indices) {
    if (indices.size() != n) throw InvalidInput("hyperedge query needs exactly n indices");
    std::vector<Index> s(indices.begin(), indices.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InvalidInput("hyperedge query has repeated indices");
    const Index b = s.back();
    const Index r = colex_rank(std::span<const Index>(s).first(s.size() - 1), 64);
    return r < 64 && ((b >> r) & 1U) != 0;
}

namespace {

class RadoOracle final : public Oracle {
public:
    bool holds(std::size_t, std::span<const Index> t) const override { return rado_edge(t[0], t[1]); }
};

class RationalsOracle final : public Oracle {
public:
    bool holds(std::size_t, std::span<const Index> t) const override { return rationals_less(t[0], t[1]); }
};

class GammaKOracle final : public Oracle {
public:
    explicit GammaKOracle(Index k) : k_(k) {}
    bool holds(std::size_t symbol, std::span<const Index> t) const override {
        return gamma_k_color(k_, t[0], t[1]) == symbol + 1;
    }

private:
    Index k_;
};

class HyperOracle final : public Oracle {
public:
    explicit HyperOracle(Index n) : n_(n) {}
    bool holds(std::size_t, std::span<const Index> t) const override { return hyper_edge(n_, t); }

private:
    Index n_;
};

}  // namespace

CountableStructure make_generator(const GeneratorSpec& spec) {
    struct Visitor {
        CountableStructure operator()(RadoSpec) const {
            return {Signature::graph("E"), std::nullopt, std::make_shared<RadoOracle>(), term::rado()};
        }
        CountableStructure operator()(RationalsSpec) const {
            return {Signature::order("<"), std::nullopt, std::make_shared<RationalsOracle>(),
                    term::rationals()};
        }
        CountableStructure operator()(GammaKSpec g) const {
            if (g.k < 1) throw InvalidInput("gamma_k requires a finite k >= 1");
            std::vector<Symbol> symbols;
            std::vector<std::string> group;
            for (Index d = 1; d <= g.k; ++d) {
                symbols.push_back({"R" + std::to_string(d), 2, SymbolKind::kSymmetricIrreflexive});
                group.push_back(symbols.back().name);
            }
            std::vector<std::vector<std::string>> groups;
            if (group.size() > 1) groups.push_back(group);
            return {Signature(std::move(symbols), std::move(groups)), std::nullopt,
                    std::make_shared<GammaKOracle>(g.k), term::gamma_k(g.k)};
        }
        CountableStructure operator()(HyperSpec h) const {
            if (h.n < 2) throw InvalidInput("hypergraph arity must be >= 2");
            return {Signature({Symbol{"H", static_cast<std::size_t>(h.n), SymbolKind::kSymmetricIrreflexive}}),
                    std::nullopt, std::make_shared<HyperOracle>(h.n), term::hyper(h.n)};
        }
    };
    return std::visit(Visitor{}, spec);
}

}  // namespace symindiv
