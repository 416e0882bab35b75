#pragma once

// Decidable presentations of the base structures.
//
//   Rado graph     BIT graph: for a < b, {a, b} is an edge iff bit a of b is 1.
//   (Q, <)         Calkin-Wilf sequence, mapped onto all of Q by the
//                  order isomorphism x -> x - 1 (x >= 1), 1 - 1/x (x < 1).
//   Gamma_k        for a < b, {a, b} has colour digit_a(b) in base k+1 (0 = no edge).
//   n-hypergraph   {r_1 < ... < r_{n-1} < b} is an edge iff bit colex_rank(r) of b is 1.

#include "symindiv/core.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

namespace symindiv {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // always > 0, gcd(num, den) = 1

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        auto l = static_cast<__int128>(a.num) * b.den;
        auto r = static_cast<__int128>(b.num) * a.den;
        return l <=> r;
    }
};

std::string to_string(const Rational& q);

bool rado_edge(Index i, Index j);

/// i-th term of the Calkin-Wilf sequence: 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...
Rational calkin_wilf(Index i);
Rational rationals_value(Index i);
/// Least index whose value is q.
Index rationals_index(const Rational& q);
bool rationals_less(Index i, Index j);

/// Colour in {0..k}; 0 means non-edge.
Index gamma_k_color(Index k, Index i, Index j);

/// Rank of a strictly increasing set among equal-size subsets in colex order
/// (combinatorial number system). Saturates at `cap`.
Index colex_rank(std::span<const Index> sorted_subset, Index cap = UINT64_MAX);

/// Throws InvalidInput on repeated indices or |indices| != n.
bool hyper_edge(Index n, std::span<const Index> indices);

struct RadoSpec {};
struct RationalsSpec {};
struct GammaKSpec {
    Index k = 1;
};
struct HyperSpec {
    Index n = 2;
};
using GeneratorSpec = std::variant<RadoSpec, RationalsSpec, GammaKSpec, HyperSpec>;

/// Throws InvalidInput for k < 1 or n < 2.
CountableStructure make_generator(const GeneratorSpec& spec);

}  // namespace symindiv
