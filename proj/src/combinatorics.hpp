#pragma once

#include "symindiv/errors.hpp"

#include <span>
#include <vector>

namespace symindiv::detail {

/// Calls fn(std::span<const std::size_t>) for every k-subset of {0..n-1} in
/// lexicographic order; stops early when fn returns false. Returns false iff stopped.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return true;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        if (!fn(std::span<const std::size_t>(c))) return false;
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

/// Calls fn for every length-k word over {0..n-1} (repetition allowed).
template <class Fn>
bool for_each_word(std::size_t n, std::size_t k, Fn&& fn) {
    if (n == 0 && k > 0) return true;
    std::vector<std::size_t> w(k, 0);
    while (true) {
        if (!fn(std::span<const std::size_t>(w))) return false;
        std::size_t i = k;
        while (i > 0 && w[i - 1] == n - 1) {
            w[i - 1] = 0;
            --i;
        }
        if (i == 0) return true;
        ++w[i - 1];
    }
}

/// Largest n with n(n+1)/2 <= v.
Index triangular_root(Index v);

/// Saturating binomial coefficient; returns `cap` when the true value is >= cap.
Index binomial_capped(Index n, Index k, Index cap);

}  // namespace symindiv::detail
