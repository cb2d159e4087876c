/*
 * qcomb.hpp
 * ---------
 * q-combinatorial primitives built on QPoly: finite Pochhammer products,
 * Gaussian binomial and trinomial coefficients in a power of q, and the
 * degree-truncated triple infinite product that both families of generating
 * functions converge to.
 */
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "capq/qpoly.hpp"

namespace capq {

// prod_{n=0}^{L-1} (1 - t q^{d n}); pass t = -q^3, d = 3 for (-q^3;q^3)_L,
// t = -a q^2, d = 6 for (-a q^2;q^6)_L, and so on.
inline QPoly poch(const QPoly& t, int d, int L) {
    if (L < 0) throw std::invalid_argument("poch: negative length");
    QPoly out = 1;
    for (int n = 0; n < L; ++n)
        out *= QPoly(1) - t * QPoly::q(static_cast<std::int64_t>(d) * n);
    return out;
}

// Gaussian binomial [k; n] in the variable q^e, zero outside k >= n >= 0.
// Computed by the Pascal recurrence [k;n] = [k-1;n] + q^{e(k-n)} [k-1;n-1]
// with memoization; the factorial-quotient route stays available as an
// independent cross-check through exact_div.
inline QPoly gauss_binomial(int k, int n, int e) {
    if (e <= 0) throw std::invalid_argument("gauss_binomial: base exponent must be positive");
    if (n < 0 || k < n) return QPoly();
    if (n == 0 || n == k) return QPoly(1);

    static std::map<std::tuple<int, int, int>, QPoly> cache;
    static std::mutex cache_mutex;
    const auto key = std::tuple(k, n, e);
    {
        std::scoped_lock lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    QPoly value = gauss_binomial(k - 1, n, e) +
                  QPoly::q(static_cast<std::int64_t>(e) * (k - n)) * gauss_binomial(k - 1, n - 1, e);
    std::scoped_lock lock(cache_mutex);
    return cache.try_emplace(key, std::move(value)).first->second;
}

// [k; n, r] = [k; n] [k-n; r], zero unless k >= n + r >= n >= 0.
inline QPoly q_trinomial(int k, int n, int r, int e) {
    const QPoly first = gauss_binomial(k, n, e);
    if (first.is_zero()) return first;
    return first * gauss_binomial(k - n, r, e);
}

// The triple product (-a q^{x_m}, -b q^{y_m}; q^6)_inf (-q^3; q^3)_inf with
// (x_1, y_1) = (2, 4) and (x_2, y_2) = (5, 1), truncated to q-degree <= D.
// Factors whose minimum degree exceeds D are omitted.
inline QPoly truncated_limit_product(int m, std::int64_t D) {
    if (m != 1 && m != 2) throw std::invalid_argument("truncated_limit_product: m must be 1 or 2");
    if (D < 0) throw std::invalid_argument("truncated_limit_product: negative degree bound");
    const std::int64_t a_base = m == 1 ? 2 : 5;
    const std::int64_t b_base = m == 1 ? 4 : 1;

    QPoly out = 1;
    for (std::int64_t e = a_base; e <= D; e += 6)
        out = (out * (QPoly(1) + QPoly::a() * QPoly::q(e))).truncate_q(D);
    for (std::int64_t e = b_base; e <= D; e += 6)
        out = (out * (QPoly(1) + QPoly::b() * QPoly::q(e))).truncate_q(D);
    for (std::int64_t e = 3; e <= D; e += 3)
        out = (out * (QPoly(1) + QPoly::q(e))).truncate_q(D);
    return out;
}

}  // namespace capq
