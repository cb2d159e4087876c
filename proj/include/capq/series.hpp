/*
 * series.hpp
 * ----------
 * Closed-form and recurrence-based builders for every generating function in
 * the library:
 *
 *   p_closed / p_recursive   the bounded refined series P_{m,K}(i,j,q), as a
 *                            q-trinomial product formula and as the solution
 *                            of four cross-coupled recurrences
 *   psi                      Psi_{m,K}(a,b,q) = sum_{i,j} P_{m,K}(i,j,q) a^i b^j
 *   g_recursive              G_{m,K}(a,b,q) from its three recurrences and
 *                            four initial values
 *   g_closed_3Nm2 / 3N / 3Nm1, s_poly, t_poly
 *                            polynomial representations of G on each residue
 *                            of the index mod 3
 *   divisibility_check       quotient of the (1 + bq)-divisible combination
 *                            of G values; equals G_{m,3(N-1)}
 *   boulet_lhs / boulet_rhs  the two sides of the alternating double-sum
 *                            identity at base q^2
 *
 * Everything is exact; the only division anywhere is exact_div with a loud
 * failure on a nonzero remainder.
 */
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "capq/qcomb.hpp"
#include "capq/qpoly.hpp"

namespace capq {

namespace detail {

inline std::int64_t binom2(std::int64_t x) { return x >= 2 ? x * (x - 1) / 2 : 0; }

inline int floor_div(int num, int den) {
    int quot = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --quot;
    return quot;
}

inline const QPoly& require_poly_in_q(const QPoly& p, const char* who) {
    if (p.has_negative_q_exponent())
        throw std::logic_error(std::string(who) + ": negative q exponent in result");
    return p;
}

inline void require_m(int m, const char* who) {
    if (m != 1 && m != 2) throw std::invalid_argument(std::string(who) + ": m must be 1 or 2");
}

}  // namespace detail

// (3i + (-1)^m m) i + (3j + (-1)^{m+1} m) j, the minimal norm of a member
// with residue statistics (i, j).
inline std::int64_t omega(int m, int i, int j) {
    detail::require_m(m, "omega");
    const int s = m == 1 ? -1 : 1;
    return (3LL * i + s * m) * i + (3LL * j - s * m) * j;
}

// P_{m,K}(i,j,q).  Even index K = 2N:
//   q^omega [N; i, j]_{q^6} (-q^3; q^3)_{N-i-j}
// Odd index K = 2N+1: the same shape at N+1 carries the extra factor
//   (1 - q^{3(N+1+(-1)^{m+1} i+(-1)^m j)}) / (1 - q^{6(N+1)}),
// assembled as an exact division of the numerator polynomial.  The roles of
// i and j in the exponent swap between m = 1 and m = 2, mirroring the swap
// of the extracted residue class in the odd-step recurrences; the
// triple-route equality tests pin the signs down.
inline QPoly p_closed(int m, int K, int i, int j) {
    detail::require_m(m, "p_closed");
    if (K < 0) throw std::invalid_argument("p_closed: negative index");
    if (i < 0 || j < 0) return QPoly();

    const QPoly minus_q3 = QPoly::term(-1, 0, 0, 3);
    QPoly result;
    if (K % 2 == 0) {
        const int N = K / 2;
        const QPoly tri = q_trinomial(N, i, j, 6);
        if (tri.is_zero()) return QPoly();
        result = QPoly::q(omega(m, i, j)) * tri * poch(minus_q3, 3, N - i - j);
    } else {
        const int N = (K - 1) / 2;
        const QPoly tri = q_trinomial(N + 1, i, j, 6);
        if (tri.is_zero()) return QPoly();
        const std::int64_t e = 3LL * (N + 1 + (m == 1 ? i - j : j - i));
        const QPoly numerator = QPoly::q(omega(m, i, j)) * (QPoly(1) - QPoly::q(e)) * tri *
                                poch(minus_q3, 3, N + 1 - i - j);
        result = numerator.exact_div(QPoly(1) - QPoly::q(6LL * (N + 1)));
    }
    return detail::require_poly_in_q(result, "p_closed");
}

// P_{m,K}(i,j,q) from the recurrences alone.  With K = 2N (+1/+2 as needed):
//   P_{1,2N+1}(i,j) = P_{1,2N}(i,j) + [i>0] q^{3N+2} P_{2,2N}(i-1,j)
//   P_{1,2N+2}(i,j) = P_{1,2N+1}(i,j) + q^{3(N+1)} P_{2,2N+1}(i,j)
//   P_{2,2N+1}(i,j) = P_{2,2N}(i,j) + [j>0] q^{3N+1} P_{1,2N}(i,j-1)
//   P_{2,2N+2}(i,j) = P_{2,2N+1}(i,j) + q^{3(N+1)} P_{1,2N+1}(i,j)
// and P_{m,0}(i,j) = [i=0][j=0].  The guards are [i>0]/[j>0]: the recurrence
// peels a largest part congruent to 2 (resp. 1) mod 3, which exists exactly
// when the corresponding count is positive.
inline QPoly p_recursive(int m, int K, int i, int j) {
    detail::require_m(m, "p_recursive");
    if (K < 0) throw std::invalid_argument("p_recursive: negative index");
    if (i < 0 || j < 0) return QPoly();
    if (K == 0) return i == 0 && j == 0 ? QPoly(1) : QPoly();

    static std::map<std::tuple<int, int, int, int>, QPoly> cache;
    static std::mutex cache_mutex;
    const auto key = std::tuple(m, K, i, j);
    {
        std::scoped_lock lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    QPoly value;
    if (K % 2 == 1) {
        const int N = (K - 1) / 2;
        if (m == 1) {
            value = p_recursive(1, 2 * N, i, j);
            if (i > 0) value += QPoly::q(3LL * N + 2) * p_recursive(2, 2 * N, i - 1, j);
        } else {
            value = p_recursive(2, 2 * N, i, j);
            if (j > 0) value += QPoly::q(3LL * N + 1) * p_recursive(1, 2 * N, i, j - 1);
        }
    } else {
        const int N = (K - 2) / 2;
        const int other = 3 - m;
        value = p_recursive(m, 2 * N + 1, i, j) +
                QPoly::q(3LL * (N + 1)) * p_recursive(other, 2 * N + 1, i, j);
    }
    std::scoped_lock lock(cache_mutex);
    return cache.try_emplace(key, std::move(value)).first->second;
}

// Psi_{m,K}(a,b,q) = sum_{i,j} P_{m,K}(i,j,q) a^i b^j.  The sum is finitely
// supported: the trinomial factor kills i + j beyond ceil(K/2) + 1, so the
// default bounds are already exact.
inline QPoly psi(int m, int K, int i_max = -1, int j_max = -1) {
    detail::require_m(m, "psi");
    if (K < 0) throw std::invalid_argument("psi: negative index");
    if (i_max < 0) i_max = K / 2 + 1;
    if (j_max < 0) j_max = K / 2 + 1;
    QPoly out;
    for (int i = 0; i <= i_max; ++i)
        for (int j = 0; j <= j_max; ++j) {
            const QPoly p = p_closed(m, K, i, j);
            if (!p.is_zero()) out += QPoly::term(1, i, j, 0) * p;
        }
    return detail::require_poly_in_q(out, "psi");
}

// G_{m,K}(a,b,q) by the recurrence matching K mod 3:
//   G_{m,3N}   = G_{m,3(N-1)+2} + q^{3N} G_{m,3(N-1)}
//   G_{m,3N+1} = G_{m,3N} + b q^{3N+1} G_{m,3(N-1)} + a b q^{6N} G_{m,3(N-2)+1}
//   G_{m,3N+2} = G_{m,3N+1} + a q^{3N+2} G_{m,3(N-1)+1}
// with G_{m,-2} = [m=1], G_{m,-1} = G_{m,0} = 1, G_{m,1} = 1 + [m=2] b q.
inline QPoly g_recursive(int m, int K) {
    detail::require_m(m, "g_recursive");
    if (K < -2) throw std::invalid_argument("g_recursive: index below -2");
    if (K == -2) return m == 1 ? QPoly(1) : QPoly();
    if (K == -1 || K == 0) return QPoly(1);
    if (K == 1) return m == 2 ? QPoly(1) + QPoly::b() * QPoly::q() : QPoly(1);

    static std::map<std::pair<int, int>, QPoly> cache;
    static std::mutex cache_mutex;
    const auto key = std::pair(m, K);
    {
        std::scoped_lock lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    QPoly value;
    if (K % 3 == 0) {
        const int N = K / 3;
        value = g_recursive(m, 3 * (N - 1) + 2) + QPoly::q(3LL * N) * g_recursive(m, 3 * (N - 1));
    } else if (K % 3 == 1) {
        const int N = (K - 1) / 3;
        value = g_recursive(m, 3 * N) +
                QPoly::b() * QPoly::q(3LL * N + 1) * g_recursive(m, 3 * (N - 1)) +
                QPoly::a() * QPoly::b() * QPoly::q(6LL * N) * g_recursive(m, 3 * (N - 2) + 1);
    } else {
        const int N = (K - 2) / 3;
        value = g_recursive(m, 3 * N + 1) +
                QPoly::a() * QPoly::q(3LL * N + 2) * g_recursive(m, 3 * (N - 1) + 1);
    }
    std::scoped_lock lock(cache_mutex);
    return cache.try_emplace(key, std::move(value)).first->second;
}

// Polynomial representation of G_{m,3N-2}.  For m = 1:
//   sum_{l=0}^{floor(N/2)} (q^3)^{C(N-2l,2)} [N; 2l]_{q^3} (-aq^2,-bq^4; q^6)_l.
// For m = 2:
//   sum_{l=0}^{floor((N-1)/2)} (q^3)^{C(N-2l-1,2)} [N; 2l+1]_{q^3}
//                              (-aq^5; q^6)_l (-bq; q^6)_{l+1},
// whose l = 0 term anchors the series at the index-1 value 1 + bq.  Both
// sums hold for every N >= 0, reaching the initial values at N = 0; the
// route-equality tests against the recurrence pin the shapes down.
inline QPoly g_closed_3Nm2(int m, int N) {
    detail::require_m(m, "g_closed_3Nm2");
    if (N < 0) throw std::invalid_argument("g_closed_3Nm2: negative N");
    QPoly out;
    if (m == 1) {
        const QPoly ta = QPoly::term(-1, 1, 0, 2);  // -a q^2
        const QPoly tb = QPoly::term(-1, 0, 1, 4);  // -b q^4
        for (int l = 0; 2 * l <= N; ++l)
            out += QPoly::q(3 * detail::binom2(N - 2 * l)) * gauss_binomial(N, 2 * l, 3) *
                   poch(ta, 6, l) * poch(tb, 6, l);
    } else {
        const QPoly ta = QPoly::term(-1, 1, 0, 5);  // -a q^5
        const QPoly tb = QPoly::term(-1, 0, 1, 1);  // -b q
        for (int l = 0; l <= detail::floor_div(N - 1, 2); ++l)
            out += QPoly::q(3 * detail::binom2(N - 2 * l - 1)) *
                   gauss_binomial(N, 2 * l + 1, 3) * poch(ta, 6, l) * poch(tb, 6, l + 1);
    }
    return detail::require_poly_in_q(out, "g_closed_3Nm2");
}

inline QPoly s_poly(int N) {
    if (N < 0) throw std::invalid_argument("s_poly: negative N");
    const QPoly ta = QPoly::term(-1, 1, 0, 2);
    const QPoly tb = QPoly::term(-1, 0, 1, 4);
    QPoly out;
    for (int l = 0; 2 * l <= N; ++l)
        out += QPoly::q(3 * detail::binom2(N - 2 * l)) * gauss_binomial(N + 1, 2 * l + 1, 3) *
               poch(ta, 6, l) * poch(tb, 6, l);
    return detail::require_poly_in_q(out, "s_poly");
}

inline QPoly t_poly(int N) {
    if (N < 0) throw std::invalid_argument("t_poly: negative N");
    const QPoly ta = QPoly::term(-1, 1, 0, 5);
    const QPoly tb = QPoly::term(-1, 0, 1, 1);
    QPoly out;
    for (int l = 0; 2 * l <= N; ++l)
        out += QPoly::q(3 * detail::binom2(N - 2 * l)) * gauss_binomial(N + 1, 2 * l + 1, 3) *
               poch(ta, 6, l) * poch(tb, 6, l);
    return detail::require_poly_in_q(out, "t_poly");
}

// G_{1,3N} = S(N) + a q^{3N-1} S(N-1);  G_{2,3N} = T(N) + b q^{3N-2} T(N-1).
inline QPoly g_closed_3N(int m, int N) {
    detail::require_m(m, "g_closed_3N");
    if (N < 1) throw std::invalid_argument("g_closed_3N: N must be positive");
    QPoly out;
    if (m == 1)
        out = s_poly(N) + QPoly::a() * QPoly::q(3LL * N - 1) * s_poly(N - 1);
    else
        out = t_poly(N) + QPoly::b() * QPoly::q(3LL * N - 2) * t_poly(N - 1);
    return detail::require_poly_in_q(out, "g_closed_3N");
}

// G_{m,3N-1} assembled from the index-(3N-2) representations through
// G_{m,3N-1} = G_{m,3N-2} + a q^{3N-1} G_{m,3N-5}.
inline QPoly g_closed_3Nm1(int m, int N) {
    detail::require_m(m, "g_closed_3Nm1");
    if (N < 1) throw std::invalid_argument("g_closed_3Nm1: N must be positive");
    const QPoly out =
        g_closed_3Nm2(m, N) + QPoly::a() * QPoly::q(3LL * N - 1) * g_closed_3Nm2(m, N - 1);
    return detail::require_poly_in_q(out, "g_closed_3Nm1");
}

// The combination of G values divisible by 1 + bq.  With M = N - 1,
//   (1+bq) G_{m,3M} = G_{m,3M+1} + bq G_{m,3(M-1)+1} + abq^{3M}(1-q^{3M}) G_{m,3(M-2)+1},
// an identity that follows from the three G recurrences.  The quotient
// returned here is therefore G_{m,3(N-1)}; a nonzero remainder would
// falsify the divisibility claim and surfaces as NotDivisibleError.
inline QPoly divisibility_check(int m, int N) {
    detail::require_m(m, "divisibility_check");
    if (N < 2) throw std::invalid_argument("divisibility_check: N must be at least 2");
    const int M = N - 1;
    const QPoly numerator =
        g_recursive(m, 3 * M + 1) + QPoly::b() * QPoly::q() * g_recursive(m, 3 * M - 2) +
        QPoly::a() * QPoly::b() * QPoly::q(3LL * M) * (QPoly(1) - QPoly::q(3LL * M)) *
            g_recursive(m, 3 * M - 5);
    const QPoly quotient = numerator.exact_div(QPoly(1) + QPoly::b() * QPoly::q());
    return detail::require_poly_in_q(quotient, "divisibility_check");
}

// Left side of the double-sum identity at base q^2:
//   sum_{l=0}^{N} sum_{k=0}^{l} (-1)^k [N;l] [N-l;i-k] [N-l;j-k] [l;k] q^W,
//   W = 3k^2 + 2(N-i-j-l)k + l.
// Individual summands may carry negative powers of q; they cancel in the
// total, which the comparison against boulet_rhs checks.
inline QPoly boulet_lhs(int N, int i, int j) {
    if (N < 0 || i < 0 || j < 0) throw std::invalid_argument("boulet_lhs: negative argument");
    QPoly out;
    for (int l = 0; l <= N; ++l) {
        for (int k = 0; k <= l; ++k) {
            const QPoly product = gauss_binomial(N, l, 2) * gauss_binomial(N - l, i - k, 2) *
                                  gauss_binomial(N - l, j - k, 2) * gauss_binomial(l, k, 2);
            if (product.is_zero()) continue;
            const std::int64_t W =
                3LL * k * k + 2LL * (N - i - j - static_cast<std::int64_t>(l)) * k + l;
            const QPoly weighted = QPoly::q(W) * product;
            if (k % 2 == 0) out += weighted;
            else out -= weighted;
        }
    }
    return out;
}

// Right side: (-q; q)_{N-i-j} [N; i, j]_{q^2}; zero whenever the trinomial
// convention collapses the product.
inline QPoly boulet_rhs(int N, int i, int j) {
    if (N < 0 || i < 0 || j < 0) throw std::invalid_argument("boulet_rhs: negative argument");
    const QPoly tri = q_trinomial(N, i, j, 2);
    if (tri.is_zero()) return tri;
    return poch(QPoly::term(-1, 0, 0, 1), 1, N - i - j) * tri;
}

}  // namespace capq
