#include <catch2/catch_amalgamated.hpp>

#include <thread>
#include <vector>

#include "capq/partitions.hpp"
#include "capq/series.hpp"

using namespace capq;

namespace {

QPoly parse(const char* text) { return QPoly::from_text(text); }

QPoly strip_ab(const QPoly& p) {
    QPoly out;
    for (const auto& [m, c] : p.terms())
        if (m.ea == 0 && m.eb == 0) out += QPoly::term(c, 0, 0, m.eq);
    return out;
}

}  // namespace

TEST_CASE("omega") {
    CHECK(omega(1, 1, 0) == 2);
    CHECK(omega(1, 0, 1) == 4);
    CHECK(omega(2, 1, 0) == 5);
    CHECK(omega(2, 0, 1) == 1);
    CHECK(omega(1, 2, 1) == 14);
    SECTION("nonnegative over the tested grid") {
        for (int m : {1, 2})
            for (int i = 0; i <= 20; ++i)
                for (int j = 0; j <= 20; ++j) CHECK(omega(m, i, j) >= 0);
    }
}

TEST_CASE("p_closed small values") {
    for (int m : {1, 2}) CHECK(p_closed(m, 0, 0, 0) == QPoly(1));
    CHECK(p_closed(1, 0, 1, 0) == QPoly());
    CHECK(p_closed(1, 2, 0, 0) == parse("1 + q^3"));
    CHECK(p_closed(1, 2, 0, 0) == oracle_genfun_ij(PartitionClass::P(1, 2), 0, 0));
    CHECK(p_closed(1, 2, 1, 1) == QPoly());  // trinomial collapses
    CHECK(p_closed(2, 1, 0, 1) == parse("q"));
    CHECK(p_closed(1, 3, 1, 0) == parse("q^2 + q^5 + q^8"));
    // the odd-index prefactor swaps the roles of i and j at m = 2
    CHECK(p_closed(2, 3, 1, 0) == parse("q^5"));
    CHECK(p_closed(2, 3, 0, 1) == parse("q + q^4 + q^7"));
    CHECK(p_closed(2, 3, 1, 1) == parse("q^6"));
}

TEST_CASE("p_recursive small values") {
    for (int m : {1, 2}) CHECK(p_recursive(m, 0, 0, 0) == QPoly(1));
    CHECK(p_recursive(1, 1, 0, 0) == QPoly(1));  // guard kills the second term
    CHECK(p_recursive(1, 1, 1, 0) == parse("q^2"));
    CHECK(p_recursive(2, 1, 0, 1) == parse("q"));
}

TEST_CASE("triple-route equality on a desk sweep") {
    for (int m : {1, 2}) {
        for (int K = 0; K <= 8; ++K) {
            const auto buckets = oracle_genfun_by_stats(PartitionClass::P(m, K));
            for (int i = 0; i <= 4; ++i) {
                for (int j = 0; j <= 4; ++j) {
                    const QPoly closed = p_closed(m, K, i, j);
                    const QPoly recursive = p_recursive(m, K, i, j);
                    const auto it = buckets.find({i, j});
                    const QPoly oracle = it == buckets.end() ? QPoly() : it->second;
                    CHECK(closed == recursive);
                    CHECK(closed == oracle);
                }
            }
        }
    }
}

TEST_CASE("psi") {
    for (int m : {1, 2}) CHECK(psi(m, 0) == QPoly(1));
    CHECK(psi(2, 1) == parse("1 + b*q"));
    CHECK(psi(1, 2) == parse("1 + a*q^2 + q^3 + b*q^4"));
    CHECK(psi(1, 2) == oracle_genfun(PartitionClass::P(1, 2)));
    CHECK(psi(2, 3) == parse("1 + b*q + q^3 + b*q^4 + a*q^5 + a*b*q^6 + b*q^7 + b^2*q^8"));
    CHECK(psi(2, 3) == oracle_genfun(PartitionClass::P(2, 3)));

    SECTION("a = b = 1 recovers the bounded class counts") {
        for (int m : {1, 2}) {
            const QPoly collapsed = psi(m, 7).set_ab_one();
            for (std::int64_t n = 0; n <= 12; ++n)
                CHECK(collapsed.coeff(Monomial{0, 0, n}) ==
                      BigInt(enumerate(PartitionClass::P(m, 7), n).size()));
        }
    }
}

TEST_CASE("g_recursive initial band and frozen values") {
    CHECK(g_recursive(1, -2) == QPoly(1));
    CHECK(g_recursive(2, -2) == QPoly());
    for (int m : {1, 2}) {
        CHECK(g_recursive(m, -1) == QPoly(1));
        CHECK(g_recursive(m, 0) == QPoly(1));
    }
    CHECK(g_recursive(1, 1) == QPoly(1));
    CHECK(g_recursive(2, 1) == parse("1 + b*q"));

    CHECK(g_recursive(1, 4) == parse("1 + a*q^2 + q^3 + b*q^4 + a*b*q^6"));
    CHECK(g_recursive(1, 6) ==
          parse("1 + a*q^2 + q^3 + b*q^4 + a*q^5 + q^6 + a*b*q^6 + a*q^8 + q^9"));
    CHECK(g_recursive(2, 7) ==
          parse("1 + b*q + q^3 + b*q^4 + a*q^5 + q^6 + a*b*q^6 + 2*b*q^7 + b^2*q^8 + q^9 + "
                "b*q^10 + a*b*q^12 + a*b^2*q^13"));
    CHECK_THROWS_AS(g_recursive(1, -3), std::invalid_argument);
}

TEST_CASE("g_recursive equals the enumeration oracle") {
    for (int m : {1, 2})
        for (int K = 0; K <= 15; ++K)
            CHECK(g_recursive(m, K) == oracle_genfun(PartitionClass::G(m, K)));
}

TEST_CASE("closed forms for index 3N-2") {
    CHECK(g_closed_3Nm2(1, 0) == QPoly(1));   // reaches the -2 initial value
    CHECK(g_closed_3Nm2(2, 0) == QPoly());
    CHECK(g_closed_3Nm2(1, 1) == QPoly(1));
    CHECK(g_closed_3Nm2(2, 1) == parse("1 + b*q"));
    CHECK(g_closed_3Nm2(1, 3) == g_recursive(1, 7));
    for (int m : {1, 2})
        for (int N = 0; N <= 6; ++N) CHECK(g_closed_3Nm2(m, N) == g_recursive(m, 3 * N - 2));
}

TEST_CASE("S and T composites for index 3N") {
    CHECK(s_poly(0) == QPoly(1));
    CHECK(t_poly(0) == QPoly(1));
    CHECK(s_poly(1) == parse("1 + q^3"));
    CHECK(g_closed_3N(1, 1) == g_recursive(1, 3));
    CHECK(g_closed_3N(2, 1) == g_recursive(2, 3));
    for (int m : {1, 2})
        for (int N = 1; N <= 6; ++N) CHECK(g_closed_3N(m, N) == g_recursive(m, 3 * N));

    SECTION("a = b = 0 leaves the distinct multiples of 3 below the cap") {
        for (int m : {1, 2})
            for (int N = 1; N <= 6; ++N)
                CHECK(strip_ab(g_closed_3N(m, N)) == poch(QPoly::term(-1, 0, 0, 3), 3, N));
    }
}

TEST_CASE("assembled forms for index 3N-1") {
    CHECK(g_closed_3Nm1(1, 1) == g_recursive(1, 2));
    CHECK(g_closed_3Nm1(2, 2) == g_recursive(2, 5));
    for (int m : {1, 2}) {
        for (int N = 1; N <= 6; ++N) {
            CHECK(g_closed_3Nm1(m, N) == g_recursive(m, 3 * N - 1));
            CHECK(g_closed_3Nm1(m, N) == oracle_genfun(PartitionClass::G(m, 3 * N - 1)));
        }
    }
}

TEST_CASE("divisibility relation") {
    CHECK(divisibility_check(1, 2) == g_recursive(1, 3));
    CHECK(divisibility_check(2, 2) == g_recursive(2, 3));
    CHECK(divisibility_check(1, 4) == g_recursive(1, 9));
    for (int m : {1, 2})
        for (int N = 2; N <= 6; ++N)
            CHECK(divisibility_check(m, N) == g_recursive(m, 3 * (N - 1)));
    CHECK_THROWS_AS(divisibility_check(1, 1), std::invalid_argument);
}

TEST_CASE("double-sum identity") {
    CHECK(boulet_lhs(0, 0, 0) == QPoly(1));
    CHECK(boulet_rhs(0, 0, 0) == QPoly(1));
    CHECK(boulet_rhs(1, 1, 1) == QPoly());
    CHECK(boulet_lhs(1, 1, 1) == QPoly());
    CHECK(boulet_rhs(2, 1, 0) == parse("1 + q + q^2 + q^3"));
    CHECK(boulet_lhs(2, 1, 0) == parse("1 + q + q^2 + q^3"));
    for (int N = 0; N <= 5; ++N)
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j) CHECK(boulet_lhs(N, i, j) == boulet_rhs(N, i, j));
}

TEST_CASE("builders reject bad arguments and stay in q-polynomials") {
    CHECK_THROWS_AS(p_closed(3, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(psi(1, -1), std::invalid_argument);
    CHECK_THROWS_AS(g_closed_3N(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(s_poly(-1), std::invalid_argument);
    for (const QPoly& p : {psi(2, 9), g_recursive(1, 13), g_closed_3Nm2(2, 5), s_poly(6),
                           t_poly(6), divisibility_check(2, 5)})
        CHECK_FALSE(p.has_negative_q_exponent());
}

TEST_CASE("memoized builders are safe to call concurrently") {
    std::vector<std::thread> workers;
    std::vector<QPoly> results(8);
    for (int t = 0; t < 8; ++t)
        workers.emplace_back([&results, t] {
            const int m = t % 2 + 1;
            results[t] = g_recursive(m, 18) + p_recursive(m, 12, 2, 2);
        });
    for (auto& w : workers) w.join();
    for (int t = 2; t < 8; ++t) CHECK(results[t] == results[t - 2]);
}
