#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "capq/qpoly.hpp"

using namespace capq;

namespace {

QPoly parse(const char* text) { return QPoly::from_text(text); }

// Small random polynomials for the algebra properties; coefficients stay
// tiny, exponents stay small, and the seed is fixed.
struct PolyGen {
    std::mt19937 rng{20240117};

    QPoly random_poly(bool allow_negative_eq = false) {
        std::uniform_int_distribution<int> n_terms(0, 4);
        std::uniform_int_distribution<int> exp(0, 3);
        std::uniform_int_distribution<int> qexp(allow_negative_eq ? -3 : 0, 5);
        std::uniform_int_distribution<int> coeff(-3, 3);
        QPoly p;
        const int k = n_terms(rng);
        for (int t = 0; t < k; ++t) {
            int c = coeff(rng);
            if (c == 0) c = 1;
            p += QPoly::term(c, exp(rng), exp(rng), qexp(rng));
        }
        return p;
    }

    QPoly random_nonzero() {
        for (;;) {
            QPoly p = random_poly();
            if (!p.is_zero()) return p;
        }
    }

    QPoly random_nonnegative() {
        QPoly p = random_poly();
        QPoly out;
        for (const auto& [m, c] : p.terms()) out += QPoly::term(abs(c), m.ea, m.eb, m.eq);
        return out;
    }
};

}  // namespace

TEST_CASE("addition") {
    CHECK(parse("1 + q") + parse("1 + -q") == QPoly(2));
    const QPoly p = parse("3 + a*q^2 + -1*b^2*q");
    CHECK(p + QPoly() == p);
    CHECK(QPoly::b() * QPoly::q() + QPoly(1) == parse("1 + b*q"));
}

TEST_CASE("multiplication") {
    CHECK(parse("1 + q") * parse("1 + -q") == parse("1 + -q^2"));
    const QPoly p = parse("2 + a*b*q^3");
    CHECK(p * QPoly(1) == p);
    CHECK(parse("1 + q^3") * parse("1 + q^6") == parse("1 + q^3 + q^6 + q^9"));
}

TEST_CASE("exact division") {
    CHECK(parse("1 + -q^6").exact_div(parse("1 + -q^3")) == parse("1 + q^3"));

    const QPoly one_plus_bq = parse("1 + b*q");
    CHECK((one_plus_bq * parse("1 + q")).exact_div(one_plus_bq) == parse("1 + q"));

    CHECK_THROWS_AS(parse("1 + q").exact_div(QPoly()), DivisionByZeroError);
    CHECK_THROWS_AS(parse("1 + -q^5").exact_div(parse("1 + -q^3")), NotDivisibleError);
    CHECK_THROWS_AS(parse("1 + q").exact_div(parse("1 + q^2")), NotDivisibleError);
    CHECK_THROWS_AS(parse("a").exact_div(parse("b")), NotDivisibleError);
    CHECK_THROWS_AS(parse("2 + 2*q").exact_div(parse("3")), NotDivisibleError);
    CHECK(QPoly().exact_div(parse("1 + q")) == QPoly());
}

TEST_CASE("dominance") {
    const QPoly p = parse("1 + 2*q + a*q^3");

    SECTION("reflexive with zero difference") {
        const DominanceResult dr = dominates(p, p);
        CHECK(dr.dominates);
        CHECK_FALSE(dr.leading_difference.has_value());
    }
    SECTION("leading term of a positive difference") {
        const DominanceResult dr = dominates(parse("1 + 2*q"), parse("1 + q"));
        REQUIRE(dr.dominates);
        REQUIRE(dr.leading_difference.has_value());
        CHECK(dr.leading_difference->first == Monomial{0, 0, 1});
        CHECK(dr.leading_difference->second == 1);
    }
    SECTION("failure reports the order-first negative term") {
        const DominanceResult dr = dominates(parse("1 + q + q^4"), parse("1 + 2*q + 3*q^2"));
        REQUIRE_FALSE(dr.dominates);
        REQUIRE(dr.failure.has_value());
        CHECK(dr.failure->first == Monomial{0, 0, 1});
        CHECK(dr.failure->second == -1);
    }
}

TEST_CASE("coefficient access and rewrites") {
    const QPoly p = parse("1 + 2*q^3 + b*q + a*b*q^2");
    CHECK(p.coeff(Monomial{0, 0, 3}) == 2);
    CHECK(p.coeff(Monomial{1, 0, 0}) == 0);
    CHECK(parse("1 + q + q^5").truncate_q(3) == parse("1 + q"));
    CHECK(parse("1 + b*q + a*b*q^2").set_ab_one() == parse("1 + q + q^2"));
    CHECK(parse("1 + q").shift(Monomial{1, 0, 2}) == parse("a*q^2 + a*q^3"));
    // negative q shifts are legal internally
    CHECK(parse("q^4 + q^6").shift(Monomial{0, 0, -4}) == parse("1 + q^2"));
    CHECK_THROWS_AS(QPoly::term(1, -1, 0, 0), std::invalid_argument);
}

TEST_CASE("canonical order of monomials") {
    // (total degree, ea, eb, eq), smallest first
    std::vector<Monomial> order = {
        {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 0, 2}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0},
    };
    for (std::size_t t = 0; t + 1 < order.size(); ++t) CHECK(order[t] < order[t + 1]);
    CHECK(Monomial{0, 0, -2} < Monomial{0, 0, 0});
}

TEST_CASE("ring laws on random polynomials") {
    PolyGen gen;
    for (int trial = 0; trial < 200; ++trial) {
        const QPoly p = gen.random_poly(true);
        const QPoly r = gen.random_poly(true);
        const QPoly s = gen.random_poly(true);
        CHECK(p + r == r + p);
        CHECK(p * r == r * p);
        CHECK((p + r) + s == p + (r + s));
        CHECK((p * r) * s == p * (r * s));
        CHECK(p * (r + s) == p * r + p * s);
        CHECK(p - p == QPoly());
    }
}

TEST_CASE("division inverts multiplication") {
    PolyGen gen;
    for (int trial = 0; trial < 200; ++trial) {
        const QPoly p = gen.random_poly();
        const QPoly r = gen.random_nonzero();
        CHECK((p * r).exact_div(r) == p);
    }
}

TEST_CASE("dominance is a partial order") {
    PolyGen gen;
    for (int trial = 0; trial < 200; ++trial) {
        const QPoly p = gen.random_poly();
        const QPoly s1 = gen.random_nonnegative();
        const QPoly s2 = gen.random_nonnegative();
        CHECK(dominates(p, p).dominates);
        // antisymmetry: mutual dominance forces equality
        if (dominates(p, p + s1).dominates) CHECK(s1.is_zero());
        // transitivity along a chain of nonnegative increments
        CHECK(dominates(p + s1, p).dominates);
        CHECK(dominates(p + s1 + s2, p + s1).dominates);
        CHECK(dominates(p + s1 + s2, p).dominates);
    }
}

TEST_CASE("serialization round trips") {
    PolyGen gen;
    for (int trial = 0; trial < 200; ++trial) {
        const QPoly p = gen.random_poly(true);
        CHECK(QPoly::from_text(p.to_text()) == p);
        CHECK(QPoly::from_json(p.to_json()) == p);
    }

    CHECK(QPoly().to_text() == "0");
    CHECK(QPoly::from_text("0") == QPoly());
    CHECK(parse("1 + b*q").to_text() == "1 + b*q");
    CHECK(parse("1 + -q^2").to_text() == "1 + -q^2");

    const auto j = parse("1 + 2*b*q").to_json();
    REQUIRE(j.size() == 2);
    CHECK(j[1]["coeff"] == "2");
    CHECK(j[1]["eb"] == 1);
}

TEST_CASE("big coefficients stay exact") {
    // (1 + q)^64 has central coefficient C(64, 32), which does not fit in 64 bits
    QPoly p = 1;
    const QPoly base = parse("1 + q");
    for (int t = 0; t < 64; ++t) p *= base;
    CHECK(p.coeff(Monomial{0, 0, 32}) == BigInt("1832624140942590534"));
    CHECK(p.coeff(Monomial{0, 0, 31}) == BigInt("1777090076065542336"));
    CHECK((p * p).coeff(Monomial{0, 0, 64}) == BigInt("23951146041928082866135587776380551750"));
}

TEST_CASE("q-order leading term") {
    const QPoly d = parse("a^2*q^3 + b*q^4");
    REQUIRE(d.min_term().has_value());
    CHECK(d.min_term()->first == Monomial{0, 1, 4});      // lower total degree
    REQUIRE(d.min_term_q_order().has_value());
    CHECK(d.min_term_q_order()->first == Monomial{2, 0, 3});  // lower q-degree
}
