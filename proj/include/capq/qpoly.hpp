/*
 * qpoly.hpp
 * ---------
 * Exact sparse polynomials in the variables a, b, q with arbitrary-precision
 * integer coefficients.  This is the universal value type for every
 * generating function in the library.
 *
 * A polynomial is a map from monomials a^ea * b^eb * q^eq to nonzero
 * coefficients.  Exponents of a and b are always nonnegative; the exponent
 * of q may go negative in intermediate rewrites, but every public series
 * builder produces results with eq >= 0.
 *
 * Monomials are totally ordered lexicographically on
 * (total degree, ea, eb, eq), smallest first.  The map order is the
 * canonical order, used for serialization, for the "leading term" of a
 * difference, and for exact multivariate division.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace capq {

using BigInt = boost::multiprecision::cpp_int;

struct NotDivisibleError : std::runtime_error {
    explicit NotDivisibleError(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZeroError : std::runtime_error {
    DivisionByZeroError() : std::runtime_error("division by zero polynomial") {}
};

struct Monomial {
    int ea = 0;             // exponent of a, >= 0
    int eb = 0;             // exponent of b, >= 0
    std::int64_t eq = 0;    // exponent of q, may be negative internally

    std::int64_t total_degree() const { return static_cast<std::int64_t>(ea) + eb + eq; }

    friend bool operator==(const Monomial& x, const Monomial& y) {
        return x.ea == y.ea && x.eb == y.eb && x.eq == y.eq;
    }
    friend bool operator!=(const Monomial& x, const Monomial& y) { return !(x == y); }

    // Canonical order: lexicographic on (total degree, ea, eb, eq).
    friend bool operator<(const Monomial& x, const Monomial& y) {
        return std::tuple(x.total_degree(), x.ea, x.eb, x.eq) <
               std::tuple(y.total_degree(), y.ea, y.eb, y.eq);
    }

    std::string to_text() const;

    friend std::ostream& operator<<(std::ostream& os, const Monomial& m) {
        return os << (m == Monomial{} ? std::string("1") : m.to_text());
    }
};

// Alternative order used when reporting leading terms by q-degree first.
inline bool q_order_less(const Monomial& x, const Monomial& y) {
    return std::tuple(x.eq, x.ea, x.eb) < std::tuple(y.eq, y.ea, y.eb);
}

class QPoly {
public:
    using TermMap = std::map<Monomial, BigInt>;

    QPoly() = default;
    QPoly(long long c) { if (c != 0) terms_[Monomial{}] = c; }
    QPoly(const BigInt& c) { if (c != 0) terms_[Monomial{}] = c; }

    static QPoly term(BigInt c, int ea, int eb, std::int64_t eq) {
        if (ea < 0 || eb < 0) throw std::invalid_argument("negative exponent of a or b");
        QPoly p;
        if (c != 0) p.terms_[Monomial{ea, eb, eq}] = std::move(c);
        return p;
    }
    static QPoly a(int e = 1) { return term(1, e, 0, 0); }
    static QPoly b(int e = 1) { return term(1, 0, e, 0); }
    static QPoly q(std::int64_t e = 1) { return term(1, 0, 0, e); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    BigInt coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    bool has_negative_q_exponent() const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.first.eq < 0; });
    }

    // Smallest nonzero term in canonical order; empty for the zero polynomial.
    std::optional<std::pair<Monomial, BigInt>> min_term() const {
        if (terms_.empty()) return std::nullopt;
        return *terms_.begin();
    }

    std::optional<std::pair<Monomial, BigInt>> min_term_q_order() const {
        if (terms_.empty()) return std::nullopt;
        auto it = std::min_element(terms_.begin(), terms_.end(),
                                   [](const auto& x, const auto& y) {
                                       return q_order_less(x.first, y.first);
                                   });
        return *it;
    }

    QPoly& operator+=(const QPoly& r) {
        for (const auto& [m, c] : r.terms_) add_term(m, c);
        return *this;
    }
    QPoly& operator-=(const QPoly& r) {
        for (const auto& [m, c] : r.terms_) add_term(m, -c);
        return *this;
    }
    QPoly& operator*=(const QPoly& r) { *this = *this * r; return *this; }

    friend QPoly operator+(QPoly p, const QPoly& r) { p += r; return p; }
    friend QPoly operator-(QPoly p, const QPoly& r) { p -= r; return p; }
    friend QPoly operator-(const QPoly& p) {
        QPoly out;
        for (const auto& [m, c] : p.terms_) out.terms_[m] = -c;
        return out;
    }
    friend QPoly operator*(const QPoly& p, const QPoly& r) {
        QPoly out;
        for (const auto& [mp, cp] : p.terms_)
            for (const auto& [mr, cr] : r.terms_)
                out.add_term(mono_mul(mp, mr), cp * cr);
        return out;
    }

    friend bool operator==(const QPoly& p, const QPoly& r) { return p.terms_ == r.terms_; }
    friend bool operator!=(const QPoly& p, const QPoly& r) { return !(p == r); }

    // Multiply by a single monomial; ea/eb of the result must stay nonnegative.
    QPoly shift(const Monomial& m) const {
        QPoly out;
        for (const auto& [mm, c] : terms_) {
            const Monomial shifted = mono_mul(mm, m);
            if (shifted.ea < 0 || shifted.eb < 0)
                throw std::invalid_argument("shift: negative exponent of a or b");
            out.terms_[shifted] = c;
        }
        return out;
    }

    // Keep the terms with eq <= D.
    QPoly truncate_q(std::int64_t D) const {
        QPoly out;
        for (const auto& [m, c] : terms_)
            if (m.eq <= D) out.terms_[m] = c;
        return out;
    }

    // Substitute a = b = 1, collapsing onto powers of q.
    QPoly set_ab_one() const {
        QPoly out;
        for (const auto& [m, c] : terms_) out.add_term(Monomial{0, 0, m.eq}, c);
        return out;
    }

    // Exact multivariate long division with respect to the canonical order.
    // Throws NotDivisibleError on a nonzero remainder: every ratio formed by
    // the series builders is claimed to be a polynomial, so a remainder is a
    // signal to surface, not to hide.
    QPoly exact_div(const QPoly& den) const;

    std::string to_text() const;
    static QPoly from_text(std::string_view text);

    nlohmann::json to_json() const;
    static QPoly from_json(const nlohmann::json& j);

    friend std::ostream& operator<<(std::ostream& os, const QPoly& p) {
        return os << p.to_text();
    }

private:
    void add_term(const Monomial& m, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static Monomial mono_mul(const Monomial& x, const Monomial& y) {
        return Monomial{x.ea + y.ea, x.eb + y.eb, x.eq + y.eq};
    }

    TermMap terms_;
};

// ---------------------------------------------------------------------------
// exact division

inline QPoly QPoly::exact_div(const QPoly& den) const {
    if (den.is_zero()) throw DivisionByZeroError();
    if (is_zero()) return QPoly();

    const auto& [dm, dc] = *den.terms_.begin();     // leading = canonical minimum
    const Monomial num_max = terms_.rbegin()->first;
    const Monomial den_max = den.terms_.rbegin()->first;

    QPoly quotient;
    QPoly rem = *this;
    // An exact quotient has one division step per quotient term; the cap only
    // trips when the division cannot terminate.
    const std::size_t max_steps = 1000000;
    for (std::size_t step = 0; !rem.is_zero(); ++step) {
        const auto& [rm, rc] = *rem.terms_.begin();
        const int ea = rm.ea - dm.ea;
        const int eb = rm.eb - dm.eb;
        if (ea < 0 || eb < 0)
            throw NotDivisibleError("leading monomial not divisible at " + rm.to_text());
        BigInt cq, crem;
        boost::multiprecision::divide_qr(rc, dc, cq, crem);
        if (crem != 0)
            throw NotDivisibleError("leading coefficient not divisible at " + rm.to_text());
        const Monomial t{ea, eb, rm.eq - dm.eq};
        if (num_max < mono_mul(t, den_max) || step >= max_steps)
            throw NotDivisibleError("nonzero remainder");
        const QPoly tq = QPoly::term(cq, t.ea, t.eb, t.eq);
        quotient += tq;
        rem -= den * tq;
    }
    return quotient;
}

// ---------------------------------------------------------------------------
// dominance

// Outcome of a coefficient-wise comparison p >= r.  When p dominates,
// leading_difference is the canonical-minimum nonzero term of p - r (absent
// when p == r).  Otherwise failure holds the order-first monomial whose
// difference coefficient is negative.
struct DominanceResult {
    bool dominates = false;
    std::optional<std::pair<Monomial, BigInt>> leading_difference;
    std::optional<std::pair<Monomial, BigInt>> failure;
};

inline DominanceResult dominates(const QPoly& p, const QPoly& r) {
    DominanceResult out;
    const QPoly diff = p - r;
    for (const auto& [m, c] : diff.terms()) {
        if (c < 0) {
            out.failure = std::pair(m, c);
            return out;
        }
    }
    out.dominates = true;
    out.leading_difference = diff.min_term();
    return out;
}

// ---------------------------------------------------------------------------
// serialization

inline std::string Monomial::to_text() const {
    std::string s;
    auto factor = [&s](char v, std::int64_t e) {
        if (e == 0) return;
        if (!s.empty()) s += '*';
        s += v;
        if (e != 1) s += '^' + std::to_string(e);
    };
    factor('a', ea);
    factor('b', eb);
    factor('q', eq);
    return s;
}

inline std::string QPoly::to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        const std::string factors = m.to_text();
        if (factors.empty()) {
            out += c.str();
        } else if (c == 1) {
            out += factors;
        } else if (c == -1) {
            out += '-' + factors;
        } else {
            out += c.str() + "*" + factors;
        }
    }
    return out;
}

inline QPoly QPoly::from_text(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("unparsable polynomial: " + std::string(text)); };
    QPoly out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(" + ", pos);
        std::string_view tok = text.substr(pos, end == std::string_view::npos ? end : end - pos);
        pos = end == std::string_view::npos ? text.size() : end + 3;

        BigInt coeff = 1;
        int ea = 0, eb = 0;
        std::int64_t eq = 0;
        bool saw_factor = false, saw_coeff = false;

        std::size_t fpos = 0;
        if (fpos < tok.size() && tok[fpos] == '-' && fpos + 1 < tok.size() &&
            !std::isdigit(static_cast<unsigned char>(tok[fpos + 1]))) {
            coeff = -1;
            ++fpos;
        }
        while (fpos < tok.size()) {
            std::size_t fend = tok.find('*', fpos);
            std::string_view f = tok.substr(fpos, fend == std::string_view::npos ? fend : fend - fpos);
            fpos = fend == std::string_view::npos ? tok.size() : fend + 1;
            if (f.empty()) fail();
            if (f[0] == 'a' || f[0] == 'b' || f[0] == 'q') {
                std::int64_t e = 1;
                if (f.size() > 1) {
                    if (f[1] != '^') fail();
                    e = std::stoll(std::string(f.substr(2)));
                }
                saw_factor = true;
                if (f[0] == 'a') ea += static_cast<int>(e);
                else if (f[0] == 'b') eb += static_cast<int>(e);
                else eq += e;
            } else {
                if (saw_coeff || saw_factor) fail();
                coeff *= BigInt(std::string(f));
                saw_coeff = true;
            }
        }
        if (!saw_coeff && !saw_factor) fail();
        out += QPoly::term(coeff, ea, eb, eq);
    }
    return out;
}

inline nlohmann::json QPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : terms_)
        arr.push_back({{"ea", m.ea}, {"eb", m.eb}, {"eq", m.eq}, {"coeff", c.str()}});
    return arr;
}

inline QPoly QPoly::from_json(const nlohmann::json& j) {
    QPoly out;
    for (const auto& t : j)
        out += QPoly::term(BigInt(t.at("coeff").get<std::string>()),
                           t.at("ea").get<int>(), t.at("eb").get<int>(),
                           t.at("eq").get<std::int64_t>());
    return out;
}

}  // namespace capq
