/*
 * verify.hpp
 * ----------
 * Checkers that compare independent computation routes and produce
 * machine-readable reports, plus the falsification scanner for the dominance
 * conjecture.  Checkers never throw on a mathematical mismatch: failures
 * land in the report.  They stop at the first discrepancy per sweep unless
 * asked to collect all of them.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "capq/partitions.hpp"
#include "capq/qcomb.hpp"
#include "capq/qpoly.hpp"
#include "capq/series.hpp"

#include "json.hpp"

namespace capq {

enum class CheckStatus { Pass, Fail, ConjectureHolds, ConjectureViolated };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::ConjectureHolds: return "conjecture-holds";
        case CheckStatus::ConjectureViolated: return "conjecture-violated";
    }
    return "?";
}

inline CheckStatus check_status_from_string(const std::string& s) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    if (s == "conjecture-holds") return CheckStatus::ConjectureHolds;
    if (s == "conjecture-violated") return CheckStatus::ConjectureViolated;
    throw std::invalid_argument("unknown check status: " + s);
}

struct Discrepancy {
    std::string params;
    std::string expected;
    std::string actual;
    friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

struct LeadingTermRecord {
    int N = 0;
    std::string parity;            // "even" or "odd"
    std::string monomial;          // leading difference term, canonical order
    std::string q_first_monomial;  // leading difference term, q-degree order
    bool matches_conjecture = false;
    friend bool operator==(const LeadingTermRecord&, const LeadingTermRecord&) = default;
};

struct VerificationReport {
    std::string check;
    std::map<std::string, std::int64_t> range;  // what was actually swept
    CheckStatus status = CheckStatus::Pass;
    std::vector<Discrepancy> discrepancies;     // front() is the first found
    std::vector<LeadingTermRecord> leading_terms;
    double elapsed_ms = 0.0;

    bool passed() const {
        return status == CheckStatus::Pass || status == CheckStatus::ConjectureHolds;
    }

    // Reports are equal when everything except the elapsed time agrees.
    friend bool operator==(const VerificationReport& x, const VerificationReport& y) {
        return x.check == y.check && x.range == y.range && x.status == y.status &&
               x.discrepancies == y.discrepancies && x.leading_terms == y.leading_terms;
    }

    nlohmann::json to_json(bool with_elapsed = true) const {
        nlohmann::json j{{"check", check}, {"range", range}, {"status", to_string(status)}};
        if (!discrepancies.empty()) {
            const auto& d = discrepancies.front();
            j["first_discrepancy"] = {{"params", d.params},
                                      {"expected", d.expected},
                                      {"actual", d.actual}};
            if (discrepancies.size() > 1) {
                nlohmann::json all = nlohmann::json::array();
                for (const auto& x : discrepancies)
                    all.push_back({{"params", x.params},
                                   {"expected", x.expected},
                                   {"actual", x.actual}});
                j["all_discrepancies"] = all;
            }
        }
        if (!leading_terms.empty()) {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : leading_terms)
                terms.push_back({{"N", t.N},
                                 {"parity", t.parity},
                                 {"monomial", t.monomial},
                                 {"q_first_monomial", t.q_first_monomial},
                                 {"matches_conjecture", t.matches_conjecture}});
            j["leading_terms"] = terms;
        }
        if (with_elapsed) j["elapsed_ms"] = elapsed_ms;
        return j;
    }

    static VerificationReport from_json(const nlohmann::json& j) {
        VerificationReport r;
        r.check = j.at("check").get<std::string>();
        r.range = j.at("range").get<std::map<std::string, std::int64_t>>();
        r.status = check_status_from_string(j.at("status").get<std::string>());
        auto read_discrepancy = [](const nlohmann::json& d) {
            return Discrepancy{d.at("params").get<std::string>(),
                               d.at("expected").get<std::string>(),
                               d.at("actual").get<std::string>()};
        };
        if (j.contains("all_discrepancies")) {
            for (const auto& d : j.at("all_discrepancies"))
                r.discrepancies.push_back(read_discrepancy(d));
        } else if (j.contains("first_discrepancy")) {
            r.discrepancies.push_back(read_discrepancy(j.at("first_discrepancy")));
        }
        if (j.contains("leading_terms")) {
            for (const auto& t : j.at("leading_terms"))
                r.leading_terms.push_back(
                    LeadingTermRecord{t.at("N").get<int>(),
                                      t.at("parity").get<std::string>(),
                                      t.at("monomial").get<std::string>(),
                                      t.at("q_first_monomial").get<std::string>(),
                                      t.at("matches_conjecture").get<bool>()});
        }
        if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
        return r;
    }

    std::string to_text() const {
        std::string s = "check: " + check + "\nrange:";
        for (const auto& [k, v] : range) s += " " + k + "=" + std::to_string(v);
        s += "\nstatus: " + to_string(status) + "\n";
        if (!discrepancies.empty()) {
            const auto& d = discrepancies.front();
            s += "first discrepancy: " + d.params + "\n  expected: " + d.expected +
                 "\n  actual:   " + d.actual + "\n";
            if (discrepancies.size() > 1)
                s += "total discrepancies: " + std::to_string(discrepancies.size()) + "\n";
        }
        for (const auto& t : leading_terms)
            s += "leading term N=" + std::to_string(t.N) + " " + t.parity + ": " + t.monomial +
                 " (q-order: " + t.q_first_monomial + ")" +
                 (t.matches_conjecture ? " matches" : " MISMATCH") + "\n";
        return s;
    }
};

namespace detail {

class ReportTimer {
public:
    explicit ReportTimer(VerificationReport& r) : report_(r) {}
    ~ReportTimer() {
        const auto end = std::chrono::steady_clock::now();
        report_.elapsed_ms =
            std::chrono::duration<double, std::milli>(end - start_).count();
    }

private:
    VerificationReport& report_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Records a discrepancy; returns true when the sweep should keep going.
inline bool record(VerificationReport& r, CheckStatus bad, std::string params,
                   std::string expected, std::string actual, bool full) {
    r.status = bad;
    r.discrepancies.push_back({std::move(params), std::move(expected), std::move(actual)});
    return full;
}

inline std::string term_text(const std::optional<std::pair<Monomial, BigInt>>& t) {
    if (!t) return "0";
    const auto& [m, c] = *t;
    const std::string mono = m.to_text();
    if (mono.empty()) return c.str();
    if (c == 1) return mono;
    if (c == -1) return "-" + mono;
    return c.str() + "*" + mono;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// theorem checkers

// |A_m(n)| = |C_m(n)| = |D_m(n)| for every n <= n_max.
inline VerificationReport check_companion(int m, std::int64_t n_max, bool full = false) {
    VerificationReport r;
    r.check = "companion";
    r.range = {{"m", m}, {"n_max", n_max}};
    detail::ReportTimer timer(r);

    std::vector<std::int64_t> counts[3];
    const PartitionClass classes[3] = {PartitionClass::A(m), PartitionClass::C(m),
                                       PartitionClass::D(m)};
    for (int c = 0; c < 3; ++c) {
        counts[c].assign(n_max + 1, 0);
        detail::visit_class(classes[c], n_max, /*exact=*/false,
                            [&](const Partition& pi) { ++counts[c][pi.norm()]; });
    }
    for (std::int64_t n = 0; n <= n_max; ++n) {
        if (counts[0][n] != counts[1][n] || counts[1][n] != counts[2][n]) {
            if (!detail::record(r, CheckStatus::Fail, "m=" + std::to_string(m) +
                                " n=" + std::to_string(n),
                                "equal class counts",
                                "A=" + std::to_string(counts[0][n]) +
                                " C=" + std::to_string(counts[1][n]) +
                                " D=" + std::to_string(counts[2][n]),
                                full))
                return r;
        }
    }
    return r;
}

// |C_m(n)| = |D_m(n)| only.
inline VerificationReport check_capparelli(int m, std::int64_t n_max, bool full = false) {
    VerificationReport r;
    r.check = "capparelli";
    r.range = {{"m", m}, {"n_max", n_max}};
    detail::ReportTimer timer(r);

    std::vector<std::int64_t> counts[2];
    const PartitionClass classes[2] = {PartitionClass::C(m), PartitionClass::D(m)};
    for (int c = 0; c < 2; ++c) {
        counts[c].assign(n_max + 1, 0);
        detail::visit_class(classes[c], n_max, /*exact=*/false,
                            [&](const Partition& pi) { ++counts[c][pi.norm()]; });
    }
    for (std::int64_t n = 0; n <= n_max; ++n) {
        if (counts[0][n] != counts[1][n]) {
            if (!detail::record(r, CheckStatus::Fail,
                                "m=" + std::to_string(m) + " n=" + std::to_string(n),
                                "C=" + std::to_string(counts[0][n]),
                                "D=" + std::to_string(counts[1][n]), full))
                return r;
        }
    }
    return r;
}

// Refined tables of the bounded-A class at index 2N against the Q family at
// N, over the full finite support of both.
inline VerificationReport check_refined(int m, int N_max, bool full = false) {
    VerificationReport r;
    r.check = "refined";
    r.range = {{"m", m}, {"N_max", N_max}};
    detail::ReportTimer timer(r);

    for (int N = 0; N <= N_max; ++N) {
        const RefinedTable ta = refined_table(PartitionClass::P(m, 2 * N));
        const RefinedTable tq = refined_table(PartitionClass::Q(m, N, 0, 0));
        if (ta == tq) continue;
        std::set<std::array<std::int64_t, 3>> keys;
        for (const auto& [key, c] : ta.entries) keys.insert(key);
        for (const auto& [key, c] : tq.entries) keys.insert(key);
        for (const auto& key : keys) {
            const std::int64_t ca = ta.count(key[0], key[1], key[2]);
            const std::int64_t cq = tq.count(key[0], key[1], key[2]);
            if (ca == cq) continue;
            if (!detail::record(r, CheckStatus::Fail,
                                "m=" + std::to_string(m) + " N=" + std::to_string(N) +
                                    " n=" + std::to_string(key[0]) + " i=" +
                                    std::to_string(key[1]) + " j=" + std::to_string(key[2]),
                                std::to_string(ca), std::to_string(cq), full))
                return r;
        }
    }
    return r;
}

// Triple-route equality p_closed = p_recursive = enumeration for every index
// K <= K_max and residue statistics up to (i_max, j_max).
inline VerificationReport check_genfunc_routes(int m, int K_max, int i_max = 8, int j_max = 8,
                                               bool full = false) {
    VerificationReport r;
    r.check = "genfunc";
    r.range = {{"m", m}, {"K_max", K_max}, {"i_max", i_max}, {"j_max", j_max}};
    detail::ReportTimer timer(r);

    for (int K = 0; K <= K_max; ++K) {
        const auto buckets = oracle_genfun_by_stats(PartitionClass::P(m, K));
        for (int i = 0; i <= i_max; ++i) {
            for (int j = 0; j <= j_max; ++j) {
                const std::string params = "m=" + std::to_string(m) + " K=" + std::to_string(K) +
                                           " i=" + std::to_string(i) + " j=" + std::to_string(j);
                QPoly closed;
                try {
                    closed = p_closed(m, K, i, j);
                } catch (const NotDivisibleError& e) {
                    if (!detail::record(r, CheckStatus::Fail, params, "polynomial quotient",
                                        e.what(), full))
                        return r;
                    continue;
                }
                const QPoly recursive = p_recursive(m, K, i, j);
                auto it = buckets.find({i, j});
                const QPoly oracle = it == buckets.end() ? QPoly() : it->second;
                if (closed != recursive) {
                    if (!detail::record(r, CheckStatus::Fail, params + " closed vs recursive",
                                        closed.to_text(), recursive.to_text(), full))
                        return r;
                }
                if (closed != oracle) {
                    if (!detail::record(r, CheckStatus::Fail, params + " closed vs enumeration",
                                        closed.to_text(), oracle.to_text(), full))
                        return r;
                }
            }
        }
    }
    return r;
}

// Recurrence route = enumeration = residue-matched closed form for the G
// series at every index K <= K_max.
inline VerificationReport check_g_routes(int m, int K_max, bool full = false) {
    VerificationReport r;
    r.check = "gseries";
    r.range = {{"m", m}, {"K_max", K_max}};
    detail::ReportTimer timer(r);

    for (int K = 0; K <= K_max; ++K) {
        const std::string params = "m=" + std::to_string(m) + " K=" + std::to_string(K);
        const QPoly rec = g_recursive(m, K);
        const QPoly oracle = oracle_genfun(PartitionClass::G(m, K));
        if (rec != oracle) {
            if (!detail::record(r, CheckStatus::Fail, params + " recurrence vs enumeration",
                                rec.to_text(), oracle.to_text(), full))
                return r;
        }
        QPoly closed;
        bool have_closed = true;
        if (K % 3 == 1)
            closed = g_closed_3Nm2(m, (K + 2) / 3);
        else if (K % 3 == 2)
            closed = g_closed_3Nm1(m, (K + 1) / 3);
        else if (K >= 3)
            closed = g_closed_3N(m, K / 3);
        else
            have_closed = false;
        if (have_closed && rec != closed) {
            if (!detail::record(r, CheckStatus::Fail, params + " recurrence vs closed form",
                                rec.to_text(), closed.to_text(), full))
                return r;
        }
    }
    return r;
}

// The (1 + bq)-divisibility relation: quotient equals G_{m,3(N-1)}.
inline VerificationReport check_divisibility(int m, int N_max, bool full = false) {
    VerificationReport r;
    r.check = "divisibility";
    r.range = {{"m", m}, {"N_max", N_max}};
    detail::ReportTimer timer(r);

    for (int N = 2; N <= N_max; ++N) {
        const std::string params = "m=" + std::to_string(m) + " N=" + std::to_string(N);
        QPoly quotient;
        try {
            quotient = divisibility_check(m, N);
        } catch (const NotDivisibleError& e) {
            if (!detail::record(r, CheckStatus::Fail, params, "divisible by 1 + b*q", e.what(),
                                full))
                return r;
            continue;
        }
        const QPoly expected = g_recursive(m, 3 * (N - 1));
        if (quotient != expected) {
            if (!detail::record(r, CheckStatus::Fail, params, expected.to_text(),
                                quotient.to_text(), full))
                return r;
        }
    }
    return r;
}

// Both sides of the base-q^2 double-sum identity for 0 <= i, j <= N <= N_max.
inline VerificationReport check_boulet(int N_max, bool full = false) {
    VerificationReport r;
    r.check = "boulet";
    r.range = {{"N_max", N_max}};
    detail::ReportTimer timer(r);

    for (int N = 0; N <= N_max; ++N)
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j) {
                const QPoly lhs = boulet_lhs(N, i, j);
                const QPoly rhs = boulet_rhs(N, i, j);
                if (lhs != rhs) {
                    if (!detail::record(r, CheckStatus::Fail,
                                        "N=" + std::to_string(N) + " i=" + std::to_string(i) +
                                            " j=" + std::to_string(j),
                                        rhs.to_text(), lhs.to_text(), full))
                        return r;
                }
            }
    return r;
}

// Dominance scan for Psi over G on the matched index pairs, recording the
// leading difference term under both monomial orders and whether the
// canonical one equals the conjectured monomial.  A conjecture is never
// "proved": the terminal statuses are conjecture-holds / conjecture-violated.
inline VerificationReport check_dominance(int m, int N_max, bool full = false) {
    VerificationReport r;
    r.check = "dominance";
    r.range = {{"m", m}, {"N_max", N_max}};
    r.status = CheckStatus::ConjectureHolds;
    detail::ReportTimer timer(r);

    for (int N = 1; N <= N_max; ++N) {
        for (int parity = 0; parity < 2; ++parity) {
            const bool even = parity == 0;
            const int K_psi = even ? 2 * N : 2 * N + 1;
            const int K_g = even ? 3 * N : 3 * N + 3 - m;
            Monomial expected;
            if (even)
                expected = m == 1 ? Monomial{0, 1, 3LL * N + 1} : Monomial{1, 0, 3LL * N + 2};
            else
                expected = m == 1 ? Monomial{1, 0, 3LL * N + 5} : Monomial{0, 1, 3LL * N + 1};

            const std::string params = "m=" + std::to_string(m) + " N=" + std::to_string(N) +
                                       (even ? " even" : " odd");
            const QPoly p = psi(m, K_psi);
            const QPoly g = g_recursive(m, K_g);
            const DominanceResult dr = dominates(p, g);
            if (!dr.dominates) {
                if (!detail::record(r, CheckStatus::ConjectureViolated, params,
                                    "nonnegative difference",
                                    "negative coefficient at " + detail::term_text(dr.failure),
                                    full))
                    return r;
                continue;
            }
            LeadingTermRecord lt;
            lt.N = N;
            lt.parity = even ? "even" : "odd";
            lt.monomial = detail::term_text(dr.leading_difference);
            lt.q_first_monomial = detail::term_text((p - g).min_term_q_order());
            lt.matches_conjecture =
                dr.leading_difference && dr.leading_difference->first == expected &&
                dr.leading_difference->second == 1;
            r.leading_terms.push_back(lt);
            if (!lt.matches_conjecture) {
                if (!detail::record(r, CheckStatus::ConjectureViolated, params,
                                    expected.to_text(), lt.monomial, full))
                    return r;
            }
        }
    }
    return r;
}

// Truncations to q^{3N} of Psi_{m,2N}, G_{m,3N}, and the truncated infinite
// product all agree: below the largest-part cap the bounded classes match
// the limit.
inline VerificationReport check_limit_window(int m, int N_max, bool full = false) {
    VerificationReport r;
    r.check = "limit";
    r.range = {{"m", m}, {"N_max", N_max}};
    detail::ReportTimer timer(r);

    for (int N = 1; N <= N_max; ++N) {
        const std::int64_t D = 3LL * N;
        const std::string params = "m=" + std::to_string(m) + " N=" + std::to_string(N);
        const QPoly from_psi = psi(m, 2 * N).truncate_q(D);
        const QPoly from_g = g_recursive(m, 3 * N).truncate_q(D);
        const QPoly from_product = truncated_limit_product(m, D);
        if (from_psi != from_g) {
            if (!detail::record(r, CheckStatus::Fail, params + " psi vs G", from_psi.to_text(),
                                from_g.to_text(), full))
                return r;
        }
        if (from_psi != from_product) {
            if (!detail::record(r, CheckStatus::Fail, params + " psi vs product",
                                from_psi.to_text(), from_product.to_text(), full))
                return r;
        }
    }
    return r;
}

}  // namespace capq
