/*
 * partitions.hpp
 * --------------
 * Integer partitions under each of the library's constraint systems, with
 * depth-first enumeration.  Enumeration is the independent brute-force route
 * that every closed-form generating function is checked against.
 *
 * Families:
 *   A(m)        distinct parts; odd-indexed parts != m (mod 3), even-indexed
 *               parts != 3-m (mod 3), and parts 3l+1, 3l+2 never adjacent.
 *               Encoded positionally: a forbidden residue and a minimum gap
 *               that both depend on the parity of the 1-based part index.
 *   C(m)        distinct parts, no part = +-m (mod 6).
 *   D(m)        parts != m; consecutive parts x >= y need x - y >= 4 unless
 *               x - y = 3 with both parts multiples of 3, or x - y >= 2 with
 *               x + y a multiple of 6.
 *   P(m, K)     family A with the largest part capped: 3N for K = 2N, and
 *               3(N+1) - m for K = 2N+1.
 *   Q(m, N, i, j)  distinct parts avoiding +-m (mod 6) with exactly i parts
 *               = 2 (mod 3) and j parts = 1 (mod 3), under residue-class
 *               largest-part caps tied to N, i, j (see q_bounds below).
 *   G(m, N)     family D with the largest part capped by N.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capq/qpoly.hpp"

namespace capq {

struct UnboundedClassError : std::runtime_error {
    explicit UnboundedClassError(const std::string& what) : std::runtime_error(what) {}
};

struct Partition {
    std::vector<int> parts;  // weakly decreasing, all positive

    std::int64_t norm() const {
        std::int64_t n = 0;
        for (int p : parts) n += p;
        return n;
    }

    bool well_formed() const {
        for (std::size_t t = 0; t < parts.size(); ++t) {
            if (parts[t] < 1) return false;
            if (t > 0 && parts[t - 1] < parts[t]) return false;
        }
        return true;
    }

    std::string to_text() const {
        std::string s = "(";
        for (std::size_t t = 0; t < parts.size(); ++t) {
            if (t > 0) s += ',';
            s += std::to_string(parts[t]);
        }
        return s + ")";
    }

    static Partition from_text(std::string_view text) {
        if (text.size() < 2 || text.front() != '(' || text.back() != ')')
            throw std::invalid_argument("unparsable partition: " + std::string(text));
        Partition pi;
        std::string_view body = text.substr(1, text.size() - 2);
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t end = body.find(',', pos);
            if (end == std::string_view::npos) end = body.size();
            pi.parts.push_back(std::stoi(std::string(body.substr(pos, end - pos))));
            pos = end + 1;
        }
        return pi;
    }

    friend bool operator==(const Partition& x, const Partition& y) { return x.parts == y.parts; }
};

// (count of parts = 2 mod 3, count of parts = 1 mod 3); multiples of 3 are
// counted by neither.
inline std::pair<int, int> residue_stats(const Partition& pi) {
    int i = 0, j = 0;
    for (int p : pi.parts) {
        if (p % 3 == 2) ++i;
        else if (p % 3 == 1) ++j;
    }
    return {i, j};
}

enum class Family { A, C, D, P, Q, G };

struct PartitionClass {
    Family family = Family::A;
    int m = 1;
    int index = 0;  // K for P, N for Q and G; unused for A, C, D
    int i = 0, j = 0;  // target residue counts, Q only

    static PartitionClass A(int m) { return checked({Family::A, m, 0, 0, 0}); }
    static PartitionClass C(int m) { return checked({Family::C, m, 0, 0, 0}); }
    static PartitionClass D(int m) { return checked({Family::D, m, 0, 0, 0}); }
    static PartitionClass P(int m, int K) { return checked({Family::P, m, K, 0, 0}); }
    static PartitionClass Q(int m, int N, int i, int j) { return checked({Family::Q, m, N, i, j}); }
    static PartitionClass G(int m, int N) { return checked({Family::G, m, N, 0, 0}); }

    bool bounded() const { return family == Family::P || family == Family::Q || family == Family::G; }

    std::string to_text() const;

private:
    static PartitionClass checked(PartitionClass pc) {
        if (pc.m != 1 && pc.m != 2) throw std::invalid_argument("partition class: m must be 1 or 2");
        if (pc.index < 0) throw std::invalid_argument("partition class: negative index");
        if (pc.i < 0 || pc.j < 0) throw std::invalid_argument("partition class: negative residue count");
        return pc;
    }
};

inline std::string PartitionClass::to_text() const {
    switch (family) {
        case Family::A: return "A(" + std::to_string(m) + ")";
        case Family::C: return "C(" + std::to_string(m) + ")";
        case Family::D: return "D(" + std::to_string(m) + ")";
        case Family::P: return "P(" + std::to_string(m) + "," + std::to_string(index) + ")";
        case Family::Q:
            return "Q(" + std::to_string(m) + "," + std::to_string(index) + "," +
                   std::to_string(i) + "," + std::to_string(j) + ")";
        case Family::G: return "G(" + std::to_string(m) + "," + std::to_string(index) + ")";
    }
    return "?";
}

namespace detail {

// Residue of q mod 3 forbidden at 1-based position pos in families A and P.
inline int ap_forbidden_residue(int m, int pos) {
    const bool odd = pos % 2 == 1;
    if (m == 1) return odd ? 1 : 2;
    return odd ? 2 : 1;
}

// Minimum difference between the parts at positions pos and pos + 1.
inline int ap_min_gap(int m, int pos) {
    const bool odd = pos % 2 == 1;
    if (m == 1) return odd ? 2 : 1;
    return odd ? 1 : 2;
}

// Largest-part cap of the P family at index K.
inline int p_largest_part_bound(int m, int K) {
    return K % 2 == 0 ? 3 * (K / 2) : 3 * (K / 2 + 1) - m;
}

// Consecutive-part rule shared by families D and G.
inline bool capparelli_gap_ok(int x, int y) {
    const int d = x - y;
    return d >= 4 || (d == 3 && x % 3 == 0 && y % 3 == 0) || (d >= 2 && (x + y) % 6 == 0);
}

// Residue classes mod 6 and largest-part caps of the Q family.  The parts
// counted by i are the ones = 2 (mod 3), those counted by j are = 1 (mod 3);
// within the allowed residues these are single classes mod 6.  One cap is
// absolute, the other couples to the count of the absolutely-capped class.
struct QBounds {
    int ri, rj;          // residues mod 6 of the i- and j-counted parts
    std::int64_t cap_i, cap_j, cap_0;
};

inline QBounds q_bounds(int m, int N, int i, int j) {
    QBounds qb{};
    if (m == 1) {
        qb.ri = 2;
        qb.rj = 4;
        qb.cap_i = 6LL * N - 4;
        qb.cap_j = 6LL * (N - i) - 2;
    } else {
        qb.ri = 5;
        qb.rj = 1;
        qb.cap_j = 6LL * N - 5;
        qb.cap_i = 6LL * (N - j) - 1;
    }
    qb.cap_0 = 3LL * (N - i - j);
    return qb;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// membership predicates

inline bool satisfies(const PartitionClass& pc, const Partition& pi) {
    const auto& parts = pi.parts;
    switch (pc.family) {
        case Family::A:
        case Family::P: {
            if (pc.family == Family::P && !parts.empty() &&
                parts[0] > detail::p_largest_part_bound(pc.m, pc.index))
                return false;
            for (std::size_t t = 0; t < parts.size(); ++t) {
                const int pos = static_cast<int>(t) + 1;
                if (parts[t] % 3 == detail::ap_forbidden_residue(pc.m, pos)) return false;
                if (t + 1 < parts.size() &&
                    parts[t] - parts[t + 1] < detail::ap_min_gap(pc.m, pos))
                    return false;
            }
            return true;
        }
        case Family::C: {
            for (std::size_t t = 0; t < parts.size(); ++t) {
                const int r = parts[t] % 6;
                if (r == pc.m || r == 6 - pc.m) return false;
                if (t + 1 < parts.size() && parts[t] <= parts[t + 1]) return false;
            }
            return true;
        }
        case Family::D:
        case Family::G: {
            for (std::size_t t = 0; t < parts.size(); ++t) {
                if (parts[t] == pc.m) return false;
                if (pc.family == Family::G && parts[t] > pc.index) return false;
                if (t + 1 < parts.size() && !detail::capparelli_gap_ok(parts[t], parts[t + 1]))
                    return false;
            }
            return true;
        }
        case Family::Q: {
            const auto qb = detail::q_bounds(pc.m, pc.index, pc.i, pc.j);
            int ci = 0, cj = 0;
            for (std::size_t t = 0; t < parts.size(); ++t) {
                if (t + 1 < parts.size() && parts[t] <= parts[t + 1]) return false;
                const int r = parts[t] % 6;
                if (r == pc.m || r == 6 - pc.m) return false;
                if (r == qb.ri) {
                    if (parts[t] > qb.cap_i) return false;
                    ++ci;
                } else if (r == qb.rj) {
                    if (parts[t] > qb.cap_j) return false;
                    ++cj;
                } else {  // multiple of 3
                    if (parts[t] > qb.cap_0) return false;
                }
            }
            return ci == pc.i && cj == pc.j;
        }
    }
    return false;
}

// The replacement characterization of family A: all parts distinct, and the
// pair 3l+2, 3l+1 never appears as consecutive parts, together with the
// positional residue condition.
inline bool satisfies_alt_A(int m, const Partition& pi) {
    const auto& parts = pi.parts;
    for (std::size_t t = 0; t < parts.size(); ++t) {
        const int pos = static_cast<int>(t) + 1;
        if (parts[t] % 3 == detail::ap_forbidden_residue(m, pos)) return false;
        if (t + 1 < parts.size()) {
            if (parts[t] <= parts[t + 1]) return false;
            if (parts[t] == parts[t + 1] + 1 && parts[t] % 3 == 2) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// enumeration

namespace detail {

// Depth-first descent over parts, largest first.  Partitions are reported in
// lexicographically decreasing order of their parts lists.  In exact mode
// only partitions of norm `n` are reported; otherwise every member of norm
// <= n is, including the empty partition.
template <typename Emit>
void visit_class(const PartitionClass& pc, std::int64_t n, bool exact, Emit&& emit) {
    std::vector<int> cur;

    auto emit_cur = [&] {
        Partition pi;
        pi.parts = cur;
        emit(pi);
    };

    switch (pc.family) {
        case Family::A:
        case Family::P: {
            const std::optional<int> bound =
                pc.family == Family::P ? std::optional(p_largest_part_bound(pc.m, pc.index))
                                       : std::nullopt;
            auto rec = [&](auto&& self, int pos, int prev, std::int64_t remaining) -> void {
                if (exact ? remaining == 0 : true) emit_cur();
                if (remaining == 0) return;
                std::int64_t hi = remaining;
                if (pos == 1) {
                    if (bound) hi = std::min<std::int64_t>(hi, *bound);
                } else {
                    hi = std::min<std::int64_t>(hi, prev - ap_min_gap(pc.m, pos - 1));
                }
                for (std::int64_t y = hi; y >= 1; --y) {
                    if (y % 3 == ap_forbidden_residue(pc.m, pos)) continue;
                    cur.push_back(static_cast<int>(y));
                    self(self, pos + 1, static_cast<int>(y), remaining - y);
                    cur.pop_back();
                }
            };
            rec(rec, 1, 0, n);
            break;
        }
        case Family::C: {
            auto rec = [&](auto&& self, int prev, std::int64_t remaining) -> void {
                if (exact ? remaining == 0 : true) emit_cur();
                if (remaining == 0) return;
                std::int64_t hi = remaining;
                if (prev > 0) hi = std::min<std::int64_t>(hi, prev - 1);
                for (std::int64_t y = hi; y >= 1; --y) {
                    const int r = static_cast<int>(y % 6);
                    if (r == pc.m || r == 6 - pc.m) continue;
                    cur.push_back(static_cast<int>(y));
                    self(self, static_cast<int>(y), remaining - y);
                    cur.pop_back();
                }
            };
            rec(rec, 0, n);
            break;
        }
        case Family::D:
        case Family::G: {
            auto rec = [&](auto&& self, int prev, std::int64_t remaining) -> void {
                if (exact ? remaining == 0 : true) emit_cur();
                if (remaining == 0) return;
                std::int64_t hi = remaining;
                if (pc.family == Family::G) hi = std::min<std::int64_t>(hi, pc.index);
                if (prev > 0) hi = std::min<std::int64_t>(hi, prev - 2);
                for (std::int64_t y = hi; y >= 1; --y) {
                    if (y == pc.m) continue;
                    if (prev > 0 && !capparelli_gap_ok(prev, static_cast<int>(y))) continue;
                    cur.push_back(static_cast<int>(y));
                    self(self, static_cast<int>(y), remaining - y);
                    cur.pop_back();
                }
            };
            rec(rec, 0, n);
            break;
        }
        case Family::Q: {
            const auto qb = q_bounds(pc.m, pc.index, pc.i, pc.j);
            auto rec = [&](auto&& self, int prev, std::int64_t remaining, int ci, int cj) -> void {
                if ((exact ? remaining == 0 : true) && ci == pc.i && cj == pc.j) emit_cur();
                if (remaining == 0) return;
                std::int64_t hi = remaining;
                if (prev > 0) hi = std::min<std::int64_t>(hi, prev - 1);
                for (std::int64_t y = hi; y >= 1; --y) {
                    const int r = static_cast<int>(y % 6);
                    if (r == pc.m || r == 6 - pc.m) continue;
                    int ni = ci, nj = cj;
                    if (r == qb.ri) {
                        if (ci == pc.i || y > qb.cap_i) continue;
                        ++ni;
                    } else if (r == qb.rj) {
                        if (cj == pc.j || y > qb.cap_j) continue;
                        ++nj;
                    } else {
                        if (y > qb.cap_0) continue;
                    }
                    cur.push_back(static_cast<int>(y));
                    self(self, static_cast<int>(y), remaining - y, ni, nj);
                    cur.pop_back();
                }
            };
            rec(rec, 0, n, 0, 0);
            break;
        }
    }
}

inline std::int64_t class_norm_ceiling(const PartitionClass& pc) {
    // Bounded classes have strictly decreasing parts below their largest-part
    // caps, so the norm is at most the sum of every admissible value.
    switch (pc.family) {
        case Family::P: {
            const std::int64_t B = p_largest_part_bound(pc.m, pc.index);
            return B * (B + 1) / 2;
        }
        case Family::G: {
            const std::int64_t B = pc.index;
            return B * (B + 1) / 2;
        }
        case Family::Q: {
            const auto qb = q_bounds(pc.m, pc.index, pc.i, pc.j);
            std::int64_t total = 0;
            if (pc.i > 0 && qb.cap_i > 0) total += static_cast<std::int64_t>(pc.i) * qb.cap_i;
            if (pc.j > 0 && qb.cap_j > 0) total += static_cast<std::int64_t>(pc.j) * qb.cap_j;
            for (std::int64_t y = 3; y <= qb.cap_0; y += 3) total += y;
            return total;
        }
        default:
            throw UnboundedClassError("class " + pc.to_text() + " has unbounded norm");
    }
}

}  // namespace detail

// All partitions of exactly n in the class, lexicographically decreasing.
inline std::vector<Partition> enumerate(const PartitionClass& pc, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("enumerate: negative norm");
    std::vector<Partition> out;
    detail::visit_class(pc, n, /*exact=*/true, [&](const Partition& pi) { out.push_back(pi); });
    return out;
}

// All members with norm <= n_max, any family.
inline std::vector<Partition> enumerate_up_to(const PartitionClass& pc, std::int64_t n_max) {
    if (n_max < 0) throw std::invalid_argument("enumerate_up_to: negative norm bound");
    std::vector<Partition> out;
    detail::visit_class(pc, n_max, /*exact=*/false, [&](const Partition& pi) { out.push_back(pi); });
    return out;
}

// Every member of a bounded (hence finite) class.
inline std::vector<Partition> enumerate_all(const PartitionClass& pc) {
    return enumerate_up_to(pc, detail::class_norm_ceiling(pc));
}

// ---------------------------------------------------------------------------
// brute-force generating functions

// Sum over class members of a^i b^j q^norm with (i, j) from residue_stats.
// Unbounded families require max_norm; bounded families may omit it to get
// the full finite class.
inline QPoly oracle_genfun(const PartitionClass& pc, std::optional<std::int64_t> max_norm = {}) {
    if (!max_norm && !pc.bounded())
        throw UnboundedClassError("oracle_genfun over " + pc.to_text() + " needs a norm bound");
    const std::int64_t cap = max_norm ? *max_norm : detail::class_norm_ceiling(pc);
    QPoly out;
    detail::visit_class(pc, cap, /*exact=*/false, [&](const Partition& pi) {
        const auto [i, j] = residue_stats(pi);
        out += QPoly::term(1, i, j, pi.norm());
    });
    return out;
}

// The q-only series of the members with residue statistics exactly (i, j);
// meaningful for the bounded families P, Q, G.
inline QPoly oracle_genfun_ij(const PartitionClass& pc, int i, int j,
                              std::optional<std::int64_t> max_norm = {}) {
    if (!max_norm && !pc.bounded())
        throw UnboundedClassError("oracle_genfun_ij over " + pc.to_text() + " needs a norm bound");
    const std::int64_t cap = max_norm ? *max_norm : detail::class_norm_ceiling(pc);
    QPoly out;
    detail::visit_class(pc, cap, /*exact=*/false, [&](const Partition& pi) {
        if (residue_stats(pi) == std::pair(i, j)) out += QPoly::q(pi.norm());
    });
    return out;
}

// One full-class pass bucketed by residue statistics.
inline std::map<std::pair<int, int>, QPoly> oracle_genfun_by_stats(const PartitionClass& pc) {
    std::map<std::pair<int, int>, QPoly> out;
    detail::visit_class(pc, detail::class_norm_ceiling(pc), /*exact=*/false,
                        [&](const Partition& pi) {
                            out[residue_stats(pi)] += QPoly::q(pi.norm());
                        });
    return out;
}

// ---------------------------------------------------------------------------
// refined tables

// Map (n, i, j) -> count; zero counts are never stored.
struct RefinedTable {
    std::map<std::array<std::int64_t, 3>, std::int64_t> entries;

    std::int64_t count(std::int64_t n, std::int64_t i, std::int64_t j) const {
        auto it = entries.find({n, i, j});
        return it == entries.end() ? 0 : it->second;
    }
    void add(std::int64_t n, std::int64_t i, std::int64_t j) { ++entries[{n, i, j}]; }

    friend bool operator==(const RefinedTable& x, const RefinedTable& y) {
        return x.entries == y.entries;
    }
};

// The refined count table of a bounded-A class P(m, K) or of the Q(m, N)
// family swept over all target statistics.  Without n_max the table covers
// the class's full finite support.
inline RefinedTable refined_table(const PartitionClass& pc,
                                  std::optional<std::int64_t> n_max = {}) {
    RefinedTable table;
    if (pc.family == Family::P) {
        const std::int64_t cap = n_max ? *n_max : detail::class_norm_ceiling(pc);
        detail::visit_class(pc, cap, /*exact=*/false, [&](const Partition& pi) {
            const auto [i, j] = residue_stats(pi);
            table.add(pi.norm(), i, j);
        });
        return table;
    }
    if (pc.family == Family::Q) {
        const int N = pc.index;
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j + i <= N; ++j) {
                const auto cell = PartitionClass::Q(pc.m, N, i, j);
                const std::int64_t cap =
                    n_max ? *n_max : detail::class_norm_ceiling(cell);
                detail::visit_class(cell, cap, /*exact=*/false, [&](const Partition& pi) {
                    table.add(pi.norm(), i, j);
                });
            }
        }
        return table;
    }
    throw std::invalid_argument("refined_table: family must be bounded-A (P) or Q");
}

}  // namespace capq
