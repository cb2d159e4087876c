// capq - command-line surface for the exact q-series toolkit.
//
// Subcommands:
//   table    list the partitions of n in class A, C, or D
//   count    count them instead of listing
//   series   print one generating function exactly
//   verify   run a verification suite and report
//
// Exit codes: 0 success, 1 mathematical discrepancy found, 2 usage error.
// Data output (stdout or --output) is byte-deterministic for fixed flags;
// timing goes to stderr, and into JSON reports only with --timings.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "capq/capq.hpp"

namespace {

using namespace capq;

void write_out(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--output", "cannot open " + output_path);
    out << payload;
}

std::string poly_csv(const QPoly& p) {
    std::string s = "ea,eb,eq,coeff\n";
    for (const auto& [m, c] : p.terms())
        s += std::to_string(m.ea) + "," + std::to_string(m.eb) + "," + std::to_string(m.eq) +
             "," + c.str() + "\n";
    return s;
}

PartitionClass make_table_class(const std::string& cls, int m) {
    if (cls == "A") return PartitionClass::A(m);
    if (cls == "C") return PartitionClass::C(m);
    return PartitionClass::D(m);
}

int run_table(const std::string& cls, int m, long long n, const std::string& format,
              const std::string& output) {
    const auto partitions = enumerate(make_table_class(cls, m), n);
    std::string payload;
    if (format == "json") {
        nlohmann::json j{{"class", cls}, {"m", m}, {"n", n}, {"count", partitions.size()}};
        auto list = nlohmann::json::array();
        for (const auto& pi : partitions) list.push_back(pi.to_text());
        j["partitions"] = list;
        payload = j.dump(2) + "\n";
    } else if (format == "csv") {
        payload = "partition\n";
        for (const auto& pi : partitions) payload += "\"" + pi.to_text() + "\"\n";
    } else {
        payload = cls + "_" + std::to_string(m) + "(" + std::to_string(n) +
                  ") = " + std::to_string(partitions.size()) + "\n";
        for (const auto& pi : partitions) payload += pi.to_text() + "\n";
    }
    write_out(payload, output);
    return 0;
}

int run_count(const std::string& cls, int m, long long n, bool upto, const std::string& format,
              const std::string& output) {
    const PartitionClass pc = make_table_class(cls, m);
    std::vector<long long> counts(n + 1, 0);
    detail::visit_class(pc, n, /*exact=*/false,
                        [&](const Partition& pi) { ++counts[pi.norm()]; });
    std::string payload;
    if (upto) {
        if (format == "json") {
            auto arr = nlohmann::json::array();
            for (long long k = 0; k <= n; ++k)
                arr.push_back({{"n", k}, {"count", counts[k]}});
            payload = arr.dump(2) + "\n";
        } else {
            payload = "n,count\n";
            for (long long k = 0; k <= n; ++k)
                payload += std::to_string(k) + "," + std::to_string(counts[k]) + "\n";
        }
    } else {
        if (format == "json") {
            nlohmann::json j{{"class", cls}, {"m", m}, {"n", n}, {"count", counts[n]}};
            payload = j.dump(2) + "\n";
        } else if (format == "csv") {
            payload = "n,count\n" + std::to_string(n) + "," + std::to_string(counts[n]) + "\n";
        } else {
            payload = std::to_string(counts[n]) + "\n";
        }
    }
    write_out(payload, output);
    return 0;
}

int run_series(const std::string& family, int m, int index, std::optional<int> i,
               std::optional<int> j, const std::string& format, const std::string& output) {
    auto need_ij = [&]() {
        if (!i || !j)
            throw CLI::RequiredError("--i and --j (family " + family + ")");
    };
    QPoly p;
    if (family == "P") {
        need_ij();
        p = p_closed(m, index, *i, *j);
    } else if (family == "Q") {
        need_ij();
        p = oracle_genfun_ij(PartitionClass::Q(m, index, *i, *j), *i, *j);
    } else if (family == "Psi") {
        p = psi(m, index);
    } else if (family == "G") {
        p = g_recursive(m, index);
    } else if (family == "S") {
        p = s_poly(index);
    } else if (family == "T") {
        p = t_poly(index);
    } else if (family == "BouletLHS") {
        need_ij();
        p = boulet_lhs(index, *i, *j);
    } else {  // BouletRHS
        need_ij();
        p = boulet_rhs(index, *i, *j);
    }

    std::string payload;
    if (format == "json") {
        nlohmann::json jj{{"family", family}, {"index", index}, {"terms", p.to_json()}};
        if (family == "P" || family == "Q" || family == "Psi" || family == "G") jj["m"] = m;
        if (i) jj["i"] = *i;
        if (j) jj["j"] = *j;
        payload = jj.dump(2) + "\n";
    } else if (format == "csv") {
        payload = poly_csv(p);
    } else {
        payload = p.to_text() + "\n";
    }
    write_out(payload, output);
    return 0;
}

int run_verify(const std::string& suite, std::optional<int> m_opt, long long max_n, int max_N,
               int max_K, int max_i, int max_j, bool full, bool timings,
               const std::string& format, const std::string& output) {
    std::vector<int> ms = m_opt ? std::vector{*m_opt} : std::vector{1, 2};
    std::vector<VerificationReport> reports;

    auto want = [&](const std::string& s) { return suite == s || suite == "all"; };
    for (int m : ms) {
        if (want("companion")) reports.push_back(check_companion(m, max_n, full));
        if (want("capparelli")) reports.push_back(check_capparelli(m, max_n, full));
        if (want("refined")) reports.push_back(check_refined(m, max_N, full));
        if (want("genfunc")) reports.push_back(check_genfunc_routes(m, max_K, max_i, max_j, full));
        if (want("gseries")) reports.push_back(check_g_routes(m, max_K, full));
        if (want("divisibility")) reports.push_back(check_divisibility(m, max_N, full));
        if (want("dominance")) reports.push_back(check_dominance(m, max_N, full));
        if (want("limit")) reports.push_back(check_limit_window(m, max_N, full));
    }
    if (want("boulet")) reports.push_back(check_boulet(max_N, full));

    std::string payload;
    if (format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(r.to_json(timings));
        payload = arr.dump(2) + "\n";
    } else if (format == "csv") {
        payload = "check,m,status\n";
        for (const auto& r : reports) {
            const auto it = r.range.find("m");
            payload += r.check + "," +
                       (it == r.range.end() ? "" : std::to_string(it->second)) + "," +
                       to_string(r.status) + "\n";
        }
    } else {
        for (const auto& r : reports) payload += r.to_text() + "\n";
    }
    write_out(payload, output);

    bool ok = true;
    for (const auto& r : reports) {
        std::cerr << "suite " << r.check;
        if (auto it = r.range.find("m"); it != r.range.end()) std::cerr << " (m=" << it->second << ")";
        std::cerr << ": " << to_string(r.status) << " in " << r.elapsed_ms << " ms\n";
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series toolkit for Capparelli-type partition identities"};
    app.require_subcommand(1);
    app.fallthrough();  // global --format/--output may follow the subcommand

    std::string format = "text";
    std::string output;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--output", output, "write data output to a file instead of stdout");

    const auto m_values = CLI::IsMember({1, 2});

    // table
    auto* table = app.add_subcommand("table", "list the partitions of n in a class");
    std::string t_class;
    int t_m = 1;
    long long t_n = 0;
    table->add_option("--class", t_class, "partition class")
        ->required()
        ->check(CLI::IsMember({"A", "C", "D"}));
    table->add_option("--m", t_m, "class parameter m")->required()->check(m_values);
    table->add_option("--n", t_n, "norm")->required()->check(CLI::NonNegativeNumber);

    // count
    auto* count = app.add_subcommand("count", "count the partitions of n in a class");
    std::string c_class;
    int c_m = 1;
    long long c_n = 0;
    bool c_upto = false;
    count->add_option("--class", c_class, "partition class")
        ->required()
        ->check(CLI::IsMember({"A", "C", "D"}));
    count->add_option("--m", c_m, "class parameter m")->required()->check(m_values);
    count->add_option("--n", c_n, "norm")->required()->check(CLI::NonNegativeNumber);
    count->add_flag("--upto", c_upto, "print counts for every norm up to n");

    // series
    auto* series = app.add_subcommand("series", "print one generating function");
    std::string s_family;
    int s_m = 1, s_index = 0;
    std::optional<int> s_i, s_j;
    series->add_option("--family", s_family, "series family")
        ->required()
        ->check(CLI::IsMember({"P", "Q", "Psi", "G", "S", "T", "BouletLHS", "BouletRHS"}));
    series->add_option("--m", s_m, "class parameter m")->check(m_values);
    series->add_option("--index", s_index, "series index")->required();
    series->add_option("--i", s_i, "count of parts = 2 mod 3");
    series->add_option("--j", s_j, "count of parts = 1 mod 3");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    std::optional<int> v_m;
    long long v_max_n = 40;
    int v_max_N = 6, v_max_K = 12, v_max_i = 8, v_max_j = 8;
    bool v_full = false, v_timings = false;
    verify->add_option("--suite", v_suite, "verification suite")
        ->required()
        ->check(CLI::IsMember({"companion", "capparelli", "refined", "genfunc", "gseries",
                               "divisibility", "boulet", "dominance", "limit", "all"}));
    verify->add_option("--m", v_m, "restrict to one m (default: both)")->check(m_values);
    verify->add_option("--max-n", v_max_n, "largest norm swept")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-N", v_max_N, "largest N swept")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-K", v_max_K, "largest series index swept")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--max-i", v_max_i, "largest i swept")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-j", v_max_j, "largest j swept")->check(CLI::NonNegativeNumber);
    verify->add_flag("--full", v_full, "collect every discrepancy instead of the first");
    verify->add_flag("--timings", v_timings, "include elapsed_ms in JSON reports");

    try {
        app.parse(argc, argv);
        if (table->parsed()) return run_table(t_class, t_m, t_n, format, output);
        if (count->parsed()) return run_count(c_class, c_m, c_n, c_upto, format, output);
        if (series->parsed())
            return run_series(s_family, s_m, s_index, s_i, s_j, format, output);
        return run_verify(v_suite, v_m, v_max_n, v_max_N, v_max_K, v_max_i, v_max_j, v_full,
                          v_timings, format, output);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
