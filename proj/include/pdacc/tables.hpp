#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pdacc/combinatorics.hpp"
#include "pdacc/error.hpp"
#include "pdacc/schemes.hpp"

namespace pdacc {

/// Decimal rendering of a non-negative rational, rounded half-up to `digits`
/// places. With strip_zeros, trailing fractional zeros (and a bare point) go.
inline std::string render_decimal(const BigRational& x, int digits, bool strip_zeros = false) {
    if (x < 0) throw Error(ErrorCode::BadParams, "render_decimal expects a non-negative value");
    const BigInt scale = big_pow(10, digits);
    const BigRational scaled = x * BigRational(scale) + BigRational(1, 2);
    const BigInt r = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    const BigInt whole = r / scale;
    if (digits == 0) return whole.str();
    std::string frac = BigInt(r % scale).str();
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    if (strip_zeros)
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? whole.str() : whole.str() + "." + frac;
}

/// Rendered rows of one comparison table.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const Table& table) {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
            if (!quote) {
                out << cells[i];
                continue;
            }
            out << '"';
            for (char c : cells[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
            out << '"';
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    return out.str();
}

inline nlohmann::ordered_json to_json(const Table& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < table.header.size(); ++i) obj[table.header[i]] = r[i];
        rows.push_back(std::move(obj));
    }
    return nlohmann::ordered_json{{"table", table.name}, {"rows", std::move(rows)}};
}

/// Parameters (m, s, t, omega) of the four rows in the omega comparison.
inline const std::vector<SchemeSpec>& omega_table_specs() {
    static const std::vector<SchemeSpec> specs = {
        {Family::Theorem3, 10, 3, 2, 4, 2},
        {Family::Theorem3, 10, 3, 2, 5, 0},
        {Family::Theorem3, 10, 3, 2, 4, 0},
        {Family::Theorem3, 10, 3, 2, 4, 1},
    };
    return specs;
}

/// theorem3 instances with omega = 0 and omega > 0; M/N and R to 5 places.
inline Table omega_table() {
    Table t{"omega", {"scheme", "K", "M/N", "F", "R", "gain", "omega", "m", "s", "t"}, {}};
    int index = 1;
    for (const auto& spec : omega_table_specs()) {
        const auto p = predict(spec);
        t.rows.push_back({"Scheme " + std::to_string(index++), p.K.str(), render_decimal(p.memory_ratio(), 5, true),
                          p.F.str(), render_decimal(p.R, 5, true), p.gain->str(), std::to_string(spec.omega),
                          std::to_string(spec.m), std::to_string(spec.s), std::to_string(spec.t)});
    }
    return t;
}

/// (m, q) pairs of the theorem6 vs theorem7 comparison, t = 2.
inline const std::vector<std::pair<int, int>>& thm6_vs_thm7_points() {
    static const std::vector<std::pair<int, int>> points = {{10, 11}, {20, 23}, {30, 31}, {40, 41}};
    return points;
}

/// Same K and M/N; ratios R1/R2 and F1/F2 of the two schemes, 4 places.
inline Table thm6_vs_thm7_table(int t = 2) {
    Table table{"thm6-vs-thm7", {"m", "q", "K", "M/N", "R1/R2", "F1/F2"}, {}};
    for (const auto& [m, q] : thm6_vs_thm7_points()) {
        const auto p6 = predict({Family::Theorem6, m, t, q, 0, 0});
        const auto p7 = predict({Family::Theorem7, m, t, q, 0, 0});
        const BigRational f_ratio(p6.F, p7.F);
        table.rows.push_back({std::to_string(m), std::to_string(q), p6.K.str(),
                              render_decimal(p6.memory_ratio(), 4), render_decimal(p6.R / p7.R, 4),
                              render_decimal(f_ratio, 4, true)});
    }
    return table;
}

/// The three new families with their closed forms, each instantiated at a small example.
inline Table main_table() {
    Table t{"main",
            {"scheme", "conditions", "K", "M/N", "R", "F", "example", "K_example", "M/N_example", "R_example",
             "F_example"},
            {}};
    struct Row {
        const char* scheme;
        const char* conditions;
        const char* K;
        const char* MN;
        const char* R;
        const char* F;
        SchemeSpec example;
        const char* example_label;
    };
    const Row rows[] = {
        {"theorem3", "0<=omega<=t<=s, s+t-2omega<=m", "C(t,omega)C(m,t)", "1-C(m-t,s-omega)/C(m,s)",
         "C(m,s+t-2omega)/C(m,s)", "C(m,s)", {Family::Theorem3, 4, 2, 2, 2, 1}, "m=4 s=2 t=2 omega=1"},
        {"theorem6", "0<t<m, q>=2", "C(m,t)q^t", "1-((q-1)/q)^t", "(q-1)^t", "q^(m-1)",
         {Family::Theorem6, 3, 2, 2, 0, 0}, "m=3 t=2 q=2"},
        {"theorem7", "2t<=m, q prime power, [m,m-t]_q MDS code", "C(m,t)q^t", "1-((q-1)/q)^t", "q^t-1",
         "q^(m-t)", {Family::Theorem7, 4, 2, 3, 0, 0}, "m=4 t=2 q=3"},
    };
    for (const auto& r : rows) {
        const auto p = predict(r.example);
        t.rows.push_back({r.scheme, r.conditions, r.K, r.MN, r.R, r.F, r.example_label, p.K.str(),
                          render_decimal(p.memory_ratio(), 5, true), render_decimal(p.R, 5, true), p.F.str()});
    }
    return t;
}

inline Table comparison_table(std::string_view name) {
    if (name == "main") return main_table();
    if (name == "omega") return omega_table();
    if (name == "thm6-vs-thm7") return thm6_vs_thm7_table();
    throw Error(ErrorCode::BadParams, "unknown table '" + std::string(name) + "'");
}

} // namespace pdacc
