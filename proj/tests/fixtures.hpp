#pragma once

// Reference arrays from the worked examples, transcribed by hand, plus helpers
// to turn label grids into Pda objects.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdacc/pdacc.hpp"

namespace fixtures {

using pdacc::Pda;

inline constexpr int X = -1; // star

/// The (6,4,2,4) array: four packets, six users, each symbol shared by three users.
inline Pda six_user_array() {
    const int g[4][6] = {
        {X, X, X, 0, 1, 2},
        {X, 0, 1, X, X, 3},
        {0, X, 2, X, 3, X},
        {1, 2, X, 3, X, X},
    };
    Pda::Grid grid(4, std::vector<std::optional<pdacc::SymbolId>>(6));
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 6; ++k)
            if (g[j][k] != X) grid[j][k] = g[j][k];
    return Pda::from_grid(grid);
}

/// Packets cached by each user of six_user_array().
inline std::vector<std::vector<int>> six_user_caches() {
    return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
}

/// Demand d_k = k on six_user_array(): signal s is the XOR of W_{file,packet}
/// over the listed pairs.
inline std::vector<std::vector<std::pair<int, int>>> six_user_delivery() {
    return {
        {{0, 2}, {1, 1}, {3, 0}},
        {{0, 3}, {2, 1}, {4, 0}},
        {{1, 3}, {2, 2}, {5, 0}},
        {{3, 3}, {4, 2}, {5, 1}},
    };
}

inline std::vector<int> bits(const std::string& s) {
    std::vector<int> v;
    for (char c : s) v.push_back(c - '0');
    return v;
}

/// A labelled array as printed: row vectors, column headers and cell labels
/// ("" = star). A label is the vector e followed by n_e when present.
struct LabelledArray {
    std::vector<std::string> rows;
    std::vector<pdacc::ColumnIndex> columns;
    std::vector<std::vector<std::string>> cells;
};

/// Pda with ids assigned by first appearance in a row-major scan.
inline Pda to_pda(const LabelledArray& a) {
    std::map<std::string, int> ids;
    Pda::Grid grid(a.cells.size(), std::vector<std::optional<pdacc::SymbolId>>(a.columns.size()));
    for (std::size_t j = 0; j < a.cells.size(); ++j)
        for (std::size_t k = 0; k < a.cells[j].size(); ++k)
            if (!a.cells[j][k].empty())
                grid[j][k] = ids.try_emplace(a.cells[j][k], static_cast<int>(ids.size())).first->second;
    return Pda::from_grid(grid);
}

/// Parity rows in the order they are listed in the binary worked example.
inline pdacc::RowIndexMatrix parity_rows_listed() {
    return {3, 2, {bits("000"), bits("101"), bits("011"), bits("110")}};
}

/// The 4 x 12 array built from parity_rows_listed() and all columns of
/// [0,3) choose 2 times [0,2)^2; labels are e followed by n_e.
inline LabelledArray parity_array() {
    LabelledArray a;
    a.rows = {"000", "101", "011", "110"};
    for (auto T : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}})
        for (auto b : {"00", "10", "01", "11"}) a.columns.push_back({T, bits(b)});
    const std::string _;
    a.cells = {
        {_, _, _, "1100", _, _, _, "1010", _, _, _, "0110"},
        {_, _, "0110", _, "0000", _, _, _, _, "1100", _, _},
        {_, "1010", _, _, _, "1100", _, _, "0000", _, _, _},
        {"0000", _, _, _, _, _, "0110", _, _, _, "1010", _},
    };
    return a;
}

/// The 6 x 12 weight-two array (m=4, s=t=2, omega=1) in its printed order:
/// rows colex-descending, T in colex order, b in {10, 01}. Labels omit n_e.
inline LabelledArray weight_two_array() {
    LabelledArray a;
    a.rows = {"1100", "1010", "1001", "0110", "0101", "0011"};
    for (auto T : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}})
        for (auto b : {"10", "01"}) a.columns.push_back({T, bits(b)});
    const std::string _;
    a.cells = {
        {_, _, _, "0110", _, "1010", _, "0101", _, "1001", _, _},
        {_, "0110", _, _, "1100", _, _, "0011", _, _, _, "1001"},
        {_, "0101", _, "0011", _, _, _, _, "1100", _, "1010", _},
        {"1010", _, "1100", _, _, _, _, _, _, "0011", _, "0101"},
        {"1001", _, _, _, _, "0011", "1100", _, _, _, "0110", _},
        {_, _, "1001", _, "0101", _, "1010", _, "0110", _, _, _},
    };
    return a;
}

/// The printed array with its columns permuted into the given order; empty
/// when some header is missing.
inline std::optional<LabelledArray> in_column_order(const LabelledArray& printed, const pdacc::ColumnIndexSet& columns) {
    LabelledArray out = printed;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        std::size_t src = 0;
        while (src < printed.columns.size() && !(printed.columns[src] == columns.columns[k])) ++src;
        if (src == printed.columns.size()) return std::nullopt;
        out.columns[k] = printed.columns[src];
        for (std::size_t j = 0; j < printed.rows.size(); ++j) out.cells[j][k] = printed.cells[j][src];
    }
    return out;
}

/// Label text of a constructed cell, in the printed format (n_e appended
/// only when with_n is set).
inline std::string label_text(const Pda& p, int row, int col, bool with_n) {
    const auto s = p.cell(row, col);
    if (!s) return "";
    std::string out;
    for (int x : p.labels()[*s].e) out += static_cast<char>('0' + x);
    if (with_n) out += std::to_string(p.labels()[*s].n);
    return out;
}

/// Compares a constructed PDA against a printed array after matching rows by
/// their vectors and columns by their (T, b) headers. Returns the mismatching
/// cells as "row/col" strings.
inline std::vector<std::string> label_mismatches(const Pda& built, const pdacc::RowIndexMatrix& rows,
                                                 const pdacc::ColumnIndexSet& columns, const LabelledArray& printed,
                                                 bool with_n) {
    std::vector<std::string> bad;
    if (built.rows() != static_cast<int>(printed.rows.size()) ||
        built.cols() != static_cast<int>(printed.columns.size()))
        return {"shape"};
    for (std::size_t j = 0; j < printed.rows.size(); ++j) {
        int bj = -1;
        for (std::size_t r = 0; r < rows.rows.size(); ++r)
            if (rows.rows[r] == bits(printed.rows[j])) bj = static_cast<int>(r);
        for (std::size_t k = 0; k < printed.columns.size(); ++k) {
            int bk = -1;
            for (std::size_t c = 0; c < columns.columns.size(); ++c)
                if (columns.columns[c] == printed.columns[k]) bk = static_cast<int>(c);
            if (bj < 0 || bk < 0 || label_text(built, bj, bk, with_n) != printed.cells[j][k])
                bad.push_back(printed.rows[j] + "/" + std::to_string(k));
        }
    }
    return bad;
}

} // namespace fixtures
