#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pdacc/combinatorics.hpp"
#include "pdacc/error.hpp"

namespace pdacc {

using SymbolId = std::int32_t;

/// Non-star cell of a column.
struct Entry {
    std::int32_t row = 0;
    SymbolId symbol = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Vector label (e, n_e) of a framework-built symbol.
struct SymbolLabel {
    std::vector<int> e;
    int n = 0;

    friend bool operator==(const SymbolLabel&, const SymbolLabel&) = default;
};

/// F x K placement delivery array.
///
/// Stored column-sparse: each column keeps its non-star cells sorted by row,
/// and a bitmap answers star lookups in O(1). Symbol ids are dense in [0,S).
/// Immutable after construction.
class Pda {
public:
    using Grid = std::vector<std::vector<std::optional<SymbolId>>>;

    Pda() = default;

    /// All-star F x K array.
    Pda(int rows, int cols) : Pda(rows, cols, std::vector<std::size_t>(static_cast<std::size_t>(cols) + 1, 0), {}, 0) {}

    /// Columns in CSC form: column k occupies entries[col_begin[k], col_begin[k+1]).
    Pda(int rows, int cols, std::vector<std::size_t> col_begin, std::vector<Entry> entries, int symbols)
        : rows_(rows), cols_(cols), symbols_(symbols), col_begin_(std::move(col_begin)), entries_(std::move(entries)) {
        validate_and_index();
    }

    /// Row-major grid, nullopt = star.
    static Pda from_grid(const Grid& grid) {
        const int F = static_cast<int>(grid.size());
        const int K = F == 0 ? 0 : static_cast<int>(grid.front().size());
        std::vector<std::size_t> col_begin(static_cast<std::size_t>(K) + 1, 0);
        SymbolId max_symbol = -1;
        for (const auto& row : grid) {
            if (static_cast<int>(row.size()) != K) throw Error(ErrorCode::InvalidPda, "ragged grid");
            for (int k = 0; k < K; ++k) {
                if (row[k]) {
                    ++col_begin[k + 1];
                    max_symbol = std::max(max_symbol, *row[k]);
                }
            }
        }
        std::partial_sum(col_begin.begin(), col_begin.end(), col_begin.begin());
        std::vector<Entry> entries(col_begin.back());
        auto fill = col_begin;
        for (int j = 0; j < F; ++j)
            for (int k = 0; k < K; ++k)
                if (grid[j][k]) entries[fill[k]++] = Entry{j, *grid[j][k]};
        return Pda(F, K, std::move(col_begin), std::move(entries), max_symbol + 1);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int symbol_count() const { return symbols_; }
    std::size_t non_star_count() const { return entries_.size(); }

    bool is_star(int row, int col) const {
        const auto bit = static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(col);
        return (star_bits_[bit >> 6] >> (bit & 63)) & 1u;
    }

    /// Same answer as is_star, read from column-major storage; scanning one
    /// column across many rows stays within a few cache lines.
    bool is_star_in_column(int col, int row) const {
        const auto bit = static_cast<std::size_t>(col) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(row);
        return (star_bits_by_col_[bit >> 6] >> (bit & 63)) & 1u;
    }

    std::optional<SymbolId> cell(int row, int col) const {
        if (is_star(row, col)) return std::nullopt;
        auto c = column(col);
        auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, int r) { return e.row < r; });
        return it->symbol;
    }

    std::span<const Entry> column(int col) const {
        return {entries_.data() + col_begin_[col], entries_.data() + col_begin_[col + 1]};
    }

    Grid to_grid() const {
        Grid g(static_cast<std::size_t>(rows_), std::vector<std::optional<SymbolId>>(static_cast<std::size_t>(cols_)));
        for (int k = 0; k < cols_; ++k)
            for (const auto& e : column(k)) g[e.row][k] = e.symbol;
        return g;
    }

    bool has_labels() const { return labeled_; }
    const std::vector<SymbolLabel>& labels() const { return labels_; }
    Pda with_labels(std::vector<SymbolLabel> labels) const& { return Pda(*this).with_labels(std::move(labels)); }
    Pda with_labels(std::vector<SymbolLabel> labels) && {
        if (static_cast<int>(labels.size()) != symbols_)
            throw Error(ErrorCode::InvalidPda, "label count differs from symbol count");
        labels_ = std::move(labels);
        labeled_ = true;
        return std::move(*this);
    }

    const nlohmann::json& meta() const { return meta_; }
    Pda with_meta(nlohmann::json meta) const& { return Pda(*this).with_meta(std::move(meta)); }
    Pda with_meta(nlohmann::json meta) && {
        meta_ = std::move(meta);
        return std::move(*this);
    }

    /// Exact equality: same shape and same cell contents. Labels and meta are ignored.
    friend bool operator==(const Pda& a, const Pda& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_begin_ == b.col_begin_ && a.entries_ == b.entries_;
    }

private:
    void validate_and_index() {
        if (rows_ < 0 || cols_ < 0) throw Error(ErrorCode::InvalidPda, "negative dimensions");
        if (col_begin_.size() != static_cast<std::size_t>(cols_) + 1 || col_begin_.front() != 0 ||
            col_begin_.back() != entries_.size())
            throw Error(ErrorCode::InvalidPda, "column offsets inconsistent with entries");
        const std::size_t cells = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
        star_bits_.assign((cells + 63) / 64, ~std::uint64_t{0});
        star_bits_by_col_.assign((cells + 63) / 64, ~std::uint64_t{0});
        std::vector<char> used(static_cast<std::size_t>(std::max(symbols_, 0)), 0);
        for (int k = 0; k < cols_; ++k) {
            if (col_begin_[k] > col_begin_[k + 1]) throw Error(ErrorCode::InvalidPda, "column offsets decrease");
            int prev = -1;
            for (const auto& e : column(k)) {
                if (e.row <= prev || e.row >= rows_)
                    throw Error(ErrorCode::InvalidPda, "column " + std::to_string(k) + " rows not strictly increasing in range");
                if (e.symbol < 0 || e.symbol >= symbols_)
                    throw Error(ErrorCode::InvalidPda, "symbol " + std::to_string(e.symbol) + " outside [0,S)");
                used[e.symbol] = 1;
                prev = e.row;
                const auto bit = static_cast<std::size_t>(e.row) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(k);
                star_bits_[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
                const auto tbit = static_cast<std::size_t>(k) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(e.row);
                star_bits_by_col_[tbit >> 6] &= ~(std::uint64_t{1} << (tbit & 63));
            }
        }
        for (int s = 0; s < symbols_; ++s)
            if (!used[s]) throw Error(ErrorCode::InvalidPda, "symbol ids have a gap at " + std::to_string(s));
    }

    int rows_ = 0;
    int cols_ = 0;
    int symbols_ = 0;
    std::vector<std::size_t> col_begin_{0};
    std::vector<Entry> entries_;
    std::vector<std::uint64_t> star_bits_;
    std::vector<std::uint64_t> star_bits_by_col_;
    std::vector<SymbolLabel> labels_;
    bool labeled_ = false;
    nlohmann::json meta_;
};

/// A cell position.
struct Cell {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Cells grouped by symbol; cells of each symbol in row-major order.
struct SymbolOccurrences {
    std::vector<std::size_t> begin; // size S + 1
    std::vector<Cell> cells;

    std::span<const Cell> of(SymbolId s) const { return {cells.data() + begin[s], cells.data() + begin[s + 1]}; }
};

inline SymbolOccurrences symbol_occurrences(const Pda& p) {
    SymbolOccurrences out;
    out.begin.assign(static_cast<std::size_t>(p.symbol_count()) + 1, 0);
    for (int k = 0; k < p.cols(); ++k)
        for (const auto& e : p.column(k)) ++out.begin[e.symbol + 1];
    std::partial_sum(out.begin.begin(), out.begin.end(), out.begin.begin());
    out.cells.resize(out.begin.back());
    auto fill = out.begin;
    for (int k = 0; k < p.cols(); ++k)
        for (const auto& e : p.column(k)) out.cells[fill[e.symbol]++] = Cell{e.row, k};
    for (int s = 0; s < p.symbol_count(); ++s)
        std::sort(out.cells.begin() + static_cast<std::ptrdiff_t>(out.begin[s]),
                  out.cells.begin() + static_cast<std::ptrdiff_t>(out.begin[s + 1]));
    return out;
}

// --- verification -----------------------------------------------------------

enum class ViolationKind { SameRow, SameColumn, CornerNotStar };

/// Two cells holding `symbol` that break C1; the 2x2 subarray is rows
/// {first.row, second.row} x columns {first.col, second.col}.
struct Violation {
    SymbolId symbol = 0;
    Cell first;
    Cell second;
    ViolationKind kind = ViolationKind::CornerNotStar;
};

struct PdaVerdict {
    bool accepted = true;
    std::optional<Violation> witness;

    explicit operator bool() const { return accepted; }
};

/// Checks C1: equal symbols sit in distinct rows and columns and the opposite
/// corners of their 2x2 subarray are stars.
inline PdaVerdict verify_pda(const Pda& p) {
    const auto occ = symbol_occurrences(p);
    std::vector<Cell> by_col;
    for (SymbolId s = 0; s < p.symbol_count(); ++s) {
        const auto cells = occ.of(s);
        for (std::size_t i = 1; i < cells.size(); ++i)
            if (cells[i].row == cells[i - 1].row)
                return {false, Violation{s, cells[i - 1], cells[i], ViolationKind::SameRow}};
        by_col.assign(cells.begin(), cells.end());
        std::sort(by_col.begin(), by_col.end(), [](const Cell& a, const Cell& b) { return a.col < b.col; });
        for (std::size_t i = 1; i < by_col.size(); ++i)
            if (by_col[i].col == by_col[i - 1].col)
                return {false, Violation{s, by_col[i - 1], by_col[i], ViolationKind::SameColumn}};
        for (std::size_t a = 0; a < cells.size(); ++a) {
            bool all = true;
            for (std::size_t b = a + 1; b < cells.size(); ++b)
                all &= p.is_star(cells[a].row, cells[b].col) & p.is_star_in_column(cells[a].col, cells[b].row);
            if (all) continue;
            for (std::size_t b = a + 1; b < cells.size(); ++b)
                if (!p.is_star(cells[a].row, cells[b].col) || !p.is_star_in_column(cells[a].col, cells[b].row))
                    return {false, Violation{s, cells[a], cells[b], ViolationKind::CornerNotStar}};
        }
    }
    return {};
}

inline std::vector<int> column_star_counts(const Pda& p) {
    std::vector<int> counts(static_cast<std::size_t>(p.cols()));
    for (int k = 0; k < p.cols(); ++k) counts[k] = p.rows() - static_cast<int>(p.column(k).size());
    return counts;
}

struct Regularity {
    std::optional<int> z;
    std::vector<int> star_counts;
};

/// C2: the common per-column star count, when there is one.
inline Regularity is_regular(const Pda& p) {
    Regularity r{std::nullopt, column_star_counts(p)};
    if (r.star_counts.empty() || std::all_of(r.star_counts.begin(), r.star_counts.end(),
                                             [&](int z) { return z == r.star_counts.front(); }))
        r.z = r.star_counts.empty() ? p.rows() : r.star_counts.front();
    return r;
}

struct PdaParams {
    int K = 0;
    int F = 0;
    std::vector<int> column_stars;
    std::optional<int> Z;
    int S = 0;
    Rational R{0};
    std::map<int, int> gain_histogram; // gain -> number of symbols
    int min_gain = 0;
    int max_gain = 0;

    std::int64_t total_non_star() const {
        std::int64_t total = 0;
        for (int z : column_stars) total += F - z;
        return total;
    }
};

inline PdaParams pda_params(const Pda& p) {
    PdaParams out;
    out.K = p.cols();
    out.F = p.rows();
    auto reg = is_regular(p);
    out.column_stars = std::move(reg.star_counts);
    out.Z = reg.z;
    out.S = p.symbol_count();
    out.R = out.F == 0 ? Rational(0) : Rational(out.S, out.F);
    std::vector<int> gain(static_cast<std::size_t>(out.S), 0);
    for (int k = 0; k < p.cols(); ++k)
        for (const auto& e : p.column(k)) ++gain[e.symbol];
    for (int g : gain) ++out.gain_histogram[g];
    if (!gain.empty()) {
        auto [lo, hi] = std::minmax_element(gain.begin(), gain.end());
        out.min_gain = *lo;
        out.max_gain = *hi;
    }
    return out;
}

/// Relabels symbols 0..S-1 by first appearance in a row-major scan; labels follow their symbols.
inline Pda normalize_symbols(const Pda& p) {
    const auto occ = symbol_occurrences(p);
    std::vector<SymbolId> order(static_cast<std::size_t>(p.symbol_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](SymbolId a, SymbolId b) { return occ.of(a).front() < occ.of(b).front(); });
    std::vector<SymbolId> rename(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rename[order[i]] = static_cast<SymbolId>(i);

    std::vector<std::size_t> col_begin(static_cast<std::size_t>(p.cols()) + 1, 0);
    std::vector<Entry> entries;
    entries.reserve(p.non_star_count());
    for (int k = 0; k < p.cols(); ++k) {
        for (const auto& e : p.column(k)) entries.push_back(Entry{e.row, rename[e.symbol]});
        col_begin[k + 1] = entries.size();
    }
    Pda out(p.rows(), p.cols(), std::move(col_begin), std::move(entries), p.symbol_count());
    if (p.has_labels()) {
        std::vector<SymbolLabel> labels(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) labels[i] = p.labels()[order[i]];
        out = out.with_labels(std::move(labels));
    }
    return out.with_meta(p.meta());
}

/// Equality up to a permutation of rows together with a consistent bijection of symbols.
/// Backtracking search; meant for the small arrays it is used on.
inline bool structurally_equal(const Pda& a, const Pda& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.symbol_count() != b.symbol_count() ||
        a.non_star_count() != b.non_star_count())
        return false;
    const int F = a.rows();
    const int K = a.cols();
    const auto ga = a.to_grid();
    const auto gb = b.to_grid();

    std::vector<int> row_map(static_cast<std::size_t>(F), -1);
    std::vector<char> taken(static_cast<std::size_t>(F), 0);
    std::vector<SymbolId> fwd(static_cast<std::size_t>(a.symbol_count()), -1);
    std::vector<SymbolId> back(static_cast<std::size_t>(b.symbol_count()), -1);

    auto try_row = [&](auto&& self, int j) -> bool {
        if (j == F) return true;
        for (int cand = 0; cand < F; ++cand) {
            if (taken[cand]) continue;
            std::vector<SymbolId> bound;
            bool ok = true;
            for (int k = 0; k < K && ok; ++k) {
                const auto& x = ga[j][k];
                const auto& y = gb[cand][k];
                if (x.has_value() != y.has_value()) {
                    ok = false;
                } else if (x) {
                    if (fwd[*x] == -1 && back[*y] == -1) {
                        fwd[*x] = *y;
                        back[*y] = *x;
                        bound.push_back(*x);
                    } else if (fwd[*x] != *y) {
                        ok = false;
                    }
                }
            }
            if (ok) {
                taken[cand] = 1;
                row_map[j] = cand;
                if (self(self, j + 1)) return true;
                taken[cand] = 0;
            }
            for (SymbolId s : bound) {
                back[fwd[s]] = -1;
                fwd[s] = -1;
            }
        }
        return false;
    };
    return try_row(try_row, 0);
}

// --- lower bounds -------------------------------------------------------------

struct LowerBoundReport {
    Rational load{0};
    Rational load_bound{0};       // (q-1)^t
    bool load_bound_holds = false; // R >= (q-1)^t
    bool load_bound_tight = false; // R == (q-1)^t
    std::int64_t subpacketization_bound = 0; // q^(m-t)
    std::optional<bool> subpacketization_bound_holds; // only evaluated when the load bound is tight
    bool subpacketization_bound_tight = false;

    /// True when nothing contradicts the bounds, i.e. no implementation bug is flagged.
    bool consistent() const { return load_bound_holds && subpacketization_bound_holds.value_or(true); }
};

/// Checks R >= (q-1)^t, and F >= q^(m-t) when R = (q-1)^t, for a framework PDA
/// with K = C(m,t) q^t and Z/F = 1 - ((q-1)/q)^t.
inline LowerBoundReport check_lower_bounds(const Pda& p, int m, int t, int q) {
    if (t < 1 || t > m || q < 2) throw Error(ErrorCode::PreconditionUnmet, "need 1 <= t <= m and q >= 2");
    const auto params = pda_params(p);
    if (static_cast<std::int64_t>(params.K) != binomial(m, t) * ipow(q, t))
        throw Error(ErrorCode::PreconditionUnmet, "K is not C(m,t) q^t");
    if (!params.Z) throw Error(ErrorCode::PreconditionUnmet, "per-column star count is not constant");
    const Rational memory(*params.Z, params.F);
    const Rational expected = Rational(1) - Rational(ipow(q - 1, t), ipow(q, t));
    if (memory != expected) throw Error(ErrorCode::PreconditionUnmet, "Z/F is not 1 - ((q-1)/q)^t");

    LowerBoundReport r;
    r.load = params.R;
    r.load_bound = Rational(ipow(q - 1, t));
    r.load_bound_holds = r.load >= r.load_bound;
    r.load_bound_tight = r.load == r.load_bound;
    r.subpacketization_bound = ipow(q, m - t);
    if (r.load_bound_tight) {
        r.subpacketization_bound_holds = params.F >= r.subpacketization_bound;
        r.subpacketization_bound_tight = params.F == r.subpacketization_bound;
    }
    return r;
}

// --- JSON ---------------------------------------------------------------------

inline nlohmann::ordered_json pda_to_json(const Pda& p) {
    nlohmann::ordered_json j;
    j["F"] = p.rows();
    j["K"] = p.cols();
    auto grid = nlohmann::ordered_json::array();
    for (const auto& row : p.to_grid()) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (c) r.push_back(*c);
            else r.push_back(nullptr);
        }
        grid.push_back(std::move(r));
    }
    j["grid"] = std::move(grid);
    if (p.has_labels()) {
        nlohmann::ordered_json labels = nlohmann::ordered_json::object();
        for (std::size_t s = 0; s < p.labels().size(); ++s)
            labels[std::to_string(s)] = {{"e", p.labels()[s].e}, {"n", p.labels()[s].n}};
        j["labels"] = std::move(labels);
    }
    if (!p.meta().is_null()) j["meta"] = nlohmann::ordered_json::parse(p.meta().dump());
    return j;
}

inline Pda pda_from_json(const nlohmann::json& j) {
    try {
        const int F = j.at("F").get<int>();
        const int K = j.at("K").get<int>();
        const auto& grid_json = j.at("grid");
        if (!grid_json.is_array() || static_cast<int>(grid_json.size()) != F)
            throw Error(ErrorCode::ParseError, "grid must be an array of F rows");
        Pda::Grid grid;
        grid.reserve(static_cast<std::size_t>(F));
        for (const auto& row : grid_json) {
            if (!row.is_array() || static_cast<int>(row.size()) != K)
                throw Error(ErrorCode::ParseError, "every grid row must hold K cells");
            auto& out = grid.emplace_back();
            for (const auto& c : row) {
                if (c.is_null()) out.emplace_back(std::nullopt);
                else if (c.is_number_integer()) out.emplace_back(c.get<SymbolId>());
                else throw Error(ErrorCode::ParseError, "cell must be null or an integer");
            }
        }
        Pda p = F == 0 ? Pda(0, K) : Pda::from_grid(grid);
        if (j.contains("labels")) {
            std::vector<SymbolLabel> labels(static_cast<std::size_t>(p.symbol_count()));
            for (const auto& [key, value] : j.at("labels").items()) {
                const int id = std::stoi(key);
                if (id < 0 || id >= p.symbol_count()) throw Error(ErrorCode::ParseError, "label for unknown symbol " + key);
                labels[id] = SymbolLabel{value.at("e").get<std::vector<int>>(), value.at("n").get<int>()};
            }
            p = p.with_labels(std::move(labels));
        }
        if (j.contains("meta")) p = p.with_meta(j.at("meta"));
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("PDA JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "PDA JSON: label keys must be integers");
    }
}

} // namespace pdacc
