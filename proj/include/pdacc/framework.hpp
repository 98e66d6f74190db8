#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "pdacc/combinatorics.hpp"
#include "pdacc/designs.hpp"
#include "pdacc/error.hpp"
#include "pdacc/pda.hpp"

namespace pdacc {

/// One user: positions T (strictly increasing t-subset of [0,m)) and values b over [0,q).
struct ColumnIndex {
    std::vector<int> T;
    std::vector<int> b;

    friend auto operator<=>(const ColumnIndex&, const ColumnIndex&) = default;
};

/// Ordered list of distinct column indices sharing m, t and q.
struct ColumnIndexSet {
    int m = 0;
    int t = 0;
    int q = 0;
    std::vector<ColumnIndex> columns;

    std::size_t size() const { return columns.size(); }

    friend bool operator==(const ColumnIndexSet&, const ColumnIndexSet&) = default;
};

inline void validate(const ColumnIndexSet& set) {
    if (set.t < 1 || set.t > set.m || set.q < 2)
        throw Error(ErrorCode::ParamMismatch, "column index set needs 1 <= t <= m and q >= 2");
    std::set<ColumnIndex> seen;
    for (const auto& c : set.columns) {
        if (static_cast<int>(c.T.size()) != set.t || static_cast<int>(c.b.size()) != set.t)
            throw Error(ErrorCode::ParamMismatch, "column index with |T| or |b| != t");
        for (int h = 0; h < set.t; ++h) {
            if (c.T[h] < 0 || c.T[h] >= set.m || (h > 0 && c.T[h] <= c.T[h - 1]))
                throw Error(ErrorCode::ParamMismatch, "T must be strictly increasing inside [0,m)");
            if (c.b[h] < 0 || c.b[h] >= set.q) throw Error(ErrorCode::ParamMismatch, "b entry outside [0,q)");
        }
        if (!seen.insert(c).second) throw Error(ErrorCode::ParamMismatch, "duplicate column index");
    }
}

/// All C(m,t) q^t column indices: T in lex order, and within each T the
/// vector b with coordinate 0 varying fastest.
inline ColumnIndexSet full_column_set(int m, int t, int q) {
    if (t < 1 || t > m || q < 2) throw Error(ErrorCode::BadParams, "full_column_set needs 0 < t <= m, q >= 2");
    ColumnIndexSet out{m, t, q, {}};
    const auto bs = tuples_first_fastest(t, q);
    for (const auto& T : subsets_lex(m, t))
        for (const auto& b : bs) out.columns.push_back({T, b});
    return out;
}

/// Binary column indices whose b has weight t - omega; C(m,t) C(t,omega) columns.
inline ColumnIndexSet weight_column_set(int m, int t, int omega) {
    if (t < 1 || t > m || omega < 0 || omega > t)
        throw Error(ErrorCode::BadParams, "weight_column_set needs 0 <= omega <= t <= m, t >= 1");
    ColumnIndexSet out{m, t, 2, {}};
    std::vector<std::vector<int>> bs;
    for (const auto& b : tuples_first_fastest(t, 2))
        if (weight(b) == t - omega) bs.push_back(b);
    for (const auto& T : subsets_lex(m, t))
        for (const auto& b : bs) out.columns.push_back({T, b});
    return out;
}

namespace detail {

// Rows of the matrix grouped by their projection onto T (code, coordinate 0 most significant).
struct ProjectionBuckets {
    std::vector<std::vector<int>> rows_by_code;
};

} // namespace detail

/// Builds the framework PDA for a row index matrix and column index set.
///
/// Cell (f, (T,b)) is a star unless f and b differ on every position of T; then
/// it holds the label (e, n_e) where e equals b on T and f elsewhere and n_e
/// counts earlier rows (matrix order) of the same column with the same e.
/// Integer ids follow first appearance in a row-major scan.
inline Pda construct(const RowIndexMatrix& matrix, const ColumnIndexSet& columns) {
    validate(matrix);
    validate(columns);
    if (matrix.m != columns.m || matrix.q != columns.q)
        throw Error(ErrorCode::ParamMismatch, "row index matrix and column index set disagree on m or q");
    const int m = matrix.m;
    const int q = matrix.q;
    const int t = columns.t;
    const auto F = static_cast<std::int64_t>(matrix.rows.size());
    const auto K = static_cast<std::int64_t>(columns.size());
    if (F > std::numeric_limits<std::int32_t>::max() || K > std::numeric_limits<std::int32_t>::max())
        throw Error(ErrorCode::BadParams, "array too large");
    if (big_pow(q, m) * (F + 1) >= BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw Error(ErrorCode::BadParams, "label space q^m * F exceeds 64 bits");

    std::vector<std::uint64_t> place(static_cast<std::size_t>(m));
    std::uint64_t weight_of_position = 1;
    for (int i = m - 1; i >= 0; --i) {
        place[i] = weight_of_position;
        weight_of_position *= static_cast<std::uint64_t>(q);
    }
    std::vector<std::uint64_t> row_code(static_cast<std::size_t>(F));
    for (std::int64_t j = 0; j < F; ++j) row_code[j] = encode_vector(matrix.rows[j], q);

    // Bucketing pays off when enumerating the (q-1)^t all-different projections
    // is cheaper than scanning every row.
    const BigInt proj_space = big_pow(q, t);
    const BigInt differ_count = big_pow(q - 1, t);
    const bool use_buckets = proj_space <= (1 << 22) && differ_count < F;
    std::map<std::vector<int>, detail::ProjectionBuckets> buckets;

    const bool dense = big_pow(q, m) <= BigInt(1) << 26;
    const std::size_t space = dense ? static_cast<std::size_t>(ipow(q, m)) : 0;

    std::vector<std::size_t> col_begin(static_cast<std::size_t>(K) + 1, 0);
    std::vector<Entry> entries;
    std::vector<int> hits;
    std::vector<char> row_mark(static_cast<std::size_t>(F), 0);
    std::vector<std::uint64_t> entry_code;
    std::vector<int> seen(space, 0);
    std::vector<int> max_n(space, -1);
    std::vector<std::uint64_t> touched;
    std::unordered_map<std::uint64_t, int> sparse_seen;
    std::vector<int> digit(static_cast<std::size_t>(t));

    for (std::int64_t k = 0; k < K; ++k) {
        const auto& [T, b] = columns.columns[k];
        hits.clear();
        if (use_buckets) {
            auto it = buckets.find(T);
            if (it == buckets.end()) {
                detail::ProjectionBuckets pb;
                pb.rows_by_code.resize(static_cast<std::size_t>(proj_space));
                for (std::int64_t j = 0; j < F; ++j) {
                    std::uint64_t c = 0;
                    for (int h = 0; h < t; ++h) c = c * q + static_cast<std::uint64_t>(matrix.rows[j][T[h]]);
                    pb.rows_by_code[c].push_back(static_cast<int>(j));
                }
                it = buckets.emplace(T, std::move(pb)).first;
            }
            // walk every projection differing from b in all t positions
            std::fill(digit.begin(), digit.end(), 0);
            while (true) {
                std::uint64_t c = 0;
                for (int h = 0; h < t; ++h) {
                    const int v = digit[h] < b[h] ? digit[h] : digit[h] + 1;
                    c = c * q + static_cast<std::uint64_t>(v);
                }
                const auto& rows = it->second.rows_by_code[c];
                hits.insert(hits.end(), rows.begin(), rows.end());
                int h = t - 1;
                while (h >= 0 && digit[h] == q - 2) digit[h--] = 0;
                if (h < 0) break;
                ++digit[h];
            }
            if (hits.size() * 16 < static_cast<std::size_t>(F)) {
                std::sort(hits.begin(), hits.end());
            } else {
                for (int j : hits) row_mark[j] = 1;
                hits.clear();
                for (std::int64_t j = 0; j < F; ++j)
                    if (row_mark[j]) {
                        row_mark[j] = 0;
                        hits.push_back(static_cast<int>(j));
                    }
            }
        } else {
            for (std::int64_t j = 0; j < F; ++j) {
                bool differs = true;
                for (int h = 0; h < t && differs; ++h) differs = matrix.rows[j][T[h]] != b[h];
                if (differs) hits.push_back(static_cast<int>(j));
            }
        }

        // hits are in row order, so a running count per e is the occurrence index
        for (int j : hits) {
            std::uint64_t code = row_code[j];
            for (int h = 0; h < t; ++h) {
                code -= static_cast<std::uint64_t>(matrix.rows[j][T[h]]) * place[T[h]];
                code += static_cast<std::uint64_t>(b[h]) * place[T[h]];
            }
            int n = 0;
            if (dense) {
                n = seen[code]++;
                if (n == 0) touched.push_back(code);
            } else {
                n = sparse_seen[code]++;
            }
            if (dense) max_n[code] = std::max(max_n[code], n);
            entry_code.push_back(code);
            entries.push_back(Entry{j, n}); // symbol holds n_e until ids are assigned
        }
        for (auto code : touched) seen[code] = 0;
        touched.clear();
        sparse_seen.clear();
        col_begin[k + 1] = entries.size();
    }

    // ids by first appearance: walk the entries in row-major order
    std::vector<std::size_t> row_start(static_cast<std::size_t>(F) + 1, 0);
    for (const auto& e : entries) ++row_start[e.row + 1];
    std::partial_sum(row_start.begin(), row_start.end(), row_start.begin());
    std::vector<std::size_t> by_row(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) by_row[row_start[entries[i].row]++] = i;

    constexpr SymbolId kNone = -1;
    std::vector<std::size_t> base;
    std::vector<SymbolId> slot_id;
    if (dense) {
        base.assign(space + 1, 0);
        for (std::size_t c = 0; c < space; ++c) base[c + 1] = base[c] + static_cast<std::size_t>(max_n[c] + 1);
        slot_id.assign(base.back(), kNone);
    }
    std::unordered_map<std::uint64_t, SymbolId> sparse_id;
    std::vector<SymbolLabel> out_labels;
    for (std::size_t i : by_row) {
        const std::uint64_t code = entry_code[i];
        const int n = entries[i].symbol;
        SymbolId& id = dense ? slot_id[base[code] + static_cast<std::size_t>(n)]
                             : sparse_id.try_emplace(code * static_cast<std::uint64_t>(F) + static_cast<std::uint64_t>(n), kNone)
                                   .first->second;
        if (id == kNone) {
            id = static_cast<SymbolId>(out_labels.size());
            out_labels.push_back(SymbolLabel{decode_vector(code, m, q), n});
        }
        entries[i].symbol = id;
    }

    const auto symbols = static_cast<int>(out_labels.size());
    Pda p(static_cast<int>(F), static_cast<int>(K), std::move(col_begin), std::move(entries),
          symbols);
    return std::move(p).with_labels(std::move(out_labels));
}

inline void to_json(nlohmann::json& j, const ColumnIndexSet& set) {
    auto cols = nlohmann::json::array();
    for (const auto& c : set.columns) cols.push_back({{"T", c.T}, {"b", c.b}});
    j = nlohmann::json{{"m", set.m}, {"t", set.t}, {"q", set.q}, {"columns", std::move(cols)}};
}

inline void from_json(const nlohmann::json& j, ColumnIndexSet& set) {
    try {
        set.m = j.at("m").get<int>();
        set.t = j.at("t").get<int>();
        set.q = j.at("q").get<int>();
        set.columns.clear();
        for (const auto& c : j.at("columns"))
            set.columns.push_back({c.at("T").get<std::vector<int>>(), c.at("b").get<std::vector<int>>()});
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("column index set: ") + e.what());
    }
    validate(set);
}

} // namespace pdacc
