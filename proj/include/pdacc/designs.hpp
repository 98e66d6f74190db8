#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pdacc/combinatorics.hpp"
#include "pdacc/error.hpp"
#include "pdacc/gf.hpp"
#include "pdacc/hamming.hpp"

namespace pdacc {

/// F x m matrix over [0,q); row j indexes row j of the PDA built from it.
struct RowIndexMatrix {
    int m = 0;
    int q = 0;
    std::vector<std::vector<int>> rows;

    std::size_t row_count() const { return rows.size(); }

    friend bool operator==(const RowIndexMatrix&, const RowIndexMatrix&) = default;
};

inline void validate(const RowIndexMatrix& matrix) {
    if (matrix.m < 1 || matrix.q < 1)
        throw Error(ErrorCode::ParamMismatch, "row index matrix needs m >= 1 and q >= 1");
    for (const auto& row : matrix.rows) {
        if (static_cast<int>(row.size()) != matrix.m)
            throw Error(ErrorCode::LengthMismatch, "row of length " + std::to_string(row.size()) +
                                                       " in a matrix of degree " + std::to_string(matrix.m));
        for (int x : row)
            if (x < 0 || x >= matrix.q)
                throw Error(ErrorCode::ParamMismatch, "entry " + std::to_string(x) + " outside [0," +
                                                          std::to_string(matrix.q) + ")");
    }
}

/// Where uniformity breaks: the tuple on columns `columns` occurs `count` times.
struct ArrayWitness {
    std::vector<int> columns;
    std::vector<int> tuple;
    std::int64_t count = 0;
};

struct OaCheckResult {
    bool is_oa = false;
    std::optional<std::int64_t> lambda;
    std::optional<ArrayWitness> witness;
};

struct CaCheckResult {
    bool is_ca = false;
    std::optional<ArrayWitness> witness;
};

namespace detail {

inline std::vector<std::uint64_t> sorted_projection(const RowIndexMatrix& matrix, const std::vector<int>& cols) {
    std::vector<std::uint64_t> codes;
    codes.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        std::uint64_t c = 0;
        for (int i : cols) c = c * static_cast<std::uint64_t>(matrix.q) + static_cast<std::uint64_t>(row[i]);
        codes.push_back(c);
    }
    std::sort(codes.begin(), codes.end());
    return codes;
}

// First tuple (in lex order) whose count differs from `expected` (exact) or
// falls below it (at_least). Walks tuple space only as far as the first hit.
inline std::optional<ArrayWitness> find_deviation(const RowIndexMatrix& matrix, const std::vector<int>& cols,
                                                  std::int64_t expected, bool at_least) {
    const auto codes = sorted_projection(matrix, cols);
    const auto s = static_cast<int>(cols.size());
    const std::uint64_t space = static_cast<std::uint64_t>(ipow(matrix.q, s));
    // Fewer rows than tuples: some tuple is missing, and that is the clearer witness.
    if (!at_least && expected == 0) {
        std::uint64_t gap = 0;
        for (auto c : codes) {
            if (c > gap) break;
            if (c == gap) ++gap;
        }
        return ArrayWitness{cols, decode_vector(gap, s, matrix.q), 0};
    }
    std::size_t pos = 0;
    for (std::uint64_t code = 0; code < space; ++code) {
        std::int64_t count = 0;
        while (pos < codes.size() && codes[pos] == code) {
            ++count;
            ++pos;
        }
        const bool bad = at_least ? count < expected : count != expected;
        if (bad) return ArrayWitness{cols, decode_vector(code, s, matrix.q), count};
    }
    return std::nullopt;
}

inline void check_strength(const RowIndexMatrix& matrix, int s) {
    if (s < 1 || s > matrix.m)
        throw Error(ErrorCode::BadStrength, "strength " + std::to_string(s) + " outside [1," +
                                                std::to_string(matrix.m) + "]");
}

} // namespace detail

/// Orthogonal array test: every s-column projection holds each s-tuple exactly F/q^s times.
inline OaCheckResult is_oa(const RowIndexMatrix& matrix, int s) {
    detail::check_strength(matrix, s);
    validate(matrix);
    const auto F = static_cast<std::int64_t>(matrix.rows.size());
    const std::int64_t cells = ipow(matrix.q, s);
    if (F == 0) return {false, std::nullopt, ArrayWitness{subsets_lex(matrix.m, s).front(), std::vector<int>(s, 0), 0}};
    // With F not a multiple of q^s the floored index still yields a witness:
    // the counts cannot all equal it.
    const std::int64_t lambda = F / cells;
    for (const auto& cols : subsets_lex(matrix.m, s)) {
        if (auto w = detail::find_deviation(matrix, cols, lambda, false)) return {false, std::nullopt, std::move(w)};
    }
    return {true, lambda, std::nullopt};
}

/// Covering array test: every s-tuple appears at least lambda times in every s-column projection.
inline CaCheckResult is_ca(const RowIndexMatrix& matrix, int s, std::int64_t lambda) {
    detail::check_strength(matrix, s);
    if (lambda < 1) throw Error(ErrorCode::BadParams, "covering index must be >= 1");
    validate(matrix);
    for (const auto& cols : subsets_lex(matrix.m, s)) {
        if (auto w = detail::find_deviation(matrix, cols, lambda, true)) return {false, std::move(w)};
    }
    return {true, std::nullopt};
}

/// The q^(m-1) vectors (f_0, ..., f_{m-2}, f_0 + ... + f_{m-2} mod q), free prefix in lex order.
/// An OA of strength m-1 and index 1 for any q >= 2.
inline RowIndexMatrix oa_trivial(int m, int q) {
    if (m < 2 || q < 2) throw Error(ErrorCode::BadParams, "oa_trivial needs m >= 2 and q >= 2");
    RowIndexMatrix out{m, q, {}};
    for (auto prefix : tuples_lex(m - 1, q)) {
        int sum = 0;
        for (int x : prefix) sum = (sum + x) % q;
        prefix.push_back(sum);
        out.rows.push_back(std::move(prefix));
    }
    return out;
}

/// Codewords of an [m,k] MDS code as rows, in generation order: an OA(m,q,k).
inline RowIndexMatrix oa_from_mds(const MdsCode& code) {
    return RowIndexMatrix{code.length, code.field.order(), code.codewords};
}

inline void to_json(nlohmann::json& j, const RowIndexMatrix& matrix) {
    j = nlohmann::json{{"m", matrix.m}, {"q", matrix.q}, {"rows", matrix.rows}};
}

inline void from_json(const nlohmann::json& j, RowIndexMatrix& matrix) {
    try {
        matrix.m = j.at("m").get<int>();
        matrix.q = j.at("q").get<int>();
        matrix.rows = j.at("rows").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("row index matrix: ") + e.what());
    }
    validate(matrix);
}

} // namespace pdacc
