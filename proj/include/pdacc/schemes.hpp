#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "pdacc/combinatorics.hpp"
#include "pdacc/designs.hpp"
#include "pdacc/error.hpp"
#include "pdacc/framework.hpp"
#include "pdacc/gf.hpp"
#include "pdacc/pda.hpp"

namespace pdacc {

enum class Family { Theorem3, Theorem6, Theorem7, Mn, SzgFirst, SzgSecond };

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::Theorem3: return "theorem3";
    case Family::Theorem6: return "theorem6";
    case Family::Theorem7: return "theorem7";
    case Family::Mn: return "mn";
    case Family::SzgFirst: return "szg_first";
    case Family::SzgSecond: return "szg_second";
    }
    return "unknown";
}

inline Family parse_family(std::string_view name) {
    for (auto f : {Family::Theorem3, Family::Theorem6, Family::Theorem7, Family::Mn, Family::SzgFirst,
                   Family::SzgSecond})
        if (to_string(f) == name) return f;
    throw Error(ErrorCode::BadParams, "unknown scheme family '" + std::string(name) + "'");
}

/// Which construction to run and with what parameters.
///
/// theorem3 uses (m, s, t, omega) with q = 2; mn uses m = number of users and
/// s = cache level (t = 1, omega = 0); szg_first uses (m, s, t) with omega = 0;
/// theorem6, theorem7 and szg_second use (m, t, q).
struct SchemeSpec {
    Family family = Family::Theorem6;
    int m = 0;
    int t = 0;
    int q = 2;
    int s = 0;
    int omega = 0;

    friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

/// Closed-form parameters; exact big integers so large tables need no PDA.
struct PredictedParams {
    BigInt K;
    BigInt F;
    BigInt Z;
    BigInt S;
    BigRational R;
    std::optional<BigInt> gain; // common coded gain, when every symbol has the same one

    BigRational memory_ratio() const { return BigRational(Z, F); }
};

namespace detail {

inline bool is_prime_power(int q) {
    if (q < 2) return false;
    int p = 2;
    while (q % p != 0) ++p;
    while (q % p == 0) q /= p;
    return q == 1;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::BadParams, what);
}

// theorem3-shaped parameters for the three binary families.
inline SchemeSpec binary_view(const SchemeSpec& spec) {
    switch (spec.family) {
    case Family::Mn: return {Family::Theorem3, spec.m, 1, 2, spec.s, 0};
    case Family::SzgFirst: return {Family::Theorem3, spec.m, spec.t, 2, spec.s, 0};
    default: return spec;
    }
}

} // namespace detail

inline void validate(const SchemeSpec& spec) {
    using detail::require;
    switch (spec.family) {
    case Family::Theorem3:
    case Family::Mn:
    case Family::SzgFirst: {
        const auto v = detail::binary_view(spec);
        require(v.m >= 1 && v.s >= 1 && v.t >= 1, "m, s, t must be positive");
        require(v.omega >= 0 && v.omega <= v.t && v.t <= v.s, "need 0 <= omega <= t <= s");
        require(v.s <= v.m, "need s <= m");
        require(v.s + v.t - 2 * v.omega <= v.m, "need s + t - 2 omega <= m");
        if (spec.family != Family::Theorem3) require(spec.omega == 0, "omega must be 0 for this family");
        if (spec.family == Family::Mn) require(spec.t == 1, "mn uses t = 1");
        require(spec.q == 2, "binary families need q = 2");
        break;
    }
    case Family::Theorem6:
    case Family::SzgSecond:
        require(spec.t > 0 && spec.t < spec.m, "need 0 < t < m");
        require(spec.q >= 2, "need q >= 2");
        break;
    case Family::Theorem7:
        require(spec.t >= 1 && 2 * spec.t <= spec.m, "need t >= 1 and 2t <= m");
        require(detail::is_prime_power(spec.q), "q must be a prime power");
        break;
    }
}

/// Closed-form K, F, Z, S, R (and the common gain where one exists).
inline PredictedParams predict(const SchemeSpec& spec) {
    validate(spec);
    PredictedParams p;
    const int q = spec.q;
    const int m = spec.m;
    const int t = spec.t;
    switch (spec.family) {
    case Family::Theorem3:
    case Family::Mn:
    case Family::SzgFirst: {
        const auto v = detail::binary_view(spec);
        const int w = v.s + v.t - 2 * v.omega; // weight of every symbol label
        p.K = big_binomial(v.t, v.omega) * big_binomial(v.m, v.t);
        p.F = big_binomial(v.m, v.s);
        p.Z = p.F - big_binomial(v.m - v.t, v.s - v.omega);
        p.S = big_binomial(v.m, w);
        p.gain = big_binomial(w, v.t - v.omega) * big_binomial(v.m - w, v.omega);
        break;
    }
    case Family::Theorem6:
        p.K = big_binomial(m, t) * big_pow(q, t);
        p.F = big_pow(q, m - 1);
        p.Z = p.F - big_pow(q - 1, t) * big_pow(q, m - t - 1);
        p.S = big_pow(q - 1, t) * big_pow(q, m - 1);
        p.gain = big_binomial(m, t);
        break;
    case Family::Theorem7:
        p.K = big_binomial(m, t) * big_pow(q, t);
        p.F = big_pow(q, m - t);
        p.Z = p.F - big_pow(q - 1, t) * big_pow(q, m - 2 * t);
        p.S = big_pow(q, m) - big_pow(q, m - t);
        break;
    case Family::SzgSecond:
        p.K = big_binomial(m, t) * big_pow(q, t);
        p.F = big_pow(q, m);
        p.Z = p.F - big_pow(q - 1, t) * big_pow(q, m - t);
        p.S = big_pow(q - 1, t) * big_pow(q, m);
        p.gain = big_binomial(m, t);
        break;
    }
    p.R = BigRational(p.S, p.F);
    return p;
}

/// A built scheme: the PDA, the inputs that produced it and the closed forms.
struct BuiltScheme {
    SchemeSpec spec;
    RowIndexMatrix rows;
    ColumnIndexSet columns;
    Pda pda;
    PredictedParams predicted;
};

inline nlohmann::json spec_to_json(const SchemeSpec& spec);

namespace detail {

inline BuiltScheme assemble(const SchemeSpec& spec, RowIndexMatrix rows, ColumnIndexSet columns) {
    auto predicted = predict(spec);
    auto pda = construct(rows, columns);
    auto meta = spec_to_json(spec);
    meta["scheme"] = std::string(to_string(spec.family));
    pda = std::move(pda).with_meta(std::move(meta));
    return BuiltScheme{spec, std::move(rows), std::move(columns), std::move(pda), std::move(predicted)};
}

inline RowIndexMatrix binary_weight_rows(int m, int s) {
    RowIndexMatrix rows{m, 2, {}};
    for (auto& v : tuples_lex(m, 2))
        if (weight(v) == s) rows.rows.push_back(std::move(v));
    return rows;
}

} // namespace detail

/// Rows: binary m-vectors of weight s (lex order). Columns: weight_column_set(m, t, omega).
inline BuiltScheme build_theorem3(int m, int s, int t, int omega) {
    SchemeSpec spec{Family::Theorem3, m, t, 2, s, omega};
    validate(spec);
    return detail::assemble(spec, detail::binary_weight_rows(m, s), weight_column_set(m, t, omega));
}

/// K users with cache level KM/N = level.
inline BuiltScheme build_mn(int k, int level) {
    SchemeSpec spec{Family::Mn, k, 1, 2, level, 0};
    validate(spec);
    return detail::assemble(spec, detail::binary_weight_rows(k, level), weight_column_set(k, 1, 0));
}

inline BuiltScheme build_szg_first(int m, int s, int t) {
    SchemeSpec spec{Family::SzgFirst, m, t, 2, s, 0};
    validate(spec);
    return detail::assemble(spec, detail::binary_weight_rows(m, s), weight_column_set(m, t, 0));
}

/// Rows: oa_trivial(m, q). Columns: full_column_set(m, t, q).
inline BuiltScheme build_theorem6(int m, int t, int q) {
    SchemeSpec spec{Family::Theorem6, m, t, q, 0, 0};
    validate(spec);
    return detail::assemble(spec, oa_trivial(m, q), full_column_set(m, t, q));
}

/// Rows: codewords of the [m, m-t] extended RS code over GF(q). Columns: full.
inline BuiltScheme build_theorem7(int m, int t, int q) {
    SchemeSpec spec{Family::Theorem7, m, t, q, 0, 0};
    validate(spec);
    const Field field = field_new(q);
    return detail::assemble(spec, oa_from_mds(mds_generate(field, m, m - t)), full_column_set(m, t, q));
}

/// Rows: all of [0,q)^m in lex order. Columns: full.
inline BuiltScheme build_szg_second(int m, int t, int q) {
    SchemeSpec spec{Family::SzgSecond, m, t, q, 0, 0};
    validate(spec);
    return detail::assemble(spec, RowIndexMatrix{m, q, tuples_lex(m, q)}, full_column_set(m, t, q));
}

inline BuiltScheme build(const SchemeSpec& spec) {
    switch (spec.family) {
    case Family::Theorem3: return build_theorem3(spec.m, spec.s, spec.t, spec.omega);
    case Family::Theorem6: return build_theorem6(spec.m, spec.t, spec.q);
    case Family::Theorem7: return build_theorem7(spec.m, spec.t, spec.q);
    case Family::Mn: return build_mn(spec.m, spec.s);
    case Family::SzgFirst: return build_szg_first(spec.m, spec.s, spec.t);
    case Family::SzgSecond: return build_szg_second(spec.m, spec.t, spec.q);
    }
    throw Error(ErrorCode::BadParams, "unknown family");
}

/// Measured parameters agree with the closed forms, gain included when predicted.
inline bool matches(const PdaParams& measured, const PredictedParams& predicted) {
    if (!measured.Z) return false;
    if (BigInt(measured.K) != predicted.K || BigInt(measured.F) != predicted.F ||
        BigInt(*measured.Z) != predicted.Z || BigInt(measured.S) != predicted.S)
        return false;
    if (BigRational(BigInt(measured.R.numerator()), BigInt(measured.R.denominator())) != predicted.R) return false;
    if (predicted.gain && measured.S > 0 &&
        (BigInt(measured.min_gain) != *predicted.gain || BigInt(measured.max_gain) != *predicted.gain))
        return false;
    return true;
}

inline nlohmann::json spec_to_json(const SchemeSpec& spec) {
    nlohmann::json j{{"family", std::string(to_string(spec.family))}, {"m", spec.m}, {"t", spec.t}, {"q", spec.q}};
    if (spec.family == Family::Theorem3 || spec.family == Family::Mn || spec.family == Family::SzgFirst) {
        j["s"] = spec.s;
        j["omega"] = spec.omega;
    }
    return j;
}

inline SchemeSpec spec_from_json(const nlohmann::json& j) {
    try {
        SchemeSpec spec;
        spec.family = parse_family(j.at("family").get<std::string>());
        spec.m = j.at("m").get<int>();
        spec.t = j.value("t", 0);
        spec.q = j.value("q", 2);
        spec.s = j.value("s", 0);
        spec.omega = j.value("omega", 0);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("scheme spec: ") + e.what());
    }
}

} // namespace pdacc
