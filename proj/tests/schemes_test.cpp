#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace pdacc;

namespace {

void expect_shape(const BuiltScheme& b, int K, int F, int Z, int S) {
    EXPECT_TRUE(verify_pda(b.pda));
    const auto p = pda_params(b.pda);
    EXPECT_EQ(p.K, K);
    EXPECT_EQ(p.F, F);
    EXPECT_EQ(p.Z, Z);
    EXPECT_EQ(p.S, S);
    EXPECT_TRUE(matches(p, b.predicted));
}

std::vector<SchemeSpec> small_specs() {
    std::vector<SchemeSpec> out;
    for (int m = 1; m <= 7; ++m)
        for (int s = 1; s <= m; ++s)
            for (int t = 1; t <= s; ++t)
                for (int w = 0; w <= t; ++w)
                    if (s + t - 2 * w <= m && s - w <= m - t) out.push_back({Family::Theorem3, m, t, 2, s, w});
    for (int q : {2, 3, 4, 5})
        for (int m = 2; m <= 5; ++m)
            for (int t = 1; t < m; ++t) {
                if (oracle::power(q, m) > 4096) continue;
                out.push_back({Family::Theorem6, m, t, q, 0, 0});
                out.push_back({Family::SzgSecond, m, t, q, 0, 0});
                if (2 * t <= m && m <= q + 1) out.push_back({Family::Theorem7, m, t, q, 0, 0});
            }
    return out;
}

} // namespace

TEST(Schemes, FamilyNames) {
    for (auto f : {Family::Theorem3, Family::Theorem6, Family::Theorem7, Family::Mn, Family::SzgFirst,
                   Family::SzgSecond})
        EXPECT_EQ(parse_family(to_string(f)), f);
    EXPECT_THROW(parse_family("theorem5"), Error);
}

TEST(Theorem3, WeightTwoExample) {
    const auto b = build_theorem3(4, 2, 2, 1);
    expect_shape(b, 12, 6, 4, 6);
    const auto printed = fixtures::in_column_order(fixtures::weight_two_array(), b.columns);
    ASSERT_TRUE(printed);
    EXPECT_TRUE(structurally_equal(b.pda, fixtures::to_pda(*printed)));
    // every symbol is shared by C(2,1) C(2,1) users
    EXPECT_EQ(pda_params(b.pda).gain_histogram, (std::map<int, int>{{4, 6}}));
    EXPECT_TRUE(fixtures::label_mismatches(b.pda, b.rows, b.columns, fixtures::weight_two_array(), false).empty());
}

TEST(Theorem3, MaddahAliNiesenSpecialCase) {
    const auto b = build_theorem3(4, 2, 1, 0);
    expect_shape(b, 4, 6, 3, 4);
    // (k - t') / (1 + t') with k = 4, t' = 2
    EXPECT_EQ(pda_params(b.pda).R, Rational(2, 3));
    const auto mn = build_mn(4, 2);
    EXPECT_EQ(mn.pda.to_grid(), b.pda.to_grid());
    EXPECT_EQ(mn.predicted.R, BigRational(2, 3));
}

TEST(Theorem3, LargeOmegaRow) {
    const auto p = predict({Family::Theorem3, 10, 3, 2, 4, 2});
    EXPECT_EQ(p.K, 360);
    EXPECT_EQ(p.F, 210);
    EXPECT_EQ(p.memory_ratio(), BigRational(9, 10));
    EXPECT_EQ(p.S, 120);
    EXPECT_EQ(p.R, BigRational(4, 7));
    EXPECT_EQ(*p.gain, 63);
    const auto b = build_theorem3(10, 4, 3, 2);
    EXPECT_TRUE(matches(pda_params(b.pda), b.predicted));
}

TEST(Theorem3, ZeroOmegaMatchesFirstSzg) {
    for (int m = 2; m <= 7; ++m)
        for (int s = 1; s <= m; ++s)
            for (int t = 1; t <= s && s + t <= m; ++t) {
                const auto a = build_theorem3(m, s, t, 0);
                const auto b = build_szg_first(m, s, t);
                EXPECT_EQ(a.pda.to_grid(), b.pda.to_grid());
                EXPECT_EQ(a.predicted.K, oracle::choose(m, t));
                EXPECT_EQ(a.predicted.F, oracle::choose(m, s));
                EXPECT_EQ(a.predicted.Z, oracle::choose(m, s) - oracle::choose(m - t, s));
                EXPECT_EQ(a.predicted.S, oracle::choose(m, s + t));
            }
}

// labels are exactly the weight s+t-2omega vectors when some row can reach them
TEST(Theorem3, SymbolCensus) {
    for (int m = 1; m <= 8; ++m)
        for (int s = 1; s <= m; ++s)
            for (int t = 1; t <= s; ++t)
                for (int w = 0; w <= t; ++w) {
                    if (s + t - 2 * w > m) continue;
                    const auto b = build_theorem3(m, s, t, w);
                    std::set<std::vector<int>> labels;
                    for (const auto& l : b.pda.labels()) labels.insert(l.e);
                    std::set<std::vector<int>> expected;
                    for (const auto& v : oracle::all_vectors(m, 2))
                        if (weight(v) == s + t - 2 * w) expected.insert(v);
                    if (s - w <= m - t) {
                        EXPECT_EQ(labels, expected) << m << s << t << w;
                    } else {
                        // a row of weight s puts more than m - t ones outside any T, so every cell is a star
                        EXPECT_EQ(b.pda.symbol_count(), 0);
                        EXPECT_EQ(is_regular(b.pda).z, b.pda.rows());
                    }
                }
}

TEST(Theorem3, Validation) {
    EXPECT_THROW(predict({Family::Theorem3, 4, 3, 2, 2, 0}), Error); // t > s
    EXPECT_THROW(predict({Family::Theorem3, 4, 2, 2, 3, 0}), Error); // s + t > m
    EXPECT_THROW(predict({Family::Theorem3, 4, 2, 3, 2, 1}), Error); // q != 2
    EXPECT_THROW(predict({Family::Theorem3, 4, 2, 2, 2, 3}), Error);
    EXPECT_THROW(predict({Family::Mn, 4, 2, 2, 2, 0}), Error);
    EXPECT_THROW(build_theorem3(0, 0, 0, 0), Error);
}

TEST(Theorem6, ParityExample) {
    const auto b = build_theorem6(3, 2, 2);
    expect_shape(b, 12, 4, 3, 4);
    EXPECT_TRUE(structurally_equal(b.pda, fixtures::to_pda(fixtures::parity_array())));
}

TEST(Theorem6, Examples) {
    const auto b = build_theorem6(4, 2, 3);
    expect_shape(b, 54, 27, 15, 108);
    EXPECT_EQ(pda_params(b.pda).R, Rational(4));
    EXPECT_EQ(pda_params(b.pda).gain_histogram, (std::map<int, int>{{6, 108}}));

    // t = 1: K = mq, F = q^(m-1), R = q - 1
    const auto one = build_theorem6(3, 1, 3);
    expect_shape(one, 9, 9, 3, 18);
    EXPECT_EQ(pda_params(one.pda).R, Rational(2));
}

// every symbol occurs C(m,t) times, once in each T-block
TEST(Theorem6, GainUniformity) {
    for (int q : {2, 3, 4, 5, 7, 8})
        for (int m = 2; m <= 6; ++m) {
            if (oracle::power(q, m - 1) > 2048) continue;
            for (int t = 1; t < m; ++t) {
                const auto b = build_theorem6(m, t, q);
                const auto p = pda_params(b.pda);
                ASSERT_EQ(p.min_gain, oracle::choose(m, t));
                ASSERT_EQ(p.max_gain, oracle::choose(m, t));
                const auto occ = symbol_occurrences(b.pda);
                for (SymbolId s = 0; s < b.pda.symbol_count(); ++s) {
                    std::set<std::vector<int>> Ts;
                    for (const auto& c : occ.of(s)) Ts.insert(b.columns.columns[c.col].T);
                    ASSERT_EQ(static_cast<std::int64_t>(Ts.size()), oracle::choose(m, t));
                }
                EXPECT_TRUE(is_ca(b.rows, m - t, 1).is_ca);
            }
        }
}

TEST(Theorem6, Validation) {
    EXPECT_THROW(build_theorem6(3, 3, 2), Error);
    EXPECT_THROW(build_theorem6(3, 0, 2), Error);
    EXPECT_THROW(build_theorem6(3, 1, 1), Error);
}

TEST(Theorem7, Examples) {
    expect_shape(build_theorem7(2, 1, 2), 4, 2, 1, 2);
    const auto b = build_theorem7(4, 2, 3);
    expect_shape(b, 54, 9, 5, 72);
    EXPECT_EQ(pda_params(b.pda).R, Rational(8));
    const auto g = build_theorem7(4, 2, 4);
    expect_shape(g, 96, 16, 7, 240);
    EXPECT_EQ(pda_params(g.pda).R, Rational(15));
}

TEST(Theorem7, SymbolCensusIsComplementOfCode) {
    for (int q : {2, 3, 4, 5})
        for (int m = 2; m <= std::min(5, q + 1); ++m)
            for (int t = 1; 2 * t <= m; ++t) {
                const auto b = build_theorem7(m, t, q);
                std::set<std::vector<int>> labels;
                for (const auto& l : b.pda.labels()) labels.insert(l.e);
                std::set<std::vector<int>> expected;
                const std::set<std::vector<int>> code(b.rows.rows.begin(), b.rows.rows.end());
                for (const auto& v : oracle::all_vectors(m, q))
                    if (!code.count(v)) expected.insert(v);
                EXPECT_EQ(labels, expected) << q << " " << m << " " << t;
                EXPECT_EQ(static_cast<std::int64_t>(b.pda.symbol_count()),
                          oracle::power(q, m) - oracle::power(q, m - t));
            }
}

TEST(Theorem7, Errors) {
    try {
        build_theorem7(4, 2, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MdsUnavailable);
    }
    // predict needs no code, only the theorem's own hypotheses
    EXPECT_EQ(predict({Family::Theorem7, 4, 2, 2, 0, 0}).F, 4);
    EXPECT_THROW(predict({Family::Theorem7, 3, 2, 3, 0, 0}), Error);
    EXPECT_THROW(predict({Family::Theorem7, 4, 2, 6, 0, 0}), Error);
}

TEST(SzgSecond, Examples) {
    const auto a = build_szg_second(3, 2, 2);
    expect_shape(a, 12, 8, 6, 8);
    EXPECT_EQ(pda_params(a.pda).R, Rational(1));
    expect_shape(build_szg_second(2, 1, 2), 4, 4, 2, 4);
}

// same K and memory ratio, subpacketization smaller by a factor q
TEST(Comparison, Theorem6AgainstSecondSzg) {
    for (int q = 2; q <= 7; ++q)
        for (int m = 2; m <= 6; ++m)
            for (int t = 1; t < m; ++t) {
                const auto a = predict({Family::Theorem6, m, t, q, 0, 0});
                const auto b = predict({Family::SzgSecond, m, t, q, 0, 0});
                EXPECT_EQ(a.K, b.K);
                EXPECT_EQ(a.memory_ratio(), b.memory_ratio());
                EXPECT_EQ(a.R, b.R);
                EXPECT_EQ(b.F, a.F * q);
            }
}

TEST(Comparison, Theorem6AgainstTheorem7) {
    const auto a = predict({Family::Theorem6, 10, 2, 11, 0, 0});
    const auto b = predict({Family::Theorem7, 10, 2, 11, 0, 0});
    EXPECT_EQ(a.K, 5445);
    EXPECT_EQ(a.memory_ratio(), b.memory_ratio());
    EXPECT_EQ(a.R / b.R, BigRational(100, 120));
    EXPECT_EQ(BigRational(a.F, b.F), BigRational(11));
    const auto c = predict({Family::Theorem6, 40, 2, 41, 0, 0});
    const auto d = predict({Family::Theorem7, 40, 2, 41, 0, 0});
    EXPECT_EQ(c.K, 1311180);
    EXPECT_EQ(BigRational(c.F, d.F), BigRational(41));
}

TEST(Predict, MatchesMeasurementOnSmallSpecs) {
    int checked = 0;
    for (const auto& spec : small_specs()) {
        const auto b = build(spec);
        ASSERT_TRUE(verify_pda(b.pda)) << spec_to_json(spec).dump();
        ASSERT_TRUE(matches(pda_params(b.pda), b.predicted)) << spec_to_json(spec).dump();
        ++checked;
    }
    EXPECT_GT(checked, 150);
}

TEST(Predict, SpecJsonRoundTrip) {
    for (const auto& spec : small_specs()) EXPECT_EQ(spec_from_json(spec_to_json(spec)), spec);
    const auto b = build_theorem6(3, 2, 2);
    EXPECT_EQ(spec_from_json(b.pda.meta()), b.spec);
}
