#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "pdacc/gf.hpp"

using namespace pdacc;

namespace {

const std::vector<int> kOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 23, 25, 27, 31, 32, 41};

template <class F>
void expect_error(ErrorCode code, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace

TEST(Field, PrimeFieldArithmetic) {
    const Field f = field_new(5);
    EXPECT_EQ(f.order(), 5);
    EXPECT_EQ(f.characteristic(), 5);
    EXPECT_EQ(f.degree(), 1);
    EXPECT_EQ(f.mul(2, 3), 1);
    EXPECT_EQ(f.add(4, 3), 2);
    EXPECT_EQ(f.sub(1, 3), 3);
    EXPECT_EQ(f.inv(2), 3);
}

TEST(Field, SmallExamples) {
    EXPECT_EQ(field_new(2).add(1, 1), 0);
    EXPECT_EQ(field_new(3).inv(2), 2);
    // the two elements outside {0,1} of GF(4) multiply to 1 and are each other's inverse
    const Field f4 = field_new(4);
    EXPECT_EQ(f4.mul(2, 3), 1);
    EXPECT_EQ(f4.inv(2), 3);
    EXPECT_EQ(f4.inv(3), 2);
    EXPECT_EQ(f4.characteristic(), 2);
    EXPECT_EQ(f4.degree(), 2);
}

TEST(Field, UnsupportedOrders) {
    for (int q : {0, 1, 6, 10, 12, 15, 17, 49, 64, 100})
        expect_error(ErrorCode::UnsupportedField, [&] { field_new(q); });
}

TEST(Field, ZeroHasNoInverse) {
    for (int q : kOrders) expect_error(ErrorCode::ZeroInverse, [&] { field_new(q).inv(0); });
}

TEST(Field, OutOfRangeElementsRejected) {
    const Field f = field_new(7);
    expect_error(ErrorCode::BadParams, [&] { f.add(7, 0); });
    expect_error(ErrorCode::BadParams, [&] { f.mul(-1, 2); });
}

TEST(Field, ReductionPolynomialsAreIrreducible) {
    for (int q : kOrders) {
        const Field f = field_new(q);
        if (f.degree() == 1) {
            EXPECT_TRUE(f.modulus().empty());
            continue;
        }
        // no root and, for degree 4 or 5, no quadratic factor: brute force over all monic
        // polynomials of degree <= deg/2 via the library-independent check below
        const auto& mod = f.modulus();
        const int p = f.characteristic();
        const int deg = static_cast<int>(mod.size()) - 1;
        EXPECT_EQ(deg, f.degree());
        for (int d = 1; d <= deg / 2; ++d) {
            for (const auto& low : oracle::all_vectors(d, p)) {
                std::vector<int> g(low.rbegin(), low.rend()); // low degree first
                g.push_back(1);
                // remainder of mod divided by g over GF(p)
                std::vector<int> r = mod;
                for (int i = deg; i >= d; --i) {
                    const int c = r[i] % p;
                    if (!c) continue;
                    for (int k = 0; k <= d; ++k) r[i - d + k] = ((r[i - d + k] - c * g[k]) % p + p) % p;
                }
                bool zero = true;
                for (int i = 0; i < d; ++i) zero = zero && r[i] % p == 0;
                EXPECT_FALSE(zero) << "GF(" << q << ") modulus has a factor of degree " << d;
            }
        }
    }
}

// associativity, commutativity, distributivity, identities and inverses, exhaustive for q <= 32
TEST(Field, AxiomsExhaustive) {
    for (int q : kOrders) {
        if (q > 32) continue;
        const Field f = field_new(q);
        for (int a = 0; a < q; ++a) {
            EXPECT_EQ(f.add(a, 0), a);
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.add(a, f.neg(a)), 0);
            if (a) {
                EXPECT_EQ(f.mul(a, f.inv(a)), 1);
            }
            for (int b = 0; b < q; ++b) {
                ASSERT_EQ(f.add(a, b), f.add(b, a));
                ASSERT_EQ(f.mul(a, b), f.mul(b, a));
                ASSERT_EQ(f.sub(f.add(a, b), b), a);
                for (int c = 0; c < q; ++c) {
                    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST(Field, MultiplicativeGroupIsCyclic) {
    for (int q : kOrders) {
        const Field f = field_new(q);
        bool found = false;
        for (int g = 1; g < q && !found; ++g) {
            std::set<int> seen;
            for (int e = 0; e < q - 1; ++e) seen.insert(f.pow(g, e));
            found = static_cast<int>(seen.size()) == q - 1;
        }
        EXPECT_TRUE(found) << q;
    }
}

TEST(Mds, RepetitionCode) {
    const auto c = mds_generate(field_new(2), 2, 1);
    EXPECT_EQ(c.codewords, (std::vector<std::vector<int>>{{0, 0}, {1, 1}}));
}

TEST(Mds, TernaryLengthFour) {
    const auto c = mds_generate(field_new(3), 4, 2);
    EXPECT_EQ(c.codewords.size(), 9u);
    EXPECT_EQ(minimum_distance(c), 3);
}

TEST(Mds, Errors) {
    expect_error(ErrorCode::MdsUnavailable, [] { mds_generate(field_new(2), 4, 2); });
    expect_error(ErrorCode::BadParams, [] { mds_generate(field_new(3), 3, 0); });
    expect_error(ErrorCode::BadParams, [] { mds_generate(field_new(3), 3, 4); });
}

// every k coordinates determine the codeword, and distance is m - k + 1
TEST(Mds, ProjectionBijectionAndDistance) {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        const Field f = field_new(q);
        for (int m = 1; m <= std::min(q + 1, 6); ++m)
            for (int k = 1; k <= m; ++k) {
                if (oracle::power(q, k) > 5000) continue;
                const auto code = mds_generate(f, m, k);
                ASSERT_EQ(static_cast<std::int64_t>(code.codewords.size()), oracle::power(q, k));
                for (const auto& S : oracle::subsets(m, k)) {
                    std::set<std::vector<int>> images;
                    for (const auto& c : code.codewords) {
                        std::vector<int> p;
                        for (int i : S) p.push_back(c[i]);
                        images.insert(p);
                    }
                    EXPECT_EQ(static_cast<std::int64_t>(images.size()), oracle::power(q, k))
                        << "q=" << q << " m=" << m << " k=" << k;
                }
                if (code.codewords.size() > 1 && code.codewords.size() <= 1000) {
                    EXPECT_EQ(minimum_distance(code), m - k + 1);
                }
            }
    }
}

TEST(Mds, LinearAndClosedUnderAddition) {
    const Field f = field_new(4);
    const auto code = mds_generate(f, 5, 2);
    const std::set<std::vector<int>> words(code.codewords.begin(), code.codewords.end());
    for (const auto& a : code.codewords)
        for (const auto& b : code.codewords) {
            std::vector<int> s(5);
            for (int i = 0; i < 5; ++i) s[i] = f.add(a[i], b[i]);
            ASSERT_TRUE(words.count(s));
        }
}

TEST(Mds, SphereCover) {
    for (int q : {2, 3, 4}) {
        const Field f = field_new(q);
        for (int m = 1; m <= std::min(5, q + 1); ++m)
            for (int k = 1; k <= m; ++k) EXPECT_TRUE(spheres_cover_space(mds_generate(f, m, k), m - k));
    }
    // the [4,2]_3 code is perfect, so radius 1 already covers; length-3 repetition over GF(3) is not
    EXPECT_TRUE(spheres_cover_space(mds_generate(field_new(3), 4, 2), 1));
    EXPECT_FALSE(spheres_cover_space(mds_generate(field_new(3), 3, 1), 1));
}
