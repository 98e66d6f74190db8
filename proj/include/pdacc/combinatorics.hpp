#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace pdacc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Rational = boost::rational<std::int64_t>;

/// Binomial coefficient; 0 when k > n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n-k+i) / i is exact at every step
        if (r > std::numeric_limits<std::int64_t>::max() / (n - k + i))
            throw std::overflow_error("binomial overflows int64");
        r = r * (n - k + i) / i;
    }
    return r;
}

inline BigInt big_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::int64_t ipow(std::int64_t base, std::int64_t exp) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base)
            throw std::overflow_error("ipow overflows int64");
        r *= base;
    }
    return r;
}

inline BigInt big_pow(std::int64_t base, std::int64_t exp) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

/// All t-subsets of [0,n) as sorted index vectors, in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int t) {
    std::vector<std::vector<int>> out;
    if (t < 0 || t > n) return out;
    std::vector<int> cur(t);
    for (int i = 0; i < t; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = t - 1;
        while (i >= 0 && cur[i] == n - t + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < t; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Every vector in [0,q)^len, lexicographic: coordinate 0 most significant.
inline std::vector<std::vector<int>> tuples_lex(int len, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len, 0);
    while (true) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[i] == q - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

/// Every vector in [0,q)^len with coordinate 0 varying fastest (00, 10, 01, 11 for q=2).
inline std::vector<std::vector<int>> tuples_first_fastest(int len, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len, 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < len && cur[i] == q - 1) cur[i++] = 0;
        if (i == len) break;
        ++cur[i];
    }
    return out;
}

/// Mixed-radix code of a vector over [0,q), coordinate 0 most significant.
inline std::uint64_t encode_vector(std::span<const int> v, int q) {
    std::uint64_t code = 0;
    for (int x : v) code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(x);
    return code;
}

inline std::vector<int> decode_vector(std::uint64_t code, int len, int q) {
    std::vector<int> v(len);
    for (int i = len - 1; i >= 0; --i) {
        v[i] = static_cast<int>(code % static_cast<std::uint64_t>(q));
        code /= static_cast<std::uint64_t>(q);
    }
    return v;
}

} // namespace pdacc
