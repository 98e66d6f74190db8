#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pdacc/combinatorics.hpp"
#include "pdacc/error.hpp"
#include "pdacc/hamming.hpp"

namespace pdacc {

namespace detail {

struct ReductionPolynomial {
    int q;
    int p;
    int k;
    std::vector<int> coeffs; // low degree first, monic, size k+1
};

// One fixed polynomial per supported extension field. Changing any of these
// changes every generated code and therefore every PDA built from one.
inline const std::vector<ReductionPolynomial>& reduction_polynomials() {
    static const std::vector<ReductionPolynomial> table = {
        {4, 2, 2, {1, 1, 1}},           // x^2 + x + 1
        {8, 2, 3, {1, 1, 0, 1}},        // x^3 + x + 1
        {9, 3, 2, {2, 1, 1}},           // x^2 + x + 2
        {16, 2, 4, {1, 1, 0, 0, 1}},    // x^4 + x + 1
        {25, 5, 2, {2, 1, 1}},          // x^2 + x + 2
        {27, 3, 3, {1, 2, 0, 1}},       // x^3 + 2x + 1
        {32, 2, 5, {1, 0, 1, 0, 0, 1}}, // x^5 + x^2 + 1
    };
    return table;
}

inline constexpr std::array<int, 9> kSupportedPrimes = {2, 3, 5, 7, 11, 13, 23, 31, 41};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Remainder of a modulo monic divisor b over GF(p); coefficient vectors are low degree first.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        const int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(std::max(db, 0));
    return a;
}

// Brute force: no monic factor of degree 1..k/2 divides the polynomial.
inline bool is_irreducible(const std::vector<int>& poly, int p) {
    const int k = static_cast<int>(poly.size()) - 1;
    for (int d = 1; d <= k / 2; ++d) {
        for (const auto& low : tuples_lex(d, p)) {
            std::vector<int> divisor(low.rbegin(), low.rend());
            divisor.push_back(1);
            auto r = poly_mod(poly, divisor, p);
            if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) return false;
        }
    }
    return true;
}

struct FieldTables {
    int q = 0;
    int p = 0;
    int k = 1;
    std::vector<int> modulus;
    std::vector<int> add;
    std::vector<int> mul;
    std::vector<int> neg;
    std::vector<int> inv;
};

} // namespace detail

/// Finite field GF(q) for the small prime powers this library supports.
///
/// Elements are integers in [0,q). For q = p^k with k > 1 the integer's base-p
/// digits are the polynomial coefficients, digit 0 being the constant term.
/// Arithmetic goes through precomputed tables shared between copies.
class Field {
public:
    int order() const { return t_->q; }
    int characteristic() const { return t_->p; }
    int degree() const { return t_->k; }
    /// Reduction polynomial (low degree first); empty for prime fields.
    const std::vector<int>& modulus() const { return t_->modulus; }

    int add(int a, int b) const { return t_->add[index(a, b)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { check(a); return t_->neg[a]; }
    int mul(int a, int b) const { return t_->mul[index(a, b)]; }
    int inv(int a) const {
        check(a);
        if (a == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
        return t_->inv[a];
    }
    int pow(int a, int e) const {
        int r = 1;
        for (int i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    friend bool operator==(const Field& a, const Field& b) { return a.order() == b.order(); }

private:
    friend Field field_new(int q);
    explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}

    void check(int a) const {
        if (a < 0 || a >= t_->q)
            throw Error(ErrorCode::BadParams, "element " + std::to_string(a) + " outside GF(" +
                                                  std::to_string(t_->q) + ")");
    }
    std::size_t index(int a, int b) const {
        check(a);
        check(b);
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(t_->q) + static_cast<std::size_t>(b);
    }

    std::shared_ptr<const detail::FieldTables> t_;
};

/// Supported orders: 2,3,4,5,7,8,9,11,13,16,23,25,27,31,32,41.
inline Field field_new(int q) {
    auto t = std::make_shared<detail::FieldTables>();
    t->q = q;
    const auto& primes = detail::kSupportedPrimes;
    if (std::find(primes.begin(), primes.end(), q) != primes.end()) {
        t->p = q;
        t->k = 1;
    } else {
        const auto& polys = detail::reduction_polynomials();
        auto it = std::find_if(polys.begin(), polys.end(), [q](const auto& r) { return r.q == q; });
        if (it == polys.end())
            throw Error(ErrorCode::UnsupportedField, "GF(" + std::to_string(q) + ") is not supported");
        if (!detail::is_prime(it->p) || ipow(it->p, it->k) != q || !detail::is_irreducible(it->coeffs, it->p))
            throw Error(ErrorCode::UnsupportedField, "bad reduction polynomial for GF(" + std::to_string(q) + ")");
        t->p = it->p;
        t->k = it->k;
        t->modulus = it->coeffs;
    }

    const int p = t->p;
    const int k = t->k;
    const auto qs = static_cast<std::size_t>(q);
    t->add.assign(qs * qs, 0);
    t->mul.assign(qs * qs, 0);
    t->neg.assign(qs, 0);
    t->inv.assign(qs, 0);

    std::vector<std::vector<int>> digits(qs);
    for (int a = 0; a < q; ++a) {
        auto d = decode_vector(static_cast<std::uint64_t>(a), k, p);
        digits[a].assign(d.rbegin(), d.rend()); // constant term first
    }
    auto pack = [&](const std::vector<int>& coeffs) {
        int v = 0;
        for (int i = k - 1; i >= 0; --i) v = v * p + (i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0);
        return v;
    };

    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            std::vector<int> sum(k), prod(2 * k - 1, 0);
            for (int i = 0; i < k; ++i) sum[i] = (digits[a][i] + digits[b][i]) % p;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
            if (k > 1) prod = detail::poly_mod(prod, t->modulus, p);
            t->add[a * qs + b] = pack(sum);
            t->mul[a * qs + b] = pack(prod);
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (t->add[a * qs + b] == 0) t->neg[a] = b;
            if (t->mul[a * qs + b] == 1) t->inv[a] = b;
        }
    }
    return Field(std::move(t));
}

/// All q^k codewords of an [m,k] extended Reed-Solomon code over GF(q).
struct MdsCode {
    int length = 0;
    int dimension = 0;
    Field field;
    std::vector<std::vector<int>> codewords;
};

/// Extended Reed-Solomon code of length m and dimension k, m <= q + 1.
///
/// Message u = (u_0..u_{k-1}) maps to evaluations of u_0 + u_1 x + ... at the
/// field elements 0, 1, ..., m-1 (as integers); when m = q + 1 the last
/// coordinate is u_{k-1}, the generator column (0,...,0,1). Codewords are
/// listed in lexicographic order of u.
inline MdsCode mds_generate(const Field& f, int m, int k) {
    const int q = f.order();
    if (k < 1 || k > m)
        throw Error(ErrorCode::BadParams, "MDS dimension must satisfy 1 <= k <= m");
    if (m > q + 1)
        throw Error(ErrorCode::MdsUnavailable, "no extended Reed-Solomon code of length " + std::to_string(m) +
                                                   " over GF(" + std::to_string(q) + ")");
    const int points = std::min(m, q);

    // generator[i][j] = alpha_j^i
    std::vector<std::vector<int>> generator(k, std::vector<int>(m, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < points; ++j) generator[i][j] = f.pow(j, i);
        if (m == q + 1) generator[i][q] = (i == k - 1) ? 1 : 0;
    }

    MdsCode code{m, k, f, {}};
    code.codewords.reserve(static_cast<std::size_t>(ipow(q, k)));
    for (const auto& u : tuples_lex(k, q)) {
        std::vector<int> c(m, 0);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < k; ++i) c[j] = f.add(c[j], f.mul(u[i], generator[i][j]));
        code.codewords.push_back(std::move(c));
    }
    return code;
}

inline int minimum_distance(const MdsCode& code) {
    int best = code.length;
    for (std::size_t a = 0; a < code.codewords.size(); ++a)
        for (std::size_t b = a + 1; b < code.codewords.size(); ++b)
            best = std::min(best, hamming_distance(code.codewords[a], code.codewords[b]));
    return best;
}

/// True when every vector of GF(q)^m lies within distance radius of some codeword.
inline bool spheres_cover_space(const MdsCode& code, int radius) {
    const int q = code.field.order();
    for (const auto& e : tuples_lex(code.length, q)) {
        bool covered = false;
        for (const auto& c : code.codewords) {
            if (hamming_distance(e, c) <= radius) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

} // namespace pdacc
