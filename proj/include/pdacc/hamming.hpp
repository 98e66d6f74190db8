#pragma once

#include <cstddef>
#include <span>

#include "pdacc/error.hpp"

namespace pdacc {

/// Number of coordinates in which a and b differ.
inline int hamming_distance(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::LengthMismatch, "hamming_distance on vectors of different length");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

/// Number of nonzero coordinates.
inline int weight(std::span<const int> a) {
    int w = 0;
    for (int x : a) w += x != 0;
    return w;
}

} // namespace pdacc
