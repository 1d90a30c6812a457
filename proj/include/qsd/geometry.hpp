#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsd/gf4.hpp"

namespace qsd {

// Points of AG(3,4) are indexed 0..63: index = 16*a + 4*b + c for coordinates
// (a,b,c) in F4 codes.  Componentwise GF(4) addition is a plain XOR of
// indices because the packed 2-bit fields never carry.
inline constexpr int point_index(const Vec3& v) {
    return (static_cast<int>(v[0]) << 4) | (static_cast<int>(v[1]) << 2) | static_cast<int>(v[2]);
}
inline constexpr Vec3 point_coords(int p) {
    return {static_cast<F4>((p >> 4) & 3), static_cast<F4>((p >> 2) & 3), static_cast<F4>(p & 3)};
}

struct Line {
    uint64_t mask = 0;  // weight-4 point set
    int direction = -1; // parallel class id, 0..20
    int slot = -1;      // position within the class, 0..15
};

struct Geometry {
    std::array<Vec3, 21> directions;                  // normalized, lexicographic
    std::vector<Line> lines;                          // 336, class-major then slot
    std::array<std::array<int, 16>, 21> classes;      // line id by (class, slot)
    std::array<std::array<int16_t, 64>, 21> line_of;  // (class, point) -> line id

    static Geometry build();

    // Unique line through two distinct points; throws std::invalid_argument
    // when p == q.
    const Line& line_through(int p, int q) const;
};

}  // namespace qsd
