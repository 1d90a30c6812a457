#include "qsd/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsd {

namespace {

// First nonzero coordinate scaled to 1; input must be nonzero.
Vec3 normalize_direction(const Vec3& d) {
    for (int i = 0; i < 3; ++i)
        if (d[i] != 0) return vec_scale(f4_inv(d[i]), d);
    throw std::invalid_argument("normalize_direction: zero vector");
}

}  // namespace

Geometry Geometry::build() {
    Geometry g{};

    std::vector<Vec3> dirs;
    for (int p = 1; p < 64; ++p) {
        Vec3 v = point_coords(p);
        Vec3 n = normalize_direction(v);
        if (n == v) dirs.push_back(v);
    }
    std::sort(dirs.begin(), dirs.end(),
              [](const Vec3& a, const Vec3& b) { return point_index(a) < point_index(b); });
    if (dirs.size() != 21) throw std::logic_error("Geometry: expected 21 directions");
    std::copy(dirs.begin(), dirs.end(), g.directions.begin());

    g.lines.reserve(336);
    for (int c = 0; c < 21; ++c) {
        const Vec3& d = g.directions[c];
        std::array<int, 4> offsets{};
        for (int t = 0; t < 4; ++t) offsets[t] = point_index(vec_scale(static_cast<F4>(t), d));

        uint64_t seen = 0;
        int slot = 0;
        for (int p = 0; p < 64; ++p) {
            if (seen & (1ull << p)) continue;
            uint64_t mask = 0;
            for (int t = 0; t < 4; ++t) mask |= 1ull << (p ^ offsets[t]);
            seen |= mask;
            int id = static_cast<int>(g.lines.size());
            g.lines.push_back(Line{mask, c, slot});
            g.classes[c][slot] = id;
            for (int q = 0; q < 64; ++q)
                if (mask & (1ull << q)) g.line_of[c][q] = static_cast<int16_t>(id);
            ++slot;
        }
        if (slot != 16) throw std::logic_error("Geometry: class does not have 16 lines");
    }
    return g;
}

const Line& Geometry::line_through(int p, int q) const {
    if (p == q) throw std::invalid_argument("line_through: equal points");
    Vec3 d = normalize_direction(point_coords(p ^ q));
    int c = -1;
    for (int i = 0; i < 21; ++i)
        if (directions[i] == d) { c = i; break; }
    if (c < 0) throw std::logic_error("line_through: direction not found");
    return lines[line_of[c][p]];
}

}  // namespace qsd
