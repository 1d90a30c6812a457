#pragma once

// Brute-force clique enumeration by full subset scan; only usable for tiny
// graphs, kept independent of the production enumerator.

#include <algorithm>
#include <vector>

#include "qsd/cliques.hpp"

namespace qsdtest {

inline bool subset_is_clique(const qsd::SmallGraph& g, uint32_t s) {
    for (int i = 0; i < g.n; ++i) {
        if (!(s & (1u << i))) continue;
        for (int j = i + 1; j < g.n; ++j)
            if ((s & (1u << j)) && !g.adjacent(i, j)) return false;
    }
    return true;
}

inline std::vector<std::vector<int>> naive_maximal_cliques(const qsd::SmallGraph& g) {
    std::vector<std::vector<int>> out;
    for (uint32_t s = 1; s < (1u << g.n); ++s) {
        if (!subset_is_clique(g, s)) continue;
        bool maximal = true;
        for (int v = 0; v < g.n && maximal; ++v) {
            if (s & (1u << v)) continue;
            bool all = true;
            for (int i = 0; i < g.n && all; ++i)
                if ((s & (1u << i)) && !g.adjacent(v, i)) all = false;
            if (all) maximal = false;
        }
        if (!maximal) continue;
        std::vector<int> clique;
        for (int i = 0; i < g.n; ++i)
            if (s & (1u << i)) clique.push_back(i);
        out.push_back(clique);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

inline std::vector<std::vector<int>> naive_cliques_of_size(const qsd::SmallGraph& g, int k) {
    std::vector<std::vector<int>> out;
    for (uint32_t s = 1; s < (1u << g.n); ++s) {
        if (__builtin_popcount(s) != k || !subset_is_clique(g, s)) continue;
        std::vector<int> clique;
        for (int i = 0; i < g.n; ++i)
            if (s & (1u << i)) clique.push_back(i);
        out.push_back(clique);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qsdtest
