#include "qsd/analysis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qsd/gf2.hpp"

namespace qsd {

int two_rank(const std::vector<Block>& blocks) {
    return gf2_rank(blocks);
}

int BlockGraph::degree(int i) const {
    int d = 0;
    for (int w = 0; w < kWords; ++w) d += std::popcount(row(i)[w]);
    return d;
}

SmallGraph BlockGraph::to_small_graph() const {
    SmallGraph g(kN);
    for (int i = 0; i < kN; ++i)
        for (int j = i + 1; j < kN; ++j)
            if (adjacent(i, j)) g.add_edge(i, j);
    return g;
}

BlockGraph block_graph(const BHDesign& d) {
    if (d.blocks.size() != BlockGraph::kN) throw std::runtime_error("block_graph: want 336 blocks");
    BlockGraph g;
    g.adj.assign(static_cast<size_t>(BlockGraph::kN) * BlockGraph::kWords, 0);
    for (int i = 0; i < BlockGraph::kN; ++i)
        for (int j = i + 1; j < BlockGraph::kN; ++j) {
            int m = std::popcount(d.blocks[i] & d.blocks[j]);
            if (m != 8 && m != 12)
                throw std::runtime_error("block_graph: intersection " + std::to_string(m) +
                                         " outside {8,12} at pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            if (m == 12) {
                g.row(i)[j >> 6] |= 1ull << (j & 63);
                g.row(j)[i >> 6] |= 1ull << (i & 63);
            }
        }
    return g;
}

SrgResult srg_check(const BlockGraph& g) {
    SrgResult r;
    r.n = BlockGraph::kN;
    r.k = g.degree(0);
    for (int i = 1; i < BlockGraph::kN; ++i)
        if (g.degree(i) != r.k) {
            r.witness = "vertex " + std::to_string(i) + " has degree " + std::to_string(g.degree(i));
            return r;
        }
    r.lambda = -1;
    r.mu = -1;
    for (int i = 0; i < BlockGraph::kN; ++i)
        for (int j = i + 1; j < BlockGraph::kN; ++j) {
            int common = 0;
            for (int w = 0; w < BlockGraph::kWords; ++w)
                common += std::popcount(g.row(i)[w] & g.row(j)[w]);
            int& param = g.adjacent(i, j) ? r.lambda : r.mu;
            if (param < 0) {
                param = common;
            } else if (param != common) {
                r.witness = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") has " +
                            std::to_string(common) + " common neighbors, want " + std::to_string(param);
                return r;
            }
        }
    r.ok = true;
    return r;
}

bool has_class_coclique_partition(const BlockGraph& g) {
    for (int c = 0; c < 21; ++c)
        for (int a = 16 * c; a < 16 * (c + 1); ++a)
            for (int b = a + 1; b < 16 * (c + 1); ++b)
                if (g.adjacent(a, b)) return false;
    return true;
}

std::vector<uint32_t> four_clique_counts(const BlockGraph& g) {
    constexpr int kN = BlockGraph::kN;
    constexpr int kW = BlockGraph::kWords;
    std::vector<uint32_t> counts(kN, 0);
    for (int u = 0; u < kN; ++u) {
        // triangles inside the neighborhood of u
        const uint64_t* nu = g.row(u);
        uint64_t tri = 0;
        for (int a = 0; a < kN; ++a) {
            if (!((nu[a >> 6] >> (a & 63)) & 1u)) continue;
            const uint64_t* na = g.row(a);
            // b > a, b adjacent to both u and a
            for (int w = a >> 6; w < kW; ++w) {
                uint64_t cand = nu[w] & na[w];
                if (w == (a >> 6)) cand &= ~((2ull << (a & 63)) - 1);
                while (cand) {
                    int b = 64 * w + __builtin_ctzll(cand);
                    cand &= cand - 1;
                    const uint64_t* nb = g.row(b);
                    for (int w2 = 0; w2 < kW; ++w2) tri += std::popcount(nu[w2] & na[w2] & nb[w2]);
                }
            }
        }
        counts[u] = static_cast<uint32_t>(tri / 3);
    }
    return counts;
}

std::string fingerprint(const BlockGraph& g) {
    constexpr int kN = BlockGraph::kN;
    constexpr int kW = BlockGraph::kWords;
    std::vector<uint32_t> fours = four_clique_counts(g);

    // Per-vertex record: sorted common-neighbor counts with the neighbors,
    // then the 4-clique count.
    std::vector<std::vector<uint32_t>> records(kN);
    for (int u = 0; u < kN; ++u) {
        std::vector<uint32_t> rec;
        rec.reserve(96);
        const uint64_t* nu = g.row(u);
        for (int w = 0; w < kW; ++w) {
            uint64_t m = nu[w];
            while (m) {
                int v = 64 * w + __builtin_ctzll(m);
                m &= m - 1;
                int common = 0;
                const uint64_t* nv = g.row(v);
                for (int w2 = 0; w2 < kW; ++w2) common += std::popcount(nu[w2] & nv[w2]);
                rec.push_back(static_cast<uint32_t>(common));
            }
        }
        std::sort(rec.begin(), rec.end());
        rec.push_back(fours[u]);
        records[u] = std::move(rec);
    }
    std::sort(records.begin(), records.end());

    // FNV-1a, 64-bit
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](uint32_t x) {
        for (int byte = 0; byte < 4; ++byte) {
            h ^= (x >> (8 * byte)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& rec : records) {
        mix(static_cast<uint32_t>(rec.size()));
        for (uint32_t x : rec) mix(x);
    }

    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[15 - i] = digits[(h >> (4 * i)) & 0xf];
    return out;
}

}  // namespace qsd
