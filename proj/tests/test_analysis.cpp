#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <bit>
#include <random>

#include "qsd/analysis.hpp"
#include "test_ctx.hpp"

using namespace qsd;

namespace {

BlockGraph relabel(const BlockGraph& g, const std::vector<int>& perm) {
    BlockGraph h;
    h.adj.assign(g.adj.size(), 0);
    for (int i = 0; i < BlockGraph::kN; ++i)
        for (int j = i + 1; j < BlockGraph::kN; ++j)
            if (g.adjacent(i, j)) {
                int a = perm[i], b = perm[j];
                h.row(a)[b >> 6] |= 1ull << (b & 63);
                h.row(b)[a >> 6] |= 1ull << (a & 63);
            }
    return h;
}

}  // namespace

TEST_CASE("two_rank stays inside the dual code dimension") {
    const BhUniverse& u = qsdtest::universe();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        DesignChoice ch;
        for (int c = 0; c < 21; ++c) ch.trits[c] = static_cast<uint8_t>(rng() % 3);
        int r = two_rank(assemble_design(u, ch).blocks);
        CHECK(r <= 13);
        CHECK(r >= 1);
    }
}

TEST_CASE("block graph of a design is an SRG(336,80,28,16) with the coclique partition") {
    const BhUniverse& u = qsdtest::universe();
    BHDesign d = assemble_design(u, DesignChoice{});
    BlockGraph g = block_graph(d);

    for (int i = 0; i < BlockGraph::kN; ++i) {
        CHECK(g.degree(i) == 80);
        CHECK(!g.adjacent(i, i));
    }
    SrgResult sr = srg_check(g);
    CHECK(sr.ok);
    CHECK(sr.n == 336);
    CHECK(sr.k == 80);
    CHECK(sr.lambda == 28);
    CHECK(sr.mu == 16);
    // feasibility identity k(k - lambda - 1) = (n - k - 1) mu
    CHECK(sr.k * (sr.k - sr.lambda - 1) == (sr.n - sr.k - 1) * sr.mu);
    CHECK(has_class_coclique_partition(g));
}

TEST_CASE("srg_check reports a witness after an edge toggle") {
    const BhUniverse& u = qsdtest::universe();
    BlockGraph g = block_graph(assemble_design(u, DesignChoice{}));
    // toggle one edge
    int i = 0, j = 17;
    g.row(i)[j >> 6] ^= 1ull << (j & 63);
    g.row(j)[i >> 6] ^= 1ull << (i & 63);
    SrgResult sr = srg_check(g);
    CHECK(!sr.ok);
    CHECK(!sr.witness.empty());
}

TEST_CASE("block_graph rejects intersections outside 8 and 12") {
    const BhUniverse& u = qsdtest::universe();
    BHDesign d = assemble_design(u, DesignChoice{});
    d.blocks[5] = (1ull << 24) - 1;  // weight 24 but wrong geometry
    CHECK_THROWS_AS(block_graph(d), std::runtime_error);
}

TEST_CASE("four-clique counts agree with a brute-force scan") {
    const BhUniverse& u = qsdtest::universe();
    BlockGraph g = block_graph(assemble_design(u, DesignChoice{}));
    auto counts = four_clique_counts(g);

    for (int u0 : {0, 99, 335}) {
        std::vector<int> nb;
        for (int v = 0; v < BlockGraph::kN; ++v)
            if (g.adjacent(u0, v)) nb.push_back(v);
        uint64_t triangles = 0;
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                if (!g.adjacent(nb[a], nb[b])) continue;
                for (size_t c = b + 1; c < nb.size(); ++c)
                    if (g.adjacent(nb[a], nb[c]) && g.adjacent(nb[b], nb[c])) ++triangles;
            }
        CHECK(counts[u0] == triangles);
    }

    uint64_t total = 0;
    for (uint32_t c : counts) total += c;
    CHECK(total % 4 == 0);  // every 4-clique is counted at each of its vertices
}

TEST_CASE("fingerprints are deterministic and relabeling-invariant") {
    const BhUniverse& u = qsdtest::universe();
    BlockGraph g = block_graph(assemble_design(u, DesignChoice{}));
    std::string fp = fingerprint(g);
    CHECK(fp.size() == 16);
    CHECK(fingerprint(g) == fp);

    std::mt19937 rng(41);
    std::vector<int> perm(BlockGraph::kN);
    for (int trial = 0; trial < 5; ++trial) {
        for (int i = 0; i < BlockGraph::kN; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(fingerprint(relabel(g, perm)) == fp);
    }
}
