#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsd {

// Dense undirected graph with bitset adjacency rows; sized for the graphs
// that show up here (at most ~1008 vertices).
struct SmallGraph {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> adj;  // n rows of `words` words each

    SmallGraph() = default;
    explicit SmallGraph(int n_)
        : n(n_), words((n_ + 63) / 64), adj(static_cast<size_t>(n_) * ((n_ + 63) / 64), 0) {}

    uint64_t* row(int i) { return adj.data() + static_cast<size_t>(i) * words; }
    const uint64_t* row(int i) const { return adj.data() + static_cast<size_t>(i) * words; }

    void add_edge(int i, int j) {
        row(i)[j >> 6] |= 1ull << (j & 63);
        row(j)[i >> 6] |= 1ull << (i & 63);
    }
    bool adjacent(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    int degree(int i) const;
    size_t edge_count() const;
};

// All maximal cliques (Bron-Kerbosch with pivoting), sorted by size
// descending then lexicographically.
std::vector<std::vector<int>> maximal_cliques(const SmallGraph& g);

// All k-cliques, maximal or not, in lexicographic order.
std::vector<std::vector<int>> cliques_of_size(const SmallGraph& g, int k);

int max_clique_size(const SmallGraph& g);

// Undirected DIMACS, 1-based, "p edge n m" header.
std::string to_dimacs(const SmallGraph& g);

}  // namespace qsd
