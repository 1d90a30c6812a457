#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsd/bh.hpp"
#include "qsd/cliques.hpp"

namespace qsd {

// GF(2) rank of the block-point incidence matrix.
int two_rank(const std::vector<Block>& blocks);

// Block graph: vertices are the 336 blocks, adjacent iff they meet in 12
// points.  Throws std::runtime_error on an intersection outside {8,12}.
struct BlockGraph {
    static constexpr int kN = 336;
    static constexpr int kWords = 6;
    std::vector<uint64_t> adj;  // kN rows of kWords

    const uint64_t* row(int i) const { return adj.data() + static_cast<size_t>(i) * kWords; }
    uint64_t* row(int i) { return adj.data() + static_cast<size_t>(i) * kWords; }
    bool adjacent(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    int degree(int i) const;
    SmallGraph to_small_graph() const;
};
BlockGraph block_graph(const BHDesign& d);

struct SrgResult {
    bool ok = false;
    int n = 0, k = 0, lambda = 0, mu = 0;
    std::string witness;  // first violation, empty when ok
};
// Verifies regularity and the common-neighbor counts of a strongly regular
// graph; parameters are read off the first vertex/pair.
SrgResult srg_check(const BlockGraph& g);

// Blocks come class-major from assemble_design: checks that each class's 16
// blocks form a coclique.
bool has_class_coclique_partition(const BlockGraph& g);

// Number of 4-cliques through each vertex.
std::vector<uint32_t> four_clique_counts(const BlockGraph& g);

// Isomorphism-invariant fingerprint: per vertex, the sorted multiset of
// common-neighbor counts with its neighbors together with its 4-clique
// count; vertex records sorted, then FNV-1a hashed to 16 hex digits.
std::string fingerprint(const BlockGraph& g);

}  // namespace qsd
