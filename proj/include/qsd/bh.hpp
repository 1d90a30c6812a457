#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsd/cliques.hpp"
#include "qsd/geometry.hpp"
#include "qsd/gf2.hpp"

namespace qsd {

// One of the three 16-cliques of even 6-line unions attached to a parallel
// class.  Blocks are weight-24 masks, sorted ascending; any two meet in
// exactly 8 points.
struct SpecialClique {
    int class_id = -1;
    int label = -1;  // 0..2, ascending smallest block mask
    std::array<Block, 16> blocks{};
};

// One clique label per parallel class; base-3 encoding has class 0 as the
// least significant trit.
struct DesignChoice {
    std::array<uint8_t, 21> trits{};

    uint64_t encode() const {
        uint64_t k = 0;
        for (int c = 20; c >= 0; --c) k = k * 3 + trits[c];
        return k;
    }
    static DesignChoice decode(uint64_t key) {
        DesignChoice ch;
        for (int c = 0; c < 21; ++c) {
            ch.trits[c] = static_cast<uint8_t>(key % 3);
            key /= 3;
        }
        return ch;
    }
    bool operator==(const DesignChoice&) const = default;
};

struct BHDesign {
    DesignChoice choice;
    std::vector<Block> blocks;  // 336, class-major, each clique's sorted order
};

struct BlockOwner {
    int16_t class_id;
    int16_t label;
};

// The full universe of the construction: geometry, the dual code of the
// lines, the 1008 even-union blocks and their clique structure.
struct BhUniverse {
    Geometry geom;
    int line_rank = 0;  // 51
    BinaryCode dual;    // dimension 13
    Echelon dual_span;  // membership test for the dual code

    std::array<std::vector<Block>, 21> unions;          // 48 per class, sorted
    std::array<std::array<SpecialClique, 3>, 21> cliques;

    std::vector<Block> blocks_sorted;  // the 1008 blocks, ascending
    std::vector<BlockOwner> owners;    // parallel to blocks_sorted

    // meets-in-8-or-12 flags over blocks_sorted: row i, bit j.
    std::vector<uint64_t> meet_ok;
    static constexpr int kMeetWords = 16;

    static BhUniverse build(int threads = 0);

    int block_index(Block b) const;  // -1 when not one of the 1008
    const uint64_t* meet_row(int i) const { return meet_ok.data() + static_cast<size_t>(i) * kMeetWords; }
    bool meet_ok_pair(int i, int j) const { return (meet_row(i)[j >> 6] >> (j & 63)) & 1u; }
};

// All unions of six lines of the class that meet every line of the geometry
// evenly; sorted by mask value.
std::vector<Block> even_unions_of_class(const Geometry& geom, int class_id);

// Splits the 48 unions into the three special cliques.  Throws
// std::runtime_error if the clique structure is not (three disjoint
// 16-cliques, pairwise meets of 8 inside each).
std::array<SpecialClique, 3> special_cliques_of_class(int class_id,
                                                      const std::vector<Block>& unions48);

// The symmetric 2-(16,6,2) structure a special clique induces on the 16
// line slots of its class: per clique block, the 6-subset of slots as a
// 16-bit mask.  Throws std::runtime_error when the structure fails the
// design axioms.
struct SlotDesign {
    int class_id = -1;
    std::array<uint16_t, 16> blocks{};
};
SlotDesign associated_16_6_2(const Geometry& geom, const SpecialClique& clique);

struct CrossClassReport {
    bool all_cross_adjacent = false;
    uint64_t cross_pairs_checked = 0;
    // |intersection| histogram over same-class, different-clique pairs
    std::map<int, uint64_t> same_class_cross_clique_meets;
};
CrossClassReport cross_class_adjacency_check(const BhUniverse& u);

BHDesign assemble_design(const BhUniverse& u, const DesignChoice& choice);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;
};
// Checks, from scratch: pair coverage 46, block meets in {8,12}, dual-code
// membership, even meets with all lines, weights, replication 126.
VerifyReport verify_design(const BhUniverse& u, const BHDesign& d);

// Interchange forms.  Masks as 16 hex digits, byte 0 (points 0..7) first.
std::string mask_to_hex(Block b);
Block mask_from_hex(const std::string& s);
std::string design_to_json(const BHDesign& d);
BHDesign design_from_json(const BhUniverse& u, const std::string& text);

}  // namespace qsd
