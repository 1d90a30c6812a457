#include <doctest.h>

#include <stdexcept>

#include <bit>
#include <random>
#include <set>

#include "qsd/bh.hpp"
#include "qsd/group.hpp"
#include "test_ctx.hpp"

using namespace qsd;

TEST_CASE("48 even unions per class, 1008 in total, equal to the weight-24 dual words") {
    const BhUniverse& u = qsdtest::universe();
    for (int c = 0; c < 21; ++c) {
        REQUIRE(u.unions[c].size() == 48);
        for (Block b : u.unions[c]) CHECK(std::popcount(b) == 24);
        for (size_t i = 1; i < u.unions[c].size(); ++i) CHECK(u.unions[c][i - 1] < u.unions[c][i]);
    }
    CHECK(u.blocks_sorted.size() == 1008);

    std::vector<Block> w24;
    enumerate_codewords(u.dual, [&](Block w) {
        if (std::popcount(w) == 24) w24.push_back(w);
    });
    std::sort(w24.begin(), w24.end());
    CHECK(w24 == u.blocks_sorted);
}

TEST_CASE("special cliques: labels, partition, meets, coverage") {
    const BhUniverse& u = qsdtest::universe();
    for (int c = 0; c < 21; ++c) {
        // labels ordered by smallest block mask
        CHECK(u.cliques[c][0].blocks[0] < u.cliques[c][1].blocks[0]);
        CHECK(u.cliques[c][1].blocks[0] < u.cliques[c][2].blocks[0]);

        std::set<Block> all;
        for (int l = 0; l < 3; ++l) {
            const SpecialClique& sc = u.cliques[c][l];
            CHECK(sc.class_id == c);
            CHECK(sc.label == l);
            std::array<int, 64> cover{};
            for (int a = 0; a < 16; ++a) {
                all.insert(sc.blocks[a]);
                for (uint64_t m = sc.blocks[a]; m;) {
                    ++cover[__builtin_ctzll(m)];
                    m &= m - 1;
                }
                for (int b = a + 1; b < 16; ++b)
                    CHECK(std::popcount(sc.blocks[a] & sc.blocks[b]) == 8);
            }
            for (int p = 0; p < 64; ++p) CHECK(cover[p] == 6);
        }
        CHECK(all.size() == 48);  // the three cliques partition the class unions
        std::set<Block> unions(u.unions[c].begin(), u.unions[c].end());
        CHECK(all == unions);
    }
}

TEST_CASE("each special clique induces the symmetric 2-(16,6,2) slot design") {
    const BhUniverse& u = qsdtest::universe();
    for (int c = 0; c < 21; ++c)
        for (int l = 0; l < 3; ++l) {
            SlotDesign d;
            REQUIRE_NOTHROW(d = associated_16_6_2(u.geom, u.cliques[c][l]));
            std::set<uint16_t> distinct(d.blocks.begin(), d.blocks.end());
            CHECK(distinct.size() == 16);
        }
}

TEST_CASE("translations act transitively on the blocks of a special clique") {
    const BhUniverse& u = qsdtest::universe();
    const auto& blocks = u.cliques[7][1].blocks;
    std::set<Block> orbit;
    for (int vi = 0; vi < 64; ++vi) {
        GroupElement t = ge_identity();
        t.v = point_coords(vi);
        auto perm = compile_point_perm(t);
        Block img = 0;
        for (uint64_t m = blocks[0]; m;) {
            img |= 1ull << perm[__builtin_ctzll(m)];
            m &= m - 1;
        }
        CHECK(std::binary_search(blocks.begin(), blocks.end(), img));
        orbit.insert(img);
    }
    CHECK(orbit.size() == 16);
}

TEST_CASE("blocks from different classes always meet in 8 or 12 points") {
    const BhUniverse& u = qsdtest::universe();
    CrossClassReport rep = cross_class_adjacency_check(u);
    CHECK(rep.all_cross_adjacent);
    CHECK(rep.cross_pairs_checked == (1008ull * 1007 / 2 - 21ull * (48 * 47 / 2)));
    // same-class, cross-clique meets include sizes outside {8,12}
    bool has_bad = false;
    for (const auto& [m, cnt] : rep.same_class_cross_clique_meets)
        if (m != 8 && m != 12) has_bad = true;
    CHECK(has_bad);
}

TEST_CASE("assembled designs pass the full axiom check") {
    const BhUniverse& u = qsdtest::universe();

    BHDesign zero = assemble_design(u, DesignChoice{});
    CHECK(zero.blocks.size() == 336);
    VerifyReport rep = verify_design(u, zero);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());

    // property: any choice vector gives a valid design
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        DesignChoice ch;
        for (int c = 0; c < 21; ++c) ch.trits[c] = static_cast<uint8_t>(rng() % 3);
        CHECK(verify_design(u, assemble_design(u, ch)).ok);
    }
}

TEST_CASE("a corrupted design is rejected with a witness") {
    const BhUniverse& u = qsdtest::universe();
    BHDesign d = assemble_design(u, DesignChoice{});
    // weight-24 mask that is not a codeword of the dual
    Block fake = (1ull << 24) - 1;
    REQUIRE(std::popcount(fake) == 24);
    REQUIRE(!u.dual_span.contains(fake));
    d.blocks[0] = fake;
    VerifyReport rep = verify_design(u, d);
    CHECK(!rep.ok);
    bool witnessed = false;
    for (const auto& f : rep.failures)
        if (f.find("codeword") != std::string::npos) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("choice encoding and design json round-trip") {
    const BhUniverse& u = qsdtest::universe();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        DesignChoice ch;
        for (int c = 0; c < 21; ++c) ch.trits[c] = static_cast<uint8_t>(rng() % 3);
        CHECK(DesignChoice::decode(ch.encode()) == ch);
    }
    CHECK(DesignChoice::decode(0) == DesignChoice{});

    DesignChoice ch;
    ch.trits = {0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2};
    BHDesign d = assemble_design(u, ch);
    std::string text = design_to_json(d);
    BHDesign back = design_from_json(u, text);
    CHECK(back.choice == d.choice);
    CHECK(back.blocks == d.blocks);

    // tampered block must be rejected
    std::string bad = text;
    size_t pos = bad.find(mask_to_hex(d.blocks[0]));
    REQUIRE(pos != std::string::npos);
    bad[pos] = bad[pos] == '0' ? '1' : '0';
    CHECK_THROWS(design_from_json(u, bad));
}

TEST_CASE("mask hex form") {
    CHECK(mask_to_hex(0) == "0000000000000000");
    CHECK(mask_to_hex(1) == "0100000000000000");  // point 0 lives in the first byte
    CHECK(mask_to_hex(0x8000000000000000ull) == "0000000000000080");
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        Block b = rng();
        CHECK(mask_from_hex(mask_to_hex(b)) == b);
    }
    CHECK_THROWS(mask_from_hex("zz"));
}
