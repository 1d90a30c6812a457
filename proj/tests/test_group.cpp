#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>
#include <unordered_set>

#include "qsd/group.hpp"
#include "test_ctx.hpp"

using namespace qsd;

namespace {

GroupElement random_element(std::mt19937& rng) {
    GroupElement g;
    do {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) g.A[r][c] = static_cast<F4>(rng() & 3);
    } while (mat_det(g.A) == 0);
    g.v = {static_cast<F4>(rng() & 3), static_cast<F4>(rng() & 3), static_cast<F4>(rng() & 3)};
    g.sigma = static_cast<uint8_t>(rng() & 1);
    return g;
}

}  // namespace

TEST_CASE("point permutations of basic elements") {
    auto id = compile_point_perm(ge_identity());
    for (int p = 0; p < 64; ++p) CHECK(id[p] == p);

    GroupElement tr = ge_identity();
    tr.v = {0, 0, 1};
    auto perm = compile_point_perm(tr);
    for (int p = 0; p < 64; ++p) {
        CHECK(perm[p] != p);           // fixed-point-free
        CHECK(perm[perm[p]] == p);     // order 2
    }
}

TEST_CASE("composition and inverse laws on random samples") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        GroupElement g = random_element(rng), h = random_element(rng);
        auto pg = compile_point_perm(g), ph = compile_point_perm(h);
        auto pgh = compile_point_perm(ge_compose(g, h));
        for (int p = 0; p < 64; ++p) CHECK(pgh[p] == pg[ph[p]]);

        auto pinv = compile_point_perm(ge_inverse(g));
        for (int p = 0; p < 64; ++p) CHECK(pinv[pg[p]] == p);
    }
}

TEST_CASE("generators preserve the 1008 weight-24 codewords; a transposition does not") {
    const BhUniverse& u = qsdtest::universe();
    for (const GroupElement& g : standard_generators())
        CHECK(permutation_preserves_blocks(u, compile_point_perm(g)));

    std::array<uint8_t, 64> swap01{};
    for (int p = 0; p < 64; ++p) swap01[p] = static_cast<uint8_t>(p);
    std::swap(swap01[0], swap01[1]);
    CHECK(!permutation_preserves_blocks(u, swap01));
}

TEST_CASE("quotient of the clique action has order 362880 and trivial kernel") {
    const auto& ctx = qsdtest::group_ctx();
    CHECK(ctx.q.order() == 362880);
    CHECK(64ull * ctx.q.order() == 23224320ull);  // the collineation group order
    CHECK(clique_action_kernel_order(ctx.q) == 64);  // exactly the translations
}

TEST_CASE("group element audit serialization") {
    CHECK(group_element_to_json(ge_identity()) == "[[1,0,0,0,1,0,0,0,1],[0,0,0],0]");
    GroupElement g = ge_identity();
    g.v = {0, 2, 1};
    g.sigma = 1;
    CHECK(group_element_to_json(g) == "[[1,0,0,0,1,0,0,0,1],[0,2,1],1]");
}

TEST_CASE("quotient closure and transitivity on the 21 classes") {
    const auto& ctx = qsdtest::group_ctx();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        int i = static_cast<int>(rng() % ctx.q.order());
        int j = static_cast<int>(rng() % ctx.q.order());
        CHECK_NOTHROW(ctx.q.compose(i, j));
    }
    std::set<int> images;
    for (const QElem& e : ctx.q.elems) images.insert(e.class_perm[0]);
    CHECK(images.size() == 21);
}

TEST_CASE("the wreath form is a homomorphism") {
    const auto& ctx = qsdtest::group_ctx();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int i = static_cast<int>(rng() % ctx.q.order());
        int j = static_cast<int>(rng() % ctx.q.order());
        int k = ctx.q.compose(i, j);
        QElem composed = ctx.q.compose_monomial(ctx.q.elems[i], ctx.q.elems[j]);
        CHECK(composed.class_perm == ctx.q.elems[k].class_perm);
        CHECK(composed.label_map == ctx.q.elems[k].label_map);
    }
}

TEST_CASE("monomial action is compatible with the design action") {
    // applying the wreath action to a choice matches transforming the blocks
    const BhUniverse& u = qsdtest::universe();
    const auto& ctx = qsdtest::group_ctx();
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        DesignChoice ch;
        for (int c = 0; c < 21; ++c) ch.trits[c] = static_cast<uint8_t>(rng() % 3);
        int e = static_cast<int>(rng() % ctx.q.order());

        DesignChoice img;
        ctx.q.apply(e, ch, img);

        auto perm = compile_point_perm(ctx.q.lift(e));
        std::set<Block> mapped;
        for (Block b : assemble_design(u, ch).blocks) {
            Block bm = 0;
            for (uint64_t m = b; m;) {
                bm |= 1ull << perm[__builtin_ctzll(m)];
                m &= m - 1;
            }
            mapped.insert(bm);
        }
        auto img_blocks = assemble_design(u, img).blocks;
        CHECK(mapped == std::set<Block>(img_blocks.begin(), img_blocks.end()));
    }
}

TEST_CASE("exactly two involution classes with centralizers 1152 and 336") {
    const auto& ctx = qsdtest::group_ctx();
    REQUIRE(ctx.invs.size() == 2);
    std::multiset<size_t> sizes, cents;
    for (const auto& cl : ctx.invs) {
        sizes.insert(cl.members.size());
        cents.insert(cl.centralizer.size());
        // orbit-stabilizer within the conjugation action
        CHECK(cl.members.size() * cl.centralizer.size() == ctx.q.order());
        // representatives square to the identity
        GroupElement g = ctx.q.lift(cl.rep);
        GroupElement g2 = ge_compose(g, g);
        CHECK(mat_pack(g2.A) == mat_pack(mat_identity()));
        CHECK(g2.sigma == 0);
        CHECK(vec_is_zero(g2.v));
    }
    CHECK(sizes == std::multiset<size_t>{315, 1080});
    CHECK(cents == std::multiset<size_t>{336, 1152});
}

TEST_CASE("an involution lift together with the translations has order 128") {
    const auto& ctx = qsdtest::group_ctx();
    for (const auto& cl : ctx.invs) {
        GroupElement lift = ctx.q.lift(cl.rep);
        std::set<std::array<uint8_t, 64>> elems;
        for (int vi = 0; vi < 64; ++vi) {
            GroupElement t = ge_identity();
            t.v = point_coords(vi);
            elems.insert(compile_point_perm(t));
            elems.insert(compile_point_perm(ge_compose(t, lift)));
        }
        CHECK(elems.size() == 128);
    }
}

TEST_CASE("codeword orbit signatures under the two order-128 subgroups") {
    const auto& ctx = qsdtest::group_ctx();
    CHECK(ctx.h1_orbits.size_histogram == std::map<int, int>{{16, 15}, {32, 24}});
    CHECK(ctx.h2_orbits.size_histogram == std::map<int, int>{{16, 7}, {32, 28}});
    for (const auto& orb : ctx.h1_orbits.orbits) CHECK(128 % orb.size() == 0);
    for (const auto& orb : ctx.h2_orbits.orbits) CHECK(128 % orb.size() == 0);
}

TEST_CASE("canonical form: idempotent, constant on orbits, orbit-stabilizer") {
    const auto& ctx = qsdtest::group_ctx();
    std::mt19937_64 rng(17);

    DesignChoice ch;
    for (int c = 0; c < 21; ++c) ch.trits[c] = static_cast<uint8_t>(rng() % 3);

    CanonResult base = canonical_choice(ctx.q, ch);
    CanonResult again = canonical_choice(ctx.q, DesignChoice::decode(base.canon_key));
    CHECK(again.canon_key == base.canon_key);  // idempotent

    for (int trial = 0; trial < 50; ++trial) {
        int e = static_cast<int>(rng() % ctx.q.order());
        DesignChoice img;
        ctx.q.apply(e, ch, img);
        CHECK(canonical_choice(ctx.q, img).canon_key == base.canon_key);
    }

    for (int trial = 0; trial < 2; ++trial) {
        DesignChoice c2;
        for (int c = 0; c < 21; ++c) c2.trits[c] = static_cast<uint8_t>(rng() % 3);
        std::unordered_set<uint64_t> orbit;
        for (size_t e = 0; e < ctx.q.order(); ++e)
            orbit.insert(ctx.q.apply_key(static_cast<int>(e), c2));
        uint32_t stab = quotient_stabilizer_order(ctx.q, c2);
        CHECK(stab >= 1);
        CHECK(orbit.size() * stab == ctx.q.order());
    }
}
