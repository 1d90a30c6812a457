#include "qsd/group.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>

#include "qsd/geometry.hpp"
#include "qsd/parallel.hpp"

namespace qsd {

GroupElement ge_identity() { return {mat_identity(), {0, 0, 0}, 0}; }

GroupElement ge_compose(const GroupElement& g, const GroupElement& h) {
    // (g o h)(p) = A_g Frob^{s_g}(A_h Frob^{s_h}(p) + v_h) + v_g
    GroupElement r;
    Mat3 Ah = g.sigma ? mat_frob(h.A) : h.A;
    Vec3 vh = g.sigma ? vec_frob(h.v) : h.v;
    r.A = mat_mul(g.A, Ah);
    r.v = vec_add(mat_vec(g.A, vh), g.v);
    r.sigma = g.sigma ^ h.sigma;
    return r;
}

GroupElement ge_inverse(const GroupElement& g) {
    GroupElement r;
    Mat3 Ainv = mat_inverse(g.A);
    r.A = g.sigma ? mat_frob(Ainv) : Ainv;
    r.sigma = g.sigma;
    // solve g(r(p)) = p: r.v = -r.A Frob^{r.sigma}(v_g); char 2 drops the sign
    Vec3 vg = r.sigma ? vec_frob(g.v) : g.v;
    r.v = mat_vec(r.A, vg);
    return r;
}

int act_point(const GroupElement& g, int p) {
    Vec3 x = point_coords(p);
    if (g.sigma) x = vec_frob(x);
    return point_index(vec_add(mat_vec(g.A, x), g.v));
}

std::array<uint8_t, 64> compile_point_perm(const GroupElement& g) {
    std::array<uint8_t, 64> perm{};
    uint64_t seen = 0;
    for (int p = 0; p < 64; ++p) {
        int q = act_point(g, p);
        perm[p] = static_cast<uint8_t>(q);
        seen |= 1ull << q;
    }
    if (seen != ~0ull) throw std::domain_error("compile_point_perm: not a bijection");
    return perm;
}

std::vector<GroupElement> standard_generators() {
    std::vector<GroupElement> gens;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            GroupElement t = ge_identity();
            t.A[i][j] = 1;
            gens.push_back(t);
        }
    GroupElement d = ge_identity();
    d.A[0][0] = 2;  // diag(w, 1, 1)
    gens.push_back(d);
    GroupElement tr = ge_identity();
    tr.v = {0, 0, 1};
    gens.push_back(tr);
    GroupElement fr = ge_identity();
    fr.sigma = 1;
    gens.push_back(fr);
    return gens;
}

bool permutation_preserves_blocks(const BhUniverse& u, const std::array<uint8_t, 64>& perm) {
    for (Block b : u.blocks_sorted) {
        Block img = 0;
        for (Block m = b; m;) {
            int p = __builtin_ctzll(m);
            m &= m - 1;
            img |= 1ull << perm[p];
        }
        if (u.block_index(img) < 0) return false;
    }
    return true;
}

S3Tables::S3Tables() {
    const uint8_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    index_of.fill(-1);
    for (int i = 0; i < 6; ++i) {
        for (int k = 0; k < 3; ++k) perm[i][k] = perms[i][k];
        index_of[perms[i][0] * 9 + perms[i][1] * 3 + perms[i][2]] = static_cast<int8_t>(i);
        int fc = 0;
        for (int k = 0; k < 3; ++k) fc += perms[i][k] == k;
        fix_count[i] = static_cast<uint8_t>(fc);
    }
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            comp[a][b] = index(perm[a][perm[b][0]], perm[a][perm[b][1]], perm[a][perm[b][2]]);
    for (int a = 0; a < 6; ++a) {
        std::array<uint8_t, 3> im{};
        for (int k = 0; k < 3; ++k) im[perm[a][k]] = static_cast<uint8_t>(k);
        inv[a] = index(im[0], im[1], im[2]);
    }
}

const S3Tables& s3() {
    static const S3Tables tables;
    return tables;
}

namespace {

// Builds the wreath-form action of (A, sigma) from the image of one
// representative block per clique.
QElem compile_qelem(const BhUniverse& u, const Mat3& A, uint8_t sigma) {
    QElem e;
    e.key = mat_pack(A) | (static_cast<uint32_t>(sigma) << 18);
    GroupElement g{A, {0, 0, 0}, sigma};
    std::array<uint8_t, 64> perm = compile_point_perm(g);

    std::array<std::array<uint8_t, 3>, 21> images{};  // label images per class
    std::array<int8_t, 21> target{};
    target.fill(-1);
    for (int c = 0; c < 21; ++c) {
        for (int l = 0; l < 3; ++l) {
            Block rep = u.cliques[c][l].blocks[0];
            Block img = 0;
            for (Block m = rep; m;) {
                int p = __builtin_ctzll(m);
                m &= m - 1;
                img |= 1ull << perm[p];
            }
            int idx = u.block_index(img);
            if (idx < 0) throw std::runtime_error("quotient: block image is not a block");
            const BlockOwner& o = u.owners[idx];
            if (target[c] < 0)
                target[c] = static_cast<int8_t>(o.class_id);
            else if (target[c] != o.class_id)
                throw std::runtime_error("quotient: clique images straddle classes");
            images[c][l] = static_cast<uint8_t>(o.label);
        }
        e.class_perm[c] = static_cast<uint8_t>(target[c]);
        e.label_map[c] = s3().index(images[c][0], images[c][1], images[c][2]);
    }
    return e;
}

}  // namespace

Quotient Quotient::build(const BhUniverse& u, int threads) {
    Quotient q;
    std::vector<Mat3> mats = enumerate_invertible_matrices();
    if (mats.size() != 181440) throw std::runtime_error("quotient: wrong GL(3,4) order");

    q.elems.resize(mats.size() * 2);
    parallel_ranges(mats.size(), threads, [&](size_t lo, size_t hi) {
        for (size_t m = lo; m < hi; ++m)
            for (uint8_t sigma = 0; sigma < 2; ++sigma)
                q.elems[2 * m + sigma] = compile_qelem(u, mats[m], sigma);
    });

    q.index_by_key.assign(1u << 19, -1);
    for (size_t i = 0; i < q.elems.size(); ++i) q.index_by_key[q.elems[i].key] = static_cast<int32_t>(i);
    q.identity = q.index_of_key(mat_pack(mat_identity()));
    if (q.identity < 0) throw std::runtime_error("quotient: identity missing");

    // Kernel of the clique action: only the identity coset may act trivially,
    // i.e. the kernel in the full group is exactly the 64 translations.
    static const std::array<uint8_t, 21> id_perm = [] {
        std::array<uint8_t, 21> a{};
        for (int i = 0; i < 21; ++i) a[i] = static_cast<uint8_t>(i);
        return a;
    }();
    size_t trivial = 0;
    for (const QElem& e : q.elems) {
        if (e.class_perm != id_perm) continue;
        bool id = true;
        for (int c = 0; c < 21 && id; ++c) id = e.label_map[c] == 0;
        if (id) ++trivial;
    }
    if (trivial != 1) throw std::runtime_error("quotient: clique-action kernel is larger than the translations");

    // Faithfulness: all wreath actions distinct.
    std::vector<uint32_t> order(q.elems.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        const QElem &ea = q.elems[a], &eb = q.elems[b];
        if (ea.class_perm != eb.class_perm) return ea.class_perm < eb.class_perm;
        return ea.label_map < eb.label_map;
    });
    for (size_t i = 1; i < order.size(); ++i) {
        const QElem &ea = q.elems[order[i - 1]], &eb = q.elems[order[i]];
        if (ea.class_perm == eb.class_perm && ea.label_map == eb.label_map)
            throw std::runtime_error("quotient: clique action is not faithful on cosets");
    }
    return q;
}

GroupElement Quotient::lift(int e) const {
    const QElem& el = elems[e];
    return {mat_unpack(el.key & 0x3ffff), {0, 0, 0}, static_cast<uint8_t>(el.key >> 18)};
}

int Quotient::compose(int i, int j) const {
    GroupElement gi = lift(i), gj = lift(j);
    GroupElement r = ge_compose(gi, gj);
    uint32_t key = mat_pack(r.A) | (static_cast<uint32_t>(r.sigma) << 18);
    int idx = index_of_key(key);
    if (idx < 0) throw std::logic_error("quotient: composition left the element set");
    return idx;
}

int Quotient::inverse(int i) const {
    GroupElement r = ge_inverse(lift(i));
    uint32_t key = mat_pack(r.A) | (static_cast<uint32_t>(r.sigma) << 18);
    int idx = index_of_key(key);
    if (idx < 0) throw std::logic_error("quotient: inverse left the element set");
    return idx;
}

void Quotient::apply(int e, const DesignChoice& in, DesignChoice& out) const {
    const QElem& el = elems[e];
    const S3Tables& t = s3();
    for (int c = 0; c < 21; ++c) out.trits[el.class_perm[c]] = t.perm[el.label_map[c]][in.trits[c]];
}

uint64_t Quotient::apply_key(int e, const DesignChoice& in) const {
    static const std::array<uint64_t, 21> pow3 = [] {
        std::array<uint64_t, 21> p{};
        uint64_t v = 1;
        for (int i = 0; i < 21; ++i) { p[i] = v; v *= 3; }
        return p;
    }();
    const QElem& el = elems[e];
    const S3Tables& t = s3();
    uint64_t key = 0;
    for (int c = 0; c < 21; ++c) key += pow3[el.class_perm[c]] * t.perm[el.label_map[c]][in.trits[c]];
    return key;
}

QElem Quotient::compose_monomial(const QElem& a, const QElem& b) const {
    QElem r;
    const S3Tables& t = s3();
    for (int c = 0; c < 21; ++c) {
        r.class_perm[c] = a.class_perm[b.class_perm[c]];
        r.label_map[c] = t.comp[a.label_map[b.class_perm[c]]][b.label_map[c]];
    }
    return r;
}

size_t clique_action_kernel_order(const Quotient& q) {
    size_t trivial = 0;
    for (const QElem& e : q.elems) {
        bool id = true;
        for (int c = 0; c < 21 && id; ++c) id = e.class_perm[c] == c && e.label_map[c] == 0;
        if (id) ++trivial;
    }
    return 64 * trivial;
}

std::string group_element_to_json(const GroupElement& g) {
    std::string s = "[[";
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            s += std::to_string(g.A[r][c]);
            if (r != 2 || c != 2) s += ",";
        }
    s += "],[";
    for (int i = 0; i < 3; ++i) {
        s += std::to_string(g.v[i]);
        if (i != 2) s += ",";
    }
    s += "],";
    s += std::to_string(g.sigma);
    s += "]";
    return s;
}

std::vector<InvolutionClass> involution_classes(const Quotient& q) {
    const size_t n = q.order();
    std::vector<uint32_t> involutions;
    for (size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) == q.identity) continue;
        GroupElement g = q.lift(static_cast<int>(i));
        GroupElement g2 = ge_compose(g, g);
        if (mat_pack(g2.A) == mat_pack(mat_identity()) && g2.sigma == 0 && vec_is_zero(g2.v))
            involutions.push_back(static_cast<uint32_t>(i));
    }

    std::vector<char> assigned(n, 0);
    std::vector<InvolutionClass> classes;
    for (uint32_t x : involutions) {
        if (assigned[x]) continue;
        InvolutionClass cl;
        cl.rep = static_cast<int>(x);
        for (size_t z = 0; z < n; ++z) {
            int zi = static_cast<int>(z);
            int img = q.compose(q.compose(zi, static_cast<int>(x)), q.inverse(zi));
            if (!assigned[img]) {
                assigned[img] = 1;
                cl.members.push_back(img);
            }
        }
        std::sort(cl.members.begin(), cl.members.end());
        for (size_t z = 0; z < n; ++z) {
            int zi = static_cast<int>(z);
            if (q.compose(zi, cl.rep) == q.compose(cl.rep, zi)) cl.centralizer.push_back(zi);
        }
        classes.push_back(std::move(cl));
    }
    std::sort(classes.begin(), classes.end(),
              [](const InvolutionClass& a, const InvolutionClass& b) { return a.members.front() < b.members.front(); });
    return classes;
}

OrbitAnalysis codeword_orbits(const BhUniverse& u, const Quotient& q, int involution) {
    const int n = static_cast<int>(u.blocks_sorted.size());

    // Permutations of the block list under the translation basis and the lift.
    std::vector<std::array<uint8_t, 64>> point_perms;
    for (int i = 0; i < 3; ++i)
        for (F4 val : {F4{1}, F4{2}}) {
            GroupElement t = ge_identity();
            t.v[i] = val;
            point_perms.push_back(compile_point_perm(t));
        }
    point_perms.push_back(compile_point_perm(q.lift(involution)));

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& perm : point_perms) {
        for (int i = 0; i < n; ++i) {
            Block img = 0;
            for (Block m = u.blocks_sorted[i]; m;) {
                int p = __builtin_ctzll(m);
                m &= m - 1;
                img |= 1ull << perm[p];
            }
            int j = u.block_index(img);
            if (j < 0) throw std::runtime_error("codeword_orbits: image is not a block");
            int ra = find(i), rb = find(j);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }

    OrbitAnalysis oa;
    std::vector<int> root_to_orbit(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_to_orbit[r] < 0) {
            root_to_orbit[r] = static_cast<int>(oa.orbits.size());
            oa.orbits.emplace_back();
        }
        oa.orbits[root_to_orbit[r]].push_back(i);
    }
    for (const auto& orb : oa.orbits) ++oa.size_histogram[static_cast<int>(orb.size())];

    // Good orbits and pairwise compatibility, both via the meets-in-{8,12}
    // flag rows.
    auto orbit_mask = [&](const std::vector<int>& orb) {
        std::array<uint64_t, BhUniverse::kMeetWords> m{};
        for (int b : orb) m[b >> 6] |= 1ull << (b & 63);
        return m;
    };
    std::vector<std::array<uint64_t, BhUniverse::kMeetWords>> masks;
    masks.reserve(oa.orbits.size());
    for (const auto& orb : oa.orbits) masks.push_back(orbit_mask(orb));

    auto all_pairs_ok = [&](const std::vector<int>& from,
                            const std::array<uint64_t, BhUniverse::kMeetWords>& to_mask, int skip_self) {
        for (int b : from) {
            const uint64_t* row = u.meet_row(b);
            for (int w = 0; w < BhUniverse::kMeetWords; ++w) {
                uint64_t want = to_mask[w];
                if (skip_self && (b >> 6) == w) want &= ~(1ull << (b & 63));
                if ((row[w] & want) != want) return false;
            }
        }
        return true;
    };

    oa.good.resize(oa.orbits.size());
    for (size_t i = 0; i < oa.orbits.size(); ++i)
        oa.good[i] = all_pairs_ok(oa.orbits[i], masks[i], 1) ? 1 : 0;

    for (size_t i = 0; i < oa.orbits.size(); ++i)
        if (oa.good[i]) oa.gamma_vertices.push_back(static_cast<int>(i));

    const int gn = static_cast<int>(oa.gamma_vertices.size());
    oa.gamma = SmallGraph(gn);
    for (int a = 0; a < gn; ++a)
        for (int b = a + 1; b < gn; ++b) {
            int oi = oa.gamma_vertices[a], oj = oa.gamma_vertices[b];
            if (all_pairs_ok(oa.orbits[oi], masks[oj], 0)) oa.gamma.add_edge(a, b);
        }

    auto induce = [&](size_t want_size, std::vector<int>& verts) {
        for (int a = 0; a < gn; ++a)
            if (oa.orbits[oa.gamma_vertices[a]].size() == want_size) verts.push_back(a);
        SmallGraph g(static_cast<int>(verts.size()));
        for (size_t a = 0; a < verts.size(); ++a)
            for (size_t b = a + 1; b < verts.size(); ++b)
                if (oa.gamma.adjacent(verts[a], verts[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        return g;
    };
    oa.gamma1 = induce(16, oa.gamma1_vertices);
    oa.gamma2 = induce(32, oa.gamma2_vertices);
    // Report gamma1/gamma2 vertices as orbit ids.
    for (int& v : oa.gamma1_vertices) v = oa.gamma_vertices[v];
    for (int& v : oa.gamma2_vertices) v = oa.gamma_vertices[v];
    return oa;
}

uint32_t quotient_stabilizer_order(const Quotient& q, const DesignChoice& choice, int threads) {
    const uint64_t self = choice.encode();
    const size_t n = q.order();
    std::atomic<uint32_t> count{0};
    parallel_ranges(n, threads, [&](size_t lo, size_t hi) {
        uint32_t local = 0;
        for (size_t e = lo; e < hi; ++e)
            if (q.apply_key(static_cast<int>(e), choice) == self) ++local;
        count += local;
    });
    return count.load();
}

CanonResult canonical_choice(const Quotient& q, const DesignChoice& choice, int threads) {
    const uint64_t self = choice.encode();
    const size_t n = q.order();
    threads = resolve_threads(threads);
    std::vector<uint64_t> mins(static_cast<size_t>(threads), ~0ull);
    std::vector<uint32_t> stabs(static_cast<size_t>(threads), 0);
    std::atomic<int> slot{0};
    parallel_ranges(n, threads, [&](size_t lo, size_t hi) {
        int s = slot.fetch_add(1);
        uint64_t mn = ~0ull;
        uint32_t st = 0;
        for (size_t e = lo; e < hi; ++e) {
            uint64_t k = q.apply_key(static_cast<int>(e), choice);
            if (k < mn) mn = k;
            if (k == self) ++st;
        }
        mins[s] = mn;
        stabs[s] = st;
    });
    CanonResult r;
    r.canon_key = ~0ull;
    for (int s = 0; s < threads; ++s) {
        r.canon_key = std::min(r.canon_key, mins[s]);
        r.stabilizer += stabs[s];
    }
    return r;
}

}  // namespace qsd
