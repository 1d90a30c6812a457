#include "qsd/bh.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qsd/parallel.hpp"

namespace qsd {

std::vector<Block> even_unions_of_class(const Geometry& geom, int class_id) {
    std::array<Block, 16> line_masks{};
    for (int s = 0; s < 16; ++s) line_masks[s] = geom.lines[geom.classes[class_id][s]].mask;

    std::vector<Block> found;
    // All 6-of-16 slot subsets, ascending (Gosper).
    for (uint32_t sel = 0x3f; sel < (1u << 16);) {
        Block u = 0;
        for (uint32_t m = sel; m;) {
            int s = __builtin_ctz(m);
            m &= m - 1;
            u |= line_masks[s];
        }
        bool even = true;
        for (const Line& ln : geom.lines) {
            if (std::popcount(u & ln.mask) & 1) { even = false; break; }
        }
        if (even) found.push_back(u);

        uint32_t c = sel & -sel;
        uint32_t r = sel + c;
        sel = (((r ^ sel) >> 2) / c) | r;
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::array<SpecialClique, 3> special_cliques_of_class(int class_id,
                                                      const std::vector<Block>& unions48) {
    const int n = static_cast<int>(unions48.size());
    SmallGraph gamma(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = std::popcount(unions48[i] & unions48[j]);
            if (m == 8 || m == 12) gamma.add_edge(i, j);
        }

    auto cliques = maximal_cliques(gamma);
    std::vector<std::vector<int>> sixteens;
    for (const auto& c : cliques)
        if (c.size() == 16) sixteens.push_back(c);
    if (sixteens.size() != 3)
        throw std::runtime_error("special_cliques: expected exactly three 16-cliques");

    uint64_t covered = 0;
    for (const auto& c : sixteens)
        for (int v : c) {
            if (covered & (1ull << v))
                throw std::runtime_error("special_cliques: 16-cliques do not partition the unions");
            covered |= 1ull << v;
        }
    if (std::popcount(covered) != n)
        throw std::runtime_error("special_cliques: 16-cliques do not cover the unions");

    std::array<SpecialClique, 3> out{};
    std::sort(sixteens.begin(), sixteens.end(), [&](const auto& a, const auto& b) {
        return unions48[a.front()] < unions48[b.front()];
    });
    for (int label = 0; label < 3; ++label) {
        SpecialClique& sc = out[label];
        sc.class_id = class_id;
        sc.label = label;
        for (int k = 0; k < 16; ++k) sc.blocks[k] = unions48[sixteens[label][k]];
        std::sort(sc.blocks.begin(), sc.blocks.end());
        for (int a = 0; a < 16; ++a)
            for (int b = a + 1; b < 16; ++b)
                if (std::popcount(sc.blocks[a] & sc.blocks[b]) != 8)
                    throw std::runtime_error("special_cliques: within-clique meet is not 8");
    }
    return out;
}

SlotDesign associated_16_6_2(const Geometry& geom, const SpecialClique& clique) {
    SlotDesign d;
    d.class_id = clique.class_id;
    for (int k = 0; k < 16; ++k) {
        uint16_t slots = 0;
        for (int s = 0; s < 16; ++s) {
            Block lm = geom.lines[geom.classes[clique.class_id][s]].mask;
            if ((clique.blocks[k] & lm) == lm) slots |= static_cast<uint16_t>(1u << s);
        }
        if (std::popcount(slots) != 6)
            throw std::runtime_error("associated_16_6_2: block is not a union of 6 class lines");
        d.blocks[k] = slots;
    }
    // every slot pair in exactly 2 blocks
    for (int s = 0; s < 16; ++s)
        for (int t = s + 1; t < 16; ++t) {
            int cnt = 0;
            uint16_t pair = static_cast<uint16_t>((1u << s) | (1u << t));
            for (uint16_t b : d.blocks)
                if ((b & pair) == pair) ++cnt;
            if (cnt != 2) throw std::runtime_error("associated_16_6_2: slot pair not in exactly 2 blocks");
        }
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b)
            if (std::popcount(static_cast<uint16_t>(d.blocks[a] & d.blocks[b])) != 2)
                throw std::runtime_error("associated_16_6_2: block pair does not share exactly 2 slots");
    return d;
}

BhUniverse BhUniverse::build(int threads) {
    BhUniverse u;
    u.geom = Geometry::build();

    std::vector<Block> line_masks;
    line_masks.reserve(336);
    for (const Line& ln : u.geom.lines) line_masks.push_back(ln.mask);
    u.line_rank = gf2_rank(line_masks);
    u.dual = gf2_nullspace(line_masks);
    for (Block b : u.dual.basis) u.dual_span.add(b);

    std::array<std::array<SpecialClique, 3>, 21> cliques{};
    parallel_ranges(21, threads, [&](size_t lo, size_t hi) {
        for (size_t c = lo; c < hi; ++c) {
            u.unions[c] = even_unions_of_class(u.geom, static_cast<int>(c));
            cliques[c] = special_cliques_of_class(static_cast<int>(c), u.unions[c]);
        }
    });
    u.cliques = cliques;

    struct Entry { Block b; BlockOwner o; };
    std::vector<Entry> entries;
    entries.reserve(1008);
    for (int c = 0; c < 21; ++c)
        for (int l = 0; l < 3; ++l)
            for (Block b : u.cliques[c][l].blocks)
                entries.push_back({b, {static_cast<int16_t>(c), static_cast<int16_t>(l)}});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.b < b.b; });
    u.blocks_sorted.reserve(entries.size());
    u.owners.reserve(entries.size());
    for (const Entry& e : entries) {
        u.blocks_sorted.push_back(e.b);
        u.owners.push_back(e.o);
    }

    const size_t n = u.blocks_sorted.size();
    u.meet_ok.assign(n * kMeetWords, 0);
    parallel_ranges(n, threads, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            uint64_t* row = u.meet_ok.data() + i * kMeetWords;
            for (size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                int m = std::popcount(u.blocks_sorted[i] & u.blocks_sorted[j]);
                if (m == 8 || m == 12) row[j >> 6] |= 1ull << (j & 63);
            }
        }
    });
    return u;
}

int BhUniverse::block_index(Block b) const {
    auto it = std::lower_bound(blocks_sorted.begin(), blocks_sorted.end(), b);
    if (it == blocks_sorted.end() || *it != b) return -1;
    return static_cast<int>(it - blocks_sorted.begin());
}

CrossClassReport cross_class_adjacency_check(const BhUniverse& u) {
    CrossClassReport rep;
    rep.all_cross_adjacent = true;
    const size_t n = u.blocks_sorted.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (u.owners[i].class_id != u.owners[j].class_id) {
                ++rep.cross_pairs_checked;
                if (!u.meet_ok_pair(static_cast<int>(i), static_cast<int>(j)))
                    rep.all_cross_adjacent = false;
            } else if (u.owners[i].label != u.owners[j].label) {
                int m = std::popcount(u.blocks_sorted[i] & u.blocks_sorted[j]);
                ++rep.same_class_cross_clique_meets[m];
            }
        }
    }
    return rep;
}

BHDesign assemble_design(const BhUniverse& u, const DesignChoice& choice) {
    BHDesign d;
    d.choice = choice;
    d.blocks.reserve(336);
    for (int c = 0; c < 21; ++c) {
        const SpecialClique& sc = u.cliques[c][choice.trits[c]];
        d.blocks.insert(d.blocks.end(), sc.blocks.begin(), sc.blocks.end());
    }
    return d;
}

VerifyReport verify_design(const BhUniverse& u, const BHDesign& d) {
    VerifyReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        if (rep.failures.size() < 32) rep.failures.push_back(std::move(msg));
    };

    if (d.blocks.size() != 336) fail("block count is not 336");

    for (size_t i = 0; i < d.blocks.size(); ++i)
        if (std::popcount(d.blocks[i]) != 24) {
            fail("block " + std::to_string(i) + " does not have 24 points");
            break;
        }

    // (a) every point pair is covered exactly 46 times; replication 126
    std::array<std::array<int, 64>, 64> pair_count{};
    std::array<int, 64> point_count{};
    for (Block b : d.blocks) {
        int pts[24];
        int np = 0;
        for (Block m = b; m;) {
            int p = __builtin_ctzll(m);
            m &= m - 1;
            pts[np++] = p;
        }
        for (int a = 0; a < np; ++a) {
            ++point_count[pts[a]];
            for (int bb = a + 1; bb < np; ++bb) ++pair_count[pts[a]][pts[bb]];
        }
    }
    for (int p = 0; p < 64 && rep.ok; ++p)
        for (int q = p + 1; q < 64; ++q)
            if (pair_count[p][q] != 46) {
                fail("pair (" + std::to_string(p) + "," + std::to_string(q) + ") covered " +
                     std::to_string(pair_count[p][q]) + " times, want 46");
                break;
            }
    for (int p = 0; p < 64; ++p)
        if (point_count[p] != 126) {
            fail("point " + std::to_string(p) + " lies in " + std::to_string(point_count[p]) +
                 " blocks, want 126");
            break;
        }

    // (b) block intersections are 8 or 12
    for (size_t i = 0; i < d.blocks.size() && rep.ok; ++i)
        for (size_t j = i + 1; j < d.blocks.size(); ++j) {
            int m = std::popcount(d.blocks[i] & d.blocks[j]);
            if (m != 8 && m != 12) {
                fail("blocks " + std::to_string(i) + "," + std::to_string(j) + " meet in " +
                     std::to_string(m) + " points");
                break;
            }
        }

    // (c) every block lies in the dual code (span membership)
    for (size_t i = 0; i < d.blocks.size(); ++i)
        if (!u.dual_span.contains(d.blocks[i])) {
            fail("block " + std::to_string(i) + " (" + mask_to_hex(d.blocks[i]) +
                 ") is not a codeword of the dual line code");
            break;
        }

    // (d) every block meets every line evenly
    for (size_t i = 0; i < d.blocks.size(); ++i) {
        bool bad = false;
        for (const Line& ln : u.geom.lines)
            if (std::popcount(d.blocks[i] & ln.mask) & 1) {
                fail("block " + std::to_string(i) + " meets line " + std::to_string(&ln - u.geom.lines.data()) +
                     " oddly");
                bad = true;
                break;
            }
        if (bad) break;
    }
    return rep;
}

std::string mask_to_hex(Block b) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int byte = 0; byte < 8; ++byte) {
        uint8_t v = static_cast<uint8_t>((b >> (8 * byte)) & 0xff);
        s[2 * byte] = digits[v >> 4];
        s[2 * byte + 1] = digits[v & 0xf];
    }
    return s;
}

Block mask_from_hex(const std::string& s) {
    if (s.size() != 16) throw std::invalid_argument("mask_from_hex: want 16 hex digits");
    auto nib = [](char c) -> uint64_t {
        if (c >= '0' && c <= '9') return static_cast<uint64_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<uint64_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<uint64_t>(c - 'A' + 10);
        throw std::invalid_argument("mask_from_hex: bad digit");
    };
    Block b = 0;
    for (int byte = 0; byte < 8; ++byte) {
        uint64_t v = (nib(s[2 * byte]) << 4) | nib(s[2 * byte + 1]);
        b |= v << (8 * byte);
    }
    return b;
}

std::string design_to_json(const BHDesign& d) {
    nlohmann::json j;
    j["choice"] = d.choice.trits;
    std::vector<std::string> blocks;
    blocks.reserve(d.blocks.size());
    for (Block b : d.blocks) blocks.push_back(mask_to_hex(b));
    j["blocks"] = blocks;
    return j.dump(2) + "\n";
}

BHDesign design_from_json(const BhUniverse& u, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DesignChoice ch;
    auto trits = j.at("choice").get<std::vector<int>>();
    if (trits.size() != 21) throw std::invalid_argument("design_from_json: choice needs 21 trits");
    for (int c = 0; c < 21; ++c) {
        if (trits[c] < 0 || trits[c] > 2) throw std::invalid_argument("design_from_json: trit out of range");
        ch.trits[c] = static_cast<uint8_t>(trits[c]);
    }
    BHDesign d = assemble_design(u, ch);
    auto blocks = j.at("blocks").get<std::vector<std::string>>();
    if (blocks.size() != d.blocks.size()) throw std::invalid_argument("design_from_json: want 336 blocks");
    for (size_t i = 0; i < blocks.size(); ++i)
        if (mask_from_hex(blocks[i]) != d.blocks[i])
            throw std::invalid_argument("design_from_json: blocks do not match the stated choice");
    return d;
}

}  // namespace qsd
