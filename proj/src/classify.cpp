#include "qsd/classify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qsd/analysis.hpp"
#include "qsd/parallel.hpp"

namespace qsd {

InvolutionCycleInfo involution_cycle_info(const Quotient& q, int e) {
    const QElem& el = q.elems[e];
    const S3Tables& t = s3();
    InvolutionCycleInfo info;
    for (int c = 0; c < 21; ++c) {
        int d = el.class_perm[c];
        if (d == c) {
            uint8_t m = el.label_map[c];
            if (t.fix_count[m] == 3) {
                info.free_fixed_classes.push_back(c);
            } else if (t.fix_count[m] == 1) {
                for (uint8_t l = 0; l < 3; ++l)
                    if (t.perm[m][l] == l) info.forced_classes.emplace_back(c, l);
            } else {
                info.feasible = false;
            }
        } else if (d > c) {
            info.class_pairs.emplace_back(c, d);
        }
    }
    return info;
}

uint64_t fixed_choice_count(const Quotient& q, int e) {
    const QElem& el = q.elems[e];
    const S3Tables& t = s3();
    uint64_t count = 1;
    std::array<char, 21> seen{};
    for (int c = 0; c < 21; ++c) {
        if (seen[c]) continue;
        // composite label map around the cycle through c
        uint8_t m = el.label_map[c];
        seen[c] = 1;
        int d = el.class_perm[c];
        while (d != c) {
            seen[d] = 1;
            m = t.comp[el.label_map[d]][m];
            d = el.class_perm[d];
        }
        count *= t.fix_count[m];
        if (count == 0) return 0;
    }
    return count;
}

namespace {

// Fixed choices of an involution are parameterized by one free trit per free
// fixed class and per class 2-cycle.
struct FixedSetCoder {
    InvolutionCycleInfo info;
    std::vector<int> free_positions;  // class ids carrying free digits
    const QElem* el = nullptr;

    uint64_t count() const {
        uint64_t c = 1;
        for (size_t i = 0; i < free_positions.size(); ++i) c *= 3;
        return c;
    }

    DesignChoice choice_of_index(uint64_t idx) const {
        DesignChoice ch;
        for (const auto& [c, l] : info.forced_classes) ch.trits[c] = l;
        for (int c : free_positions) {
            ch.trits[c] = static_cast<uint8_t>(idx % 3);
            idx /= 3;
        }
        const S3Tables& t = s3();
        for (const auto& [c, d] : info.class_pairs) ch.trits[d] = t.perm[el->label_map[c]][ch.trits[c]];
        return ch;
    }

    uint64_t index_of_choice(const DesignChoice& ch) const {
        uint64_t idx = 0;
        for (size_t i = free_positions.size(); i-- > 0;) idx = idx * 3 + ch.trits[free_positions[i]];
        return idx;
    }
};

FixedSetCoder make_coder(const Quotient& q, int e) {
    FixedSetCoder coder;
    coder.info = involution_cycle_info(q, e);
    coder.el = &q.elems[e];
    if (!coder.info.feasible) throw std::invalid_argument("fixed set: infeasible label map on a fixed class");
    coder.free_positions = coder.info.free_fixed_classes;
    for (const auto& [c, d] : coder.info.class_pairs) coder.free_positions.push_back(c);
    std::sort(coder.free_positions.begin(), coder.free_positions.end());
    return coder;
}

}  // namespace

std::vector<uint64_t> enumerate_fixed_choices(const Quotient& q, int e, uint64_t cap) {
    uint64_t expected = fixed_choice_count(q, e);
    if (expected > cap) throw std::invalid_argument("enumerate_fixed_choices: fixed set too large");
    if (expected == 0) return {};
    FixedSetCoder coder = make_coder(q, e);
    if (coder.count() != expected)
        throw std::logic_error("enumerate_fixed_choices: coder disagrees with cycle product");
    std::vector<uint64_t> keys;
    keys.reserve(expected);
    for (uint64_t idx = 0; idx < expected; ++idx) keys.push_back(coder.choice_of_index(idx).encode());
    return keys;
}

CentralizerReduction reduce_by_centralizer(const Quotient& q, const InvolutionClass& cls) {
    FixedSetCoder coder = make_coder(q, cls.rep);
    const uint64_t total = coder.count();

    CentralizerReduction red;
    red.fixed_count = total;
    std::vector<char> covered(total, 0);
    std::vector<uint64_t> orbit_indices;
    for (uint64_t idx = 0; idx < total; ++idx) {
        if (covered[idx]) continue;
        DesignChoice seed = coder.choice_of_index(idx);
        uint64_t min_key = ~0ull;
        orbit_indices.clear();
        DesignChoice img;
        for (int z : cls.centralizer) {
            q.apply(z, seed, img);
            uint64_t j = coder.index_of_choice(img);
            if (!covered[j]) {
                covered[j] = 1;
                orbit_indices.push_back(j);
            }
            uint64_t k = img.encode();
            if (k < min_key) min_key = k;
        }
        red.reps.push_back(min_key);
        red.orbit_sizes.push_back(orbit_indices.size());
    }

    uint64_t covered_total = 0;
    for (uint64_t s : red.orbit_sizes) covered_total += s;
    if (covered_total != total)
        throw std::runtime_error("reduce_by_centralizer: orbits do not partition the fixed set");

    std::vector<size_t> order(red.reps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return red.reps[a] < red.reps[b]; });
    CentralizerReduction sorted;
    sorted.fixed_count = total;
    sorted.reps.reserve(red.reps.size());
    sorted.orbit_sizes.reserve(red.reps.size());
    for (size_t i : order) {
        sorted.reps.push_back(red.reps[i]);
        sorted.orbit_sizes.push_back(red.orbit_sizes[i]);
    }
    return sorted;
}

Classification classify_rich_designs(const BhUniverse& u, const Quotient& q,
                                     const InvolutionClass& h1, const InvolutionClass& h2,
                                     int threads) {
    Classification out;
    const InvolutionClass* fams[2] = {&h1, &h2};

    std::unordered_map<uint64_t, Record> by_canon;
    for (int f = 0; f < 2; ++f) {
        FamilyResult& fr = out.family[f];
        fr.name = f == 0 ? "H1" : "H2";
        fr.involution = fams[f]->rep;
        fr.centralizer_order = fams[f]->centralizer.size();

        CentralizerReduction red = reduce_by_centralizer(q, *fams[f]);
        fr.fixed_count = red.fixed_count;
        fr.centralizer_orbits = red.reps.size();

        // Full-orbit canonicalization of every centralizer representative;
        // parallel over representatives.
        std::vector<CanonResult> canon(red.reps.size());
        parallel_ranges(red.reps.size(), threads, [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i)
                canon[i] = canonical_choice(q, DesignChoice::decode(red.reps[i]), 1);
        });

        for (size_t i = 0; i < red.reps.size(); ++i) {
            auto [it, fresh] = by_canon.try_emplace(canon[i].canon_key);
            Record& r = it->second;
            if (fresh) {
                r.canon_key = canon[i].canon_key;
                r.quotient_stab = canon[i].stabilizer;
                r.aut_order = 64ull * canon[i].stabilizer;
            } else if (r.quotient_stab != canon[i].stabilizer) {
                throw std::runtime_error("classify: stabilizer disagrees across orbit representatives");
            }
            r.families |= static_cast<uint8_t>(1 << f);
        }
    }

    out.records.reserve(by_canon.size());
    for (const auto& [key, rec] : by_canon) out.records.push_back(rec);
    std::sort(out.records.begin(), out.records.end(),
              [](const Record& a, const Record& b) { return a.canon_key < b.canon_key; });

    parallel_ranges(out.records.size(), threads, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            BHDesign d = assemble_design(u, DesignChoice::decode(out.records[i].canon_key));
            out.records[i].two_rank = two_rank(d.blocks);
        }
    });

    for (const Record& r : out.records) {
        ++out.aut_histogram[r.aut_order];
        for (int f = 0; f < 2; ++f)
            if (r.families & (1 << f)) {
                ++out.family[f].aut_histogram[r.aut_order];
                ++out.family[f].classes;
            }
        if (r.families == 3) ++out.overlap;
    }
    return out;
}

MassResult mass_formula_check(const Classification& cls) {
    constexpr uint64_t kGroupOrder = 23224320;
    constexpr uint64_t kChoiceCount = 10460353203ull;  // 3^21
    MassResult m;
    for (const Record& r : cls.records) {
        if (r.aut_order == 0 || kGroupOrder % r.aut_order != 0)
            throw std::runtime_error("mass_formula_check: |Aut| does not divide the group order");
        m.mass_sum += kGroupOrder / r.aut_order;
    }
    uint64_t rest = kChoiceCount - m.mass_sum;
    uint64_t orbit64 = kGroupOrder / 64;  // orbit size of a stabilizer-free design
    if (rest % orbit64 != 0) throw std::runtime_error("mass_formula_check: N64 is not integral");
    m.n64 = rest / orbit64;
    m.n_total = m.n64 + cls.records.size();
    return m;
}

uint64_t burnside_count(const Quotient& q, int threads) {
    const size_t n = q.order();
    threads = resolve_threads(threads);
    std::vector<uint64_t> partial(static_cast<size_t>(threads), 0);
    std::atomic<int> slot{0};
    parallel_ranges(n, threads, [&](size_t lo, size_t hi) {
        int s = slot.fetch_add(1);
        uint64_t sum = 0;
        for (size_t e = lo; e < hi; ++e) sum += fixed_choice_count(q, static_cast<int>(e));
        partial[s] = sum;
    });
    uint64_t total = 0;
    for (uint64_t p : partial) total += p;
    if (total % n != 0) throw std::runtime_error("burnside_count: non-integral orbit count");
    return total / n;
}

Tables make_tables(const Classification& cls, const MassResult& mass) {
    Tables t;
    t.family1 = cls.family[0].aut_histogram;
    t.family2 = cls.family[1].aut_histogram;
    t.all = cls.aut_histogram;
    t.all[64] = mass.n64;
    return t;
}

std::string render_tables_text(const Tables& t) {
    std::ostringstream os;
    auto table = [&](const std::string& title, const std::map<uint64_t, uint64_t>& hist) {
        os << title << "\n";
        os << "  |Aut(D)|  #designs\n";
        uint64_t total = 0;
        for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
            os << "  " << it->first;
            for (size_t pad = std::to_string(it->first).size(); pad < 8; ++pad) os << ' ';
            os << "  " << it->second << "\n";
            total += it->second;
        }
        os << "  total: " << total << "\n\n";
    };
    table("Designs admitting the first order-128 subgroup type (H1)", t.family1);
    table("Designs admitting the second order-128 subgroup type (H2)", t.family2);
    table("All nonisomorphic designs", t.all);
    return os.str();
}

}  // namespace qsd
