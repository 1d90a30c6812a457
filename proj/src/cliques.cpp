#include "qsd/cliques.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace qsd {

namespace {

struct Bitset {
    std::vector<uint64_t> w;
    explicit Bitset(int words) : w(words, 0) {}
    bool any() const {
        for (uint64_t x : w)
            if (x) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (uint64_t x : w) c += std::popcount(x);
        return c;
    }
    void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
    void clear(int i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
};

int intersect_count(const Bitset& a, const uint64_t* row) {
    int c = 0;
    for (size_t k = 0; k < a.w.size(); ++k) c += std::popcount(a.w[k] & row[k]);
    return c;
}

struct BronKerbosch {
    const SmallGraph& g;
    std::vector<std::vector<int>>& out;
    std::vector<int> r;

    void run(Bitset p, Bitset x) {
        if (!p.any() && !x.any()) {
            std::vector<int> clique = r;
            std::sort(clique.begin(), clique.end());
            out.push_back(std::move(clique));
            return;
        }
        // Pivot: max degree into the candidate set, lowest index on ties.
        int pivot = -1, best = -1;
        for (int v = 0; v < g.n; ++v) {
            if (!p.test(v)) continue;
            int d = intersect_count(p, g.row(v));
            if (d > best) { best = d; pivot = v; }
        }
        for (int v = 0; v < g.n; ++v) {
            if (!p.test(v) || g.adjacent(pivot, v)) continue;
            Bitset p2 = p, x2 = x;
            const uint64_t* nv = g.row(v);
            for (size_t k = 0; k < p2.w.size(); ++k) {
                p2.w[k] &= nv[k];
                x2.w[k] &= nv[k];
            }
            r.push_back(v);
            run(std::move(p2), std::move(x2));
            r.pop_back();
            p.clear(v);
            x.set(v);
        }
    }
};

struct FixedSizeEnum {
    const SmallGraph& g;
    int k;
    std::vector<std::vector<int>>& out;
    std::vector<int> r;

    void run(const Bitset& cand, int from) {
        if (static_cast<int>(r.size()) == k) {
            out.push_back(r);
            return;
        }
        int need = k - static_cast<int>(r.size());
        if (cand.count() < need) return;
        for (int v = from; v < g.n; ++v) {
            if (!cand.test(v)) continue;
            Bitset c2 = cand;
            const uint64_t* nv = g.row(v);
            for (size_t w = 0; w < c2.w.size(); ++w) c2.w[w] &= nv[w];
            r.push_back(v);
            run(c2, v + 1);
            r.pop_back();
        }
    }
};

}  // namespace

int SmallGraph::degree(int i) const {
    int d = 0;
    for (int k = 0; k < words; ++k) d += std::popcount(row(i)[k]);
    return d;
}

size_t SmallGraph::edge_count() const {
    size_t s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<size_t>(degree(i));
    return s / 2;
}

std::vector<std::vector<int>> maximal_cliques(const SmallGraph& g) {
    std::vector<std::vector<int>> out;
    if (g.n == 0) return out;
    Bitset p(g.words), x(g.words);
    for (int v = 0; v < g.n; ++v) p.set(v);
    BronKerbosch bk{g, out, {}};
    bk.run(std::move(p), std::move(x));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<int>> cliques_of_size(const SmallGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("cliques_of_size: k must be >= 1");
    std::vector<std::vector<int>> out;
    if (g.n == 0) return out;
    Bitset all(g.words);
    for (int v = 0; v < g.n; ++v) all.set(v);
    FixedSizeEnum fe{g, k, out, {}};
    fe.run(all, 0);
    return out;
}

int max_clique_size(const SmallGraph& g) {
    auto cliques = maximal_cliques(g);
    return cliques.empty() ? 0 : static_cast<int>(cliques.front().size());
}

std::string to_dimacs(const SmallGraph& g) {
    std::ostringstream os;
    os << "p edge " << g.n << " " << g.edge_count() << "\n";
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.adjacent(i, j)) os << "e " << i + 1 << " " << j + 1 << "\n";
    return os.str();
}

}  // namespace qsd
