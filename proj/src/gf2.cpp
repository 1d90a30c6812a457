#include "qsd/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace qsd {

int gf2_rank(std::span<const Block> rows) {
    Echelon e;
    for (Block r : rows) e.add(r);
    return e.rank;
}

BinaryCode gf2_nullspace(std::span<const Block> rows) {
    // Full reduction: every pivot column appears in exactly one row.
    Echelon e;
    for (Block r : rows) e.add(r);
    std::array<Block, 64> rref = e.pivot_row;
    for (int p = 0; p < 64; ++p) {
        if (!(e.pivot_mask & (1ull << p))) continue;
        for (int q = 0; q < 64; ++q) {
            if (q == p || !(e.pivot_mask & (1ull << q))) continue;
            if (rref[q] & (1ull << p)) rref[q] ^= rref[p];
        }
    }

    BinaryCode code;
    for (int f = 0; f < 64; ++f) {
        if (e.pivot_mask & (1ull << f)) continue;
        Block v = 1ull << f;
        for (int p = 0; p < 64; ++p)
            if ((e.pivot_mask & (1ull << p)) && (rref[p] & (1ull << f))) v |= 1ull << p;
        code.basis.push_back(v);
    }
    return code;
}

void enumerate_codewords(const BinaryCode& code, const std::function<void(Block)>& fn) {
    int dim = code.dimension();
    if (dim > 30) throw std::invalid_argument("enumerate_codewords: dimension > 30");
    Block w = 0;
    fn(w);
    uint64_t total = 1ull << dim;
    for (uint64_t i = 1; i < total; ++i) {
        w ^= code.basis[__builtin_ctzll(i)];
        fn(w);
    }
}

std::vector<Block> all_codewords(const BinaryCode& code) {
    std::vector<Block> out;
    out.reserve(size_t{1} << code.dimension());
    enumerate_codewords(code, [&](Block w) { out.push_back(w); });
    return out;
}

std::map<int, uint64_t> weight_histogram(const BinaryCode& code) {
    std::map<int, uint64_t> hist;
    enumerate_codewords(code, [&](Block w) { ++hist[std::popcount(w)]; });
    return hist;
}

}  // namespace qsd
