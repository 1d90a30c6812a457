#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace qsd {

// A Block is a subset of the 64 points as a bit mask; bit i = point i.
using Block = uint64_t;

// Row-echelon accumulator over GF(2) with 64-bit rows, pivoting on the
// lowest set bit.
struct Echelon {
    std::array<Block, 64> pivot_row{};  // by pivot position; 0 = unused
    uint64_t pivot_mask = 0;            // bit p set iff a pivot row at p exists
    int rank = 0;

    // Reduces r against current rows; returns the remainder.
    Block reduce(Block r) const {
        while (r) {
            int b = __builtin_ctzll(r);
            if (!(pivot_mask & (1ull << b))) break;
            r ^= pivot_row[b];
        }
        return r;
    }
    // Inserts a row; returns false if it was dependent.
    bool add(Block r) {
        r = reduce(r);
        if (!r) return false;
        int b = __builtin_ctzll(r);
        pivot_row[b] = r;
        pivot_mask |= 1ull << b;
        ++rank;
        return true;
    }
    bool contains(Block r) const { return reduce(r) == 0; }
};

int gf2_rank(std::span<const Block> rows);

struct BinaryCode {
    std::vector<Block> basis;  // independent rows
    int dimension() const { return static_cast<int>(basis.size()); }
};

// Basis of { x : popcount(x & r) even for all rows r }.
BinaryCode gf2_nullspace(std::span<const Block> rows);

// Visits all 2^dim codewords exactly once (Gray-code order, starting at 0).
// Throws std::invalid_argument when dimension > 30.
void enumerate_codewords(const BinaryCode& code, const std::function<void(Block)>& fn);

std::vector<Block> all_codewords(const BinaryCode& code);

// weight -> count over all codewords, ascending weight.
std::map<int, uint64_t> weight_histogram(const BinaryCode& code);

}  // namespace qsd
