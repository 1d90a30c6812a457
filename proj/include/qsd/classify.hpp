#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsd/bh.hpp"
#include "qsd/group.hpp"

namespace qsd {

// Decomposition of an involution's monomial action into the pieces that
// parameterize its fixed choice vectors.
struct InvolutionCycleInfo {
    std::vector<int> free_fixed_classes;                 // identity label map: free trit
    std::vector<std::pair<int, uint8_t>> forced_classes; // transposition: the one fixed label
    std::vector<std::pair<int, int>> class_pairs;        // (leader, follower) 2-cycles
    bool feasible = true;                                // false if a fixed class admits no label
};
InvolutionCycleInfo involution_cycle_info(const Quotient& q, int e);

// Number of choice vectors fixed by an arbitrary quotient element: product
// over class-cycles of the number of labels fixed by the composite label map.
uint64_t fixed_choice_count(const Quotient& q, int e);

// Explicit fixed set of an involution, as encoded keys in free-digit scan
// order.  Throws std::invalid_argument when the count exceeds the cap.
std::vector<uint64_t> enumerate_fixed_choices(const Quotient& q, int e,
                                              uint64_t cap = uint64_t{1} << 24);

struct CentralizerReduction {
    std::vector<uint64_t> reps;         // orbit-minimum encodings, ascending
    std::vector<uint64_t> orbit_sizes;  // parallel to reps
    uint64_t fixed_count = 0;           // size of the fixed set (partition check)
};
// Orbits of the involution's centralizer on its fixed choice set.
CentralizerReduction reduce_by_centralizer(const Quotient& q, const InvolutionClass& cls);

struct Record {
    uint64_t canon_key = 0;
    uint32_t quotient_stab = 0;
    uint64_t aut_order = 0;  // 64 * quotient_stab
    int two_rank = 0;
    uint8_t families = 0;  // bit 0: H1 family, bit 1: H2 family
};

struct FamilyResult {
    std::string name;                      // "H1" / "H2"
    int involution = -1;                   // quotient element index of the representative
    uint64_t fixed_count = 0;
    size_t centralizer_order = 0;
    size_t centralizer_orbits = 0;
    size_t classes = 0;                    // nonisomorphic designs in this family
    std::map<uint64_t, uint64_t> aut_histogram;
};

struct Classification {
    std::vector<Record> records;  // merged, sorted by canon_key
    FamilyResult family[2];
    size_t overlap = 0;
    std::map<uint64_t, uint64_t> aut_histogram;  // merged rich records
};

// Classifies all designs whose automorphism group order is divisible by 128:
// enumerate each involution family's fixed designs, reduce by the
// centralizer, canonicalize over the full quotient, merge, and attach
// 2-ranks.  `h1` must be the involution class with the 15+24 orbit
// signature, `h2` the other.
Classification classify_rich_designs(const BhUniverse& u, const Quotient& q,
                                     const InvolutionClass& h1, const InvolutionClass& h2,
                                     int threads = 0);

struct MassResult {
    uint64_t mass_sum = 0;  // sum of |G| / |Aut| over the rich records
    uint64_t n64 = 0;       // classes with automorphism group of order exactly 64
    uint64_t n_total = 0;   // all classes
};
// Throws std::runtime_error if the counts are not integral.
MassResult mass_formula_check(const Classification& cls);

// Orbit count of the quotient on the 3^21 choice vectors via the averaged
// fixed-point count; equals the number of nonisomorphic designs.  Throws on
// a non-integral sum.
uint64_t burnside_count(const Quotient& q, int threads = 0);

struct Tables {
    std::map<uint64_t, uint64_t> family1;  // |Aut| -> #classes
    std::map<uint64_t, uint64_t> family2;
    std::map<uint64_t, uint64_t> all;      // includes the order-64 row
};
Tables make_tables(const Classification& cls, const MassResult& mass);
std::string render_tables_text(const Tables& t);

}  // namespace qsd
