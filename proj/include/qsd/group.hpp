#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "qsd/bh.hpp"
#include "qsd/cliques.hpp"
#include "qsd/gf4.hpp"

namespace qsd {

// Semilinear affine map p -> A * Frob^sigma(p) + v on the 64 points.
struct GroupElement {
    Mat3 A;
    Vec3 v{};
    uint8_t sigma = 0;
};

GroupElement ge_identity();
GroupElement ge_compose(const GroupElement& g, const GroupElement& h);  // g after h
GroupElement ge_inverse(const GroupElement& g);
int act_point(const GroupElement& g, int p);
std::array<uint8_t, 64> compile_point_perm(const GroupElement& g);

// A generating set of the full collineation group: elementary transvections,
// a diagonal scalar stretch, one translation, and the Frobenius map.
std::vector<GroupElement> standard_generators();

// True iff the permutation maps the 1008-block set onto itself.
bool permutation_preserves_blocks(const BhUniverse& u, const std::array<uint8_t, 64>& perm);

// The symmetric group on the 3 clique labels, indexed 0..5.
struct S3Tables {
    std::array<std::array<uint8_t, 3>, 6> perm;   // images
    std::array<std::array<uint8_t, 6>, 6> comp;   // comp[a][b] = a after b
    std::array<uint8_t, 6> inv;
    std::array<uint8_t, 6> fix_count;
    std::array<int8_t, 27> index_of;              // by base-3 digits of the image triple
    S3Tables();
    uint8_t index(uint8_t i0, uint8_t i1, uint8_t i2) const {
        return static_cast<uint8_t>(index_of[i0 * 9 + i1 * 3 + i2]);
    }
};
const S3Tables& s3();

// One coset representative (A, sigma) of the translation group, with its
// induced action on the 63 special cliques in wreath form: a permutation of
// the 21 classes plus a label bijection per class.
struct QElem {
    uint32_t key = 0;                      // mat_pack(A) | sigma << 18
    std::array<uint8_t, 21> class_perm{};  // class c -> class_perm[c]
    std::array<uint8_t, 21> label_map{};   // S3 index: labels at c -> labels at class_perm[c]
};

// The clique action of the collineation group factored by its kernel, the 64
// translations.  Order 362,880, elements in ascending (A, sigma) order.
struct Quotient {
    std::vector<QElem> elems;
    std::vector<int32_t> index_by_key;  // size 1 << 19, -1 when absent
    int identity = -1;

    static Quotient build(const BhUniverse& u, int threads = 0);

    size_t order() const { return elems.size(); }
    int index_of_key(uint32_t key) const { return index_by_key[key]; }
    GroupElement lift(int e) const;  // (A, 0, sigma)

    int compose(int i, int j) const;  // i after j
    int inverse(int i) const;

    // Monomial action on choice vectors.
    void apply(int e, const DesignChoice& in, DesignChoice& out) const;
    uint64_t apply_key(int e, const DesignChoice& in) const;  // encode(apply(e, in))

    // Wreath-form composition (i after j); must agree with compose().
    QElem compose_monomial(const QElem& a, const QElem& b) const;
};

// Order of the subgroup of the full collineation group acting trivially on
// all 63 cliques: 64 times the number of coset representatives with trivial
// wreath action.  Expected value 64, the translations.
size_t clique_action_kernel_order(const Quotient& q);

// Audit form: [[9 matrix codes], [3 vector codes], sigma].
std::string group_element_to_json(const GroupElement& g);

struct InvolutionClass {
    int rep = -1;                  // smallest element index in the class
    std::vector<int> members;      // sorted element indices
    std::vector<int> centralizer;  // sorted element indices of C(rep)
};

// Conjugacy classes of order-2 elements, ordered by smallest member.
std::vector<InvolutionClass> involution_classes(const Quotient& q);

// Orbits of <T, lift(e)> on the 1008 blocks, plus the good/compatible
// structure used to assemble invariant designs.
struct OrbitAnalysis {
    std::vector<std::vector<int>> orbits;  // sorted block indices; orbits ordered by first block
    std::map<int, int> size_histogram;
    std::vector<char> good;                // per orbit
    std::vector<int> gamma_vertices;       // orbit ids, the good orbits
    SmallGraph gamma;                      // compatibility on gamma_vertices
    std::vector<int> gamma1_vertices;      // good orbits of length 16
    SmallGraph gamma1;
    std::vector<int> gamma2_vertices;      // good orbits of length 32
    SmallGraph gamma2;
};
OrbitAnalysis codeword_orbits(const BhUniverse& u, const Quotient& q, int involution);

// Count of quotient elements fixing the choice; |Aut| of the design is 64
// times this.
uint32_t quotient_stabilizer_order(const Quotient& q, const DesignChoice& choice, int threads = 0);

struct CanonResult {
    uint64_t canon_key = 0;
    uint32_t stabilizer = 0;
};
// Minimum base-3 encoding over the full quotient orbit, plus the stabilizer
// order of the input choice.
CanonResult canonical_choice(const Quotient& q, const DesignChoice& choice, int threads = 0);

}  // namespace qsd
