#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qsd {

// GF(4) = {0, 1, w, w^2} with w^2 = w + 1, encoded as integer codes 0..3
// (w -> 2, w^2 -> 3).  Addition is XOR of codes; the tables below carry the
// multiplicative structure.
using F4 = uint8_t;

inline constexpr std::array<std::array<F4, 4>, 4> F4_MUL = {{
    {0, 0, 0, 0},
    {0, 1, 2, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
}};
inline constexpr std::array<F4, 4> F4_INV = {0, 1, 3, 2};   // index 0 unused
inline constexpr std::array<F4, 4> F4_FROB = {0, 1, 3, 2};  // x -> x^2

inline constexpr F4 f4_add(F4 a, F4 b) { return static_cast<F4>(a ^ b); }
inline constexpr F4 f4_mul(F4 a, F4 b) { return F4_MUL[a][b]; }
inline constexpr F4 f4_inv(F4 a) { return F4_INV[a]; }
inline constexpr F4 frobenius(F4 a) { return F4_FROB[a]; }

using Vec3 = std::array<F4, 3>;
using Mat3 = std::array<std::array<F4, 3>, 3>;

inline constexpr Vec3 vec_add(const Vec3& a, const Vec3& b) {
    return {f4_add(a[0], b[0]), f4_add(a[1], b[1]), f4_add(a[2], b[2])};
}
inline constexpr Vec3 vec_scale(F4 s, const Vec3& a) {
    return {f4_mul(s, a[0]), f4_mul(s, a[1]), f4_mul(s, a[2])};
}
inline constexpr Vec3 vec_frob(const Vec3& a) {
    return {frobenius(a[0]), frobenius(a[1]), frobenius(a[2])};
}
inline constexpr bool vec_is_zero(const Vec3& a) {
    return a[0] == 0 && a[1] == 0 && a[2] == 0;
}

Mat3 mat_identity();
Vec3 mat_vec(const Mat3& m, const Vec3& x);
Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 mat_frob(const Mat3& m);
F4 mat_det(const Mat3& m);

// Adjugate/determinant inverse; throws std::domain_error on det = 0.
Mat3 mat_inverse(const Mat3& m);

// 18-bit packing of the 9 entries, row-major, entry (r,c) at bits 2*(3r+c).
uint32_t mat_pack(const Mat3& m);
Mat3 mat_unpack(uint32_t bits);

// All invertible matrices in ascending packed order (181,440 of them).
std::vector<Mat3> enumerate_invertible_matrices();

}  // namespace qsd
