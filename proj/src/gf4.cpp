#include "qsd/gf4.hpp"

#include <stdexcept>

namespace qsd {

Mat3 mat_identity() {
    Mat3 m{};
    m[0][0] = m[1][1] = m[2][2] = 1;
    return m;
}

Vec3 mat_vec(const Mat3& m, const Vec3& x) {
    Vec3 y{};
    for (int r = 0; r < 3; ++r) {
        F4 acc = 0;
        for (int c = 0; c < 3; ++c) acc = f4_add(acc, f4_mul(m[r][c], x[c]));
        y[r] = acc;
    }
    return y;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 m{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            F4 acc = 0;
            for (int k = 0; k < 3; ++k) acc = f4_add(acc, f4_mul(a[r][k], b[k][c]));
            m[r][c] = acc;
        }
    return m;
}

Mat3 mat_frob(const Mat3& m) {
    Mat3 f{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) f[r][c] = frobenius(m[r][c]);
    return f;
}

F4 mat_det(const Mat3& m) {
    // Characteristic 2: cofactor signs collapse to addition.
    F4 d = 0;
    d = f4_add(d, f4_mul(m[0][0], f4_add(f4_mul(m[1][1], m[2][2]), f4_mul(m[1][2], m[2][1]))));
    d = f4_add(d, f4_mul(m[0][1], f4_add(f4_mul(m[1][0], m[2][2]), f4_mul(m[1][2], m[2][0]))));
    d = f4_add(d, f4_mul(m[0][2], f4_add(f4_mul(m[1][0], m[2][1]), f4_mul(m[1][1], m[2][0]))));
    return d;
}

Mat3 mat_inverse(const Mat3& m) {
    F4 det = mat_det(m);
    if (det == 0) throw std::domain_error("mat_inverse: singular matrix");
    F4 dinv = f4_inv(det);
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return f4_add(f4_mul(m[r0][c0], m[r1][c1]), f4_mul(m[r0][c1], m[r1][c0]));
    };
    Mat3 inv{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int r0 = (c == 0) ? 1 : 0, r1 = (c == 2) ? 1 : 2;
            int c0 = (r == 0) ? 1 : 0, c1 = (r == 2) ? 1 : 2;
            inv[r][c] = f4_mul(dinv, minor2(r0, r1, c0, c1));
        }
    return inv;
}

uint32_t mat_pack(const Mat3& m) {
    uint32_t bits = 0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            bits |= static_cast<uint32_t>(m[r][c]) << (2 * (3 * r + c));
    return bits;
}

Mat3 mat_unpack(uint32_t bits) {
    Mat3 m{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m[r][c] = static_cast<F4>((bits >> (2 * (3 * r + c))) & 3u);
    return m;
}

std::vector<Mat3> enumerate_invertible_matrices() {
    std::vector<Mat3> out;
    out.reserve(181440);
    for (uint32_t bits = 0; bits < (1u << 18); ++bits) {
        Mat3 m = mat_unpack(bits);
        if (mat_det(m) != 0) out.push_back(m);
    }
    return out;
}

}  // namespace qsd
