#pragma once

#include "hhgsq/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace hhgsq {

/// exp(M) by scaling and squaring with the degree-13 Pade approximant
/// (Higham 2005). Works for real and complex dense matrices.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& m_in) {
    using Mat = typename Derived::PlainObject;
    const Mat m = m_in;
    if (m.rows() != m.cols()) throw ValidationError("matrix exponential needs a square matrix");
    if (!m.allFinite()) throw NumericalError("matrix exponential of a matrix with non-finite entries");
    const Eigen::Index n = m.rows();
    const Mat ident = Mat::Identity(n, n);
    if (n == 0) return m;

    static constexpr double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                     1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                     670442572800.0,      33522128640.0,       1323241920.0,
                                     40840800.0,          960960.0,            16380.0,
                                     182.0,               1.0};
    static constexpr double theta13 = 5.371920351148152;
    static constexpr int max_squarings = 1000;

    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    if (s > max_squarings) {
        throw NumericalError("matrix exponential: norm " + std::to_string(norm1) +
                             " exceeds the scaling budget; reduce the coupling");
    }
    const Mat a = m / std::ldexp(1.0, s);
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    const Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
                       b[1] * ident);
    const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                  b[0] * ident;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < s; ++k) {
        r = (r * r).eval();
        if (!r.allFinite()) {
            throw NumericalError("matrix exponential overflowed while squaring; reduce the coupling");
        }
    }
    return r;
}

} // namespace hhgsq
