#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <optional>

#include "hypcone/unipoly.hpp"

namespace hypcone {

/// Floating-point real-root count of the squarefree part via companion
/// matrix eigenvalues. Returns nullopt when some eigenvalue's imaginary
/// part falls inside the ambiguity band [slack, sqrt(slack)), where the
/// classification would be a coin flip. Never feeds certificates; used to
/// cross-check the exact Sturm path in tests.
inline std::optional<int> real_root_count_float(const UniPoly& q, double slack = 1e-8) {
    const UniPoly f = squarefree_part(q);
    const int d = f.degree();
    if (d <= 0) return 0;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        companion(i, d - 1) = -(f.coeff(i) / f.leading()).convert_to<double>();
        if (i + 1 < d) companion(i + 1, i) = 1.0;
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    if (es.info() != Eigen::Success) return std::nullopt;
    int real_count = 0;
    double scale = 1.0;
    for (int i = 0; i < d; ++i) scale = std::max(scale, std::abs(es.eigenvalues()[i]));
    for (int i = 0; i < d; ++i) {
        const double im = std::abs(es.eigenvalues()[i].imag()) / scale;
        if (im < slack) {
            ++real_count;
        } else if (im < std::sqrt(slack)) {
            return std::nullopt;  // too close to call
        }
    }
    return real_count;
}

}  // namespace hypcone
