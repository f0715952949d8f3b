// SPDX-License-Identifier: Apache-2.0
/// \file
/// Complex structures and distinguished distributions: projector data for a
/// J-invariant rank-2 distribution, the opposite structure built from it,
/// Kaehler verification residuals, the Gray curvature condition, metrics from
/// potentials on a holomorphic chart, and numerical recovery of an unknown
/// Kaehler structure from the Weyl spectrum.

#pragma once

#include "qch/curvature.hpp"
#include "qch/field.hpp"
#include "qch/tensor.hpp"

namespace qch {

/// Pointwise data attached to (g, J, D).
struct HermitianData {
    TwoForm omega;     ///< g(J., .)
    Mat4 p_D;          ///< orthogonal projector onto D (mixed components)
    Mat4 p_E;          ///< projector onto the orthogonal complement
    Sym2 h;            ///< g restricted to D
    Sym2 m;            ///< g restricted to E
    TwoForm h_J;       ///< h(J., .)
    TwoForm m_J;       ///< m(J., .)
    Mat4 Jbar;         ///< J on D, -J on E
    TwoForm omega_bar; ///< g(Jbar., .)
};

/// Assemble HermitianData at p. The spanning vectors of D must be independent
/// (DegenerateDistributionError otherwise) and D must be J-invariant.
HermitianData hermitian_data(const MetricField& g, const ComplexStructureField& J, const DistributionField& D,
                             const Point& p);

/// Pointwise variant from already-evaluated values.
HermitianData hermitian_data_at(const Mat4& g, const Mat4& J, const Vec4& v1, const Vec4& v2);

/// Pointwise variant spanning D by the dominant columns of a projector.
HermitianData hermitian_from_projector(const Mat4& g, const Mat4& J, const Mat4& p_D);

/// Projector onto ker(J Jbar + Id) for commuting orthogonal structures.
Mat4 kernel_projector(const Mat4& J, const Mat4& Jbar);

/// Max-norm of the covariant derivative of J at p; zero iff (g, J) is
/// Kaehler there.
double kahler_residual(const MetricField& g, const ComplexStructureField& J, const Point& p);

/// Max-norm residual of the second Gray curvature identity
/// R(X,Y,Z,W) - R(JX,JY,Z,W) = R(JX,Y,JZ,W) + R(JX,Y,Z,JW)
/// over all slot choices, for the structure matrix Jb.
double gray_g2_residual(const Tensor4& R, const Mat4& Jb);

/// Max-norm of Ric(Jb., Jb.) - Ric.
double ricci_j_invariance_residual(const Sym2& ric, const Mat4& Jb);

/// The constant complex structure of a holomorphic chart (x1, y1, x2, y2).
Mat4 standard_chart_J();

/// Metric and structure at p from a Kaehler potential on a holomorphic chart.
/// Throws NotPositiveError when the complex Hessian is not positive-definite.
std::pair<Sym2, Mat4> metric_from_potential(const ScalarField& K, const Point& p);

namespace detail {
/// Shared assembly of the potential metric from the (jet-valued) Hessian of K.
template <class T>
void potential_metric_from_hessian(const Jet2<T>& k, std::array<std::array<T, 4>, 4>& g_out) {
    // omega = (i/2) ddbar K expanded in real coordinates; A and B are the
    // symmetric and antisymmetric parts of the complex Hessian.
    std::array<std::array<T, 4>, 4> omega{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            int xa = 2 * a, ya = 2 * a + 1, xb = 2 * b, yb = 2 * b + 1;
            T A = (k.hess(xa, xb) + k.hess(ya, yb)) * 0.25;
            T B = (k.hess(xa, yb) - k.hess(ya, xb)) * 0.25;
            auto add = [&omega](int u, int w, const T& c) {
                omega[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] += c;
                omega[static_cast<std::size_t>(w)][static_cast<std::size_t>(u)] += -1.0 * c;
            };
            // -(1/2)[A (dy_a^dx_b - dx_a^dy_b) + B (dx_a^dx_b + dy_a^dy_b)]
            add(ya, xb, A * -0.5);
            add(xa, yb, A * 0.5);
            add(xa, xb, B * -0.5);
            add(ya, yb, B * -0.5);
        }
    // g(X, Y) = omega(X, J Y) with the standard chart structure
    Mat4 Jstd;
    Jstd << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            T s{};
            for (int a = 0; a < 4; ++a)
                if (Jstd(a, j) != 0.0) s += omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * Jstd(a, j);
            g_out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
}
} // namespace detail

/// Metric field derived from a potential, differentiable twice through nested
/// jets so the curvature pipeline can consume it. `K` must be callable on
/// std::array<J,4> for J = Jet2<Jet2d>.
template <class Potential>
MetricField metric_field_from_potential(Potential K, ChartDomain domain) {
    return MetricField(
        [K](const JetVec& seeds) -> JetMat {
            std::array<Jet2x2d, 4> z;
            for (int i = 0; i < 4; ++i)
                z[static_cast<std::size_t>(i)] = Jet2x2d::variable(seeds[static_cast<std::size_t>(i)], i);
            Jet2x2d k = K(z);
            JetMat g;
            detail::potential_metric_from_hessian<Jet2d>(k, g);
            return g;
        },
        std::move(domain));
}

/// Field of the opposite structure J on D, -J on E, built by Gram-Schmidt in
/// jet arithmetic so it can be differentiated.
ComplexStructureField opposite_structure_field(const MetricField& g, const ComplexStructureField& J,
                                               const DistributionField& D);

struct RecoveredStructure {
    Mat4 J;
    double parallelism_residual = 0.0; ///< |grad J| at p, central differences
    double simple_eigenvalue = 0.0;
};

/// Recover a candidate Kaehler structure at p from the Weyl block of the
/// given orientation: the eigenform of the simple eigenvalue, scaled to
/// squared norm 2, with the sign fixed deterministically.
RecoveredStructure recover_kahler_structure(const MetricField& g, const Point& p, Orientation orientation,
                                            double fd_step = 1e-4);

} // namespace qch
