// SPDX-License-Identifier: Apache-2.0
/// \file
/// Metric-to-curvature pipeline: Christoffel symbols with first derivatives,
/// the covariant Riemann tensor, Ricci data, scalar curvature, and the Weyl
/// tensor with its self-dual / anti-self-dual halves.

#pragma once

#include "qch/field.hpp"
#include "qch/tensor.hpp"

#include <optional>

namespace qch {

struct ConnectionCoefficients {
    double gamma[4][4][4];     ///< gamma[k][i][j] = Gamma^k_ij
    double dgamma[4][4][4][4]; ///< dgamma[l][k][i][j] = d_l Gamma^k_ij
    Mat4 g;
    Mat4 ginv;
    std::array<Mat4, 4> dg;
};

/// Levi-Civita connection coefficients at p.
ConnectionCoefficients christoffel(const MetricField& g, const Point& p);

/// Connection coefficients from already-evaluated metric jets.
ConnectionCoefficients christoffel_from_jet(const MetricJet& mj);

/// Fully covariant Riemann tensor at p, slots (X, Y, Z, U) with
/// R(X,Y,Z,U) = g(R(X,Y)Z, U) and R(X,Y)Z = ([D_X,D_Y] - D_[X,Y])Z.
Tensor4 riemann(const MetricField& g, const Point& p);

/// Riemann tensor from already-evaluated metric jets.
Tensor4 riemann_from_jet(const MetricJet& mj);

/// Riemann tensor through a pure central-difference pipeline (no Taylor
/// arithmetic), used to cross-validate the jet route.
Tensor4 riemann_fd(const MetricField& g, const Point& p, double step = 1e-4);

/// All pointwise curvature objects derived from one metric evaluation.
struct CurvatureData {
    Sym2 g;
    Tensor4 riemann;
    Sym2 ricci;
    Sym2 ricci0;
    double tau = 0.0;
    Tensor4 weyl;
    Tensor4 wplus;  ///< self-dual half w.r.t. `orientation`
    Tensor4 wminus; ///< anti-self-dual half w.r.t. `orientation`
    Orientation orientation = Orientation::positive; ///< orientation used for the split

    bool has_rho = false; ///< Ricci form populated only when J was supplied
    TwoForm omega;
    TwoForm rho;
    TwoForm rho0;
    Mat4 J = Mat4::Zero();
};

/// Compute curvature data at p. When a complex structure is supplied it must
/// be g-orthogonal at p; the Weyl split then uses the orientation in which
/// the Kaehler form is self-dual, otherwise the chart orientation.
CurvatureData curvature_data(const MetricField& g, const ComplexStructureField* J, const Point& p);

/// Orientation (relative to the chart) in which omega = g(J., .) is self-dual.
Orientation orientation_of(const Mat4& J, const Sym2& g);

struct WminusSpectrum {
    Eigen::Vector3d values;         ///< sorted descending
    std::array<TwoForm, 3> forms;   ///< eigenforms, squared norm 2
    bool degenerate = false;        ///< at most two distinct eigenvalues
    int simple_index = -1;          ///< index of the unique simple eigenvalue, or -1
};

/// Eigen-decomposition of the anti-self-dual Weyl block in the given basis.
/// Two eigenvalues count as equal when within max(1e-8, 1e-6 * |W-|).
WminusSpectrum wminus_spectrum(const CurvatureData& cd, const Sym2& g, const Lambda2Basis& basis);

struct WeylBlocks {
    double kappa_over_6 = 0.0; ///< quadratic form of the Weyl operator on omega/|omega|
    double w2_norm = 0.0;      ///< off-diagonal block norm
    double w3_norm = 0.0;      ///< trace-free diagonal remainder norm
};

/// Block decomposition of the Weyl half that is self-dual in the orientation
/// of the given structure matrix (for an opposite structure this is the
/// reversed chart orientation).
WeylBlocks wplus_blocks(const CurvatureData& cd, const Mat4& J);

/// Convenience overload evaluating a structure field at p.
WeylBlocks wplus_blocks(const CurvatureData& cd, const ComplexStructureField& J, const Point& p);

} // namespace qch
