// SPDX-License-Identifier: Apache-2.0
/// \file
/// Curvature identities of quasi-constant holomorphic sectional curvature:
/// the basis tensors built from (g, J, h), coefficient extraction from the
/// sectional-curvature profile, and the residual checks tying coefficients,
/// Ricci data, the anti-self-dual Weyl half and the pseudosymmetry relation
/// together.

#pragma once

#include "qch/curvature.hpp"
#include "qch/kahler.hpp"
#include "qch/tensor.hpp"

#include <cstdint>
#include <vector>

namespace qch {

struct QchBasisTensors {
    Tensor4 pi;
    Tensor4 phi;
    Tensor4 psi;
};

/// Build the three basis tensors from the metric, structure and restricted
/// metric h of a J-invariant rank-2 distribution. Constructed from the
/// direct slot formulas and cross-checked against the Kulkarni-Nomizu forms.
QchBasisTensors build_basis(const Sym2& g, const Mat4& J, const Sym2& h);

struct QchCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double fit_residual = 0.0; ///< max deviation of the quartic profile over re-sampled directions

    double lambda() const { return 1.5 * a + 0.25 * b; }
    double mu() const { return 1.5 * a + 1.25 * b + c; }
    double delta() const { return 0.5 * (b + c); }
    double kappa() const { return 2.0 * c; }
};

/// R(X, JX, JX, X) / g(X,X)^2.
double holomorphic_sectional_curvature(const Tensor4& R, const Sym2& g, const Mat4& J, const Vec4& X);

/// Fit the quartic sectional-curvature profile through the nodes
/// t^2 in {0, 1/2, 1} and re-sample random unit directions to measure how
/// well the profile explains R.
QchCoefficients extract_coefficients(const Tensor4& R, const Sym2& g, const Mat4& J, const Mat4& p_D,
                                     std::uint64_t seed = 0, int resample = 50);

/// Least-squares variant over `directions` random unit vectors (consistency
/// oracle for the node-based extraction).
QchCoefficients extract_coefficients_lsq(const Tensor4& R, const Sym2& g, const Mat4& J, const Mat4& p_D,
                                         std::uint64_t seed = 0, int directions = 50);

/// Max-norm of R - a Pi - b Phi - c Psi.
double qch_residual(const Tensor4& R, const QchCoefficients& coeffs, const QchBasisTensors& basis);

/// Coefficients with respect to the orthogonal complement distribution.
QchCoefficients complementary_coefficients(const QchCoefficients& c);

struct RicciEigenResiduals {
    double form_residual = 0.0;    ///< |Ric - lambda m - mu h|
    double eigen_d_residual = 0.0; ///< |Ric p_D - mu p_D| as endomorphisms
    double eigen_e_residual = 0.0; ///< |Ric p_E - lambda p_E|
};

/// Check Ric = lambda m + mu h and that D, E are Ricci eigendistributions.
RicciEigenResiduals ricci_eigen_check(const CurvatureData& cd, const HermitianData& hd, const QchCoefficients& coeffs);

struct WminusStructureResiduals {
    double tensor_residual = 0.0;     ///< |W- - c((1/6)Pi - Phi + Psi)|
    double eigenvalue_residual = 0.0; ///< spectrum vs {c/3, -c/6, -c/6}
    double omegabar_alignment = 0.0;  ///< |<v, omega_bar>| / 2 for the simple eigenform
    bool degenerate = false;
};

/// Structure of the anti-self-dual Weyl half predicted by the coefficients.
WminusStructureResiduals wminus_structure_check(const CurvatureData& cd, const HermitianData& hd,
                                                const QchCoefficients& coeffs, const QchBasisTensors& basis);

struct DecompositionCheck {
    double ricci0_form_residual = 0.0; ///< |Ric0 - delta (h - m)|
    double delta = 0.0;
    double kappa = 0.0;
    QchCoefficients reconstructed;     ///< from (tau, delta, kappa) alone
    double coefficient_residual = 0.0; ///< against the directly extracted coefficients
};

/// Reconstruct (a, b, c) from (tau, delta, kappa) and compare with the direct
/// extraction. Throws PreconditionError when Ric0 is not delta (h - m).
DecompositionCheck full_decomposition_check(const CurvatureData& cd, const HermitianData& hd,
                                            const QchCoefficients& direct, double precondition_tol = 1e-4);

/// Max-norm of Q.R2 - factor * P.R2 where the dot is the derivation action of
/// a curvature tensor on 4-tensors.
double derivation_identity_residual(const Tensor4& Q, const Tensor4& P, const Tensor4& R2, const Sym2& g,
                                    double factor);

/// |R.R - (1/6)(tau - kappa) Pi.R|.
double pseudosymmetry_residual(const CurvatureData& cd, const QchBasisTensors& basis, const QchCoefficients& coeffs);

struct Proposition4PointRecord {
    QchCoefficients coeffs;
    double kappa = 0.0;
    double tau = 0.0;
    double tensor_residual = 0.0; ///< |R + (kappa/3) Pi - (kappa/2) Psi|
};

enum class HomogeneousCase { constant_holomorphic, product, three_symmetric, other };

struct Proposition4Report {
    double spread_a = 0.0, spread_b = 0.0, spread_c = 0.0;
    double max_abs_b = 0.0;
    double a_kappa_residual = 0.0;   ///< max relative |a + kappa/3|
    double c_kappa_residual = 0.0;   ///< max relative |c - kappa/2|
    double tau_kappa_residual = 0.0; ///< max relative |tau + kappa|
    double max_tensor_residual = 0.0;
    HomogeneousCase classified = HomogeneousCase::other;
};

/// Aggregate per-point records into the constant-coefficient fingerprint.
Proposition4Report proposition4_check(const std::vector<Proposition4PointRecord>& records);

} // namespace qch
