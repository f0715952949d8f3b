// SPDX-License-Identifier: Apache-2.0

#include "qch/qch.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace qch {

QchBasisTensors build_basis(const Sym2& g, const Mat4& J, const Sym2& h) {
    const Mat4& gm = g.mat();
    const Mat4& hm = h.mat();
    TwoForm omega(J.transpose() * gm, 1e-8);
    TwoForm h_J(J.transpose() * hm, 1e-8);
    const Mat4& om = omega.mat();
    const Mat4& hj = h_J.mat();

    QchBasisTensors out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    out.pi(i, j, k, l) = 0.25 * (gm(j, k) * gm(i, l) - gm(i, k) * gm(j, l) + om(j, k) * om(i, l) -
                                                 om(i, k) * om(j, l) - 2.0 * om(i, j) * om(k, l));
                    out.phi(i, j, k, l) =
                        0.125 * (gm(j, k) * hm(i, l) - gm(i, k) * hm(j, l) + gm(i, l) * hm(j, k) - gm(j, l) * hm(i, k) +
                                 om(j, k) * hj(i, l) - om(i, k) * hj(j, l) + om(i, l) * hj(j, k) - om(j, l) * hj(i, k) -
                                 2.0 * om(i, j) * hj(k, l) - 2.0 * om(k, l) * hj(i, j));
                    out.psi(i, j, k, l) = -hj(i, j) * hj(k, l);
                }

    // Independent assembly through the Kulkarni-Nomizu forms; both routes must
    // agree to roundoff or the slot conventions drifted.
    Tensor4 pi_kn = (kulkarni_nomizu(g, g) + kulkarni_nomizu(omega, omega)) * -0.125 +
                    tensor_product(om, om) * -0.5;
    Tensor4 phi_kn = (kulkarni_nomizu(h, g) + kulkarni_nomizu(h_J, omega)) * -0.125 +
                     (tensor_product(om, hj) + tensor_product(hj, om)) * -0.25;
    Tensor4 psi_kn = tensor_product(hj, hj) * -1.0;

    double scale = std::max(1.0, out.pi.max_abs());
    if ((out.pi - pi_kn).max_abs() > 1e-12 * scale || (out.phi - phi_kn).max_abs() > 1e-12 * scale ||
        (out.psi - psi_kn).max_abs() > 1e-12 * scale)
        throw Error("build_basis: direct and product-form constructions disagree");
    return out;
}

double holomorphic_sectional_curvature(const Tensor4& R, const Sym2& g, const Mat4& J, const Vec4& X) {
    double n2 = g(X, X);
    if (!(n2 > 0)) throw ZeroVectorError("holomorphic_sectional_curvature: zero direction");
    Vec4 JX = J * X;
    return R(X, JX, JX, X) / (n2 * n2);
}

namespace {

Vec4 unit_in_range(const Mat4& proj, const Sym2& g) {
    Vec4 best = Vec4::Zero();
    double bestn = -1.0;
    for (int k = 0; k < 4; ++k) {
        Vec4 v = proj * Vec4::Unit(k);
        double n = g(v, v);
        if (n > bestn) {
            bestn = n;
            best = v;
        }
    }
    if (!(bestn > 1e-12)) throw DegenerateDistributionError("projector has numerically empty range");
    return best / std::sqrt(bestn);
}

Vec4 random_unit(std::mt19937_64& rng, const Sym2& g) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        Vec4 v(n(rng), n(rng), n(rng), n(rng));
        double n2 = g(v, v);
        if (n2 > 1e-8) return v / std::sqrt(n2);
    }
}

} // namespace

QchCoefficients extract_coefficients(const Tensor4& R, const Sym2& g, const Mat4& J, const Mat4& p_D,
                                     std::uint64_t seed, int resample) {
    Mat4 p_E = Mat4::Identity() - p_D;
    Vec4 eD = unit_in_range(p_D, g);
    Vec4 eE = unit_in_range(p_E, g);

    double phi0 = holomorphic_sectional_curvature(R, g, J, eE);                        // t^2 = 0
    double phih = holomorphic_sectional_curvature(R, g, J, (eD + eE) / std::sqrt(2.0)); // t^2 = 1/2
    double phi1 = holomorphic_sectional_curvature(R, g, J, eD);                        // t^2 = 1

    QchCoefficients out;
    out.a = phi0;
    out.c = 2.0 * (phi1 - phi0) - 4.0 * (phih - phi0);
    out.b = (phi1 - phi0) - out.c;
    if (!std::isfinite(out.a) || !std::isfinite(out.b) || !std::isfinite(out.c))
        throw IllConditionedError("extract_coefficients: node solve produced non-finite values");

    std::mt19937_64 rng(seed);
    double res = 0.0;
    for (int s = 0; s < resample; ++s) {
        Vec4 X = random_unit(rng, g);
        double t2 = g(p_D * X, p_D * X);
        double phi = holomorphic_sectional_curvature(R, g, J, X);
        res = std::max(res, std::abs(phi - (out.a + out.b * t2 + out.c * t2 * t2)));
    }
    out.fit_residual = res;
    return out;
}

QchCoefficients extract_coefficients_lsq(const Tensor4& R, const Sym2& g, const Mat4& J, const Mat4& p_D,
                                         std::uint64_t seed, int directions) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd A(directions, 3);
    Eigen::VectorXd y(directions);
    for (int s = 0; s < directions; ++s) {
        Vec4 X = random_unit(rng, g);
        double t2 = g(p_D * X, p_D * X);
        A(s, 0) = 1.0;
        A(s, 1) = t2;
        A(s, 2) = t2 * t2;
        y(s) = holomorphic_sectional_curvature(R, g, J, X);
    }
    Eigen::Vector3d sol = A.colPivHouseholderQr().solve(y);
    QchCoefficients out;
    out.a = sol(0);
    out.b = sol(1);
    out.c = sol(2);
    out.fit_residual = (A * sol - y).cwiseAbs().maxCoeff();
    return out;
}

double qch_residual(const Tensor4& R, const QchCoefficients& coeffs, const QchBasisTensors& basis) {
    return (R - basis.pi * coeffs.a - basis.phi * coeffs.b - basis.psi * coeffs.c).max_abs();
}

QchCoefficients complementary_coefficients(const QchCoefficients& c) {
    QchCoefficients out;
    out.a = c.a + c.b + c.c;
    out.b = -(c.b + 2.0 * c.c);
    out.c = c.c;
    out.fit_residual = c.fit_residual;
    return out;
}

RicciEigenResiduals ricci_eigen_check(const CurvatureData& cd, const HermitianData& hd,
                                      const QchCoefficients& coeffs) {
    RicciEigenResiduals out;
    Mat4 predicted = coeffs.lambda() * hd.m.mat() + coeffs.mu() * hd.h.mat();
    out.form_residual = (cd.ricci.mat() - predicted).cwiseAbs().maxCoeff();

    Mat4 ric_endo = cd.g.mat().inverse() * cd.ricci.mat();
    out.eigen_d_residual = (ric_endo * hd.p_D - coeffs.mu() * hd.p_D).cwiseAbs().maxCoeff();
    out.eigen_e_residual = (ric_endo * hd.p_E - coeffs.lambda() * hd.p_E).cwiseAbs().maxCoeff();
    return out;
}

WminusStructureResiduals wminus_structure_check(const CurvatureData& cd, const HermitianData& hd,
                                                const QchCoefficients& coeffs, const QchBasisTensors& basis) {
    WminusStructureResiduals out;
    Tensor4 K = basis.pi * (1.0 / 6.0) - basis.phi + basis.psi;
    out.tensor_residual = (cd.wminus - K * coeffs.c).max_abs();

    Lambda2Basis l2 = lambda2_split(cd.g, cd.orientation);
    WminusSpectrum spec = wminus_spectrum(cd, cd.g, l2);
    out.degenerate = spec.degenerate;

    double c = coeffs.c;
    std::array<double, 3> expected = {c / 3.0, -c / 6.0, -c / 6.0};
    std::sort(expected.begin(), expected.end(), std::greater<double>());
    double ev = 0.0;
    for (int i = 0; i < 3; ++i) ev = std::max(ev, std::abs(spec.values(i) - expected[static_cast<std::size_t>(i)]));
    out.eigenvalue_residual = ev;

    if (spec.simple_index >= 0) {
        double al = std::abs(form_inner(spec.forms[static_cast<std::size_t>(spec.simple_index)], hd.omega_bar, cd.g)) / 2.0;
        out.omegabar_alignment = al;
    } else if (std::abs(c) < 1e-12) {
        out.omegabar_alignment = 1.0; // vanishing half leaves the eigenform unconstrained
    }
    return out;
}

DecompositionCheck full_decomposition_check(const CurvatureData& cd, const HermitianData& hd,
                                            const QchCoefficients& direct, double precondition_tol) {
    DecompositionCheck out;
    Mat4 diff = hd.h.mat() - hd.m.mat();
    // delta from the D-trace of Ric0
    Mat4 ric0_endo = cd.g.mat().inverse() * cd.ricci0.mat();
    out.delta = 0.5 * (ric0_endo * hd.p_D).trace();
    out.ricci0_form_residual = (cd.ricci0.mat() - out.delta * diff).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, cd.ricci0.mat().cwiseAbs().maxCoeff());
    if (out.ricci0_form_residual > precondition_tol * scale)
        throw PreconditionError("full_decomposition_check: Ric0 is not of the form delta (h - m)");

    WeylBlocks blocks = wplus_blocks(cd, hd.Jbar);
    out.kappa = 6.0 * blocks.kappa_over_6;

    out.reconstructed.a = cd.tau / 6.0 - out.delta + out.kappa / 12.0;
    out.reconstructed.b = 2.0 * out.delta - out.kappa / 2.0;
    out.reconstructed.c = out.kappa / 2.0;

    out.coefficient_residual = std::max({std::abs(out.reconstructed.a - direct.a),
                                         std::abs(out.reconstructed.b - direct.b),
                                         std::abs(out.reconstructed.c - direct.c)});
    return out;
}

double derivation_identity_residual(const Tensor4& Q, const Tensor4& P, const Tensor4& R2, const Sym2& g,
                                    double factor) {
    Mat4 ginv = g.mat().inverse();

    // operator components (Q(e_i, e_j))^m_k
    auto op = [&ginv](const Tensor4& T, int i, int j) {
        Mat4 o;
        for (int m = 0; m < 4; ++m)
            for (int k = 0; k < 4; ++k) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l) s += ginv(m, l) * T(i, j, k, l);
                o(m, k) = s;
            }
        return o;
    };

    double res = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Mat4 qo = op(Q, i, j);
            Mat4 po = op(P, i, j);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 4; ++c)
                        for (int d = 0; d < 4; ++d) {
                            double lhs = 0.0, rhs = 0.0;
                            for (int m = 0; m < 4; ++m) {
                                lhs -= qo(m, a) * R2(m, b, c, d) + qo(m, b) * R2(a, m, c, d) +
                                       qo(m, c) * R2(a, b, m, d) + qo(m, d) * R2(a, b, c, m);
                                rhs -= po(m, a) * R2(m, b, c, d) + po(m, b) * R2(a, m, c, d) +
                                       po(m, c) * R2(a, b, m, d) + po(m, d) * R2(a, b, c, m);
                            }
                            res = std::max(res, std::abs(lhs - factor * rhs));
                        }
        }
    return res;
}

double pseudosymmetry_residual(const CurvatureData& cd, const QchBasisTensors& basis, const QchCoefficients& coeffs) {
    double factor = (cd.tau - coeffs.kappa()) / 6.0;
    return derivation_identity_residual(cd.riemann, basis.pi, cd.riemann, cd.g, factor);
}

Proposition4Report proposition4_check(const std::vector<Proposition4PointRecord>& records) {
    Proposition4Report out;
    if (records.empty()) return out;

    auto spread = [&records](auto proj) {
        double lo = proj(records.front()), hi = lo;
        for (const auto& r : records) {
            lo = std::min(lo, proj(r));
            hi = std::max(hi, proj(r));
        }
        return hi - lo;
    };
    out.spread_a = spread([](const Proposition4PointRecord& r) { return r.coeffs.a; });
    out.spread_b = spread([](const Proposition4PointRecord& r) { return r.coeffs.b; });
    out.spread_c = spread([](const Proposition4PointRecord& r) { return r.coeffs.c; });

    double mean_a = 0.0, mean_b = 0.0, mean_c = 0.0, mean_kappa = 0.0;
    for (const auto& r : records) {
        out.max_abs_b = std::max(out.max_abs_b, std::abs(r.coeffs.b));
        double k = std::max(1e-12, std::abs(r.kappa));
        out.a_kappa_residual = std::max(out.a_kappa_residual, std::abs(r.coeffs.a + r.kappa / 3.0) / k);
        out.c_kappa_residual = std::max(out.c_kappa_residual, std::abs(r.coeffs.c - r.kappa / 2.0) / k);
        out.tau_kappa_residual = std::max(out.tau_kappa_residual, std::abs(r.tau + r.kappa) / k);
        out.max_tensor_residual = std::max(out.max_tensor_residual, r.tensor_residual);
        mean_a += r.coeffs.a;
        mean_b += r.coeffs.b;
        mean_c += r.coeffs.c;
        mean_kappa += r.kappa;
    }
    double n = static_cast<double>(records.size());
    mean_a /= n;
    mean_b /= n;
    mean_c /= n;
    mean_kappa /= n;

    double scale = std::max({1e-12, std::abs(mean_a), std::abs(mean_b), std::abs(mean_c)});
    bool constant = out.spread_a < 1e-5 && out.spread_b < 1e-5 && out.spread_c < 1e-5;
    if (!constant) {
        out.classified = HomogeneousCase::other;
    } else if (std::abs(mean_b) < 1e-5 * std::max(1.0, scale) && std::abs(mean_c) < 1e-5 * std::max(1.0, scale)) {
        out.classified = HomogeneousCase::constant_holomorphic;
    } else if (std::abs(mean_b) < 1e-5 * std::max(1.0, scale) && std::abs(mean_kappa) > 1e-8 &&
               std::abs(mean_a + mean_kappa / 3.0) < 1e-3 * std::abs(mean_kappa)) {
        out.classified = HomogeneousCase::three_symmetric;
    } else {
        out.classified = HomogeneousCase::product;
    }
    return out;
}

} // namespace qch
