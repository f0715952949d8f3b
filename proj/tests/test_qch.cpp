// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qch/qch.hpp"

#include <cmath>
#include <random>

using namespace qch;

namespace {

struct FlatStandard {
    Sym2 g = Sym2::identity();
    Mat4 J = standard_chart_J();
    Sym2 h;
    Mat4 p_D = Mat4::Zero();

    FlatStandard() {
        Mat4 hm = Mat4::Zero();
        hm(0, 0) = hm(1, 1) = 1.0;
        h = Sym2(hm);
        p_D(0, 0) = p_D(1, 1) = 1.0;
    }
};

} // namespace

TEST_CASE("basis tensors evaluated on distinguished directions") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);

    Vec4 xe = Vec4::Unit(2); // unit vector in the complement
    Vec4 jxe = fs.J * xe;
    CHECK(basis.pi(xe, jxe, jxe, xe) == doctest::Approx(1.0));
    CHECK(basis.phi(xe, jxe, jxe, xe) == doctest::Approx(0.0));
    CHECK(basis.psi(xe, jxe, jxe, xe) == doctest::Approx(0.0));

    Vec4 xd = Vec4::Unit(0);
    Vec4 jxd = fs.J * xd;
    CHECK(basis.pi(xd, jxd, jxd, xd) == doctest::Approx(1.0));
    CHECK(basis.phi(xd, jxd, jxd, xd) == doctest::Approx(1.0));
    CHECK(basis.psi(xd, jxd, jxd, xd) == doctest::Approx(1.0));

    // mixed direction: |X_D|^2 = 1/2
    Vec4 xm = (xd + xe) / std::sqrt(2.0);
    Vec4 jxm = fs.J * xm;
    CHECK(basis.phi(xm, jxm, jxm, xm) == doctest::Approx(0.5));
    CHECK(basis.psi(xm, jxm, jxm, xm) == doctest::Approx(0.25));
}

TEST_CASE("basis tensors are Kaehler type with curvature symmetries") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);
    for (const Tensor4* t : {&basis.pi, &basis.phi, &basis.psi}) {
        CHECK(t->antisym_first_pair_residual() < 1e-12);
        CHECK(t->antisym_second_pair_residual() < 1e-12);
        CHECK(t->pair_exchange_residual() < 1e-12);
        // J-invariance in the first pair
        double res = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (int a = 0; a < 4; ++a)
                            for (int b = 0; b < 4; ++b) s += fs.J(a, i) * fs.J(b, j) * (*t)(a, b, k, l);
                        res = std::max(res, std::abs(s - (*t)(i, j, k, l)));
                    }
        CHECK(res < 1e-12);
    }
    // first Bianchi holds for all three
    CHECK(bianchi(basis.pi).max_abs() < 1e-12);
    CHECK(bianchi(basis.phi).max_abs() < 1e-12);
    CHECK(bianchi(basis.psi).max_abs() < 1e-12);
}

TEST_CASE("contraction identities of the basis tensors") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);

    // c(Pi) = (3/2) g, c(Phi) = h + g/4, c(Psi) = h
    Sym2 cpi = ricci_contraction(basis.pi, fs.g);
    CHECK((cpi.mat() - 1.5 * Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    Sym2 cphi = ricci_contraction(basis.phi, fs.g);
    CHECK((cphi.mat() - (fs.h.mat() + 0.25 * Mat4::Identity())).cwiseAbs().maxCoeff() < 1e-12);
    Sym2 cpsi = ricci_contraction(basis.psi, fs.g);
    CHECK((cpsi.mat() - fs.h.mat()).cwiseAbs().maxCoeff() < 1e-12);

    // the combination (1/6)Pi - Phi + Psi has vanishing contraction and Bianchi part
    Tensor4 K = basis.pi * (1.0 / 6.0) - basis.phi + basis.psi;
    CHECK(ricci_contraction(K, fs.g).mat().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(bianchi(K).max_abs() < 1e-12);
}

TEST_CASE("operator spectrum of the distinguished combination") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);
    Tensor4 K = basis.pi * (1.0 / 6.0) - basis.phi + basis.psi;

    Lambda2Basis l2 = lambda2_split(fs.g, Orientation::positive);
    auto m = curvature_operator(K, fs.g, l2);

    // vanishing on the self-dual triple
    CHECK(m.topLeftCorner<3, 3>().cwiseAbs().maxCoeff() < 1e-13);
    CHECK(m.topRightCorner<3, 3>().cwiseAbs().maxCoeff() < 1e-13);
    CHECK(m.bottomLeftCorner<3, 3>().cwiseAbs().maxCoeff() < 1e-13);

    // anti-self-dual block: omega_bar is the 1/3 eigenvector, the rest -1/6
    Mat4 Jbar = Mat4::Zero();
    Jbar(1, 0) = 1;
    Jbar(0, 1) = -1;
    Jbar(3, 2) = -1;
    Jbar(2, 3) = 1;
    TwoForm omega_bar(Jbar.transpose() * fs.g.mat(), 1e-9);
    auto coords = form_coordinates(omega_bar, fs.g, l2);
    CHECK(coords.head<3>().norm() < 1e-13); // anti-self-dual
    Eigen::Matrix<double, 6, 1> image = m * coords;
    CHECK((image - coords / 3.0).norm() < 1e-13);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.bottomRightCorner<3, 3>());
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
    CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
    CHECK(es.eigenvalues()(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("holomorphic sectional curvature basics") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);

    std::mt19937_64 rng(21);
    std::normal_distribution<double> n(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        Vec4 X(n(rng), n(rng), n(rng), n(rng));
        if (X.norm() < 1e-3) continue;
        double k1 = holomorphic_sectional_curvature(basis.pi, fs.g, fs.J, X);
        CHECK(k1 == doctest::Approx(1.0).epsilon(1e-12));
        // scale invariance
        double k2 = holomorphic_sectional_curvature(basis.pi, fs.g, fs.J, 2.0 * X);
        CHECK(k2 == doctest::Approx(k1).epsilon(1e-12));
    }
    CHECK_THROWS_AS(holomorphic_sectional_curvature(basis.pi, fs.g, fs.J, Vec4::Zero()), ZeroVectorError);
}

TEST_CASE("coefficient extraction on synthetic curvature tensors") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);

    QchCoefficients pure = extract_coefficients(basis.pi, fs.g, fs.J, fs.p_D, 7);
    CHECK(pure.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pure.b == doctest::Approx(0.0));
    CHECK(pure.c == doctest::Approx(0.0));
    CHECK(pure.fit_residual < 1e-12);
    CHECK(qch_residual(basis.pi, pure, basis) < 1e-12);

    // a synthetic mixture
    Tensor4 R = basis.pi * 0.7 + basis.phi * -1.3 + basis.psi * 2.1;
    QchCoefficients mix = extract_coefficients(R, fs.g, fs.J, fs.p_D, 7);
    CHECK(mix.a == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(mix.b == doctest::Approx(-1.3).epsilon(1e-11));
    CHECK(mix.c == doctest::Approx(2.1).epsilon(1e-11));
    CHECK(mix.fit_residual < 1e-11);

    // node extraction agrees with least squares on true profile tensors
    QchCoefficients lsq = extract_coefficients_lsq(R, fs.g, fs.J, fs.p_D, 99);
    CHECK(std::abs(mix.a - lsq.a) < 1e-8);
    CHECK(std::abs(mix.b - lsq.b) < 1e-8);
    CHECK(std::abs(mix.c - lsq.c) < 1e-8);
}

TEST_CASE("non-profile input shows up in the fit residual") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);
    // couple the distinguished plane to its complement so the sectional
    // profile depends on more than the projection norm
    Mat4 wm = Mat4::Identity();
    wm(0, 2) = wm(2, 0) = 0.8;
    Tensor4 R = kulkarni_nomizu(Sym2(wm), Sym2::identity());
    QchCoefficients co = extract_coefficients(R, fs.g, fs.J, fs.p_D, 5);
    CHECK(co.fit_residual > 1e-3);
}

TEST_CASE("basis construction and extraction in rotated frames") {
    // conjugate the flat model by random rotations: every invariant and the
    // coefficient recovery must be frame-independent
    std::mt19937_64 rng(77);
    std::normal_distribution<double> n(0, 1);
    FlatStandard fs;
    for (int trial = 0; trial < 10; ++trial) {
        Mat4 raw;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) raw(i, j) = n(rng);
        Eigen::HouseholderQR<Mat4> qr(raw);
        Mat4 Q = qr.householderQ();

        Mat4 J = Q * fs.J * Q.transpose();
        Sym2 h(Q * fs.h.mat() * Q.transpose(), 1e-9);
        Mat4 p_D = Q * fs.p_D * Q.transpose();

        QchBasisTensors basis = build_basis(fs.g, J, h);
        CHECK(bianchi(basis.pi).max_abs() < 1e-12);
        CHECK(bianchi(basis.phi).max_abs() < 1e-12);
        CHECK(bianchi(basis.psi).max_abs() < 1e-12);
        CHECK(basis.phi.pair_exchange_residual() < 1e-12);

        std::uniform_real_distribution<double> d(-2, 2);
        double a = d(rng), b = d(rng), c = d(rng);
        Tensor4 R = basis.pi * a + basis.phi * b + basis.psi * c;
        QchCoefficients co = extract_coefficients(R, fs.g, J, p_D, 77 + trial);
        CHECK(co.a == doctest::Approx(a).epsilon(1e-10));
        CHECK(co.b == doctest::Approx(b).epsilon(1e-9));
        CHECK(co.c == doctest::Approx(c).epsilon(1e-9));
        CHECK(co.fit_residual < 1e-10);
        CHECK(qch_residual(R, co, basis) < 1e-10);
    }
}

TEST_CASE("complement swap") {
    QchCoefficients c;
    c.a = 1;
    c.b = -2;
    c.c = 2;
    QchCoefficients s = complementary_coefficients(c);
    CHECK(s.a == doctest::Approx(1.0));
    CHECK(s.b == doctest::Approx(-2.0));
    CHECK(s.c == doctest::Approx(2.0));

    QchCoefficients pure;
    pure.a = 5;
    QchCoefficients s2 = complementary_coefficients(pure);
    CHECK(s2.a == doctest::Approx(5.0));
    CHECK(s2.b == doctest::Approx(0.0));
    CHECK(s2.c == doctest::Approx(0.0));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        QchCoefficients r;
        r.a = d(rng);
        r.b = d(rng);
        r.c = d(rng);
        QchCoefficients twice = complementary_coefficients(complementary_coefficients(r));
        CHECK(twice.a == doctest::Approx(r.a).epsilon(1e-14));
        CHECK(twice.b == doctest::Approx(r.b).epsilon(1e-14));
        CHECK(twice.c == doctest::Approx(r.c).epsilon(1e-14));
    }
}

TEST_CASE("derived scalar relations") {
    QchCoefficients c;
    c.a = 4;
    CHECK(c.lambda() == doctest::Approx(6.0));
    CHECK(c.mu() == doctest::Approx(6.0));

    c.a = 1;
    c.b = -2;
    c.c = 2;
    CHECK(c.lambda() == doctest::Approx(1.0));
    CHECK(c.mu() == doctest::Approx(1.0));
    CHECK(c.delta() == doctest::Approx(0.0));
    CHECK(c.kappa() == doctest::Approx(4.0));

    c.a = -1;
    c.b = 2;
    c.c = 0;
    CHECK(c.lambda() == doctest::Approx(-1.0));
    CHECK(c.mu() == doctest::Approx(1.0));
}

TEST_CASE("derivation action: profile tensors are exactly pseudosymmetric") {
    FlatStandard fs;
    QchBasisTensors basis = build_basis(fs.g, fs.J, fs.h);

    // constant holomorphic curvature: both sides coincide termwise
    Tensor4 R = basis.pi * 2.5;
    CHECK(derivation_identity_residual(R, basis.pi, R, fs.g, 2.5) < 1e-12);

    // mixture with the profile factor (tau - kappa)/6 = a + b/2
    Tensor4 R2 = basis.pi * 0.7 + basis.phi * -1.3 + basis.psi * 2.1;
    double factor = 0.7 + 0.5 * -1.3;
    CHECK(derivation_identity_residual(R2, basis.pi, R2, fs.g, factor) < 1e-10);
}

TEST_CASE("proposition-4 style aggregation") {
    std::vector<Proposition4PointRecord> recs;
    for (int i = 0; i < 5; ++i) {
        Proposition4PointRecord r;
        r.kappa = 3.0;
        r.tau = -3.0;
        r.coeffs.a = -1.0;
        r.coeffs.b = 1e-9;
        r.coeffs.c = 1.5;
        r.tensor_residual = 1e-9;
        recs.push_back(r);
    }
    Proposition4Report rep = proposition4_check(recs);
    CHECK(rep.classified == HomogeneousCase::three_symmetric);
    CHECK(rep.max_abs_b < 1e-8);
    CHECK(rep.a_kappa_residual < 1e-8);
    CHECK(rep.c_kappa_residual < 1e-8);
    CHECK(rep.tau_kappa_residual < 1e-8);
    CHECK(rep.spread_a < 1e-12);

    // a space form lands in the constant-holomorphic case
    std::vector<Proposition4PointRecord> sf;
    for (int i = 0; i < 3; ++i) {
        Proposition4PointRecord r;
        r.kappa = 0.0;
        r.tau = 24.0;
        r.coeffs.a = 4.0;
        sf.push_back(r);
    }
    CHECK(proposition4_check(sf).classified == HomogeneousCase::constant_holomorphic);
}
