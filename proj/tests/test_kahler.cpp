// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qch/kahler.hpp"
#include "qch/tensor.hpp"

#include <cmath>
#include <random>

using namespace qch;

namespace {

MetricField flat_metric() {
    return MetricField(
        [](const JetVec&) {
            JetMat g{};
            for (int i = 0; i < 4; ++i) g[i][i] = Jet2d(1.0);
            return g;
        },
        ChartDomain::whole_space());
}

MetricField isothermal_product(double k1, double k2) {
    return MetricField(
        [k1, k2](const JetVec& s) {
            Jet2d d1 = 1.0 + 0.25 * k1 * (s[0] * s[0] + s[1] * s[1]);
            Jet2d d2 = 1.0 + 0.25 * k2 * (s[2] * s[2] + s[3] * s[3]);
            JetMat g{};
            g[0][0] = g[1][1] = reciprocal(d1 * d1);
            g[2][2] = g[3][3] = reciprocal(d2 * d2);
            return g;
        },
        ChartDomain({-0.7, -0.7, -0.7, -0.7}, {0.7, 0.7, 0.7, 0.7}));
}

} // namespace

TEST_CASE("hermitian data on the flat chart") {
    HermitianData hd = hermitian_data(flat_metric(), ComplexStructureField::constant(standard_chart_J()),
                                      DistributionField::constant(Vec4::Unit(0), Vec4::Unit(1)), Point(0, 0, 0, 0));

    Mat4 h_expect = Mat4::Zero();
    h_expect(0, 0) = h_expect(1, 1) = 1.0;
    CHECK((hd.h.mat() - h_expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((hd.m.mat() - (Mat4::Identity() - h_expect)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(hd.p_D.trace() == doctest::Approx(2.0));
    CHECK(hd.p_E.trace() == doctest::Approx(2.0));
    CHECK(((hd.p_D + hd.p_E) - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((hd.p_D * hd.p_D - hd.p_D).cwiseAbs().maxCoeff() < 1e-14);

    Mat4 J = standard_chart_J();
    CHECK((hd.Jbar * hd.Jbar + Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((hd.Jbar.transpose() * hd.Jbar - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    // Jbar agrees with J on D and with -J on E
    CHECK((hd.Jbar * Vec4::Unit(0) - J * Vec4::Unit(0)).norm() < 1e-14);
    CHECK((hd.Jbar * Vec4::Unit(2) + J * Vec4::Unit(2)).norm() < 1e-14);
    // kernel projector identity
    CHECK((kernel_projector(J, hd.Jbar) - hd.p_D).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("opposite volume forms have opposite signs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    MetricField g = isothermal_product(1.0, -1.0);
    ComplexStructureField J = ComplexStructureField::constant(standard_chart_J());
    DistributionField D = DistributionField::constant(Vec4::Unit(0), Vec4::Unit(1));
    for (int trial = 0; trial < 5; ++trial) {
        Point p(d(rng), d(rng), d(rng), d(rng));
        HermitianData hd = hermitian_data(g, J, D, p);
        Tensor4 ww = wedge2(hd.omega, hd.omega);
        Tensor4 bb = wedge2(hd.omega_bar, hd.omega_bar);
        CHECK((ww + bb).max_abs() < 1e-12);
        CHECK(ww(0, 1, 2, 3) > 0.0);
    }
}

TEST_CASE("degenerate distribution raises") {
    CHECK_THROWS_AS(hermitian_data(flat_metric(), ComplexStructureField::constant(standard_chart_J()),
                                   DistributionField::constant(Vec4::Unit(0), Vec4::Unit(0) * 2.0),
                                   Point(0, 0, 0, 0)),
                    DegenerateDistributionError);
    // non-J-invariant span
    CHECK_THROWS_AS(hermitian_data(flat_metric(), ComplexStructureField::constant(standard_chart_J()),
                                   DistributionField::constant(Vec4::Unit(0), Vec4::Unit(2)), Point(0, 0, 0, 0)),
                    ShapeError);
}

TEST_CASE("kahler residual vanishes for constant structures on flat space") {
    CHECK(kahler_residual(flat_metric(), ComplexStructureField::constant(standard_chart_J()), Point(0.1, 0.2, 0.3, 0.4)) ==
          doctest::Approx(0.0));
}

TEST_CASE("potential metrics are Kaehler by construction") {
    auto fubini = [](const auto& z) {
        auto r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
        return log(r2 + 1.0);
    };
    MetricField g = metric_field_from_potential(fubini, ChartDomain::whole_space());
    ComplexStructureField J = ComplexStructureField::constant(standard_chart_J());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-0.6, 0.6);
    for (int trial = 0; trial < 10; ++trial) {
        Point p(d(rng), d(rng), d(rng), d(rng));
        CHECK(kahler_residual(g, J, p) < 1e-9);
    }
}

TEST_CASE("gray identity residuals") {
    // zero curvature satisfies the identity for any structure
    CHECK(gray_g2_residual(Tensor4(), standard_chart_J()) == 0.0);

    // synthetic Ricci invariance checks
    Mat4 ric = Vec4(1, 1, 2, 2).asDiagonal();
    Mat4 block_j = standard_chart_J(); // preserves the 12/34 blocks
    CHECK(ricci_j_invariance_residual(Sym2(ric), block_j) < 1e-14);

    Mat4 mixing = Mat4::Zero(); // J sending e1 -> e3, e2 -> e4
    mixing(2, 0) = 1;
    mixing(0, 2) = -1;
    mixing(3, 1) = 1;
    mixing(1, 3) = -1;
    CHECK(ricci_j_invariance_residual(Sym2(ric), mixing) == doctest::Approx(1.0));

    Mat4 einstein = 3.0 * Mat4::Identity();
    CHECK(ricci_j_invariance_residual(Sym2(einstein), mixing) < 1e-14);
    CHECK(ricci_j_invariance_residual(Sym2(einstein), block_j) < 1e-14);
}

TEST_CASE("metric from potential: flat, positive and negative space forms") {
    ScalarField flat_pot([](const JetVec& z) { return z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3]; },
                         ChartDomain::whole_space());
    auto [g0, J0] = metric_from_potential(flat_pot, Point(0.3, -0.2, 0.5, 0.1));
    CHECK((g0.mat() - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((J0 - standard_chart_J()).cwiseAbs().maxCoeff() == 0.0);

    ScalarField fs_pot([](const JetVec& z) { return log(z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3] + 1.0); },
                       ChartDomain::whole_space());
    auto [g1, J1] = metric_from_potential(fs_pot, Point(0, 0, 0, 0));
    CHECK((g1.mat() - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    // negative curvature: hyperbolic sectional curvature -4
    auto hyper = [](const auto& z) {
        auto r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
        return log(1.0 - r2) * -1.0;
    };
    MetricField gh = metric_field_from_potential(hyper, ChartDomain({-0.4, -0.4, -0.4, -0.4}, {0.4, 0.4, 0.4, 0.4}));
    Point p(0.1, -0.05, 0.12, 0.03);
    CurvatureData cd = curvature_data(gh, nullptr, p);
    Mat4 J = standard_chart_J();
    Vec4 X(1, 0.3, -0.2, 0.5);
    Vec4 JX = J * X;
    double n2 = cd.g(X, X);
    CHECK(cd.riemann(X, JX, JX, X) / (n2 * n2) == doctest::Approx(-4.0).epsilon(1e-9));

    // potential with an indefinite complex Hessian
    ScalarField bad([](const JetVec& z) { return z[0] * z[0] * -1.0; }, ChartDomain::whole_space());
    CHECK_THROWS_AS(metric_from_potential(bad, Point(0, 0, 0, 0)), NotPositiveError);
}

TEST_CASE("opposite structure field matches the pointwise construction") {
    MetricField g = isothermal_product(1.0, 2.0);
    ComplexStructureField J = ComplexStructureField::constant(standard_chart_J());
    DistributionField D = DistributionField::constant(Vec4::Unit(0), Vec4::Unit(1));
    ComplexStructureField Jbar = opposite_structure_field(g, J, D);

    Point p(0.2, -0.1, 0.3, 0.15);
    StructureJet sj = evaluate_structure(Jbar, p);
    HermitianData hd = hermitian_data(g, J, D, p);
    CHECK((sj.J - hd.Jbar).cwiseAbs().maxCoeff() < 1e-12);
    // constant projectors here, so the opposite structure is parallel
    CHECK(kahler_residual(g, Jbar, p) < 1e-10);
}

TEST_CASE("structure recovery on a non-Einstein product") {
    // Gauss curvatures 1 and 2: scalar curvature 6, simple eigenvalue in the
    // Kaehler orientation
    MetricField g = isothermal_product(1.0, 2.0);
    Point p(0.15, -0.2, 0.1, 0.25);
    RecoveredStructure rec = recover_kahler_structure(g, p, Orientation::positive);
    Mat4 J = standard_chart_J();
    double match = std::min((rec.J - J).cwiseAbs().maxCoeff(), (rec.J + J).cwiseAbs().maxCoeff());
    CHECK(match < 1e-6);
    CHECK(rec.parallelism_residual < 1e-6);

    CHECK_THROWS_AS(recover_kahler_structure(flat_metric(), p, Orientation::positive), NoSimpleEigenvalueError);
}
