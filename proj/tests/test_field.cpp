// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qch/field.hpp"

#include <cmath>

using namespace qch;

namespace {

MetricField diagonal_metric() {
    return MetricField(
        [](const JetVec& s) {
            JetMat g{};
            g[0][0] = 1.0 + s[0] * s[0];
            g[1][1] = Jet2d(2.0);
            g[2][2] = exp(s[1]);
            g[3][3] = Jet2d(1.0);
            return g;
        },
        ChartDomain::whole_space());
}

} // namespace

TEST_CASE("metric jets carry component derivatives") {
    Point p(0.5, 0.25, 0, 0);
    MetricJet mj = evaluate_metric(diagonal_metric(), p);
    CHECK(mj.g(0, 0) == doctest::Approx(1.25));
    CHECK(mj.dg[0](0, 0) == doctest::Approx(1.0));
    CHECK(mj.ddg[0][0](0, 0) == doctest::Approx(2.0));
    CHECK(mj.dg[1](2, 2) == doctest::Approx(std::exp(0.25)));
    CHECK(mj.ddg[1][1](2, 2) == doctest::Approx(std::exp(0.25)));
    CHECK(mj.dg[2](1, 1) == 0.0);
}

TEST_CASE("component accessor matches the matrix closure") {
    Point p(0.3, -0.2, 0.1, 0.9);
    MetricField g = diagonal_metric();
    Jet2d c = evaluate(g.component(2, 2), p);
    MetricJet mj = evaluate_metric(g, p);
    CHECK(c.v == doctest::Approx(mj.g(2, 2)));
    CHECK(c.d[1] == doctest::Approx(mj.dg[1](2, 2)));
}

TEST_CASE("conformal rescale multiplies components by the squared factor") {
    ScalarField factor([](const JetVec& s) { return s[0] + 2.0; }, ChartDomain::whole_space());
    MetricField scaled = diagonal_metric().conformal(factor);
    Point p(0.5, 0, 0, 0);
    MetricJet mj = evaluate_metric(scaled, p);
    CHECK(mj.g(1, 1) == doctest::Approx(2.0 * 2.5 * 2.5));
    // d/dx of (x+2)^2 * 2 = 2*2*(x+2)
    CHECK(mj.dg[0](1, 1) == doctest::Approx(4.0 * 2.5));
}

TEST_CASE("constant structure and distribution fields") {
    Mat4 J;
    J << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    ComplexStructureField jf = ComplexStructureField::constant(J);
    StructureJet sj = evaluate_structure(jf, Point(1, 2, 3, 4));
    CHECK((sj.J - J).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < 4; ++k) CHECK(sj.dJ[k].cwiseAbs().maxCoeff() == 0.0);

    DistributionField df = DistributionField::constant(Vec4::Unit(0), Vec4::Unit(1));
    auto span = df.raw(seed_jets(Point(0, 0, 0, 0)));
    CHECK(span[0][0].v == 1.0);
    CHECK(span[1][1].v == 1.0);
}

TEST_CASE("domain box excludes boundary points") {
    std::array<double, 4> lo{0, 0, 0, 0}, hi{1, 1, 1, 1};
    ChartDomain dom(lo, hi);
    CHECK(dom.contains(Point(0.5, 0.5, 0.5, 0.5)));
    CHECK_FALSE(dom.contains(Point(0.0, 0.5, 0.5, 0.5)));
    CHECK_FALSE(dom.contains(Point(0.5, 1.0, 0.5, 0.5)));
}
