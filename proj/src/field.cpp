// SPDX-License-Identifier: Apache-2.0

#include "qch/field.hpp"

#include <algorithm>
#include <cmath>

namespace qch {

Jet2d evaluate(const ScalarField& field, const Point& p) {
    if (!field.domain().contains(p)) throw DomainError("evaluation point outside chart domain");
    Jet2d r = field.raw(seed_jets(p));
    if (!is_finite(r)) throw NonFiniteError("field evaluation produced a non-finite jet");
    return r;
}

namespace {

double value_at(const ScalarField& field, const Point& p) {
    if (!field.domain().contains(p)) throw DomainError("stencil point outside chart domain");
    Jet2d r = field.raw(seed_jets(p));
    if (!is_finite(r.v)) throw NonFiniteError("field evaluation produced a non-finite value");
    return r.v;
}

bool stencil_inside(const ChartDomain& dom, const Point& p, double step) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int si = -1; si <= 1; ++si)
                for (int sj = -1; sj <= 1; ++sj) {
                    Point q = p;
                    q[i] += si * step;
                    q[j] += sj * step;
                    if (!dom.contains(q)) return false;
                }
    return true;
}

} // namespace

Jet2d finite_difference_jet(const ScalarField& field, const Point& p, double step) {
    if (!(step > 0)) throw BadParameterError("finite difference step must be positive");
    if (!field.domain().contains(p)) throw DomainError("evaluation point outside chart domain");

    // Shrink the stencil near the boundary instead of failing, down to a floor.
    constexpr double kStepFloor = 1e-6;
    while (step > kStepFloor && !stencil_inside(field.domain(), p, step)) step *= 0.5;
    if (!stencil_inside(field.domain(), p, step))
        throw DomainError("finite difference stencil leaves the chart domain even at the minimum step");

    Jet2d r;
    r.v = value_at(field, p);

    auto shifted = [&p](int i, double di, int j = 0, double dj = 0.0) {
        Point q = p;
        q[i] += di;
        q[j] += dj;
        return q;
    };

    for (int i = 0; i < 4; ++i) {
        double fp = value_at(field, shifted(i, step));
        double fm = value_at(field, shifted(i, -step));
        r.d[static_cast<std::size_t>(i)] = (fp - fm) / (2.0 * step);
        r.hess(i, i) = (fp - 2.0 * r.v + fm) / (step * step);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double fpp = value_at(field, shifted(i, step, j, step));
            double fpm = value_at(field, shifted(i, step, j, -step));
            double fmp = value_at(field, shifted(i, -step, j, step));
            double fmm = value_at(field, shifted(i, -step, j, -step));
            r.hess(i, j) = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
        }
    return r;
}

MetricField MetricField::conformal(const ScalarField& factor) const {
    Fn base = fn_;
    ScalarField f = factor;
    return MetricField(
        [base, f](const JetVec& s) {
            Jet2d c = f.raw(s);
            Jet2d c2 = c * c;
            JetMat m = base(s);
            for (auto& row : m)
                for (auto& e : row) e = e * c2;
            return m;
        },
        domain_);
}

ComplexStructureField ComplexStructureField::constant(const Mat4& J, ChartDomain domain) {
    Mat4 Jc = J;
    return ComplexStructureField(
        [Jc](const JetVec&) {
            JetMat m;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Jet2d(Jc(i, j));
            return m;
        },
        std::move(domain));
}

DistributionField DistributionField::constant(const Vec4& v1, const Vec4& v2, ChartDomain domain) {
    Vec4 a = v1, b = v2;
    return DistributionField(
        [a, b](const JetVec&) {
            std::array<JetVec, 2> out;
            for (int i = 0; i < 4; ++i) {
                out[0][static_cast<std::size_t>(i)] = Jet2d(a(i));
                out[1][static_cast<std::size_t>(i)] = Jet2d(b(i));
            }
            return out;
        },
        std::move(domain));
}

MetricJet evaluate_metric(const MetricField& g, const Point& p) {
    if (!g.domain().contains(p)) throw DomainError("evaluation point outside chart domain");
    JetMat jm = g.raw(seed_jets(p));
    MetricJet out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Jet2d& c = jm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!is_finite(c)) throw NonFiniteError("metric component evaluated to a non-finite jet");
            out.g(i, j) = c.v;
            for (int k = 0; k < 4; ++k) out.dg[static_cast<std::size_t>(k)](i, j) = c.d[static_cast<std::size_t>(k)];
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) out.ddg[k][l](i, j) = c.hess(k, l);
        }
    return out;
}

StructureJet evaluate_structure(const ComplexStructureField& J, const Point& p) {
    if (!J.domain().contains(p)) throw DomainError("evaluation point outside chart domain");
    JetMat jm = J.raw(seed_jets(p));
    StructureJet out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Jet2d& c = jm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!is_finite(c)) throw NonFiniteError("structure component evaluated to a non-finite jet");
            out.J(i, j) = c.v;
            for (int k = 0; k < 4; ++k) out.dJ[static_cast<std::size_t>(k)](i, j) = c.d[static_cast<std::size_t>(k)];
        }
    return out;
}

} // namespace qch
