// SPDX-License-Identifier: Apache-2.0
/// \file
/// Scalar, metric, complex-structure and distribution fields on a coordinate
/// chart, with checked evaluation to second-order jets and a central
/// finite-difference oracle used to cross-validate the Taylor arithmetic.

#pragma once

#include "qch/errors.hpp"
#include "qch/jet.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <string>

namespace qch {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// A point of a 4-dimensional coordinate chart.
struct Point {
    std::array<double, 4> x{};

    Point() = default;
    Point(double a, double b, double c, double d) : x{a, b, c, d} { validate(); }
    explicit Point(const std::array<double, 4>& coords) : x(coords) { validate(); }

    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }

    void validate() const {
        for (double c : x)
            if (!std::isfinite(c)) throw NonFiniteError("Point has a non-finite coordinate");
    }
};

/// Open chart domain: a coordinate box plus an optional predicate guard.
///
/// `margin` is the distance to the boundary below which stencil-based
/// evaluation starts shrinking its step instead of failing outright.
class ChartDomain {
public:
    ChartDomain() : lo_{-1e30, -1e30, -1e30, -1e30}, hi_{1e30, 1e30, 1e30, 1e30} {}
    ChartDomain(const std::array<double, 4>& lo, const std::array<double, 4>& hi,
                std::function<bool(const Point&)> predicate = nullptr, double margin = 1e-3)
        : lo_(lo), hi_(hi), predicate_(std::move(predicate)), margin_(margin) {}

    static ChartDomain whole_space() { return ChartDomain(); }

    bool contains(const Point& p) const {
        for (int i = 0; i < 4; ++i)
            if (!(p[i] > lo_[static_cast<std::size_t>(i)] && p[i] < hi_[static_cast<std::size_t>(i)])) return false;
        return !predicate_ || predicate_(p);
    }

    double margin() const { return margin_; }
    const std::array<double, 4>& lo() const { return lo_; }
    const std::array<double, 4>& hi() const { return hi_; }

private:
    std::array<double, 4> lo_, hi_;
    std::function<bool(const Point&)> predicate_;
    double margin_ = 1e-3;
};

using JetVec = std::array<Jet2d, 4>;
using JetMat = std::array<std::array<Jet2d, 4>, 4>;

/// Seed jets for the chart variables at p.
inline JetVec seed_jets(const Point& p) {
    JetVec s;
    for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = Jet2d::variable(p[i], i);
    return s;
}

/// A scalar field over a chart, evaluable on arbitrary jets of the chart
/// variables. Closures must be pure; fields are freely copyable and safe to
/// evaluate concurrently.
class ScalarField {
public:
    using Fn = std::function<Jet2d(const JetVec&)>;

    ScalarField() = default;
    ScalarField(Fn fn, ChartDomain domain)
        : fn_(std::move(fn)), domain_(std::make_shared<const ChartDomain>(std::move(domain))) {}
    ScalarField(Fn fn, std::shared_ptr<const ChartDomain> domain) : fn_(std::move(fn)), domain_(std::move(domain)) {}

    static ScalarField constant(double c, ChartDomain domain = ChartDomain::whole_space()) {
        return ScalarField([c](const JetVec&) { return Jet2d(c); }, std::move(domain));
    }

    /// Apply the closure to arbitrary jets, without domain checking.
    Jet2d raw(const JetVec& seeds) const { return fn_(seeds); }

    const ChartDomain& domain() const { return *domain_; }
    std::shared_ptr<const ChartDomain> domain_ptr() const { return domain_; }
    bool valid() const { return static_cast<bool>(fn_); }

private:
    Fn fn_;
    std::shared_ptr<const ChartDomain> domain_ = std::make_shared<const ChartDomain>();
};

/// Exact value, gradient and Hessian of `field` at `p`.
Jet2d evaluate(const ScalarField& field, const Point& p);

/// Central finite-difference jet of `field` at `p`.
///
/// Gradient and Hessian are both O(step^2) accurate. Near the chart boundary
/// the step shrinks by halving, down to a floor of 1e-6, before a DomainError
/// is raised.
Jet2d finite_difference_jet(const ScalarField& field, const Point& p, double step = 1e-4);

inline Vec4 gradient(const Jet2d& j) {
    return Vec4(j.d[0], j.d[1], j.d[2], j.d[3]);
}
inline Mat4 hessian(const Jet2d& j) {
    Mat4 H;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) H(i, k) = j.hess(i, k);
    return H;
}

/// Symmetric 2-tensor field (a metric once positive-definiteness is checked).
/// The closure returns the whole component matrix so shared subexpressions
/// are evaluated once.
class MetricField {
public:
    using Fn = std::function<JetMat(const JetVec&)>;

    MetricField() = default;
    MetricField(Fn fn, ChartDomain domain)
        : fn_(std::move(fn)), domain_(std::make_shared<const ChartDomain>(std::move(domain))) {}
    MetricField(Fn fn, std::shared_ptr<const ChartDomain> domain) : fn_(std::move(fn)), domain_(std::move(domain)) {}

    JetMat raw(const JetVec& seeds) const { return fn_(seeds); }
    const ChartDomain& domain() const { return *domain_; }
    std::shared_ptr<const ChartDomain> domain_ptr() const { return domain_; }
    bool valid() const { return static_cast<bool>(fn_); }

    /// One component as a standalone scalar field.
    ScalarField component(int i, int j) const {
        Fn fn = fn_;
        return ScalarField([fn, i, j](const JetVec& s) { return fn(s)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; },
                           domain_);
    }

    /// Pointwise conformal rescale by the square of `factor`.
    MetricField conformal(const ScalarField& factor) const;

private:
    Fn fn_;
    std::shared_ptr<const ChartDomain> domain_ = std::make_shared<const ChartDomain>();
};

/// Field of mixed components J^i_j of an almost complex structure.
class ComplexStructureField {
public:
    using Fn = std::function<JetMat(const JetVec&)>;

    ComplexStructureField() = default;
    ComplexStructureField(Fn fn, ChartDomain domain)
        : fn_(std::move(fn)), domain_(std::make_shared<const ChartDomain>(std::move(domain))) {}
    ComplexStructureField(Fn fn, std::shared_ptr<const ChartDomain> domain)
        : fn_(std::move(fn)), domain_(std::move(domain)) {}

    /// Constant structure matrix.
    static ComplexStructureField constant(const Mat4& J, ChartDomain domain = ChartDomain::whole_space());

    JetMat raw(const JetVec& seeds) const { return fn_(seeds); }
    const ChartDomain& domain() const { return *domain_; }
    std::shared_ptr<const ChartDomain> domain_ptr() const { return domain_; }
    bool valid() const { return static_cast<bool>(fn_); }

    ScalarField component(int i, int j) const {
        Fn fn = fn_;
        return ScalarField([fn, i, j](const JetVec& s) { return fn(s)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; },
                           domain_);
    }

private:
    Fn fn_;
    std::shared_ptr<const ChartDomain> domain_ = std::make_shared<const ChartDomain>();
};

/// Two spanning vector fields of a rank-2 distribution.
class DistributionField {
public:
    using Fn = std::function<std::array<JetVec, 2>(const JetVec&)>;

    DistributionField() = default;
    DistributionField(Fn fn, ChartDomain domain)
        : fn_(std::move(fn)), domain_(std::make_shared<const ChartDomain>(std::move(domain))) {}

    /// Constant coordinate spanning vectors.
    static DistributionField constant(const Vec4& v1, const Vec4& v2,
                                      ChartDomain domain = ChartDomain::whole_space());

    std::array<JetVec, 2> raw(const JetVec& seeds) const { return fn_(seeds); }
    const ChartDomain& domain() const { return *domain_; }
    bool valid() const { return static_cast<bool>(fn_); }

private:
    Fn fn_;
    std::shared_ptr<const ChartDomain> domain_ = std::make_shared<const ChartDomain>();
};

/// Metric components and their first two derivatives at a point.
struct MetricJet {
    Mat4 g;                     ///< g_ij
    std::array<Mat4, 4> dg;     ///< dg[k](i,j) = d_k g_ij
    Mat4 ddg[4][4];             ///< ddg[k][l](i,j) = d_k d_l g_ij
};

/// Evaluate a metric field with domain and finiteness checks.
MetricJet evaluate_metric(const MetricField& g, const Point& p);

/// Structure components and first derivatives at a point.
struct StructureJet {
    Mat4 J;                 ///< J^i_j
    std::array<Mat4, 4> dJ; ///< dJ[k](i,j) = d_k J^i_j
};

StructureJet evaluate_structure(const ComplexStructureField& J, const Point& p);

} // namespace qch
