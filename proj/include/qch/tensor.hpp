// SPDX-License-Identifier: Apache-2.0
/// \file
/// Pointwise multilinear algebra on a 4-dimensional tangent space:
/// Kulkarni-Nomizu products, the Bianchi projector, Ricci contraction,
/// the Hodge star with its self-dual / anti-self-dual splitting of 2-forms,
/// and the correspondence between curvature-type tensors and endomorphisms
/// of the 2-form space.

#pragma once

#include "qch/errors.hpp"
#include "qch/field.hpp"

#include <Eigen/Dense>

#include <array>

namespace qch {

enum class Orientation : int { positive = +1, negative = -1 };

inline double sign(Orientation o) { return o == Orientation::positive ? 1.0 : -1.0; }

/// Symmetric covariant 2-tensor.
class Sym2 {
public:
    Sym2() { m_.setZero(); }
    explicit Sym2(const Mat4& m, double tol = 1e-10) : m_(m) {
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
            throw ShapeError("Sym2 requires a symmetric matrix");
        m_ = 0.5 * (m + m.transpose());
    }
    static Sym2 identity() { return Sym2(Mat4::Identity()); }

    const Mat4& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }
    double operator()(const Vec4& x, const Vec4& y) const { return x.dot(m_ * y); }

    Sym2 operator+(const Sym2& o) const { return Sym2(m_ + o.m_); }
    Sym2 operator-(const Sym2& o) const { return Sym2(m_ - o.m_); }
    Sym2 operator*(double s) const { return Sym2(m_ * s); }
    friend Sym2 operator*(double s, const Sym2& a) { return a * s; }

private:
    Mat4 m_;
};

/// Antisymmetric covariant 2-tensor.
class TwoForm {
public:
    TwoForm() { m_.setZero(); }
    explicit TwoForm(const Mat4& m, double tol = 1e-10) : m_(m) {
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
            throw ShapeError("TwoForm requires an antisymmetric matrix");
        m_ = 0.5 * (m - m.transpose());
    }

    /// Elementary form e^i ^ e^j.
    static TwoForm elementary(int i, int j) {
        Mat4 m = Mat4::Zero();
        m(i, j) = 1.0;
        m(j, i) = -1.0;
        return TwoForm(m);
    }

    const Mat4& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }
    double operator()(const Vec4& x, const Vec4& y) const { return x.dot(m_ * y); }

    TwoForm operator+(const TwoForm& o) const { return TwoForm(m_ + o.m_); }
    TwoForm operator-(const TwoForm& o) const { return TwoForm(m_ - o.m_); }
    TwoForm operator*(double s) const { return TwoForm(m_ * s); }
    friend TwoForm operator*(double s, const TwoForm& a) { return a * s; }
    TwoForm operator-() const { return TwoForm(-m_); }

private:
    Mat4 m_;
};

/// Metric inner product on 2-forms, <phi,psi> = (1/2) phi_ij psi_kl g^ik g^jl.
double form_inner(const TwoForm& a, const TwoForm& b, const Sym2& g);

/// Dense covariant 4-tensor with slots ordered (X, Y, Z, U).
class Tensor4 {
public:
    Tensor4() { data_.fill(0.0); }

    double& operator()(int i, int j, int k, int l) { return data_[static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l)]; }
    double operator()(int i, int j, int k, int l) const {
        return data_[static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l)];
    }

    double operator()(const Vec4& x, const Vec4& y, const Vec4& z, const Vec4& u) const;

    Tensor4 operator+(const Tensor4& o) const;
    Tensor4 operator-(const Tensor4& o) const;
    Tensor4 operator*(double s) const;
    friend Tensor4 operator*(double s, const Tensor4& t) { return t * s; }
    Tensor4 operator-() const { return *this * -1.0; }

    double max_abs() const;

    /// Residuals of the algebraic curvature symmetries (zero when satisfied).
    double antisym_first_pair_residual() const;
    double antisym_second_pair_residual() const;
    double pair_exchange_residual() const;

private:
    std::array<double, 256> data_;
};

/// Tensor product of two bilinear forms, (a (x) b)(X,Y,Z,U) = a(X,Y) b(Z,U).
Tensor4 tensor_product(const Mat4& a, const Mat4& b);

/// Wedge of two 2-forms as a covariant 4-tensor (sum over (2,2) shuffles).
Tensor4 wedge2(const TwoForm& a, const TwoForm& b);

/// Kulkarni-Nomizu product of symmetric tensors.
Tensor4 kulkarni_nomizu(const Sym2& h, const Sym2& k);

/// Kulkarni-Nomizu product of 2-forms (same slot combination).
Tensor4 kulkarni_nomizu(const TwoForm& w, const TwoForm& e);

/// Bianchi projector, b(T)(X,Y,Z,U) = (1/3)(T(X,Y,Z,U)+T(Y,Z,X,U)+T(Z,X,Y,U)).
Tensor4 bianchi(const Tensor4& t);

/// Ricci contraction, c(T)(Y,Z) = g^ij T(e_i, Y, Z, e_j).
Sym2 ricci_contraction(const Tensor4& t, const Sym2& g);

/// Hodge star on 2-forms for metric g and the given chart orientation.
TwoForm hodge_star(const TwoForm& phi, const Sym2& g, Orientation orientation);

/// g-orthogonal basis of the 2-form space split into self-dual and
/// anti-self-dual triples, every element of squared norm 2.
class Lambda2Basis {
public:
    /// forms[0..2] self-dual, forms[3..5] anti-self-dual.
    std::array<TwoForm, 6> forms;
    Orientation orientation = Orientation::positive;

    const TwoForm& self_dual(int a) const { return forms[static_cast<std::size_t>(a)]; }
    const TwoForm& anti_self_dual(int a) const { return forms[static_cast<std::size_t>(3 + a)]; }
};

/// Build a Lambda2Basis from a Gram-Schmidt orthonormal tangent frame.
Lambda2Basis lambda2_split(const Sym2& g, Orientation orientation);

/// Matrix of the 2-form endomorphism induced by a curvature-type tensor,
/// in the given basis. Self-adjoint whenever T has pair-exchange symmetry.
Eigen::Matrix<double, 6, 6> curvature_operator(const Tensor4& t, const Sym2& g, const Lambda2Basis& basis);

/// Inverse of curvature_operator: dense tensor with the given operator matrix.
Tensor4 tensor_from_operator(const Eigen::Matrix<double, 6, 6>& m, const Lambda2Basis& basis);

/// Expand a 2-form in the basis (coefficients w.r.t. the norm^2 = 2 elements).
Eigen::Matrix<double, 6, 1> form_coordinates(const TwoForm& phi, const Sym2& g, const Lambda2Basis& basis);

/// Assemble a 2-form from basis coordinates.
TwoForm form_from_coordinates(const Eigen::Matrix<double, 6, 1>& c, const Lambda2Basis& basis);

} // namespace qch
