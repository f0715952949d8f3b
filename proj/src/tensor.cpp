// SPDX-License-Identifier: Apache-2.0

#include "qch/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qch {

double form_inner(const TwoForm& a, const TwoForm& b, const Sym2& g) {
    Mat4 ginv = g.mat().inverse();
    // (1/2) a_ij b_kl g^ik g^jl = (1/2) tr(ginv a ginv b^T)
    return 0.5 * (ginv * a.mat() * ginv * b.mat().transpose()).trace();
}

double Tensor4::operator()(const Vec4& x, const Vec4& y, const Vec4& z, const Vec4& u) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += (*this)(i, j, k, l) * x(i) * y(j) * z(k) * u(l);
    return s;
}

Tensor4 Tensor4::operator+(const Tensor4& o) const {
    Tensor4 r;
    for (std::size_t i = 0; i < 256; ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}
Tensor4 Tensor4::operator-(const Tensor4& o) const {
    Tensor4 r;
    for (std::size_t i = 0; i < 256; ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}
Tensor4 Tensor4::operator*(double s) const {
    Tensor4 r;
    for (std::size_t i = 0; i < 256; ++i) r.data_[i] = data_[i] * s;
    return r;
}

double Tensor4::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Tensor4::antisym_first_pair_residual() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) m = std::max(m, std::abs((*this)(i, j, k, l) + (*this)(j, i, k, l)));
    return m;
}
double Tensor4::antisym_second_pair_residual() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) m = std::max(m, std::abs((*this)(i, j, k, l) + (*this)(i, j, l, k)));
    return m;
}
double Tensor4::pair_exchange_residual() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) m = std::max(m, std::abs((*this)(i, j, k, l) - (*this)(k, l, i, j)));
    return m;
}

Tensor4 tensor_product(const Mat4& a, const Mat4& b) {
    Tensor4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) r(i, j, k, l) = a(i, j) * b(k, l);
    return r;
}

Tensor4 wedge2(const TwoForm& a, const TwoForm& b) {
    const Mat4& A = a.mat();
    const Mat4& B = b.mat();
    Tensor4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    r(i, j, k, l) = A(i, j) * B(k, l) + A(k, l) * B(i, j) - A(i, k) * B(j, l) - A(j, l) * B(i, k) +
                                    A(i, l) * B(j, k) + A(j, k) * B(i, l);
    return r;
}

namespace {

Tensor4 kn_combination(const Mat4& h, const Mat4& k) {
    Tensor4 r;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z)
                for (int t = 0; t < 4; ++t)
                    r(x, y, z, t) = h(x, z) * k(y, t) + h(y, t) * k(x, z) - h(x, t) * k(y, z) - h(y, z) * k(x, t);
    return r;
}

} // namespace

Tensor4 kulkarni_nomizu(const Sym2& h, const Sym2& k) { return kn_combination(h.mat(), k.mat()); }
Tensor4 kulkarni_nomizu(const TwoForm& w, const TwoForm& e) { return kn_combination(w.mat(), e.mat()); }

Tensor4 bianchi(const Tensor4& t) {
    Tensor4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) r(i, j, k, l) = (t(i, j, k, l) + t(j, k, i, l) + t(k, i, j, l)) / 3.0;
    return r;
}

Sym2 ricci_contraction(const Tensor4& t, const Sym2& g) {
    Eigen::FullPivLU<Mat4> lu(g.mat());
    if (!lu.isInvertible()) throw SingularMetricError("ricci_contraction: metric not invertible");
    Mat4 ginv = lu.inverse();
    Mat4 out = Mat4::Zero();
    for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += ginv(i, j) * t(i, y, z, j);
            out(y, z) = s;
        }
    // symmetrize away roundoff before constructing
    return Sym2(0.5 * (out + out.transpose()), 1e-6);
}

namespace {

int levi_civita(int i, int j, int k, int l) {
    int p[4] = {i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            if (p[a] == p[b]) return 0;
            if (p[a] > p[b]) sign = -sign;
        }
    return sign;
}

void check_positive_definite(const Sym2& g) {
    Eigen::LLT<Mat4> llt(g.mat());
    if (llt.info() != Eigen::Success) throw SingularMetricError("metric is not positive-definite");
}

} // namespace

TwoForm hodge_star(const TwoForm& phi, const Sym2& g, Orientation orientation) {
    check_positive_definite(g);
    double det = g.mat().determinant();
    double vol = sign(orientation) * std::sqrt(det);
    Mat4 ginv = g.mat().inverse();
    Mat4 up = ginv * phi.mat() * ginv.transpose(); // phi^{ij}
    Mat4 out = Mat4::Zero();
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += up(i, j) * levi_civita(i, j, k, l);
            out(k, l) = 0.5 * vol * s;
        }
    return TwoForm(out, 1e-6);
}

Lambda2Basis lambda2_split(const Sym2& g, Orientation orientation) {
    check_positive_definite(g);

    // Gram-Schmidt orthonormal frame from the coordinate basis.
    std::array<Vec4, 4> frame;
    for (int a = 0; a < 4; ++a) {
        Vec4 v = Vec4::Unit(a);
        for (int b = 0; b < a; ++b) v -= g(frame[static_cast<std::size_t>(b)], v) * frame[static_cast<std::size_t>(b)];
        double n2 = g(v, v);
        if (!(n2 > 0)) throw SingularMetricError("lambda2_split: frame construction failed");
        frame[static_cast<std::size_t>(a)] = v / std::sqrt(n2);
    }

    // Coordinate-ordered frames have chart orientation; flip one leg for the
    // reversed orientation so the split below is exact.
    if (orientation == Orientation::negative) frame[3] = -frame[3];

    // Covariant coframe e^a = g(E_a, .).
    std::array<Vec4, 4> coframe;
    for (int a = 0; a < 4; ++a) coframe[static_cast<std::size_t>(a)] = g.mat() * frame[static_cast<std::size_t>(a)];

    auto wedge = [&coframe](int a, int b) {
        Mat4 m = coframe[static_cast<std::size_t>(a)] * coframe[static_cast<std::size_t>(b)].transpose() -
                 coframe[static_cast<std::size_t>(b)] * coframe[static_cast<std::size_t>(a)].transpose();
        return TwoForm(m, 1e-6);
    };

    Lambda2Basis basis;
    basis.orientation = orientation;
    basis.forms[0] = wedge(0, 1) + wedge(2, 3);
    basis.forms[1] = wedge(0, 2) - wedge(1, 3);
    basis.forms[2] = wedge(0, 3) + wedge(1, 2);
    basis.forms[3] = wedge(0, 1) - wedge(2, 3);
    basis.forms[4] = wedge(0, 2) + wedge(1, 3);
    basis.forms[5] = wedge(0, 3) - wedge(1, 2);
    return basis;
}

Eigen::Matrix<double, 6, 6> curvature_operator(const Tensor4& t, const Sym2& g, const Lambda2Basis& basis) {
    if (t.antisym_first_pair_residual() > 1e-6 * std::max(1.0, t.max_abs()) ||
        t.antisym_second_pair_residual() > 1e-6 * std::max(1.0, t.max_abs()))
        throw ShapeError("curvature_operator requires pair antisymmetries");

    Mat4 ginv = g.mat().inverse();
    std::array<Mat4, 6> up;
    for (int a = 0; a < 6; ++a) up[static_cast<std::size_t>(a)] = ginv * basis.forms[static_cast<std::size_t>(a)].mat() * ginv.transpose();

    // The scale is pinned so that the flat-space operator of
    // (1/6)Pi - Phi + Psi has eigenvalue 1/3 on the opposite Kaehler form.
    Eigen::Matrix<double, 6, 6> m;
    for (int A = 0; A < 6; ++A)
        for (int B = 0; B < 6; ++B) {
            double s = 0.0;
            const Mat4& fa = up[static_cast<std::size_t>(A)];
            const Mat4& fb = up[static_cast<std::size_t>(B)];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) s += t(i, j, k, l) * fb(i, j) * fa(k, l);
            m(A, B) = -s / 8.0;
        }
    return m;
}

Tensor4 tensor_from_operator(const Eigen::Matrix<double, 6, 6>& m, const Lambda2Basis& basis) {
    Tensor4 t;
    for (int A = 0; A < 6; ++A)
        for (int B = 0; B < 6; ++B) {
            double coef = -0.5 * m(B, A);
            if (coef == 0.0) continue;
            const Mat4& fa = basis.forms[static_cast<std::size_t>(A)].mat();
            const Mat4& fb = basis.forms[static_cast<std::size_t>(B)].mat();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) t(i, j, k, l) += coef * fa(i, j) * fb(k, l);
        }
    return t;
}

Eigen::Matrix<double, 6, 1> form_coordinates(const TwoForm& phi, const Sym2& g, const Lambda2Basis& basis) {
    Eigen::Matrix<double, 6, 1> c;
    for (int a = 0; a < 6; ++a) c(a) = 0.5 * form_inner(phi, basis.forms[static_cast<std::size_t>(a)], g);
    return c;
}

TwoForm form_from_coordinates(const Eigen::Matrix<double, 6, 1>& c, const Lambda2Basis& basis) {
    Mat4 m = Mat4::Zero();
    for (int a = 0; a < 6; ++a) m += c(a) * basis.forms[static_cast<std::size_t>(a)].mat();
    return TwoForm(m, 1e-6);
}

} // namespace qch
