// SPDX-License-Identifier: Apache-2.0

#include "qch/curvature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qch {

ConnectionCoefficients christoffel_from_jet(const MetricJet& mj) {
    ConnectionCoefficients cc;
    cc.g = mj.g;
    cc.dg = mj.dg;

    Eigen::LLT<Mat4> llt(mj.g);
    if (llt.info() != Eigen::Success) throw SingularMetricError("christoffel: metric not positive-definite");
    cc.ginv = mj.g.inverse();

    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l)
                    s += cc.ginv(k, l) * (mj.dg[static_cast<std::size_t>(i)](j, l) + mj.dg[static_cast<std::size_t>(j)](i, l) -
                                          mj.dg[static_cast<std::size_t>(l)](i, j));
                cc.gamma[k][i][j] = 0.5 * s;
            }

    // d_m ginv = -ginv dg[m] ginv
    std::array<Mat4, 4> dginv;
    for (int m = 0; m < 4; ++m) dginv[static_cast<std::size_t>(m)] = -cc.ginv * mj.dg[static_cast<std::size_t>(m)] * cc.ginv;

    for (int m = 0; m < 4; ++m)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < 4; ++l) {
                        s += dginv[static_cast<std::size_t>(m)](k, l) *
                             (mj.dg[static_cast<std::size_t>(i)](j, l) + mj.dg[static_cast<std::size_t>(j)](i, l) -
                              mj.dg[static_cast<std::size_t>(l)](i, j));
                        s += cc.ginv(k, l) * (mj.ddg[m][i](j, l) + mj.ddg[m][j](i, l) - mj.ddg[m][l](i, j));
                    }
                    cc.dgamma[m][k][i][j] = 0.5 * s;
                }
    return cc;
}

ConnectionCoefficients christoffel(const MetricField& g, const Point& p) {
    return christoffel_from_jet(evaluate_metric(g, p));
}

Tensor4 riemann_from_jet(const MetricJet& mj) {
    ConnectionCoefficients cc = christoffel_from_jet(mj);

    // R(d_i, d_j) d_k = (d_i G^m_jk - d_j G^m_ik + G^m_ia G^a_jk - G^m_ja G^a_ik) d_m
    double rup[4][4][4][4]; // rup[i][j][k][m]
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int m = 0; m < 4; ++m) {
                    double s = cc.dgamma[i][m][j][k] - cc.dgamma[j][m][i][k];
                    for (int a = 0; a < 4; ++a)
                        s += cc.gamma[m][i][a] * cc.gamma[a][j][k] - cc.gamma[m][j][a] * cc.gamma[a][i][k];
                    rup[i][j][k][m] = s;
                }

    Tensor4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m) s += cc.g(l, m) * rup[i][j][k][m];
                    r(i, j, k, l) = s;
                }
    return r;
}

Tensor4 riemann(const MetricField& g, const Point& p) { return riemann_from_jet(evaluate_metric(g, p)); }

Tensor4 riemann_fd(const MetricField& g, const Point& p, double step) {
    MetricJet mj;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Jet2d c = finite_difference_jet(g.component(i, j), p, step);
            mj.g(i, j) = mj.g(j, i) = c.v;
            for (int k = 0; k < 4; ++k)
                mj.dg[static_cast<std::size_t>(k)](i, j) = mj.dg[static_cast<std::size_t>(k)](j, i) = c.d[static_cast<std::size_t>(k)];
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) mj.ddg[k][l](i, j) = mj.ddg[k][l](j, i) = c.hess(k, l);
        }
    return riemann_from_jet(mj);
}

Orientation orientation_of(const Mat4& J, const Sym2& g) {
    Mat4 omega = J.transpose() * g.mat();
    TwoForm w(omega, 1e-6);
    Tensor4 ww = wedge2(w, w);
    double vol = std::sqrt(g.mat().determinant());
    double ratio = ww(0, 1, 2, 3) / (2.0 * vol);
    if (std::abs(ratio) < 0.5) throw NotComplexStructureError("orientation_of: omega^omega is degenerate");
    return ratio > 0 ? Orientation::positive : Orientation::negative;
}

CurvatureData curvature_data(const MetricField& g, const ComplexStructureField* J, const Point& p) {
    MetricJet mj = evaluate_metric(g, p);
    CurvatureData cd;
    cd.g = Sym2(mj.g, 1e-9);
    cd.riemann = riemann_from_jet(mj);
    cd.ricci = ricci_contraction(cd.riemann, cd.g);
    Mat4 ginv = mj.g.inverse();
    cd.tau = (ginv * cd.ricci.mat()).trace();
    cd.ricci0 = Sym2(cd.ricci.mat() - 0.25 * cd.tau * mj.g);

    // Weyl through the Schouten subtraction; certified by c(W) = 0.
    Sym2 schouten(0.5 * (cd.ricci.mat() - (cd.tau / 6.0) * mj.g));
    cd.weyl = cd.riemann + kulkarni_nomizu(schouten, cd.g);

    cd.orientation = Orientation::positive;
    if (J) {
        StructureJet sj = evaluate_structure(*J, p);
        cd.J = sj.J;
        Mat4 ortho = sj.J.transpose() * mj.g * sj.J - mj.g;
        if (ortho.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, mj.g.cwiseAbs().maxCoeff()))
            throw ShapeError("curvature_data: J is not g-orthogonal at p");
        if ((sj.J * sj.J + Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-8)
            throw NotComplexStructureError("curvature_data: J does not square to -Id at p");
        cd.omega = TwoForm(sj.J.transpose() * mj.g, 1e-6);
        cd.rho = TwoForm(sj.J.transpose() * cd.ricci.mat(), 1e-6);
        cd.rho0 = cd.rho - (cd.tau / 4.0) * cd.omega;
        cd.has_rho = true;
        cd.orientation = orientation_of(sj.J, cd.g);
    }

    Lambda2Basis basis = lambda2_split(cd.g, cd.orientation);
    Eigen::Matrix<double, 6, 6> w = curvature_operator(cd.weyl, cd.g, basis);
    Eigen::Matrix<double, 6, 6> wp = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 6> wm = Eigen::Matrix<double, 6, 6>::Zero();
    wp.topLeftCorner<3, 3>() = w.topLeftCorner<3, 3>();
    wm.bottomRightCorner<3, 3>() = w.bottomRightCorner<3, 3>();
    cd.wplus = tensor_from_operator(wp, basis);
    cd.wminus = tensor_from_operator(wm, basis);
    return cd;
}

WminusSpectrum wminus_spectrum(const CurvatureData& cd, const Sym2& g, const Lambda2Basis& basis) {
    Eigen::Matrix<double, 6, 6> w = curvature_operator(cd.weyl, g, basis);
    Eigen::Matrix3d block = w.bottomRightCorner<3, 3>();
    block = 0.5 * (block + block.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(block);

    WminusSpectrum out;
    // sort descending
    std::array<int, 3> order = {2, 1, 0};
    for (int a = 0; a < 3; ++a) {
        int idx = order[static_cast<std::size_t>(a)];
        out.values(a) = es.eigenvalues()(idx);
        Eigen::Matrix<double, 6, 1> coords = Eigen::Matrix<double, 6, 1>::Zero();
        coords.tail<3>() = es.eigenvectors().col(idx);
        out.forms[static_cast<std::size_t>(a)] = form_from_coordinates(coords, basis);
    }

    double scale = std::max(1e-8, 1e-6 * block.norm());
    auto close = [scale](double a, double b) { return std::abs(a - b) <= scale; };
    bool eq01 = close(out.values(0), out.values(1));
    bool eq12 = close(out.values(1), out.values(2));
    int distinct = 3 - (eq01 ? 1 : 0) - (eq12 ? 1 : 0);
    out.degenerate = distinct <= 2;
    if (distinct == 2) out.simple_index = eq01 ? 2 : 0;
    if (distinct == 3) out.simple_index = -1;
    if (distinct == 1) out.simple_index = -1;
    return out;
}

WeylBlocks wplus_blocks(const CurvatureData& cd, const Mat4& J) {
    Orientation orient = orientation_of(J, cd.g);
    Lambda2Basis basis = lambda2_split(cd.g, orient);
    Eigen::Matrix<double, 6, 6> w = curvature_operator(cd.weyl, cd.g, basis);
    Eigen::Matrix3d block = w.topLeftCorner<3, 3>();
    block = 0.5 * (block + block.transpose()).eval();

    TwoForm omega(J.transpose() * cd.g.mat(), 1e-6);
    Eigen::Matrix<double, 6, 1> c = form_coordinates(omega, cd.g, basis);
    if (c.tail<3>().norm() > 1e-6 * std::max(1.0, c.norm()))
        throw ShapeError("wplus_blocks: Kaehler form not self-dual in the chosen orientation");
    Eigen::Vector3d u = c.head<3>();
    u.normalize();

    WeylBlocks out;
    out.kappa_over_6 = u.dot(block * u);
    Eigen::Vector3d off = block * u - out.kappa_over_6 * u;
    out.w2_norm = off.norm();

    Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - u * u.transpose();
    Eigen::Matrix3d b = proj * block * proj;
    double tr = b.trace();
    Eigen::Matrix3d w3 = b - 0.5 * tr * proj;
    out.w3_norm = w3.norm();
    return out;
}

WeylBlocks wplus_blocks(const CurvatureData& cd, const ComplexStructureField& J, const Point& p) {
    StructureJet sj = evaluate_structure(J, p);
    return wplus_blocks(cd, sj.J);
}

} // namespace qch
