// SPDX-License-Identifier: Apache-2.0

#include "qch/kahler.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qch {

namespace {

/// g-orthonormalize two spanning vectors; throws when nearly dependent.
std::pair<Vec4, Vec4> orthonormal_span(const Mat4& g, const Vec4& v1, const Vec4& v2) {
    auto gdot = [&g](const Vec4& a, const Vec4& b) { return a.dot(g * b); };
    double n1 = gdot(v1, v1);
    if (!(n1 > 0)) throw DegenerateDistributionError("distribution spanning vector has non-positive norm");
    Vec4 u1 = v1 / std::sqrt(n1);
    Vec4 w = v2 - gdot(v2, u1) * u1;
    double n2 = gdot(w, w);
    double scale = gdot(v2, v2);
    if (!(n2 > scale * 1e-16)) throw DegenerateDistributionError("distribution spanning vectors are dependent");
    Vec4 u2 = w / std::sqrt(n2);
    return {u1, u2};
}

} // namespace

HermitianData hermitian_data_at(const Mat4& g, const Mat4& J, const Vec4& v1, const Vec4& v2) {
    if ((J * J + Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-8)
        throw NotComplexStructureError("structure does not square to -Id at this point");
    auto [u1, u2] = orthonormal_span(g, v1, v2);

    HermitianData hd;
    hd.p_D = u1 * (g * u1).transpose() + u2 * (g * u2).transpose();
    hd.p_E = Mat4::Identity() - hd.p_D;

    double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
    if ((hd.p_E * J * hd.p_D).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw ShapeError("distribution is not J-invariant at this point");

    hd.omega = TwoForm(J.transpose() * g, 1e-6);
    hd.h = Sym2(hd.p_D.transpose() * g * hd.p_D, 1e-6);
    hd.m = Sym2(hd.p_E.transpose() * g * hd.p_E, 1e-6);
    hd.h_J = TwoForm(J.transpose() * hd.h.mat(), 1e-6);
    hd.m_J = TwoForm(J.transpose() * hd.m.mat(), 1e-6);
    hd.Jbar = J * (hd.p_D - hd.p_E);
    hd.omega_bar = TwoForm(hd.Jbar.transpose() * g, 1e-6);
    return hd;
}

HermitianData hermitian_data(const MetricField& g, const ComplexStructureField& J, const DistributionField& D,
                             const Point& p) {
    if (!g.domain().contains(p)) throw DomainError("evaluation point outside chart domain");
    JetVec seeds = seed_jets(p);
    JetMat gm = g.raw(seeds);
    JetMat jm = J.raw(seeds);
    std::array<JetVec, 2> span = D.raw(seeds);

    Mat4 gv, jv;
    Vec4 v1, v2;
    for (int i = 0; i < 4; ++i) {
        v1(i) = span[0][static_cast<std::size_t>(i)].v;
        v2(i) = span[1][static_cast<std::size_t>(i)].v;
        for (int j = 0; j < 4; ++j) {
            gv(i, j) = gm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].v;
            jv(i, j) = jm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].v;
        }
    }
    return hermitian_data_at(gv, jv, v1, v2);
}

HermitianData hermitian_from_projector(const Mat4& g, const Mat4& J, const Mat4& p_D) {
    auto gnorm = [&g](const Vec4& v) { return v.dot(g * v); };
    int first = 0;
    double best = -1.0;
    for (int k = 0; k < 4; ++k) {
        double n = gnorm(p_D.col(k));
        if (n > best) {
            best = n;
            first = k;
        }
    }
    if (!(best > 1e-10)) throw DegenerateDistributionError("projector has numerically empty range");
    Vec4 v1 = p_D.col(first) / std::sqrt(best);

    int second = 0;
    best = -1.0;
    for (int k = 0; k < 4; ++k) {
        Vec4 w = p_D.col(k) - v1.dot(g * p_D.col(k)) * v1;
        double n = gnorm(w);
        if (n > best) {
            best = n;
            second = k;
        }
    }
    Vec4 v2 = p_D.col(second);
    return hermitian_data_at(g, J, v1, v2);
}

Mat4 kernel_projector(const Mat4& J, const Mat4& Jbar) { return 0.5 * (Mat4::Identity() - J * Jbar); }

double kahler_residual(const MetricField& g, const ComplexStructureField& J, const Point& p) {
    ConnectionCoefficients cc = christoffel(g, p);
    StructureJet sj = evaluate_structure(J, p);

    double res = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = sj.dJ[static_cast<std::size_t>(k)](i, j);
                for (int a = 0; a < 4; ++a) s += cc.gamma[i][k][a] * sj.J(a, j) - cc.gamma[a][k][j] * sj.J(i, a);
                res = std::max(res, std::abs(s));
            }
    return res;
}

double gray_g2_residual(const Tensor4& R, const Mat4& Jb) {
    // R with one slot pushed through Jb
    auto contract = [&R, &Jb](int slot) {
        Tensor4 out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (int a = 0; a < 4; ++a) {
                            switch (slot) {
                                case 0: s += Jb(a, i) * R(a, j, k, l); break;
                                case 1: s += Jb(a, j) * R(i, a, k, l); break;
                                case 2: s += Jb(a, k) * R(i, j, a, l); break;
                                default: s += Jb(a, l) * R(i, j, k, a); break;
                            }
                        }
                        out(i, j, k, l) = s;
                    }
        return out;
    };

    Tensor4 r1 = contract(0);          // R(JX, Y, Z, W)
    Tensor4 r11;                       // R(JX, JY, Z, W)
    {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (int a = 0; a < 4; ++a) s += Jb(a, j) * r1(i, a, k, l);
                        r11(i, j, k, l) = s;
                    }
    }
    Tensor4 r13, r14;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s3 = 0.0, s4 = 0.0;
                    for (int a = 0; a < 4; ++a) {
                        s3 += Jb(a, k) * r1(i, j, a, l);
                        s4 += Jb(a, l) * r1(i, j, k, a);
                    }
                    r13(i, j, k, l) = s3;
                    r14(i, j, k, l) = s4;
                }

    Tensor4 lhs = R - r11;
    Tensor4 rhs = r13 + r14;
    return (lhs - rhs).max_abs();
}

double ricci_j_invariance_residual(const Sym2& ric, const Mat4& Jb) {
    return (Jb.transpose() * ric.mat() * Jb - ric.mat()).cwiseAbs().maxCoeff();
}

Mat4 standard_chart_J() {
    Mat4 J;
    J << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    return J;
}

std::pair<Sym2, Mat4> metric_from_potential(const ScalarField& K, const Point& p) {
    Jet2d k = evaluate(K, p);
    std::array<std::array<double, 4>, 4> gc{};
    detail::potential_metric_from_hessian<double>(k, gc);
    Mat4 gm;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gm(i, j) = gc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    Eigen::LLT<Mat4> llt(gm);
    if (llt.info() != Eigen::Success)
        throw NotPositiveError("metric_from_potential: complex Hessian is not positive-definite");
    return {Sym2(gm, 1e-9), standard_chart_J()};
}

ComplexStructureField opposite_structure_field(const MetricField& g, const ComplexStructureField& J,
                                               const DistributionField& D) {
    auto gfn = g;
    auto jfn = J;
    auto dfn = D;
    return ComplexStructureField(
        [gfn, jfn, dfn](const JetVec& seeds) -> JetMat {
            JetMat gm = gfn.raw(seeds);
            JetMat jm = jfn.raw(seeds);
            std::array<JetVec, 2> span = dfn.raw(seeds);

            auto gdot = [&gm](const JetVec& a, const JetVec& b) {
                Jet2d s;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        s += a[static_cast<std::size_t>(i)] * gm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                             b[static_cast<std::size_t>(j)];
                return s;
            };
            auto scale = [](const JetVec& v, const Jet2d& s) {
                JetVec r;
                for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] * s;
                return r;
            };
            auto axpy = [](JetVec v, const Jet2d& s, const JetVec& w) {
                for (int i = 0; i < 4; ++i)
                    v[static_cast<std::size_t>(i)] += s * w[static_cast<std::size_t>(i)];
                return v;
            };

            JetVec u1 = scale(span[0], reciprocal(sqrt(gdot(span[0], span[0]))));
            JetVec w = axpy(span[1], -gdot(span[1], u1), u1);
            JetVec u2 = scale(w, reciprocal(sqrt(gdot(w, w))));

            // (p_D)^i_j = u1^i (g u1)_j + u2^i (g u2)_j
            JetVec gu1, gu2;
            for (int j = 0; j < 4; ++j) {
                Jet2d s1, s2;
                for (int i = 0; i < 4; ++i) {
                    s1 += gm[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * u1[static_cast<std::size_t>(i)];
                    s2 += gm[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * u2[static_cast<std::size_t>(i)];
                }
                gu1[static_cast<std::size_t>(j)] = s1;
                gu2[static_cast<std::size_t>(j)] = s2;
            }

            JetMat out;
            // Jbar = J (p_D - p_E) = J (2 p_D - Id)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Jet2d pd = u1[static_cast<std::size_t>(i)] * gu1[static_cast<std::size_t>(j)] +
                               u2[static_cast<std::size_t>(i)] * gu2[static_cast<std::size_t>(j)];
                    out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 2.0 * pd;
                }
            for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += Jet2d(-1.0);

            JetMat jbar;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Jet2d s;
                    for (int a = 0; a < 4; ++a)
                        s += jm[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
                             out[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
                    jbar[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
                }
            return jbar;
        },
        g.domain_ptr());
}

namespace {

struct EigenformPick {
    Eigen::Vector3d coords;
    double value;
};

/// Simple eigenvalue of the 3x3 Weyl block in the given orientation.
EigenformPick simple_weyl_eigenform(const CurvatureData& cd, const Lambda2Basis& basis) {
    Eigen::Matrix<double, 6, 6> w = curvature_operator(cd.weyl, cd.g, basis);
    Eigen::Matrix3d block = w.topLeftCorner<3, 3>();
    block = 0.5 * (block + block.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(block);
    Eigen::Vector3d ev = es.eigenvalues();

    double scale = std::max(1e-8, 1e-6 * block.norm());
    // candidates: ascending order from Eigen
    bool lo_pair = std::abs(ev(0) - ev(1)) <= scale;
    bool hi_pair = std::abs(ev(1) - ev(2)) <= scale;
    int simple = -1;
    if (lo_pair && !hi_pair) simple = 2;
    if (hi_pair && !lo_pair) simple = 0;
    if (simple < 0) throw NoSimpleEigenvalueError("Weyl block has no unique simple eigenvalue at this point");
    return {es.eigenvectors().col(simple), ev(simple)};
}

Mat4 structure_from_form(const TwoForm& omega, const Sym2& g) {
    Mat4 J = -g.mat().inverse() * omega.mat();
    Mat4 sq = J * J + Mat4::Identity();
    if (sq.cwiseAbs().maxCoeff() > 1e-6)
        throw NotComplexStructureError("recovered form does not induce an almost complex structure");
    return J;
}

/// Deterministic sign: make the largest-magnitude entry of the first
/// nonzero row positive.
double canonical_sign(const Eigen::Vector3d& v) {
    int idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    return v(idx) >= 0 ? 1.0 : -1.0;
}

Mat4 recover_at(const MetricField& g, const Point& p, Orientation orientation, const Mat4* align_with) {
    CurvatureData cd = curvature_data(g, nullptr, p);
    Lambda2Basis basis = lambda2_split(cd.g, orientation);
    EigenformPick pick = simple_weyl_eigenform(cd, basis);

    Eigen::Vector3d coords = pick.coords * canonical_sign(pick.coords);
    Eigen::Matrix<double, 6, 1> full = Eigen::Matrix<double, 6, 1>::Zero();
    full.head<3>() = coords;
    TwoForm omega = form_from_coordinates(full, basis);
    Mat4 J = structure_from_form(omega, cd.g);
    if (align_with && (J - *align_with).norm() > (J + *align_with).norm()) J = -J;
    return J;
}

} // namespace

RecoveredStructure recover_kahler_structure(const MetricField& g, const Point& p, Orientation orientation,
                                            double fd_step) {
    CurvatureData cd = curvature_data(g, nullptr, p);
    Lambda2Basis basis = lambda2_split(cd.g, orientation);
    EigenformPick pick = simple_weyl_eigenform(cd, basis);

    RecoveredStructure out;
    out.simple_eigenvalue = pick.value;
    out.J = recover_at(g, p, orientation, nullptr);

    // |grad J| by central differences of the recovery map, with the
    // connection terms of the base metric.
    ConnectionCoefficients cc = christoffel(g, p);
    double res = 0.0;
    for (int k = 0; k < 4; ++k) {
        Point pp = p, pm = p;
        pp[k] += fd_step;
        pm[k] -= fd_step;
        Mat4 Jp = recover_at(g, pp, orientation, &out.J);
        Mat4 Jm = recover_at(g, pm, orientation, &out.J);
        Mat4 dJ = (Jp - Jm) / (2.0 * fd_step);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = dJ(i, j);
                for (int a = 0; a < 4; ++a) s += cc.gamma[i][k][a] * out.J(a, j) - cc.gamma[a][k][j] * out.J(i, a);
                res = std::max(res, std::abs(s));
            }
    }
    out.parallelism_residual = res;
    return out;
}

} // namespace qch
