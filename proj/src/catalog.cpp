// SPDX-License-Identifier: Apache-2.0

#include "qch/catalog.hpp"

#include "qch/curvature.hpp"

#include <cmath>

namespace qch {

std::vector<double> polyder(const std::vector<double>& coeffs) {
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<double>(i) * coeffs[i]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

namespace {

struct SpaceFormPotential {
    double scale = 1.0;
    int curvature_sign = 1;

    template <class J>
    J operator()(const std::array<J, 4>& z) const {
        J r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
        if (curvature_sign > 0) return log(r2 + 1.0) * scale;
        if (curvature_sign < 0) return log(1.0 - r2) * (-scale);
        return r2;
    }
};

FamilyInstance make_spaceform(const SpaceFormSpec& fs) {
    FamilyInstance inst;
    inst.name = "spaceform";
    inst.spec = fs;

    double c0 = fs.c0;
    SpaceFormPotential pot;
    std::array<double, 4> lo{}, hi{};
    std::function<bool(const Point&)> pred;
    if (c0 > 0) {
        pot = {4.0 / c0, 1};
        lo.fill(-0.7);
        hi.fill(0.7);
    } else if (c0 < 0) {
        pot = {-4.0 / c0, -1};
        lo.fill(-0.35);
        hi.fill(0.35);
        pred = [](const Point& p) {
            return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3] < 0.6;
        };
    } else {
        pot = {1.0, 0};
        lo.fill(-1.0);
        hi.fill(1.0);
    }
    ChartDomain dom(lo, hi, pred);
    inst.box = dom;
    inst.metric = metric_field_from_potential(pot, dom);
    inst.structure = ComplexStructureField::constant(standard_chart_J(), dom);
    inst.distribution = DistributionField::constant(Vec4::Unit(0), Vec4::Unit(1), dom);
    inst.expected.abc = {{c0, 0.0, 0.0}};
    inst.expected.lambda_mu = {{1.5 * c0, 1.5 * c0}};
    inst.expected.einstein = true;
    inst.expected.anti_self_dual = true;
    return inst;
}

FamilyInstance make_product(const ProductSurfacesSpec& fs) {
    FamilyInstance inst;
    inst.name = "product";
    inst.spec = fs;

    double k1 = fs.k1, k2 = fs.k2;
    std::array<double, 4> lo{}, hi{};
    lo.fill(-0.6);
    hi.fill(0.6);
    auto pred = [k1, k2](const Point& p) {
        double r1 = p[0] * p[0] + p[1] * p[1];
        double r2 = p[2] * p[2] + p[3] * p[3];
        return 1.0 + 0.25 * k1 * r1 > 0.25 && 1.0 + 0.25 * k2 * r2 > 0.25;
    };
    ChartDomain dom(lo, hi, pred);
    inst.box = dom;

    // isothermal constant-curvature patches on each factor
    inst.metric = MetricField(
        [k1, k2](const JetVec& s) {
            JetMat g{};
            Jet2d r1 = s[0] * s[0] + s[1] * s[1];
            Jet2d r2 = s[2] * s[2] + s[3] * s[3];
            Jet2d d1 = 1.0 + 0.25 * k1 * r1;
            Jet2d d2 = 1.0 + 0.25 * k2 * r2;
            Jet2d l1 = reciprocal(d1 * d1);
            Jet2d l2 = reciprocal(d2 * d2);
            g[0][0] = l1;
            g[1][1] = l1;
            g[2][2] = l2;
            g[3][3] = l2;
            return g;
        },
        dom);
    inst.structure = ComplexStructureField::constant(standard_chart_J(), dom);
    inst.distribution = DistributionField::constant(Vec4::Unit(0), Vec4::Unit(1), dom);
    inst.expected.abc = {{k2, -2.0 * k2, k1 + k2}};
    inst.expected.lambda_mu = {{k2, k1}};
    inst.expected.einstein = std::abs(k1 - k2) < 1e-14;
    inst.expected.anti_self_dual = std::abs(k1 + k2) < 1e-14;
    inst.expected.product = true;
    return inst;
}

// Base-surface data for the fibered family: conformal factor of the
// constant-curvature patch and a primitive alpha with d(alpha) = omega_Sigma.
struct SigmaPatch {
    double gauss = 0.0;

    template <class T>
    T lambda(const T& x, const T& y) const {
        T d = 1.0 + 0.25 * gauss * (x * x + y * y);
        return reciprocal(d * d);
    }
    template <class T>
    void alpha(const T& x, const T& y, T& ax, T& ay) const {
        if (gauss == 0.0) {
            ax = T(0.0);
            ay = x;
        } else {
            T f = reciprocal(2.0 * (1.0 + 0.25 * gauss * (x * x + y * y)));
            ax = -1.0 * y * f;
            ay = x * f;
        }
    }
    double lambda(double x, double y) const {
        double d = 1.0 + 0.25 * gauss * (x * x + y * y);
        return 1.0 / (d * d);
    }
    void alpha(double x, double y, double& ax, double& ay) const {
        if (gauss == 0.0) {
            ax = 0.0;
            ay = x;
        } else {
            double f = 1.0 / (2.0 * (1.0 + 0.25 * gauss * (x * x + y * y)));
            ax = -y * f;
            ay = x * f;
        }
    }
};

FamilyInstance make_calabi(const CalabiTypeSpec& fs) {
    FamilyInstance inst;
    inst.name = "calabi";
    inst.spec = fs;

    std::vector<double> V = fs.V;
    SigmaPatch sigma{fs.sigma_curvature / 2.0}; // scalar curvature is twice the Gauss curvature

    std::array<double, 4> lo = {-0.8, -0.8, 0.5, -1.0};
    std::array<double, 4> hi = {0.8, 0.8, 2.0, 1.0};
    auto pred = [V, sigma](const Point& p) {
        if (!(p[2] > 1e-3)) return false;
        if (!(polyval(V, p[2]) > 1e-3)) return false;
        return 1.0 + 0.25 * sigma.gauss * (p[0] * p[0] + p[1] * p[1]) > 0.25;
    };
    ChartDomain dom(lo, hi, pred);
    inst.box = dom;

    inst.metric = MetricField(
        [V, sigma](const JetVec& s) {
            const Jet2d &x = s[0], &y = s[1], &z = s[2];
            Jet2d v = polyval(V, z);
            Jet2d lam = sigma.lambda(x, y);
            Jet2d ax, ay;
            sigma.alpha(x, y, ax, ay);
            Jet2d voz = v / z;
            JetMat g{};
            g[0][0] = z * lam + voz * ax * ax;
            g[0][1] = g[1][0] = voz * ax * ay;
            g[1][1] = z * lam + voz * ay * ay;
            g[0][3] = g[3][0] = voz * ax;
            g[1][3] = g[3][1] = voz * ay;
            g[2][2] = z / v;
            g[3][3] = voz;
            return g;
        },
        dom);

    inst.structure = ComplexStructureField(
        [V, sigma](const JetVec& s) {
            const Jet2d &x = s[0], &y = s[1], &z = s[2];
            Jet2d v = polyval(V, z);
            Jet2d ax, ay;
            sigma.alpha(x, y, ax, ay);
            Jet2d voz = v / z;
            JetMat J{};
            // columns are images of the coordinate fields
            J[1][0] = Jet2d(1.0);
            J[2][0] = -1.0 * voz * ax;
            J[3][0] = -1.0 * ay;
            J[0][1] = Jet2d(-1.0);
            J[2][1] = -1.0 * voz * ay;
            J[3][1] = ax;
            J[3][2] = z / v;
            J[2][3] = -1.0 * voz;
            return J;
        },
        dom);

    inst.distribution = DistributionField::constant(Vec4::Unit(3), Vec4::Unit(2), dom); // span(d_t, d_z)
    return inst;
}

FamilyInstance make_orthotoric(const OrthotoricSpec& fs) {
    FamilyInstance inst;
    inst.name = "orthotoric";
    inst.spec = fs;

    std::vector<double> F = fs.F, G = fs.G;

    std::array<double, 4> lo = {1.1, -2.0, -1.0, -1.0};
    std::array<double, 4> hi = {2.0, -1.1, 1.0, 1.0};
    auto pred = [F, G](const Point& p) {
        return polyval(F, p[0]) > 1e-3 && polyval(G, p[1]) < -1e-3 && p[0] - p[1] > 1e-2;
    };
    ChartDomain dom(lo, hi, pred);
    inst.box = dom;

    inst.metric = MetricField(
        [F, G](const JetVec& s) {
            const Jet2d &xi = s[0], &eta = s[1];
            Jet2d f = polyval(F, xi);
            Jet2d g_ = polyval(G, eta);
            Jet2d diff = xi - eta;
            JetMat g{};
            g[0][0] = diff / f;
            g[1][1] = -1.0 * (diff / g_);
            g[3][3] = (f - g_) / diff;
            g[2][3] = g[3][2] = (f * eta - g_ * xi) / diff;
            g[2][2] = (f * eta * eta - g_ * xi * xi) / diff;
            return g;
        },
        dom);

    inst.structure = ComplexStructureField(
        [F, G](const JetVec& s) {
            const Jet2d &xi = s[0], &eta = s[1];
            Jet2d f = polyval(F, xi);
            Jet2d g_ = polyval(G, eta);
            Jet2d inv_diff = reciprocal(xi - eta);
            JetMat J{};
            J[2][0] = -1.0 / f;
            J[3][0] = xi / f;
            J[2][1] = -1.0 / g_;
            J[3][1] = eta / g_;
            J[0][2] = -1.0 * f * eta * inv_diff;
            J[1][2] = g_ * xi * inv_diff;
            J[0][3] = -1.0 * f * inv_diff;
            J[1][3] = g_ * inv_diff;
            return J;
        },
        dom);

    // span(d_xi, xi d_t - d_z)
    inst.distribution = DistributionField(
        [](const JetVec& s) {
            std::array<JetVec, 2> out{};
            out[0][0] = Jet2d(1.0);
            out[1][2] = Jet2d(-1.0);
            out[1][3] = s[0];
            return out;
        },
        dom);
    return inst;
}

FamilyInstance make_kowalski() {
    FamilyInstance inst;
    inst.name = "kowalski";
    inst.spec = KowalskiSpec{};

    std::array<double, 4> lo{}, hi{};
    lo.fill(-1.5);
    hi.fill(1.5);
    ChartDomain dom(lo, hi);
    inst.box = dom;
    inst.needs_recovery = true;

    inst.metric = MetricField(
        [](const JetVec& s) {
            const Jet2d &x = s[0], &y = s[1];
            Jet2d w = sqrt(x * x + y * y + 1.0);
            Jet2d W = x * x + y * y + 1.0;
            JetMat g{};
            g[2][2] = w - x;
            g[3][3] = w + x;
            g[2][3] = g[3][2] = -1.0 * y;
            g[0][0] = (1.0 + y * y) / W;
            g[1][1] = (1.0 + x * x) / W;
            g[0][1] = g[1][0] = -1.0 * (x * y) / W;
            return g;
        },
        dom);
    return inst;
}

/// Probe grids: positive signature (5^4) and, where closed-form, the Kaehler
/// residual (3^4).
void validate_instance(const FamilyInstance& inst) {
    auto grid_points = [&inst](int n) {
        std::vector<Point> pts;
        const auto& lo = inst.box.lo();
        const auto& hi = inst.box.hi();
        std::array<double, 4> span{};
        for (int i = 0; i < 4; ++i) span[static_cast<std::size_t>(i)] = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        auto frac = [n](int k) { return (k + 0.5) / n * 0.8 + 0.1; };
                        Point p(lo[0] + span[0] * frac(a), lo[1] + span[1] * frac(b), lo[2] + span[2] * frac(c),
                                lo[3] + span[3] * frac(d));
                        if (inst.box.contains(p)) pts.push_back(p);
                    }
        return pts;
    };

    std::vector<Point> probe = grid_points(5);
    if (probe.size() < 313) // at least half of the 5^4 grid must be admissible
        throw BadParameterError("family '" + inst.name + "' excludes most of its chart box");
    for (const Point& p : probe) {
        MetricJet mj = evaluate_metric(inst.metric, p);
        Eigen::LLT<Mat4> llt(mj.g);
        if (llt.info() != Eigen::Success)
            throw SignatureError("family '" + inst.name + "' is not Riemannian on its probe grid");
    }
    if (!inst.needs_recovery) {
        for (const Point& p : grid_points(3)) {
            if (kahler_residual(inst.metric, inst.structure, p) > 1e-8)
                throw BadParameterError("family '" + inst.name + "' failed the Kaehler probe");
        }
    }
}

} // namespace

FamilyInstance instantiate(const FamilySpec& spec) {
    FamilyInstance inst = std::visit(
        [](const auto& fs) -> FamilyInstance {
            using T = std::decay_t<decltype(fs)>;
            if constexpr (std::is_same_v<T, SpaceFormSpec>) return make_spaceform(fs);
            else if constexpr (std::is_same_v<T, ProductSurfacesSpec>) return make_product(fs);
            else if constexpr (std::is_same_v<T, CalabiTypeSpec>) return make_calabi(fs);
            else if constexpr (std::is_same_v<T, OrthotoricSpec>) return make_orthotoric(fs);
            else return make_kowalski();
        },
        spec);
    validate_instance(inst);
    return inst;
}

TwoForm FamilyInstance::opposite_kahler_form(const Point& p) const {
    if (const auto* cal = std::get_if<CalabiTypeSpec>(&spec)) {
        SigmaPatch sigma{cal->sigma_curvature / 2.0};
        double lam = sigma.lambda(p[0], p[1]);
        double ax, ay;
        sigma.alpha(p[0], p[1], ax, ay);
        Mat4 m = Mat4::Zero();
        auto put = [&m](int i, int j, double v) {
            m(i, j) += v;
            m(j, i) -= v;
        };
        // g(I., .) for the structure that flips the base block:
        // -z omega_Sigma + dz ^ (dt + alpha)
        put(0, 1, -p[2] * lam);
        put(2, 3, 1.0);
        put(2, 0, ax);
        put(2, 1, ay);
        return TwoForm(m);
    }
    if (std::holds_alternative<OrthotoricSpec>(spec)) {
        Mat4 m = Mat4::Zero();
        auto put = [&m](int i, int j, double v) {
            m(i, j) += v;
            m(j, i) -= v;
        };
        // d_xi ^ (dt + eta dz) - d_eta ^ (dt + xi dz)
        put(0, 3, 1.0);
        put(0, 2, p[1]);
        put(1, 3, -1.0);
        put(1, 2, -p[0]);
        return TwoForm(m);
    }
    throw BadParameterError("family '" + name + "' has no closed-form opposite Kaehler form");
}

double orthotoric_profile_delta(const OrthotoricSpec& spec, double xi, double eta) {
    std::vector<double> F1 = polyder(spec.F), F2 = polyder(F1);
    std::vector<double> G1 = polyder(spec.G), G2 = polyder(G1);
    double diff = xi - eta;
    return (polyval(F1, xi) - polyval(G1, eta)) / (2.0 * diff * diff) -
           (polyval(F2, xi) + polyval(G2, eta)) / (4.0 * diff);
}

double calabi_profile_delta(const CalabiTypeSpec& spec, double z) {
    std::vector<double> V1 = polyder(spec.V), V2 = polyder(V1);
    // (V_z / z^2)_z z^2 = V'' - 2 V'/z
    return -(spec.sigma_curvature + polyval(V2, z) - 2.0 * polyval(V1, z) / z) / (4.0 * z);
}

double orthotoric_delta_check(const FamilyInstance& inst, const Point& p) {
    const auto* spec = std::get_if<OrthotoricSpec>(&inst.spec);
    if (!spec) throw BadParameterError("orthotoric_delta_check requires an orthotoric instance");

    CurvatureData cd = curvature_data(inst.metric, &inst.structure, p);
    double delta = orthotoric_profile_delta(*spec, p[0], p[1]);
    TwoForm omega_bar = inst.opposite_kahler_form(p);
    return (cd.rho0.mat() - delta * omega_bar.mat()).cwiseAbs().maxCoeff();
}

double calabi_delta_check(const FamilyInstance& inst, const Point& p) {
    const auto* spec = std::get_if<CalabiTypeSpec>(&inst.spec);
    if (!spec) throw BadParameterError("calabi_delta_check requires a Calabi-type instance");

    CurvatureData cd = curvature_data(inst.metric, &inst.structure, p);
    double delta = calabi_profile_delta(*spec, p[2]);
    TwoForm omega_i = inst.opposite_kahler_form(p);
    return (cd.rho0.mat() - delta * omega_i.mat()).cwiseAbs().maxCoeff();
}

Mat4 orthotoric_opposite_structure(const OrthotoricSpec& spec, const Point& p) {
    double xi = p[0], eta = p[1];
    double f = polyval(spec.F, xi);
    double g_ = polyval(spec.G, eta);
    double diff = xi - eta;
    Mat4 J = Mat4::Zero();
    J(2, 0) = -1.0 / f;
    J(3, 0) = xi / f;
    J(2, 1) = 1.0 / g_;
    J(3, 1) = -eta / g_;
    J(0, 2) = -f * eta / diff;
    J(1, 2) = -g_ * xi / diff;
    J(0, 3) = -f / diff;
    J(1, 3) = -g_ / diff;
    return J;
}

double killing_residual(const MetricField& g, const Point& p, int direction) {
    ConnectionCoefficients cc = christoffel(g, p);
    double res = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            // nabla_i xi_j + nabla_j xi_i for xi = d_direction
            double s = cc.dg[static_cast<std::size_t>(i)](j, direction) + cc.dg[static_cast<std::size_t>(j)](i, direction);
            for (int a = 0; a < 4; ++a) s -= 2.0 * cc.gamma[a][i][j] * cc.g(a, direction);
            res = std::max(res, std::abs(s));
        }
    return res;
}

} // namespace qch
