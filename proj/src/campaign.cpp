// SPDX-License-Identifier: Apache-2.0

#include "qch/campaign.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace qch {

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&next, n, &fn] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

std::uint64_t point_seed(std::uint64_t base, std::size_t index) {
    return base ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Everything the identity suite needs at one point.
struct PointStructures {
    CurvatureData cd;
    HermitianData hd;
    QchBasisTensors basis;
    QchCoefficients coeffs;
    double structure_residual = 0.0; ///< Kaehler residual, or recovery residual for Kowalski
};

Mat4 recover_opposite_structure(const CurvatureData& cd) {
    Lambda2Basis basis = lambda2_split(cd.g, cd.orientation);
    WminusSpectrum spec = wminus_spectrum(cd, cd.g, basis);
    if (spec.simple_index < 0)
        throw NoSimpleEigenvalueError("anti-self-dual Weyl block has no simple eigenvalue");
    Mat4 Jb = -cd.g.mat().inverse() * spec.forms[static_cast<std::size_t>(spec.simple_index)].mat();
    if ((Jb * Jb + Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-6)
        throw NotComplexStructureError("recovered eigenform does not square to -Id");
    return Jb;
}

PointStructures acquire_closed_form(const FamilyInstance& inst, const Point& p, std::uint64_t seed) {
    PointStructures ps;
    ps.cd = curvature_data(inst.metric, &inst.structure, p);
    ps.hd = hermitian_data(inst.metric, inst.structure, inst.distribution, p);
    ps.basis = build_basis(ps.cd.g, ps.cd.J, ps.hd.h);
    ps.coeffs = extract_coefficients(ps.cd.riemann, ps.cd.g, ps.cd.J, ps.hd.p_D, seed);
    ps.structure_residual = kahler_residual(inst.metric, inst.structure, p);
    return ps;
}

PointStructures acquire_kowalski(const FamilyInstance& inst, const Point& p, std::uint64_t seed,
                                 Orientation kahler_orientation) {
    RecoveredStructure rec = recover_kahler_structure(inst.metric, p, kahler_orientation);
    ComplexStructureField Jf = ComplexStructureField::constant(rec.J, inst.box);

    PointStructures ps;
    ps.cd = curvature_data(inst.metric, &Jf, p);
    ps.structure_residual = rec.parallelism_residual;

    Mat4 Jbar = recover_opposite_structure(ps.cd);

    // The two kernels of J Jbar -+ Id swap the roles of the distribution and
    // its complement; keep the one whose profile has no quadratic term.
    Mat4 pd1 = kernel_projector(rec.J, Jbar);
    Mat4 pd2 = Mat4::Identity() - pd1;
    HermitianData hd1 = hermitian_from_projector(ps.cd.g.mat(), rec.J, pd1);
    HermitianData hd2 = hermitian_from_projector(ps.cd.g.mat(), rec.J, pd2);
    QchCoefficients c1 = extract_coefficients(ps.cd.riemann, ps.cd.g, rec.J, hd1.p_D, seed);
    QchCoefficients c2 = extract_coefficients(ps.cd.riemann, ps.cd.g, rec.J, hd2.p_D, seed);
    if (std::abs(c1.b) <= std::abs(c2.b)) {
        ps.hd = hd1;
        ps.coeffs = c1;
    } else {
        ps.hd = hd2;
        ps.coeffs = c2;
    }
    ps.basis = build_basis(ps.cd.g, ps.cd.J, ps.hd.h);
    return ps;
}

/// Identity residual map for one point.
std::map<std::string, double> identity_residuals(const FamilyInstance& inst, const Point& p,
                                                 const PointStructures& ps) {
    std::map<std::string, double> r;
    const CurvatureData& cd = ps.cd;
    const HermitianData& hd = ps.hd;
    const QchCoefficients& co = ps.coeffs;

    r[inst.needs_recovery ? "recovery" : "kahler"] = ps.structure_residual;
    r["gray_g2"] = gray_g2_residual(cd.riemann, hd.Jbar);
    r["qch"] = qch_residual(cd.riemann, co, ps.basis);
    r["fit"] = co.fit_residual;

    // complement distribution route
    QchBasisTensors basis_e = build_basis(cd.g, cd.J, hd.m);
    r["qch_complement"] = qch_residual(cd.riemann, complementary_coefficients(co), basis_e);

    RicciEigenResiduals re = ricci_eigen_check(cd, hd, co);
    r["ricci_eigen"] = std::max({re.form_residual, re.eigen_d_residual, re.eigen_e_residual});
    r["ricci_j_invariance"] = ricci_j_invariance_residual(cd.ricci, hd.Jbar);

    WminusStructureResiduals ws = wminus_structure_check(cd, hd, co, ps.basis);
    r["wminus_structure"] = ws.tensor_residual;
    r["wminus_eigenvalues"] = ws.eigenvalue_residual;
    r["omegabar_alignment"] = 1.0 - ws.omegabar_alignment;

    DecompositionCheck dec = full_decomposition_check(cd, hd, co);
    r["decomposition"] = dec.coefficient_residual;
    r["kappa_2c"] = std::abs(dec.kappa - co.kappa());

    WeylBlocks blocks = wplus_blocks(cd, hd.Jbar);
    r["opposite_block"] = std::max(blocks.w2_norm, blocks.w3_norm);

    r["pseudosymmetry"] = pseudosymmetry_residual(cd, ps.basis, co);

    if (inst.expected.abc) {
        const auto& e = *inst.expected.abc;
        r["expected_abc"] = std::max({std::abs(co.a - e[0]), std::abs(co.b - e[1]), std::abs(co.c - e[2])});
    }
    if (inst.expected.einstein) r["einstein"] = cd.ricci0.mat().cwiseAbs().maxCoeff();
    if (inst.expected.anti_self_dual) r["wminus_zero"] = cd.wminus.max_abs();

    if (inst.name == "calabi") {
        r["delta_form"] = calabi_delta_check(inst, p);
        r["killing"] = killing_residual(inst.metric, p, 3);
        ScalarField factor([](const JetVec& s) { return reciprocal(s[2]); }, inst.metric.domain_ptr());
        ComplexStructureField opp = opposite_structure_field(inst.metric, inst.structure, inst.distribution);
        r["conformal_kahler"] = kahler_residual(inst.metric.conformal(factor), opp, p);
    }
    if (inst.name == "orthotoric") {
        r["delta_form"] = orthotoric_delta_check(inst, p);
        r["killing_z"] = killing_residual(inst.metric, p, 2);
        r["killing_t"] = killing_residual(inst.metric, p, 3);
        r["momenta_orthogonal"] = std::abs(cd.g.mat().inverse()(0, 1));
        ScalarField factor([](const JetVec& s) { return reciprocal(s[0] - s[1]); }, inst.metric.domain_ptr());
        ComplexStructureField opp = opposite_structure_field(inst.metric, inst.structure, inst.distribution);
        r["conformal_kahler"] = kahler_residual(inst.metric.conformal(factor), opp, p);
    }
    if (inst.needs_recovery) {
        double kappa = co.kappa();
        r["eq220"] = derivation_identity_residual(cd.riemann, ps.basis.pi, cd.riemann, cd.g, -kappa / 3.0);
        QchCoefficients prop4;
        prop4.a = -kappa / 3.0;
        prop4.b = 0.0;
        prop4.c = kappa / 2.0;
        r["prop4_tensor"] = qch_residual(cd.riemann, prop4, ps.basis);
        r["prop4_b"] = std::abs(co.b);
        double kscale = std::max(1e-12, std::abs(kappa));
        r["prop4_a_kappa"] = std::abs(co.a + kappa / 3.0) / kscale;
        r["prop4_c_kappa"] = std::abs(co.c - kappa / 2.0) / kscale;
        r["prop4_tau_kappa"] = std::abs(cd.tau + kappa) / kscale;
    }
    return r;
}

struct ToleranceEntry {
    const char* identity;
    double tol;
};

constexpr ToleranceEntry kDefaultTols[] = {
    {"kahler", 1e-8},        {"recovery", 1e-5},          {"gray_g2", 1e-8},
    {"qch", 1e-8},           {"qch_complement", 1e-8},    {"fit", 1e-8},
    {"ricci_eigen", 1e-8},   {"ricci_j_invariance", 1e-7}, {"wminus_structure", 1e-7},
    {"wminus_eigenvalues", 1e-7}, {"omegabar_alignment", 1e-8}, {"decomposition", 1e-8},
    {"kappa_2c", 1e-8},      {"opposite_block", 1e-6},    {"pseudosymmetry", 1e-7},    {"expected_abc", 1e-7},
    {"einstein", 1e-9},      {"wminus_zero", 1e-9},       {"delta_form", 1e-7},
    {"killing", 1e-8},       {"killing_z", 1e-8},         {"killing_t", 1e-8},
    {"momenta_orthogonal", 1e-9}, {"conformal_kahler", 1e-7},
    {"eq220", 1e-5},         {"prop4_tensor", 1e-5},      {"prop4_b", 1e-5},
    {"prop4_a_kappa", 1e-4}, {"prop4_c_kappa", 1e-4},     {"prop4_tau_kappa", 1e-4},
    {"prop4_spread", 1e-5},
};

constexpr ToleranceEntry kKowalskiTols[] = {
    {"gray_g2", 1e-5},  {"qch", 1e-5},          {"qch_complement", 1e-5},
    {"fit", 1e-5},      {"ricci_eigen", 1e-5},  {"ricci_j_invariance", 1e-5},
    {"wminus_structure", 1e-5}, {"wminus_eigenvalues", 1e-5}, {"omegabar_alignment", 1e-6},
    {"decomposition", 1e-4},    {"kappa_2c", 1e-4},           {"opposite_block", 1e-5},
    {"pseudosymmetry", 1e-5},
};

} // namespace

double default_tolerance(const std::string& family, const std::string& identity) {
    if (family == "kowalski")
        for (const auto& e : kKowalskiTols)
            if (identity == e.identity) return e.tol;
    for (const auto& e : kDefaultTols)
        if (identity == e.identity) return e.tol;
    return 1e-8;
}

std::vector<Point> sample_points(const FamilyInstance& inst, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& lo = inst.box.lo();
    const auto& hi = inst.box.hi();
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        Point p;
        for (int i = 0; i < 4; ++i) {
            double span = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
            std::uniform_real_distribution<double> dist(lo[static_cast<std::size_t>(i)] + 0.1 * span,
                                                        hi[static_cast<std::size_t>(i)] - 0.1 * span);
            p[i] = dist(rng);
        }
        if (inst.box.contains(p)) pts.push_back(p);
        if (++guard > 1000 * count) throw BadParameterError("point sampling rejected too many draws");
    }
    return pts;
}

ReportDocument run_verify(const CampaignConfig& config) {
    return run_verify_instance(instantiate(config.family), config);
}

ReportDocument run_verify_instance(const FamilyInstance& inst, const CampaignConfig& config) {
    ReportDocument doc;
    doc.family = inst.name;
    doc.points = config.points;
    doc.seed = config.seed;
    doc.config_echo = config_to_json(config).dump();

    std::vector<Point> pts = sample_points(inst, config.points, config.seed);
    doc.records.resize(pts.size());

    // The integrable structure of a recovery family lives in one fixed
    // orientation; detect it once at the first sample.
    Orientation kahler_orient = Orientation::positive;
    if (inst.needs_recovery) {
        double best = std::numeric_limits<double>::infinity();
        for (Orientation o : {Orientation::positive, Orientation::negative}) {
            try {
                RecoveredStructure rec = recover_kahler_structure(inst.metric, pts.front(), o);
                if (rec.parallelism_residual < best) {
                    best = rec.parallelism_residual;
                    kahler_orient = o;
                }
            } catch (const Error&) {
            }
        }
        if (!std::isfinite(best)) throw NoSimpleEigenvalueError("structure recovery failed in both orientations");
    }

    std::vector<Proposition4PointRecord> prop4(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        PointRecord& rec = doc.records[i];
        rec.point = pts[i];
        try {
            PointStructures ps = inst.needs_recovery
                                     ? acquire_kowalski(inst, pts[i], point_seed(config.seed, i), kahler_orient)
                                     : acquire_closed_form(inst, pts[i], point_seed(config.seed, i));
            rec.a = ps.coeffs.a;
            rec.b = ps.coeffs.b;
            rec.c = ps.coeffs.c;
            rec.lambda = ps.coeffs.lambda();
            rec.mu = ps.coeffs.mu();
            rec.delta = ps.coeffs.delta();
            rec.kappa = ps.coeffs.kappa();
            rec.residuals = identity_residuals(inst, pts[i], ps);
            if (inst.needs_recovery) {
                prop4[i].coeffs = ps.coeffs;
                prop4[i].kappa = ps.coeffs.kappa();
                prop4[i].tau = ps.cd.tau;
                prop4[i].tensor_residual = rec.residuals["prop4_tensor"];
            }
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    });

    // order-independent aggregation: per-identity maxima
    std::map<std::string, double> maxima;
    int errors = 0;
    for (const auto& rec : doc.records) {
        if (!rec.error.empty()) {
            ++errors;
            continue;
        }
        for (const auto& [k, v] : rec.residuals) {
            auto it = maxima.find(k);
            if (it == maxima.end() || v > it->second) maxima[k] = v;
        }
    }
    if (inst.needs_recovery && errors == 0) {
        Proposition4Report p4 = proposition4_check(prop4);
        maxima["prop4_spread"] = std::max({p4.spread_a, p4.spread_b, p4.spread_c});
    }

    bool all = errors == 0;
    for (const auto& [k, v] : maxima) {
        if (!config.identities.empty() &&
            std::find(config.identities.begin(), config.identities.end(), k) == config.identities.end())
            continue;
        IdentityResult res;
        res.max_residual = v;
        auto ov = config.tol_override.find(k);
        res.tolerance = ov != config.tol_override.end() ? ov->second : default_tolerance(inst.name, k) * config.tol_scale;
        res.pass = v <= res.tolerance;
        all = all && res.pass;
        doc.aggregate[k] = res;
    }
    if (errors > 0) {
        IdentityResult res;
        res.max_residual = errors;
        res.tolerance = 0.0;
        res.pass = false;
        doc.aggregate["evaluation_error"] = res;
    }
    doc.all_pass = all;
    return doc;
}

std::string sample_phi_csv(const CampaignConfig& config, int directions) {
    FamilyInstance inst = instantiate(config.family);
    std::vector<Point> pts = sample_points(inst, config.points, config.seed);

    Orientation orient = Orientation::positive;
    std::ostringstream os;
    os << "x0,x1,x2,x3,t2,phi,a,b,c\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        PointStructures ps;
        if (inst.needs_recovery) {
            if (i == 0) {
                double best = std::numeric_limits<double>::infinity();
                for (Orientation o : {Orientation::positive, Orientation::negative}) {
                    try {
                        RecoveredStructure rec = recover_kahler_structure(inst.metric, pts.front(), o);
                        if (rec.parallelism_residual < best) {
                            best = rec.parallelism_residual;
                            orient = o;
                        }
                    } catch (const Error&) {
                    }
                }
            }
            ps = acquire_kowalski(inst, pts[i], point_seed(config.seed, i), orient);
        } else {
            ps = acquire_closed_form(inst, pts[i], point_seed(config.seed, i));
        }

        std::mt19937_64 rng(point_seed(config.seed, i) + 17);
        std::normal_distribution<double> n(0.0, 1.0);
        for (int d = 0; d < directions; ++d) {
            Vec4 X;
            double n2 = 0.0;
            do {
                X = Vec4(n(rng), n(rng), n(rng), n(rng));
                n2 = ps.cd.g(X, X);
            } while (!(n2 > 1e-8));
            X /= std::sqrt(n2);
            double t2 = ps.cd.g(ps.hd.p_D * X, ps.hd.p_D * X);
            double phi = holomorphic_sectional_curvature(ps.cd.riemann, ps.cd.g, ps.cd.J, X);
            os << fmt_double(pts[i][0]) << ',' << fmt_double(pts[i][1]) << ',' << fmt_double(pts[i][2]) << ','
               << fmt_double(pts[i][3]) << ',' << fmt_double(t2) << ',' << fmt_double(phi) << ','
               << fmt_double(ps.coeffs.a) << ',' << fmt_double(ps.coeffs.b) << ',' << fmt_double(ps.coeffs.c) << '\n';
        }
    }
    return os.str();
}

std::string fit_abc_csv(const CampaignConfig& config) {
    ReportDocument doc = run_verify(config);

    std::vector<std::string> identities;
    for (const auto& rec : doc.records)
        for (const auto& [k, v] : rec.residuals)
            if (std::find(identities.begin(), identities.end(), k) == identities.end()) identities.push_back(k);
    std::sort(identities.begin(), identities.end());

    std::ostringstream os;
    os << "x0,x1,x2,x3,a,b,c,lambda,mu,delta,kappa";
    for (const auto& k : identities) os << ",residual:" << k;
    os << '\n';
    for (const auto& rec : doc.records) {
        if (!rec.error.empty()) continue;
        os << fmt_double(rec.point[0]) << ',' << fmt_double(rec.point[1]) << ',' << fmt_double(rec.point[2]) << ','
           << fmt_double(rec.point[3]) << ',' << fmt_double(rec.a) << ',' << fmt_double(rec.b) << ','
           << fmt_double(rec.c) << ',' << fmt_double(rec.lambda) << ',' << fmt_double(rec.mu) << ','
           << fmt_double(rec.delta) << ',' << fmt_double(rec.kappa);
        for (const auto& k : identities) {
            auto it = rec.residuals.find(k);
            os << ',';
            if (it != rec.residuals.end()) os << fmt_double(it->second);
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::json report_to_json(const ReportDocument& doc) {
    nlohmann::json j;
    j["family"] = doc.family;
    j["points"] = doc.points;
    j["seed"] = doc.seed;
    if (!doc.config_echo.empty()) j["config"] = nlohmann::json::parse(doc.config_echo);
    j["engine_version"] = doc.engine_version;
    j["all_pass"] = doc.all_pass;
    j["records"] = nlohmann::json::array();
    for (const auto& rec : doc.records) {
        nlohmann::json r;
        r["point"] = rec.point.x;
        r["a"] = rec.a;
        r["b"] = rec.b;
        r["c"] = rec.c;
        r["lambda"] = rec.lambda;
        r["mu"] = rec.mu;
        r["delta"] = rec.delta;
        r["kappa"] = rec.kappa;
        r["residuals"] = rec.residuals;
        if (!rec.error.empty()) r["error"] = rec.error;
        j["records"].push_back(std::move(r));
    }
    j["aggregate"] = nlohmann::json::object();
    for (const auto& [k, v] : doc.aggregate)
        j["aggregate"][k] = {{"max_residual", v.max_residual}, {"tolerance", v.tolerance}, {"pass", v.pass}};
    return j;
}

ReportDocument report_from_json(const nlohmann::json& j) {
    ReportDocument doc;
    doc.family = j.at("family").get<std::string>();
    doc.points = j.at("points").get<int>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("config")) doc.config_echo = j.at("config").dump();
    doc.engine_version = j.at("engine_version").get<std::string>();
    doc.all_pass = j.at("all_pass").get<bool>();
    for (const auto& r : j.at("records")) {
        PointRecord rec;
        auto arr = r.at("point").get<std::array<double, 4>>();
        rec.point = Point(arr);
        rec.a = r.at("a").get<double>();
        rec.b = r.at("b").get<double>();
        rec.c = r.at("c").get<double>();
        rec.lambda = r.at("lambda").get<double>();
        rec.mu = r.at("mu").get<double>();
        rec.delta = r.at("delta").get<double>();
        rec.kappa = r.at("kappa").get<double>();
        rec.residuals = r.at("residuals").get<std::map<std::string, double>>();
        if (r.contains("error")) rec.error = r.at("error").get<std::string>();
        doc.records.push_back(std::move(rec));
    }
    for (const auto& [k, v] : j.at("aggregate").items()) {
        IdentityResult res;
        res.max_residual = v.at("max_residual").get<double>();
        res.tolerance = v.at("tolerance").get<double>();
        res.pass = v.at("pass").get<bool>();
        doc.aggregate[k] = res;
    }
    return doc;
}

FamilySpec family_from_json(const std::string& name, const nlohmann::json& params) {
    auto get_or = [&params](const char* key, double fallback) {
        return params.contains(key) ? params.at(key).get<double>() : fallback;
    };
    if (name == "spaceform") return SpaceFormSpec{get_or("c0", 4.0)};
    if (name == "product") return ProductSurfacesSpec{get_or("k1", 1.0), get_or("k2", 1.0)};
    if (name == "calabi") {
        CalabiTypeSpec s;
        if (params.contains("V")) s.V = params.at("V").get<std::vector<double>>();
        s.sigma_curvature = get_or("sigma_curvature", 0.0);
        return s;
    }
    if (name == "orthotoric") {
        OrthotoricSpec s;
        if (params.contains("F")) s.F = params.at("F").get<std::vector<double>>();
        if (params.contains("G")) s.G = params.at("G").get<std::vector<double>>();
        return s;
    }
    if (name == "kowalski") return KowalskiSpec{};
    throw BadParameterError("unknown family '" + name + "'");
}

std::string family_name(const FamilySpec& spec) {
    return std::visit(
        [](const auto& fs) -> std::string {
            using T = std::decay_t<decltype(fs)>;
            if constexpr (std::is_same_v<T, SpaceFormSpec>) return "spaceform";
            else if constexpr (std::is_same_v<T, ProductSurfacesSpec>) return "product";
            else if constexpr (std::is_same_v<T, CalabiTypeSpec>) return "calabi";
            else if constexpr (std::is_same_v<T, OrthotoricSpec>) return "orthotoric";
            else return "kowalski";
        },
        spec);
}

nlohmann::json family_params_json(const FamilySpec& spec) {
    return std::visit(
        [](const auto& fs) -> nlohmann::json {
            using T = std::decay_t<decltype(fs)>;
            nlohmann::json j = nlohmann::json::object();
            if constexpr (std::is_same_v<T, SpaceFormSpec>) {
                j["c0"] = fs.c0;
            } else if constexpr (std::is_same_v<T, ProductSurfacesSpec>) {
                j["k1"] = fs.k1;
                j["k2"] = fs.k2;
            } else if constexpr (std::is_same_v<T, CalabiTypeSpec>) {
                j["V"] = fs.V;
                j["sigma_curvature"] = fs.sigma_curvature;
            } else if constexpr (std::is_same_v<T, OrthotoricSpec>) {
                j["F"] = fs.F;
                j["G"] = fs.G;
            }
            return j;
        },
        spec);
}

nlohmann::json config_to_json(const CampaignConfig& config) {
    nlohmann::json j;
    j["family"] = family_name(config.family);
    j["params"] = family_params_json(config.family);
    j["points"] = config.points;
    j["seed"] = config.seed;
    j["tol_scale"] = config.tol_scale;
    j["tol_override"] = config.tol_override;
    j["identities"] = config.identities;
    j["out"] = config.out_path;
    return j;
}

CampaignConfig config_from_json(const nlohmann::json& j) {
    CampaignConfig c;
    std::string name = j.at("family").get<std::string>();
    c.family = family_from_json(name, j.contains("params") ? j.at("params") : nlohmann::json::object());
    if (j.contains("points")) c.points = j.at("points").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol_scale")) c.tol_scale = j.at("tol_scale").get<double>();
    if (j.contains("tol_override")) c.tol_override = j.at("tol_override").get<std::map<std::string, double>>();
    if (j.contains("identities")) c.identities = j.at("identities").get<std::vector<std::string>>();
    if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
    return c;
}

} // namespace qch
