// SPDX-License-Identifier: Apache-2.0
/// \file
/// Closed-form metric families packaged as fields with domain guards,
/// structures (closed-form or to be recovered) and distinguished
/// distributions, plus the per-family closed-form checks.

#pragma once

#include "qch/field.hpp"
#include "qch/kahler.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qch {

/// Constant holomorphic sectional curvature c0, realized through a potential.
struct SpaceFormSpec {
    double c0 = 4.0;
};

/// Product of two constant-curvature surfaces; k1 is the Gauss curvature of
/// the factor carrying the distinguished distribution.
struct ProductSurfacesSpec {
    double k1 = 1.0;
    double k2 = 1.0;
};

/// Fibration over a constant-curvature surface with a Hamiltonian Killing
/// field; V is the profile polynomial (ascending coefficients), and
/// sigma_curvature the scalar curvature of the base surface.
struct CalabiTypeSpec {
    std::vector<double> V = {1.0, 0.0, 1.0};
    double sigma_curvature = 0.0;
};

/// Two commuting Hamiltonian Killing fields with orthogonal momenta;
/// F and G are the profile polynomials (ascending coefficients).
struct OrthotoricSpec {
    std::vector<double> F = {1.0, 0.0, 0.0, 1.0};
    std::vector<double> G = {-1.0, 0.0, 0.0, 1.0};
};

/// The proper 3-symmetric metric on R^4; its integrable structure lives in
/// the reversed chart orientation and is recovered numerically.
struct KowalskiSpec {};

using FamilySpec = std::variant<SpaceFormSpec, ProductSurfacesSpec, CalabiTypeSpec, OrthotoricSpec, KowalskiSpec>;

struct ExpectedProperties {
    std::optional<std::array<double, 3>> abc;
    std::optional<std::array<double, 2>> lambda_mu;
    bool einstein = false;
    bool anti_self_dual = false; ///< vanishing anti-self-dual Weyl half
    bool product = false;
};

struct FamilyInstance {
    std::string name;
    FamilySpec spec;
    MetricField metric;
    ComplexStructureField structure; ///< invalid when needs_recovery
    DistributionField distribution;  ///< invalid when needs_recovery
    bool needs_recovery = false;
    ChartDomain box;
    ExpectedProperties expected;

    /// Closed-form opposite Kaehler form of the family, where one exists
    /// (used by the rho0 checks). Throws for families without one.
    TwoForm opposite_kahler_form(const Point& p) const;
};

/// Build a family instance and validate it on a probe grid: positive
/// signature everywhere, and where the structure is closed-form, a Kaehler
/// residual below 1e-8.
FamilyInstance instantiate(const FamilySpec& spec);

/// |rho0 - delta omega_bar| with delta from the profile derivative formula.
double orthotoric_delta_check(const FamilyInstance& inst, const Point& p);

/// |rho0 - delta omega_I| with delta from the profile derivative formula.
double calabi_delta_check(const FamilyInstance& inst, const Point& p);

/// The scalar delta of the orthotoric rho0 identity.
double orthotoric_profile_delta(const OrthotoricSpec& spec, double xi, double eta);

/// The scalar delta of the Calabi-type rho0 identity.
double calabi_profile_delta(const CalabiTypeSpec& spec, double z);

/// Max-norm of the Lie derivative of g along the coordinate direction k,
/// computed from the connection.
double killing_residual(const MetricField& g, const Point& p, int direction);

/// Closed-form opposite structure of the orthotoric family at p.
Mat4 orthotoric_opposite_structure(const OrthotoricSpec& spec, const Point& p);

/// Evaluate an ascending-coefficient polynomial.
template <class T>
T polyval(const std::vector<double>& coeffs, const T& x) {
    T acc(0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

/// Coefficients of the derivative polynomial.
std::vector<double> polyder(const std::vector<double>& coeffs);

} // namespace qch
