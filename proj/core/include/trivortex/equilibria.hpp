#pragma once

#include <Eigen/Core>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "trivortex/polynomial.hpp"
#include "trivortex/reduction.hpp"

namespace trivortex {

enum class StabilityKind { Center, Saddle, Degenerate };
enum class EquilibriumKind { Equilateral, Collinear };

/// A relative equilibrium of the reduced flow. The state carries the
/// angular impulse of the sheet it actually lives on (the admissible one),
/// which may be the mirror of the requested sheet on hyperboloids.
struct Equilibrium {
    ReducedState state;
    EquilibriumKind kind = EquilibriumKind::Collinear;
    std::array<std::complex<double>, 3> eigenvalues{};
    StabilityKind classification = StabilityKind::Degenerate;
    double r = 0;  // -lambda^2 for the nonzero eigenvalue pair
};

/// Analytic Jacobian of the reduced vector field. Its trace vanishes
/// identically and its determinant vanishes at every equilibrium.
Eigen::Matrix3d reduced_jacobian(const ReducedState& s);

/// Eigenvalues of the Jacobian at a stationary state: {0, +l, -l}. The
/// classification is decided by the eigenvalues, never by printed closed
/// forms (which are cross-reported as `r`).
Equilibrium classify_equilibrium(const ReducedState& s, EquilibriumKind kind);

struct EquilateralPair {
    std::array<ReducedState, 2> states;
    bool at_infinity = false;  // gamma2 = 0 (or a vanishing pair sum)
};

/// The two equilateral relative equilibria; they diverge as gamma2 -> 0.
EquilateralPair equilateral_equilibria(const Circulations& c, double theta);

/// Equilateral equilibrium with eigenvalues {0, +-sqrt(-3 gamma2^3 /
/// (Theta^2 gamma1^2))}: a center iff gamma2 > 0.
Equilibrium tri_stability(const Circulations& c, double theta);

/// All collinear relative equilibria (one or three away from bifurcation
/// points): eliminates X from {dY/dt = 0, quadric|Y=0} by an exact
/// resultant, strips the three singularity factors, solves the residual
/// cubic, back-substitutes X through the quadric and verifies each root.
std::vector<Equilibrium> collinear_equilibria(const Circulations& c, double theta);

/// Fills in eigenvalues/classification for a verified collinear
/// equilibrium; degenerate when |lambda^2| is below 1e-10 (scaled).
Equilibrium collinear_stability(const Equilibrium& e);

struct DiscriminantReport {
    Rational computed;     // discriminant of the computed cubic p3
    Rational reference;    // 64 Theta^6 (G1-G2)^2 (G1+G2)^2 g1^2 g2^2 g3^6 * quartic
    double quartic_factor; // 32 g2 g1^2 - 36 g3 g1 - 3 g2^2
    UniPoly<Rational> p3;
};
DiscriminantReport discriminant_p3(const Circulations& c, double theta);

struct TrilinearPoint {
    double eta1 = 0, eta2 = 0, eta3 = 0;
};

struct RegionReport {
    SurfaceKind surface = SurfaceKind::Spheroid;
    int gamma2_sign = 0;
    double deltoid_value = 0;
    int collinear_count = 0;  // 3 inside the deltoid, 1 outside
    StabilityKind tri_stability = StabilityKind::Degenerate;
    bool boundary = false;
    std::map<std::string, double> factors;
};
RegionReport region_classify(const TrilinearPoint& p, double theta);

/// Closed forms for the symmetric family Gamma1 = Gamma2 = (1-Gamma3)/2
/// (gamma1 = 1). Returns only the equilibria admissible on the requested
/// Theta sheet. The X component of the off-axis pair is recovered from the
/// quadric rather than taken from a closed form.
std::vector<Equilibrium> symmetric_case_equilibria(double gamma3_circ, double theta);

/// Printed symmetric-family stability scalars, exposed for cross-checks:
/// first = r(E1) = r(E2), second = r(E3).
std::pair<double, double> symmetric_r_formulas(double gamma3_circ, double theta);

struct StabilityBoundary {
    Rational value;  // triple-resultant elimination of {quadric, dY/dt, r}
    std::map<std::string, double> factors;
};

/// Evaluates the stability-change condition at the given circulations by
/// the three-resultant elimination, entirely in exact rationals. Zero on
/// parameter sets where a collinear equilibrium changes stability; the
/// factor map lets callers attribute spurious zeros.
StabilityBoundary stability_boundary_value(const Circulations& c, double theta);
StabilityBoundary stability_boundary_value(const std::array<Rational, 3>& g,
                                           const Rational& theta);

struct ScanRow {
    double gamma3_circ = 0;
    double theta = 0;
    std::string branch;  // E1, E2, E3, Etri+, Etri-, S12, S13, S23
    double X = 0, Y = 0, Z = 0;
    std::string stability;  // center|saddle|degenerate|singular|none
    bool exists = false;
};

/// Sweeps the symmetric family along the given grid of Gamma3 values for
/// each requested Theta sheet, reporting every equilibrium and singularity
/// with existence and stability flags.
std::vector<ScanRow> bifurcation_scan(const std::vector<double>& theta_values,
                                      const std::vector<double>& grid);

Complex trilinear_to_cartesian(const TrilinearPoint& p);
TrilinearPoint cartesian_to_trilinear(const Complex& xy);

}  // namespace trivortex
