#pragma once

#include "trivortex/equilibria.hpp"

namespace trivortex {

enum class CurveKind { Periodic, Heteroclinic, Homoclinic, Ray, Unbounded };

enum class Projection { SphereFrontBack, PlaneXY };

struct OrbitCurve {
    CurveKind kind = CurveKind::Periodic;
    std::vector<std::array<double, 3>> samples;
    double h_level = 0;
    int from_equilibrium = -1;  // separatrix source (index into Portrait::equilibria)
    int to_equilibrium = -1;    // separatrix target, -1 when unbounded
    int family = -1;            // enclosed center for periodic orbits
    double period = 0;          // measured closure time for periodic orbits
};

struct PortraitSpec {
    Circulations circulations;
    double theta = 1.0;
    Projection projection = Projection::SphereFrontBack;
    bool projection_explicit = false;  // otherwise chosen from the surface kind
    int orbit_count = 4;               // periodic orbits per family
    bool separatrices = true;
    double tol = 1e-10;
    double launch_offset = 1e-7;  // separatrix offset, in surface-scale units
    double escape_radius = 1e3;   // unbounded cutoff, in surface-scale units
};

struct Portrait {
    SurfaceKind surface = SurfaceKind::Spheroid;
    Projection projection = Projection::PlaneXY;
    double theta = 0;
    Circulations circulations;
    std::vector<Equilibrium> equilibria;         // on the requested sheet
    std::vector<SingularPoint> singular_points;  // finite, on the requested sheet
    std::vector<OrbitCurve> curves;
    bool boundary_warning = false;  // parameters sit on a bifurcation boundary
    bool singular_equator = false;  // Y = 0 is a collision locus (Theta = 0 cases)
    bool collapse_mode = false;     // gamma2 = 0, Theta = 0: ray portrait
    int unbounded_branches = 0;     // separatrix branches that escape

    int homoclinic_count() const;
    int heteroclinic_count() const;
    int periodic_family_count() const;  // one family per center / singularity
    int saddle_count() const;
};

/// Computes equilibria, singularities, separatrices and periodic-orbit
/// families of the reduced flow on the requested Theta sheet.
Portrait sample_portrait(const PortraitSpec& spec);

/// The four invariant-manifold branches of a saddle: unstable branches
/// integrated forward, stable branches backward, each until capture at a
/// saddle, approach to a singularity, or escape. Connections must match
/// h-levels to within 1e-9 (relative) to classify.
std::vector<OrbitCurve> separatrices(const Equilibrium& eq, const PortraitSpec& spec);

struct CollapseReport {
    double theta0 = 0;                // polar angle of the initial state
    double r0 = 0;
    double drdt_formula = 0;          // 2 sqrt(3) sin 2t / (3 cos 2t - 5)
    double drdt_field = 0;            // radial speed from the reduced field
    double t_star = 0;                // predicted collapse time -r0/drdt
    double t_collapse_measured = 0;   // from integration, extrapolated to r = 0
    double hamiltonian_residual = 0;  // cone-form check (1/9) log((X^2+4Y^2)/(X^2+Y^2))
    double scale_invariance_residual = 0;  // h should not vary along rays
    double profile_drift = 0;         // max |theta(t) - theta0| along the collapse
};

/// Self-similar collapse diagnostics on the gamma2 = 0, Theta = 0 cone for
/// the symmetric triple; verifies the closed-form radial speed against the
/// reduced field and integrates the collapse to confirm the predicted time.
CollapseReport collapse_analysis(const Circulations& c, double X, double Y);

}  // namespace trivortex
