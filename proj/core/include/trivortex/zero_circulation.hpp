#pragma once

#include <array>

#include "trivortex/dynamics.hpp"

namespace trivortex {

/// Canonical coordinates of an isolated +-Gamma pair: positions are the
/// pair midpoint, momenta the (rotated) separation. The momenta are
/// conserved because the pair Hamiltonian is Q-independent, and the pair
/// translates at the constant velocity Gamma/(P1^2+P2^2) (P1, P2).
struct DipoleCanonicalState {
    double Q1 = 0, Q2 = 0, P1 = 0, P2 = 0;
};

DipoleCanonicalState dipole_canonical(const Complex& z1, const Complex& z2);

Complex dipole_velocity(double gamma, const DipoleCanonicalState& d);

/// Reduced state of the gamma1 = 0 problem: (X, Y) are the components of
/// the leading-pair separation after the similarity gauge that rotates the
/// conserved impulse onto the real axis and scales it to unit size.
struct ZeroCircReducedState {
    double X = 0, Y = 0;
    double g1 = 0, g2 = 0;  // leading pair; Gamma3 = -(g1+g2) implied
};

/// Similarity applied by the reduction, kept so distances and times can be
/// mapped back: gauged positions = lambda * original, gauged time =
/// |lambda|^2 * original time.
struct ZeroGauge {
    Complex lambda{1.0, 0.0};
    std::array<int, 3> labels{0, 1, 2};
    bool degenerate = false;  // conserved impulse vanished (triple-collision chart)
    double kappa1 = 0;
};

struct ZeroReduction {
    ZeroCircReducedState state;
    ZeroGauge gauge;
};

/// First Jacobi step followed by the dipole chart on the outer pair.
/// Requires three vortices with vanishing total circulation; relabels
/// automatically so the leading pair sum is nonzero.
ZeroReduction to_zero_reduced(const VortexConfiguration& cfg);

/// Reduced Hamiltonian (additive constants dropped). Singular exactly at
/// the three collision points Y = 0, X in {0, 1 + g1/g2, -1 - g2/g1}.
double h_zero(double X, double Y, double g1, double g2);

/// Collision X-positions of h_zero in pair order (1,2), (1,3), (2,3).
std::array<double, 3> zero_singular_x(double g1, double g2);

struct PlanarGradient {
    double hX = 0, hY = 0;
};
PlanarGradient h_zero_gradient(double X, double Y, double g1, double g2);

/// Canonical planar flow (dX, dY) = c (dh/dY, -dh/dX) with c = 1/kappa1;
/// the constant is pinned by the pushforward of the full dynamics.
std::array<double, 2> zero_vector_field(const ZeroCircReducedState& s);

struct ZeroEquilibrium {
    double X = 0, Y = 0;
    bool saddle = false;  // Hessian of h_zero is indefinite there
};

/// The two equilateral relative equilibria of the reduced planar system.
std::array<ZeroEquilibrium, 2> zero_equilibria(double g1, double g2);

/// Doubly degenerate chart (conserved impulse zero): radially symmetric
/// Hamiltonian with a lone triple-collision singularity at the origin.
double h_degenerate(double X, double Y, double g1, double g2);

/// Representative configuration in the gauged frame (third vortex at the
/// origin), mapped back through the recorded similarity.
VortexConfiguration reconstruct_zero(const ZeroCircReducedState& s, const ZeroGauge& gauge);

struct ZeroTrajectory {
    std::vector<double> times;
    std::vector<std::array<double, 2>> states;
    std::vector<double> h;
    double max_drift_h = 0;
    StopReason reason = StopReason::Completed;
    double t_end = 0;
};

struct ZeroIntegrationOptions {
    std::vector<double> sample_times;
    double singularity_floor = 1e-12;
};

ZeroTrajectory integrate_zero(const ZeroCircReducedState& s, double t0, double t1, double tol,
                              const ZeroIntegrationOptions& opts = {});

}  // namespace trivortex
