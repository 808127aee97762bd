#pragma once

#include <array>

#include "trivortex/dynamics.hpp"

namespace trivortex {

/// Jacobi coordinates of a three-vortex configuration: Z1 is the vector
/// from vortex 2 to vortex 1, Z2 the vector from vortex 3 to the center of
/// vorticity of the leading pair, Z3 the conserved center of vorticity.
/// `labels[slot]` records which original vortex occupies each slot after
/// the automatic relabeling that keeps the leading pair sum nonzero.
struct JacobiState {
    Complex Z1, Z2, Z3;
    double kappa1 = 0, kappa2 = 0, kappa3 = 0;
    Circulations circulations;            // in slot order
    std::array<int, 3> labels{0, 1, 2};   // slot -> original index
};

JacobiState to_jacobi(const VortexConfiguration& cfg);

/// Quadratic rotation invariants of (Z1, Z2): mu1 = |Z1|^2, mu2 = |Z2|^2,
/// mu3 + i mu4 = Z1 Z2*. They satisfy the rank-one identity
/// mu1 mu2 - mu3^2 - mu4^2 = 0.
struct MomentumCoordinates {
    double mu1 = 0, mu2 = 0, mu3 = 0, mu4 = 0;
};

MomentumCoordinates momentum_map(const JacobiState& j);

/// Point of the reduced phase space. Trajectories live on the quadric
/// Theta^2 = Z^2 + (4 gamma3/gamma1)(X^2 + Y^2).
struct ReducedState {
    double X = 0, Y = 0, Z = 0;
    double theta = 0;
    Circulations circulations;
};

ReducedState to_reduced(const MomentumCoordinates& m, const JacobiState& j);

/// Full chain: Jacobi -> momentum map -> (X, Y, Z).
ReducedState reduce(const VortexConfiguration& cfg);

enum class SurfaceKind { Spheroid, Hyperboloid, Cone };

/// Normalizes gamma1 > 0 internally (flipping circulations and Theta
/// together, which maps trajectories to trajectories). Spheroid when
/// gamma3 > 0 after normalization; its angular impulse must then carry the
/// sign of gamma2, which is +1 for three positive circulations.
SurfaceKind classify_surface(const Circulations& c, double theta);

double quadric_residual(const ReducedState& s);

/// mu1 = (Theta+Z)/(2 kappa1), mu2 = (Theta-Z)/(2 kappa2); both are squared
/// moduli, so a state is physically realizable only when they are >= 0.
struct MuPair {
    double mu1 = 0, mu2 = 0;
};
MuPair mu_values(const ReducedState& s);
bool on_physical_sheet(const ReducedState& s, double tol = 1e-9);

/// The three log arguments of the reduced Hamiltonian (linear in X, Z,
/// Theta) together with the sign that makes each positive on physical
/// states; each equals a positive constant times a squared pair distance.
struct LogArguments {
    std::array<double, 3> value;   // A12, A13, A23
    std::array<double, 3> sigma;   // orientation signs
    std::array<double, 3> dX, dZ;  // gradients of the linear forms
};
LogArguments log_arguments(const ReducedState& s);

/// h = -sum (Gamma_i Gamma_j / 2) log(sigma_ij A_ij); defined up to an
/// additive constant per circulation triple, only differences and
/// derivatives are meaningful.
double reduced_hamiltonian(const ReducedState& s);

struct ReducedGradient {
    double hX = 0, hZ = 0;
};
ReducedGradient reduced_gradient(const ReducedState& s);

struct ReducedPartials {
    double hX = 0, hZ = 0, hXX = 0, hXZ = 0, hZZ = 0;
};
ReducedPartials reduced_partials(const ReducedState& s);

/// (Xdot, Ydot, Zdot) = (-4 hZ Y, 4 hZ X - (gamma1/gamma3) hX Z, 4 hX Y).
std::array<double, 3> reduced_vector_field(const ReducedState& s);

/// Lie-Poisson evolution of the momentum coordinates; used as an
/// independent consistency oracle for the (X, Y, Z) field.
std::array<double, 4> mu_vector_field(const MomentumCoordinates& m, double kappa1, double kappa2,
                                      const Circulations& c);

struct SingularPoint {
    int i = 0, j = 0;       // colliding pair, 0-based slots
    bool finite = true;     // false when a pair sum vanishes
    double X = 0, Y = 0, Z = 0;
};

/// The three collision points of the reduced Hamiltonian; infinite ones
/// (vanishing pair sums in the denominators) are reported symbolically.
std::array<SingularPoint, 3> singularities(const Circulations& c, double theta);

/// Inverse of the reduction, up to the rotation freedom fixed by `gauge`:
/// the representative configuration has its center of vorticity at the
/// origin and Z2 aligned at the gauge angle.
VortexConfiguration reconstruct(const ReducedState& s, double gauge = 0.0, double tol = 1e-8);

struct ReducedTrajectory {
    std::vector<double> times;
    std::vector<std::array<double, 3>> states;
    std::vector<double> h;
    std::vector<double> residual;  // quadric residual
    double max_drift_h = 0;
    double max_residual = 0;
    StopReason reason = StopReason::Completed;
    double t_end = 0;
    double closest_singularity = 0;  // min over sigma*A, scaled
    int singular_pair = -1;
};

struct ReducedIntegrationOptions {
    std::vector<double> sample_times;
    /// Renormalize onto the quadric whenever the residual exceeds
    /// 10 x tol x scale. Off by default; drift is reported either way.
    bool project_onto_quadric = false;
    /// Termination floor for the scaled log arguments.
    double singularity_floor = 1e-12;
};

ReducedTrajectory integrate_reduced(const ReducedState& s, double t0, double t1, double tol,
                                    const ReducedIntegrationOptions& opts = {});

/// Squared pair distances of the underlying configuration, gauge-free:
/// (d12^2, d13^2, d23^2) in slot order.
std::array<double, 3> squared_pair_distances(const ReducedState& s);

}  // namespace trivortex
