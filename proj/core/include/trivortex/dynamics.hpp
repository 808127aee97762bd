#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "trivortex/errors.hpp"

namespace trivortex {

using Complex = std::complex<double>;

/// The three vortex strengths in circulation/2pi units. Stored exactly as
/// given; every operation that needs a normalization does it explicitly.
struct Circulations {
    double g1 = 0, g2 = 0, g3 = 0;

    Circulations() = default;
    Circulations(double a, double b, double c) : g1(a), g2(b), g3(c) {
        if (g1 == 0.0 || g2 == 0.0 || g3 == 0.0)
            throw PreconditionError("Circulations: every circulation must be nonzero");
    }
    double operator[](int j) const { return j == 0 ? g1 : (j == 1 ? g2 : g3); }
};

/// Elementary symmetric polynomials gamma1, gamma2, gamma3 of the three
/// circulations; every permutation-invariant quantity factors through them.
struct SymmetricInvariants {
    double gamma1 = 0, gamma2 = 0, gamma3 = 0;
};

SymmetricInvariants symmetric_invariants(const Circulations& c);

struct VortexConfiguration {
    std::vector<Complex> positions;
    std::vector<double> circulations;

    VortexConfiguration() = default;
    VortexConfiguration(std::vector<Complex> z, std::vector<double> g);

    std::size_t size() const { return positions.size(); }
};

struct ConservedQuantities {
    Complex linear_impulse;              // M = sum Gamma_j z_j
    double angular_impulse = 0;          // Theta = sum Gamma_j |z_j|^2
    double energy = 0;                   // H
    std::optional<Complex> center;       // M / gamma1, absent when gamma1 = 0
};

/// zdot_j = i sum_{i != j} Gamma_i (z_j - z_i)/|z_j - z_i|^2.
std::vector<Complex> vortex_velocities(const VortexConfiguration& cfg);

/// H = -(1/2) sum_{i<j} Gamma_i Gamma_j log |z_i - z_j|^2.
double hamiltonian(const VortexConfiguration& cfg);

ConservedQuantities conserved_quantities(const VortexConfiguration& cfg);

double min_pair_distance(const VortexConfiguration& cfg, std::pair<int, int>* pair = nullptr);

enum class StopReason { Completed, NearCollision, NonFinite, StepUnderflow };

struct FullTrajectory {
    std::vector<double> times;
    std::vector<std::vector<Complex>> states;
    // per-sample invariant values (H, M, Theta) for drift reporting
    std::vector<double> energy;
    std::vector<Complex> linear_impulse;
    std::vector<double> angular_impulse;
    // worst relative drift over every accepted integrator step
    double max_drift_energy = 0, max_drift_mx = 0, max_drift_my = 0, max_drift_theta = 0;
    StopReason reason = StopReason::Completed;
    double t_end = 0;
    double closest_approach = 0;
    std::pair<int, int> closest_pair{-1, -1};
};

struct FullIntegrationOptions {
    /// Absolute minimum pair distance; <= 0 means 1e-9 times the geometric
    /// mean of the initial pairwise distances.
    double collision_floor = 0.0;
    /// When nonempty, the trajectory is sampled exactly at these times;
    /// otherwise every accepted step is recorded.
    std::vector<double> sample_times;
};

/// Adaptive RK5(4) integration of the full dynamics with per-step
/// monitoring of H, M and Theta drift. Stops early (with the partial
/// trajectory and a closest-approach record) if the minimum pair distance
/// falls below the collision floor.
FullTrajectory integrate_full(const VortexConfiguration& cfg, double t0, double t1, double tol,
                              const FullIntegrationOptions& opts = {});

}  // namespace trivortex
