#include "trivortex/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trivortex/ode.hpp"

namespace trivortex {

namespace {

const char* pair_name(int i, int j) {
    if (i == 0 && j == 1) return "1,2";
    if (i == 0 && j == 2) return "1,3";
    return "2,3";
}

double gamma1_of(const Circulations& c) { return c.g1 + c.g2 + c.g3; }

}  // namespace

JacobiState to_jacobi(const VortexConfiguration& cfg) {
    if (cfg.size() != 3) throw PreconditionError("to_jacobi: exactly three vortices required");
    const double gamma1 = cfg.circulations[0] + cfg.circulations[1] + cfg.circulations[2];
    const double scale = std::max({std::abs(cfg.circulations[0]), std::abs(cfg.circulations[1]),
                                   std::abs(cfg.circulations[2])});
    if (std::abs(gamma1) <= 1e-14 * scale)
        throw ZeroTotalCirculationError(
            "to_jacobi: total circulation vanishes; use the zero-circulation reduction");

    // keep the caller's labels unless the leading pair sum vanishes
    static constexpr std::array<std::array<int, 3>, 3> orders{
        {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    std::array<int, 3> labels{0, 1, 2};
    bool found = false;
    for (const auto& ord : orders) {
        if (std::abs(cfg.circulations[ord[0]] + cfg.circulations[ord[1]]) > 1e-12 * scale) {
            labels = ord;
            found = true;
            break;
        }
    }
    if (!found)
        throw PreconditionError("to_jacobi: no labeling with a nonzero leading pair sum");

    const double g1 = cfg.circulations[labels[0]];
    const double g2 = cfg.circulations[labels[1]];
    const double g3 = cfg.circulations[labels[2]];
    const Complex z1 = cfg.positions[labels[0]];
    const Complex z2 = cfg.positions[labels[1]];
    const Complex z3 = cfg.positions[labels[2]];

    JacobiState j;
    j.circulations = Circulations(g1, g2, g3);
    j.labels = labels;
    j.Z1 = z1 - z2;
    j.Z2 = (g1 * z1 + g2 * z2) / (g1 + g2) - z3;
    j.Z3 = (g1 * z1 + g2 * z2 + g3 * z3) / gamma1;
    j.kappa1 = g1 * g2 / (g1 + g2);
    j.kappa2 = (g1 + g2) * g3 / gamma1;
    j.kappa3 = gamma1;
    return j;
}

MomentumCoordinates momentum_map(const JacobiState& j) {
    MomentumCoordinates m;
    m.mu1 = std::norm(j.Z1);
    m.mu2 = std::norm(j.Z2);
    const Complex cross = j.Z1 * std::conj(j.Z2);
    m.mu3 = cross.real();
    m.mu4 = cross.imag();
    return m;
}

ReducedState to_reduced(const MomentumCoordinates& m, const JacobiState& j) {
    ReducedState s;
    s.circulations = j.circulations;
    s.X = m.mu3;
    s.Y = m.mu4;
    s.Z = j.kappa1 * m.mu1 - j.kappa2 * m.mu2;
    s.theta = j.kappa1 * m.mu1 + j.kappa2 * m.mu2;
    return s;
}

ReducedState reduce(const VortexConfiguration& cfg) {
    const JacobiState j = to_jacobi(cfg);
    return to_reduced(momentum_map(j), j);
}

SurfaceKind classify_surface(const Circulations& c, double theta) {
    SymmetricInvariants g = symmetric_invariants(c);
    if (g.gamma1 == 0.0) throw PreconditionError("classify_surface: gamma1 must be nonzero");
    if (g.gamma1 < 0.0) {  // flip all circulations and Theta together
        g.gamma1 = -g.gamma1;
        g.gamma3 = -g.gamma3;
        theta = -theta;
    }
    if (g.gamma3 > 0.0) {
        // Admissible angular impulses on the spheroid carry the sign of
        // gamma2: positive when all three circulations are positive.
        if (theta == 0.0 || (theta > 0.0) != (g.gamma2 > 0.0))
            throw InvalidStateError("classify_surface: angular impulse inconsistent with spheroid");
        return SurfaceKind::Spheroid;
    }
    return theta == 0.0 ? SurfaceKind::Cone : SurfaceKind::Hyperboloid;
}

double quadric_residual(const ReducedState& s) {
    const SymmetricInvariants g = symmetric_invariants(s.circulations);
    return s.theta * s.theta - s.Z * s.Z -
           4.0 * g.gamma3 / g.gamma1 * (s.X * s.X + s.Y * s.Y);
}

MuPair mu_values(const ReducedState& s) {
    const double g1 = s.circulations.g1, g2 = s.circulations.g2, g3 = s.circulations.g3;
    const double gamma1 = g1 + g2 + g3;
    if (g1 + g2 == 0.0 || gamma1 == 0.0)
        throw PreconditionError("mu_values: vanishing pair sum or total circulation");
    const double kappa1 = g1 * g2 / (g1 + g2);
    const double kappa2 = (g1 + g2) * g3 / gamma1;
    return {(s.theta + s.Z) / (2.0 * kappa1), (s.theta - s.Z) / (2.0 * kappa2)};
}

bool on_physical_sheet(const ReducedState& s, double tol) {
    const MuPair mu = mu_values(s);
    const double scale = std::abs(s.theta) + std::abs(s.Z) + std::abs(s.X) + std::abs(s.Y);
    return mu.mu1 >= -tol * scale && mu.mu2 >= -tol * scale;
}

LogArguments log_arguments(const ReducedState& s) {
    const double g1 = s.circulations.g1, g2 = s.circulations.g2, g3 = s.circulations.g3;
    const SymmetricInvariants g = symmetric_invariants(s.circulations);
    LogArguments a;
    // A12 = Z + Theta = 2 kappa1 |z1-z2|^2
    a.dX[0] = 0.0;
    a.dZ[0] = 1.0;
    a.value[0] = s.Z + s.theta;
    a.sigma[0] = (g1 * g2 * (g1 + g2) > 0.0) ? 1.0 : -1.0;
    // A13 = 4 gamma3 X + (G2 G3 - gamma1 G1) Z + (G1+G2)(G1+G3) Theta
    //     = 2 G1 G3 (G1+G2) |z1-z3|^2
    a.dX[1] = 4.0 * g.gamma3;
    a.dZ[1] = g2 * g3 - g.gamma1 * g1;
    a.value[1] = a.dX[1] * s.X + a.dZ[1] * s.Z + (g1 + g2) * (g1 + g3) * s.theta;
    a.sigma[1] = (g1 * g3 * (g1 + g2) > 0.0) ? 1.0 : -1.0;
    // A23 = -4 gamma3 X + (G1 G3 - gamma1 G2) Z + (G1+G2)(G2+G3) Theta
    //     = 2 G2 G3 (G1+G2) |z2-z3|^2
    a.dX[2] = -4.0 * g.gamma3;
    a.dZ[2] = g1 * g3 - g.gamma1 * g2;
    a.value[2] = a.dX[2] * s.X + a.dZ[2] * s.Z + (g1 + g2) * (g2 + g3) * s.theta;
    a.sigma[2] = (g2 * g3 * (g1 + g2) > 0.0) ? 1.0 : -1.0;
    return a;
}

namespace {

const std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

void require_nonsingular(const LogArguments& a) {
    for (int p = 0; p < 3; ++p)
        if (a.sigma[p] * a.value[p] <= 0.0)
            throw SingularityError(kPairs[p].first, kPairs[p].second,
                                   std::string("reduced state singular at pair ") +
                                       pair_name(kPairs[p].first, kPairs[p].second));
}

std::array<double, 3> pair_products(const Circulations& c) {
    return {c.g1 * c.g2, c.g1 * c.g3, c.g2 * c.g3};
}

}  // namespace

double reduced_hamiltonian(const ReducedState& s) {
    const LogArguments a = log_arguments(s);
    require_nonsingular(a);
    const auto cc = pair_products(s.circulations);
    double h = 0.0;
    for (int p = 0; p < 3; ++p) h -= 0.5 * cc[p] * std::log(a.sigma[p] * a.value[p]);
    return h;
}

ReducedPartials reduced_partials(const ReducedState& s) {
    const LogArguments a = log_arguments(s);
    require_nonsingular(a);
    const auto cc = pair_products(s.circulations);
    ReducedPartials d;
    for (int p = 0; p < 3; ++p) {
        const double inv = 1.0 / a.value[p];
        d.hX -= 0.5 * cc[p] * a.dX[p] * inv;
        d.hZ -= 0.5 * cc[p] * a.dZ[p] * inv;
        d.hXX += 0.5 * cc[p] * a.dX[p] * a.dX[p] * inv * inv;
        d.hXZ += 0.5 * cc[p] * a.dX[p] * a.dZ[p] * inv * inv;
        d.hZZ += 0.5 * cc[p] * a.dZ[p] * a.dZ[p] * inv * inv;
    }
    return d;
}

ReducedGradient reduced_gradient(const ReducedState& s) {
    const ReducedPartials d = reduced_partials(s);
    return {d.hX, d.hZ};
}

std::array<double, 3> reduced_vector_field(const ReducedState& s) {
    const ReducedGradient d = reduced_gradient(s);
    const SymmetricInvariants g = symmetric_invariants(s.circulations);
    return {-4.0 * d.hZ * s.Y, 4.0 * d.hZ * s.X - g.gamma1 / g.gamma3 * d.hX * s.Z,
            4.0 * d.hX * s.Y};
}

std::array<double, 4> mu_vector_field(const MomentumCoordinates& m, double kappa1, double kappa2,
                                      const Circulations& c) {
    // h in momentum coordinates, straight from the Jacobi-coordinate
    // Hamiltonian: pairwise squared distances are linear in mu.
    const double r1 = kappa1 / c.g1, r2 = kappa1 / c.g2;
    const double B12 = m.mu1;
    const double B13 = m.mu2 + r1 * r1 * m.mu1 + 2.0 * r1 * m.mu3;
    const double B23 = m.mu2 + r2 * r2 * m.mu1 - 2.0 * r2 * m.mu3;
    if (B12 <= 0.0) throw SingularityError(0, 1, "mu state singular at pair 1,2");
    if (B13 <= 0.0) throw SingularityError(0, 2, "mu state singular at pair 1,3");
    if (B23 <= 0.0) throw SingularityError(1, 2, "mu state singular at pair 2,3");
    const double c12 = c.g1 * c.g2, c13 = c.g1 * c.g3, c23 = c.g2 * c.g3;
    const double h1 = -0.5 * (c12 / B12 + c13 * r1 * r1 / B13 + c23 * r2 * r2 / B23);
    const double h2 = -0.5 * (c13 / B13 + c23 / B23);
    const double h3 = -(c13 * r1 / B13 - c23 * r2 / B23);
    return {2.0 / kappa1 * h3 * m.mu4, -2.0 / kappa2 * h3 * m.mu4,
            2.0 * (h2 / kappa2 - h1 / kappa1) * m.mu4,
            2.0 * m.mu3 * (h1 / kappa1 - h2 / kappa2) + h3 * (m.mu2 / kappa1 - m.mu1 / kappa2)};
}

std::array<SingularPoint, 3> singularities(const Circulations& c, double theta) {
    const double g1 = c.g1, g2 = c.g2, g3 = c.g3;
    const SymmetricInvariants g = symmetric_invariants(c);
    std::array<SingularPoint, 3> out;
    out[0] = {0, 1, true, 0.0, 0.0, -theta};

    const double d13 = (g1 + g2) * (g1 + g3);
    out[1].i = 0;
    out[1].j = 2;
    if (d13 == 0.0) {
        out[1].finite = false;
    } else {
        out[1].X = -g.gamma1 * theta / d13;
        out[1].Y = 0.0;
        out[1].Z = (g.gamma1 * g1 - g2 * g3) * theta / d13;
    }

    const double d23 = (g1 + g2) * (g2 + g3);
    out[2].i = 1;
    out[2].j = 2;
    if (d23 == 0.0) {
        out[2].finite = false;
    } else {
        out[2].X = g.gamma1 * theta / d23;
        out[2].Y = 0.0;
        out[2].Z = (g.gamma1 * g2 - g1 * g3) * theta / d23;
    }
    return out;
}

VortexConfiguration reconstruct(const ReducedState& s, double gauge, double tol) {
    const double g1 = s.circulations.g1, g2 = s.circulations.g2, g3 = s.circulations.g3;
    const double gamma1 = g1 + g2 + g3;
    const double scale2 = s.theta * s.theta + s.Z * s.Z + s.X * s.X + s.Y * s.Y;
    if (std::abs(quadric_residual(s)) > tol * std::max(scale2, 1e-300))
        throw InvalidStateError("reconstruct: state violates the quadric constraint");
    const MuPair mu = mu_values(s);
    const double mu_scale = std::abs(mu.mu1) + std::abs(mu.mu2);
    if (mu.mu1 < -tol * mu_scale || mu.mu2 < -tol * mu_scale)
        throw InvalidStateError("reconstruct: negative mu, state off the physical sheet");
    const double mu1 = std::max(mu.mu1, 0.0);
    const double mu2 = std::max(mu.mu2, 0.0);

    const Complex phase = std::polar(1.0, gauge);
    Complex Z1, Z2;
    if (mu2 > 1e-300) {
        Z2 = std::sqrt(mu2) * phase;
        Z1 = Complex(s.X, s.Y) * phase / std::sqrt(mu2);
    } else {
        Z2 = Complex(0, 0);
        Z1 = std::sqrt(mu1) * phase;
    }

    const Complex z3 = -(g1 + g2) * Z2 / gamma1;
    const Complex z1 = g3 / gamma1 * Z2 + g2 / (g1 + g2) * Z1;
    const Complex z2 = z1 - Z1;
    return VortexConfiguration({z1, z2, z3}, {g1, g2, g3});
}

std::array<double, 3> squared_pair_distances(const ReducedState& s) {
    const double g1 = s.circulations.g1, g2 = s.circulations.g2;
    const MuPair mu = mu_values(s);
    const double kappa1 = g1 * g2 / (g1 + g2);
    const double r1 = kappa1 / g1, r2 = kappa1 / g2;
    return {mu.mu1, mu.mu2 + r1 * r1 * mu.mu1 + 2.0 * r1 * s.X,
            mu.mu2 + r2 * r2 * mu.mu1 - 2.0 * r2 * s.X};
}

ReducedTrajectory integrate_reduced(const ReducedState& s0, double t0, double t1, double tol,
                                    const ReducedIntegrationOptions& opts) {
    if (tol <= 0.0) throw PreconditionError("integrate_reduced: tol must be positive");
    const Circulations c = s0.circulations;
    const double theta = s0.theta;
    const SymmetricInvariants g = symmetric_invariants(c);
    const double scale2 =
        theta * theta + s0.Z * s0.Z + std::abs(4.0 * g.gamma3 / g.gamma1) * (s0.X * s0.X + s0.Y * s0.Y);
    const double arg_scale = std::max(scale2, 1e-300);

    auto state_of = [&](const std::vector<double>& y) {
        return ReducedState{y[0], y[1], y[2], theta, c};
    };

    ReducedTrajectory traj;
    traj.closest_singularity = std::numeric_limits<double>::infinity();
    const double h0 = reduced_hamiltonian(s0);

    AdaptiveRK rk([&](double, const std::vector<double>& y, std::vector<double>& dy) {
        const auto f = reduced_vector_field(state_of(y));
        dy.assign(f.begin(), f.end());
    });

    bool singular_stop = false;
    const bool record_all = opts.sample_times.empty();

    auto record_sample = [&](double t, const ReducedState& st) {
        traj.times.push_back(t);
        traj.states.push_back({st.X, st.Y, st.Z});
        traj.h.push_back(reduced_hamiltonian(st));
        traj.residual.push_back(quadric_residual(st));
    };

    auto observe = [&](double t, const std::vector<double>& y) -> StepStatus {
        ReducedState st = state_of(y);
        const LogArguments a = log_arguments(st);
        for (int p = 0; p < 3; ++p) {
            const double scaled = a.sigma[p] * a.value[p] / arg_scale;
            if (scaled < traj.closest_singularity) {
                traj.closest_singularity = scaled;
                traj.singular_pair = p;
            }
            if (scaled <= opts.singularity_floor) {
                singular_stop = true;
                traj.t_end = t;
                return StepStatus::Stop;
            }
        }
        traj.max_drift_h =
            std::max(traj.max_drift_h, std::abs(reduced_hamiltonian(st) - h0) / std::max(1.0, std::abs(h0)));
        traj.max_residual = std::max(traj.max_residual, std::abs(quadric_residual(st)) / arg_scale);
        traj.t_end = t;
        if (record_all) record_sample(t, st);
        return StepStatus::Continue;
    };

    std::vector<double> y{s0.X, s0.Y, s0.Z};

    // optional renormalization onto the quadric along the constraint gradient
    auto project = [&](std::vector<double>& yy) {
        if (!opts.project_onto_quadric) return;
        ReducedState st = state_of(yy);
        if (std::abs(quadric_residual(st)) <= 10.0 * tol * arg_scale) return;
        const double k = 4.0 * g.gamma3 / g.gamma1;
        for (int it = 0; it < 3; ++it) {
            const double cres = st.Z * st.Z + k * (st.X * st.X + st.Y * st.Y) - theta * theta;
            const double gx = 2.0 * k * st.X, gy = 2.0 * k * st.Y, gz = 2.0 * st.Z;
            const double n2 = gx * gx + gy * gy + gz * gz;
            if (n2 == 0.0) break;
            st.X -= cres * gx / n2;
            st.Y -= cres * gy / n2;
            st.Z -= cres * gz / n2;
        }
        yy = {st.X, st.Y, st.Z};
    };

    OdeOutcome outcome = OdeOutcome::Completed;
    if (record_all) {
        outcome = rk.run(y, t0, t1, tol, observe);
    } else {
        double t = t0;
        bool first = true;
        for (double ts : opts.sample_times) {
            if (first && ts == t0) {
                record_sample(t0, state_of(y));
                first = false;
                continue;
            }
            first = false;
            outcome = rk.run(y, t, ts, tol, observe);
            t = ts;
            if (outcome != OdeOutcome::Completed) break;
            project(y);
            record_sample(ts, state_of(y));
        }
    }

    switch (outcome) {
        case OdeOutcome::Completed:
            traj.reason = StopReason::Completed;
            break;
        case OdeOutcome::StoppedByObserver:
            traj.reason = singular_stop ? StopReason::NearCollision : StopReason::Completed;
            break;
        case OdeOutcome::NonFinite:
            throw IntegrationError("integrate_reduced: state became nonfinite");
        case OdeOutcome::StepUnderflow:
            traj.reason = StopReason::StepUnderflow;
            break;
    }
    return traj;
}

}  // namespace trivortex
