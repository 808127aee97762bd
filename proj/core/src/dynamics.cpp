#include "trivortex/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trivortex/ode.hpp"

namespace trivortex {

SymmetricInvariants symmetric_invariants(const Circulations& c) {
    return {c.g1 + c.g2 + c.g3, c.g1 * c.g2 + c.g3 * c.g1 + c.g2 * c.g3, c.g1 * c.g2 * c.g3};
}

VortexConfiguration::VortexConfiguration(std::vector<Complex> z, std::vector<double> g)
    : positions(std::move(z)), circulations(std::move(g)) {
    if (positions.size() != circulations.size())
        throw PreconditionError("VortexConfiguration: positions/circulations length mismatch");
    for (double gj : circulations)
        if (gj == 0.0) throw PreconditionError("VortexConfiguration: zero circulation");
}

namespace {

void require_distinct(const VortexConfiguration& cfg) {
    const int n = static_cast<int>(cfg.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cfg.positions[i] == cfg.positions[j])
                throw SingularConfigurationError(
                    i, j,
                    "coincident vortices " + std::to_string(i + 1) + "," + std::to_string(j + 1));
}

std::vector<Complex> velocities_unchecked(const std::vector<Complex>& z,
                                          const std::vector<double>& g) {
    const std::size_t n = z.size();
    std::vector<Complex> v(n, Complex(0, 0));
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc(0, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const Complex d = z[j] - z[i];
            acc += g[i] * d / std::norm(d);
        }
        v[j] = Complex(0, 1) * acc;
    }
    return v;
}

}  // namespace

std::vector<Complex> vortex_velocities(const VortexConfiguration& cfg) {
    require_distinct(cfg);
    return velocities_unchecked(cfg.positions, cfg.circulations);
}

double hamiltonian(const VortexConfiguration& cfg) {
    require_distinct(cfg);
    const int n = static_cast<int>(cfg.size());
    double h = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            h -= 0.5 * cfg.circulations[i] * cfg.circulations[j] *
                 std::log(std::norm(cfg.positions[i] - cfg.positions[j]));
    return h;
}

ConservedQuantities conserved_quantities(const VortexConfiguration& cfg) {
    ConservedQuantities q;
    double gamma1 = 0.0;
    for (std::size_t j = 0; j < cfg.size(); ++j) {
        q.linear_impulse += cfg.circulations[j] * cfg.positions[j];
        q.angular_impulse += cfg.circulations[j] * std::norm(cfg.positions[j]);
        gamma1 += cfg.circulations[j];
    }
    q.energy = hamiltonian(cfg);
    if (gamma1 != 0.0) q.center = q.linear_impulse / gamma1;
    return q;
}

double min_pair_distance(const VortexConfiguration& cfg, std::pair<int, int>* pair) {
    const int n = static_cast<int>(cfg.size());
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = std::abs(cfg.positions[i] - cfg.positions[j]);
            if (d < best) {
                best = d;
                if (pair) *pair = {i, j};
            }
        }
    return best;
}

namespace {

std::vector<double> pack(const std::vector<Complex>& z) {
    std::vector<double> y(2 * z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        y[2 * j] = z[j].real();
        y[2 * j + 1] = z[j].imag();
    }
    return y;
}

std::vector<Complex> unpack(const std::vector<double>& y) {
    std::vector<Complex> z(y.size() / 2);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = Complex(y[2 * j], y[2 * j + 1]);
    return z;
}

double rel(double delta, double ref) { return std::abs(delta) / std::max(std::abs(ref), 1.0); }

}  // namespace

FullTrajectory integrate_full(const VortexConfiguration& cfg, double t0, double t1, double tol,
                              const FullIntegrationOptions& opts) {
    if (tol <= 0.0) throw PreconditionError("integrate_full: tol must be positive");
    require_distinct(cfg);

    const std::size_t n = cfg.size();
    const auto& g = cfg.circulations;

    double floor = opts.collision_floor;
    if (floor <= 0.0) {
        double log_acc = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                log_acc += std::log(std::abs(cfg.positions[i] - cfg.positions[j]));
                ++count;
            }
        floor = (count > 0) ? 1e-9 * std::exp(log_acc / count) : 0.0;
    }

    const ConservedQuantities q0 = conserved_quantities(cfg);

    FullTrajectory traj;
    traj.closest_approach = std::numeric_limits<double>::infinity();

    AdaptiveRK rk([&g, n](double, const std::vector<double>& y, std::vector<double>& dy) {
        const auto z = unpack(y);
        const auto v = velocities_unchecked(z, g);
        dy.resize(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            dy[2 * j] = v[j].real();
            dy[2 * j + 1] = v[j].imag();
        }
    });

    const bool record_all = opts.sample_times.empty();
    bool collided = false;

    auto record_sample = [&](double t, const std::vector<Complex>& z) {
        traj.times.push_back(t);
        traj.states.push_back(z);
        VortexConfiguration now{z, g};
        const auto q = conserved_quantities(now);
        traj.energy.push_back(q.energy);
        traj.linear_impulse.push_back(q.linear_impulse);
        traj.angular_impulse.push_back(q.angular_impulse);
    };

    auto observe = [&](double t, const std::vector<double>& y) -> StepStatus {
        const auto z = unpack(y);
        VortexConfiguration now{z, g};
        std::pair<int, int> pr{-1, -1};
        const double dmin = min_pair_distance(now, &pr);
        if (dmin < traj.closest_approach) {
            traj.closest_approach = dmin;
            traj.closest_pair = pr;
        }
        const auto q = conserved_quantities(now);
        traj.max_drift_energy = std::max(traj.max_drift_energy, rel(q.energy - q0.energy, q0.energy));
        traj.max_drift_mx = std::max(
            traj.max_drift_mx, rel(q.linear_impulse.real() - q0.linear_impulse.real(),
                                   q0.linear_impulse.real()));
        traj.max_drift_my = std::max(
            traj.max_drift_my, rel(q.linear_impulse.imag() - q0.linear_impulse.imag(),
                                   q0.linear_impulse.imag()));
        traj.max_drift_theta = std::max(
            traj.max_drift_theta, rel(q.angular_impulse - q0.angular_impulse, q0.angular_impulse));
        traj.t_end = t;
        if (record_all) record_sample(t, z);
        if (dmin < floor) {
            collided = true;
            return StepStatus::Stop;
        }
        return StepStatus::Continue;
    };

    std::vector<double> y = pack(cfg.positions);

    OdeOutcome outcome = OdeOutcome::Completed;
    if (record_all) {
        outcome = rk.run(y, t0, t1, tol, observe);
    } else {
        double t = t0;
        bool first = true;
        for (double ts : opts.sample_times) {
            if (first && ts == t0) {
                record_sample(t0, unpack(y));
                first = false;
                continue;
            }
            first = false;
            outcome = rk.run(y, t, ts, tol, observe);
            t = ts;
            if (outcome != OdeOutcome::Completed) break;
            record_sample(ts, unpack(y));
        }
    }

    switch (outcome) {
        case OdeOutcome::Completed:
            traj.reason = StopReason::Completed;
            break;
        case OdeOutcome::StoppedByObserver:
            traj.reason = collided ? StopReason::NearCollision : StopReason::Completed;
            break;
        case OdeOutcome::NonFinite:
            throw IntegrationError("integrate_full: state became nonfinite");
        case OdeOutcome::StepUnderflow:
            traj.reason = StopReason::StepUnderflow;
            break;
    }
    return traj;
}

}  // namespace trivortex
