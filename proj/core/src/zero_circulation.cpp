#include "trivortex/zero_circulation.hpp"

#include <algorithm>
#include <cmath>

#include "trivortex/ode.hpp"

namespace trivortex {

DipoleCanonicalState dipole_canonical(const Complex& z1, const Complex& z2) {
    return {0.5 * (z1.real() + z2.real()), 0.5 * (z1.imag() + z2.imag()),
            z1.imag() - z2.imag(), -z1.real() + z2.real()};
}

Complex dipole_velocity(double gamma, const DipoleCanonicalState& d) {
    const double p2 = d.P1 * d.P1 + d.P2 * d.P2;
    if (p2 == 0.0) throw SingularConfigurationError(0, 1, "dipole_velocity: coincident pair");
    return gamma / p2 * Complex(d.P1, d.P2);
}

ZeroReduction to_zero_reduced(const VortexConfiguration& cfg) {
    if (cfg.size() != 3) throw PreconditionError("to_zero_reduced: exactly three vortices required");
    const double scale = std::max({std::abs(cfg.circulations[0]), std::abs(cfg.circulations[1]),
                                   std::abs(cfg.circulations[2])});
    const double gamma1 = cfg.circulations[0] + cfg.circulations[1] + cfg.circulations[2];
    if (std::abs(gamma1) > 1e-14 * scale)
        throw PreconditionError("to_zero_reduced: total circulation must vanish");

    static constexpr std::array<std::array<int, 3>, 3> orders{
        {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    std::array<int, 3> labels{0, 1, 2};
    for (const auto& ord : orders) {
        if (std::abs(cfg.circulations[ord[0]] + cfg.circulations[ord[1]]) > 1e-12 * scale) {
            labels = ord;
            break;
        }
    }
    const double g1 = cfg.circulations[labels[0]];
    const double g2 = cfg.circulations[labels[1]];
    const Complex z1 = cfg.positions[labels[0]];
    const Complex z2 = cfg.positions[labels[1]];
    const Complex z3 = cfg.positions[labels[2]];

    // conserved impulse; z~2 - z~3 = M/(g1+g2) after the first Jacobi step
    const Complex M = g1 * z1 + g2 * z2 - (g1 + g2) * z3;

    ZeroReduction out;
    out.gauge.labels = labels;
    out.gauge.kappa1 = g1 * g2 / (g1 + g2);
    out.state.g1 = g1;
    out.state.g2 = g2;

    double pos_scale = std::abs(z1 - z2) + std::abs(z1 - z3) + std::abs(z2 - z3);
    if (std::abs(M) <= 1e-13 * std::abs(g1 + g2) * pos_scale) {
        out.gauge.degenerate = true;  // both outer momenta vanish
        out.gauge.lambda = Complex(1.0, 0.0);
        const Complex w = z1 - z2;
        out.state.X = w.real();
        out.state.Y = w.imag();
        return out;
    }
    // rotate/scale so the gauged outer separation is exactly -1
    out.gauge.lambda = -(g1 + g2) / M;
    const Complex w = out.gauge.lambda * (z1 - z2);
    out.state.X = w.real();
    out.state.Y = w.imag();
    return out;
}

namespace {

struct ZeroArgs {
    double a12, a13, a23;  // positive away from collisions
};

ZeroArgs zero_args(double X, double Y, double g1, double g2) {
    ZeroArgs a;
    a.a12 = X * X + Y * Y;
    const double u = g2 * (X - 1.0) - g1;
    a.a13 = u * u + g2 * g2 * Y * Y;
    const double v = g1 * (X + 1.0) + g2;
    a.a23 = v * v + g1 * g1 * Y * Y;
    return a;
}

void require_regular(const ZeroArgs& a) {
    if (a.a12 <= 0.0) throw SingularityError(0, 1, "h_zero singular at pair 1,2");
    if (a.a13 <= 0.0) throw SingularityError(0, 2, "h_zero singular at pair 1,3");
    if (a.a23 <= 0.0) throw SingularityError(1, 2, "h_zero singular at pair 2,3");
}

}  // namespace

double h_zero(double X, double Y, double g1, double g2) {
    const ZeroArgs a = zero_args(X, Y, g1, g2);
    require_regular(a);
    return -0.5 * g1 * g2 * std::log(a.a12) + 0.5 * (g1 + g2) * g1 * std::log(a.a13) +
           0.5 * (g1 + g2) * g2 * std::log(a.a23);
}

std::array<double, 3> zero_singular_x(double g1, double g2) {
    return {0.0, 1.0 + g1 / g2, -1.0 - g2 / g1};
}

PlanarGradient h_zero_gradient(double X, double Y, double g1, double g2) {
    const ZeroArgs a = zero_args(X, Y, g1, g2);
    require_regular(a);
    const double u = g2 * (X - 1.0) - g1;
    const double v = g1 * (X + 1.0) + g2;
    PlanarGradient d;
    d.hX = -g1 * g2 * X / a.a12 + (g1 + g2) * g1 * g2 * u / a.a13 + (g1 + g2) * g2 * g1 * v / a.a23;
    d.hY = -g1 * g2 * Y / a.a12 + (g1 + g2) * g1 * g2 * g2 * Y / a.a13 +
           (g1 + g2) * g2 * g1 * g1 * Y / a.a23;
    return d;
}

std::array<double, 2> zero_vector_field(const ZeroCircReducedState& s) {
    const double kappa1 = s.g1 * s.g2 / (s.g1 + s.g2);
    const PlanarGradient d = h_zero_gradient(s.X, s.Y, s.g1, s.g2);
    return {d.hY / kappa1, -d.hX / kappa1};
}

std::array<ZeroEquilibrium, 2> zero_equilibria(double g1, double g2) {
    if (g1 + g2 == 0.0) throw PreconditionError("zero_equilibria: leading pair sum must be nonzero");
    const double den = 2.0 * (g1 * g1 + g1 * g2 + g2 * g2);
    const double X = (g2 * g2 - g1 * g1) / den;
    const double Y = std::sqrt(3.0) * (g1 + g2) * (g1 + g2) / den;

    auto classify = [&](double x, double y) {
        // planar Hessian of h_zero by central differences; indefinite -> saddle
        const double e = 1e-5 * std::max(1.0, std::abs(x) + std::abs(y));
        auto h = [&](double xx, double yy) { return h_zero(xx, yy, g1, g2); };
        const double hxx = (h(x + e, y) - 2.0 * h(x, y) + h(x - e, y)) / (e * e);
        const double hyy = (h(x, y + e) - 2.0 * h(x, y) + h(x, y - e)) / (e * e);
        const double hxy =
            (h(x + e, y + e) - h(x + e, y - e) - h(x - e, y + e) + h(x - e, y - e)) / (4.0 * e * e);
        return hxx * hyy - hxy * hxy < 0.0;
    };
    ZeroEquilibrium plus{X, Y, classify(X, Y)};
    ZeroEquilibrium minus{X, -Y, plus.saddle};
    return {plus, minus};
}

double h_degenerate(double X, double Y, double g1, double g2) {
    const double r2 = X * X + Y * Y;
    if (r2 <= 0.0) throw SingularityError(0, 2, "h_degenerate: triple collision at the origin");
    return 0.5 * (g1 * g1 + g1 * g2 + g2 * g2) * std::log(r2);
}

VortexConfiguration reconstruct_zero(const ZeroCircReducedState& s, const ZeroGauge& gauge) {
    const double g1 = s.g1, g2 = s.g2, g3 = -(s.g1 + s.g2);
    const Complex w(s.X, s.Y);
    Complex z1g, z2g, z3g(0.0, 0.0);
    if (gauge.degenerate) {
        // impulse zero: z~2 coincides with z3 in the gauged frame
        z1g = g2 / (g1 + g2) * w;
        z2g = z1g - w;
    } else {
        // gauged outer separation is -1: g1 z1 + g2 z2 = -(g1+g2) with z3 = 0
        z1g = (-(g1 + g2) + g2 * w) / (g1 + g2);
        z2g = z1g - w;
    }
    const Complex inv = 1.0 / gauge.lambda;
    std::array<Complex, 3> z_slot{z1g * inv, z2g * inv, z3g * inv};
    std::vector<Complex> z(3);
    std::vector<double> g(3);
    const std::array<double, 3> g_slot{g1, g2, g3};
    for (int slot = 0; slot < 3; ++slot) {
        z[static_cast<std::size_t>(gauge.labels[static_cast<std::size_t>(slot)])] =
            z_slot[static_cast<std::size_t>(slot)];
        g[static_cast<std::size_t>(gauge.labels[static_cast<std::size_t>(slot)])] =
            g_slot[static_cast<std::size_t>(slot)];
    }
    return VortexConfiguration(z, g);
}

ZeroTrajectory integrate_zero(const ZeroCircReducedState& s0, double t0, double t1, double tol,
                              const ZeroIntegrationOptions& opts) {
    if (tol <= 0.0) throw PreconditionError("integrate_zero: tol must be positive");
    const double g1 = s0.g1, g2 = s0.g2;

    ZeroTrajectory traj;
    const double h0 = h_zero(s0.X, s0.Y, g1, g2);
    const double arg_scale =
        std::max({1.0, s0.X * s0.X + s0.Y * s0.Y});

    AdaptiveRK rk([&](double, const std::vector<double>& y, std::vector<double>& dy) {
        const auto f = zero_vector_field({y[0], y[1], g1, g2});
        dy.assign(f.begin(), f.end());
    });

    bool singular_stop = false;
    const bool record_all = opts.sample_times.empty();

    auto record_sample = [&](double t, double X, double Y) {
        traj.times.push_back(t);
        traj.states.push_back({X, Y});
        traj.h.push_back(h_zero(X, Y, g1, g2));
    };

    auto observe = [&](double t, const std::vector<double>& y) -> StepStatus {
        const ZeroArgs a = zero_args(y[0], y[1], g1, g2);
        traj.t_end = t;
        if (std::min({a.a12, a.a13, a.a23}) <= opts.singularity_floor * arg_scale) {
            singular_stop = true;
            return StepStatus::Stop;
        }
        traj.max_drift_h = std::max(
            traj.max_drift_h, std::abs(h_zero(y[0], y[1], g1, g2) - h0) / std::max(1.0, std::abs(h0)));
        if (record_all) record_sample(t, y[0], y[1]);
        return StepStatus::Continue;
    };

    std::vector<double> y{s0.X, s0.Y};
    OdeOutcome outcome = OdeOutcome::Completed;
    if (record_all) {
        outcome = rk.run(y, t0, t1, tol, observe);
    } else {
        double t = t0;
        bool first = true;
        for (double ts : opts.sample_times) {
            if (first && ts == t0) {
                record_sample(t0, y[0], y[1]);
                first = false;
                continue;
            }
            first = false;
            outcome = rk.run(y, t, ts, tol, observe);
            t = ts;
            if (outcome != OdeOutcome::Completed) break;
            record_sample(ts, y[0], y[1]);
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
            throw IntegrationError("integrate_zero: state became nonfinite");
        case OdeOutcome::StepUnderflow:
            traj.reason = StopReason::StepUnderflow;
            break;
    }
    return traj;
}

}  // namespace trivortex
