#include "trivortex/portrait.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>

#include "trivortex/ode.hpp"
#include "trivortex/parallel.hpp"

namespace trivortex {

int Portrait::homoclinic_count() const {
    int n = 0;
    for (const auto& c : curves) n += c.kind == CurveKind::Homoclinic;
    return n;
}
int Portrait::heteroclinic_count() const {
    int n = 0;
    for (const auto& c : curves) n += c.kind == CurveKind::Heteroclinic;
    return n;
}
int Portrait::saddle_count() const {
    int n = 0;
    for (const auto& e : equilibria) n += e.classification == StabilityKind::Saddle;
    return n;
}
int Portrait::periodic_family_count() const {
    int centers = 0;
    for (const auto& e : equilibria) centers += e.classification == StabilityKind::Center;
    centers += static_cast<int>(singular_points.size());
    if (theta == 0.0 && !collapse_mode && !singular_equator) centers += 1;  // apex family
    return centers;
}

namespace {

using Point3 = std::array<double, 3>;

struct Geometry {
    Circulations c;
    double theta = 0;
    double k = 0;      // 4 gamma3 / gamma1
    double s = 0;      // sqrt(|k|)
    double scale = 1;  // |theta|, or 1 on the cone

    Point3 normalized(const Point3& p) const {
        return {s * p[0] / scale, s * p[1] / scale, p[2] / scale};
    }
    double dist(const Point3& a, const Point3& b) const {
        const Point3 na = normalized(a), nb = normalized(b);
        return std::hypot(na[0] - nb[0], na[1] - nb[1], na[2] - nb[2]);
    }
    double radius(const Point3& a) const {
        const Point3 na = normalized(a);
        return std::hypot(na[0], na[1], na[2]);
    }
    ReducedState state(const Point3& p) const { return {p[0], p[1], p[2], theta, c}; }

    void project(Point3& p) const {
        for (int it = 0; it < 4; ++it) {
            const double res = p[2] * p[2] + k * (p[0] * p[0] + p[1] * p[1]) - theta * theta;
            const double gx = 2.0 * k * p[0], gy = 2.0 * k * p[1], gz = 2.0 * p[2];
            const double n2 = gx * gx + gy * gy + gz * gz;
            if (n2 == 0.0) return;
            p[0] -= res * gx / n2;
            p[1] -= res * gy / n2;
            p[2] -= res * gz / n2;
        }
    }
};

Geometry make_geometry(const Circulations& c, double theta) {
    const SymmetricInvariants g = symmetric_invariants(c);
    Geometry geo;
    geo.c = c;
    geo.theta = theta;
    geo.k = 4.0 * g.gamma3 / g.gamma1;
    geo.s = std::sqrt(std::abs(geo.k));
    geo.scale = theta != 0.0 ? std::abs(theta) : 1.0;
    return geo;
}

enum class StopKind { TimeOut, Captured, Escaped, Singular };

struct RunResult {
    StopKind stop = StopKind::TimeOut;
    int target = -1;
    std::vector<Point3> samples;
    double t_stop = 0;
};

/// Integrates the reduced field from p0 (backwards when t_max < 0),
/// capturing at saddles (outside an arming radius around the start),
/// stopping on escape or approach to a collision point.
RunResult run_orbit(const Geometry& geo, const Point3& p0, double t_max, double tol,
                    const std::vector<Point3>& capture_points, double capture_radius,
                    double arm_radius, double escape_radius) {
    RunResult out;
    AdaptiveRK rk([&](double, const std::vector<double>& y, std::vector<double>& dy) {
        const auto f = reduced_vector_field(geo.state({y[0], y[1], y[2]}));
        dy.assign(f.begin(), f.end());
    });
    bool armed = arm_radius <= 0.0;
    const double arg_scale = geo.scale * geo.scale;
    auto observer = [&](double t, const std::vector<double>& y) -> StepStatus {
        const Point3 p{y[0], y[1], y[2]};
        out.samples.push_back(p);
        out.t_stop = t;
        const LogArguments a = log_arguments(geo.state(p));
        for (int q = 0; q < 3; ++q)
            if (a.sigma[q] * a.value[q] <= 1e-10 * arg_scale) {
                out.stop = StopKind::Singular;
                return StepStatus::Stop;
            }
        if (geo.radius(p) > escape_radius) {
            out.stop = StopKind::Escaped;
            return StepStatus::Stop;
        }
        if (!armed && !capture_points.empty() && geo.dist(p, p0) > arm_radius) armed = true;
        if (armed) {
            for (std::size_t kx = 0; kx < capture_points.size(); ++kx) {
                if (geo.dist(p, capture_points[kx]) < capture_radius) {
                    out.target = static_cast<int>(kx);
                    out.stop = StopKind::Captured;
                    return StepStatus::Stop;
                }
            }
        }
        return StepStatus::Continue;
    };
    std::vector<double> y{p0[0], p0[1], p0[2]};
    rk.run(y, 0.0, t_max, tol, observer);
    return out;
}

struct SaddleInfo {
    int equilibrium_index = -1;
    Point3 point{};
    double lambda = 0;
    Point3 unstable{}, stable{};
};

std::optional<SaddleInfo> saddle_info(const Equilibrium& e, int index) {
    if (e.classification != StabilityKind::Saddle) return std::nullopt;
    const Eigen::Matrix3d m = reduced_jacobian(e.state);
    Eigen::EigenSolver<Eigen::Matrix3d> es(m);
    SaddleInfo info;
    info.equilibrium_index = index;
    info.point = {e.state.X, e.state.Y, e.state.Z};
    int iu = 0, is = 0;
    for (int k = 1; k < 3; ++k) {
        if (es.eigenvalues()(k).real() > es.eigenvalues()(iu).real()) iu = k;
        if (es.eigenvalues()(k).real() < es.eigenvalues()(is).real()) is = k;
    }
    info.lambda = es.eigenvalues()(iu).real();
    if (info.lambda <= 0.0) return std::nullopt;
    for (int r = 0; r < 3; ++r) {
        info.unstable[r] = es.eigenvectors()(r, iu).real();
        info.stable[r] = es.eigenvectors()(r, is).real();
    }
    auto normalize = [](Point3& v) {
        const double n = std::hypot(v[0], v[1], v[2]);
        for (auto& x : v) x /= n;
    };
    normalize(info.unstable);
    normalize(info.stable);
    return info;
}

void thin_samples(std::vector<Point3>& samples, std::size_t cap = 4000) {
    if (samples.size() <= cap) return;
    std::vector<Point3> out;
    const std::size_t stride = samples.size() / cap + 1;
    for (std::size_t i = 0; i < samples.size(); i += stride) out.push_back(samples[i]);
    out.push_back(samples.back());
    samples.swap(out);
}

struct BranchSetup {
    SaddleInfo saddle;
    Point3 direction{};
    bool forward = true;
};

OrbitCurve run_branch(const Geometry& geo, const BranchSetup& b, const PortraitSpec& spec,
                      const std::vector<SaddleInfo>& saddles,
                      const std::vector<double>& saddle_h, Portrait* portrait_counts) {
    const double eps = spec.launch_offset * geo.scale;
    Point3 p0 = b.saddle.point;
    for (int r = 0; r < 3; ++r) p0[r] += eps * b.direction[r];
    geo.project(p0);

    std::vector<Point3> capture;
    capture.reserve(saddles.size());
    for (const auto& s : saddles) capture.push_back(s.point);
    const double capture_radius = std::max(100.0 * spec.launch_offset, 1e-5);
    const double t_max = 1500.0 / std::max(b.saddle.lambda, 1e-3);

    const double h_source = reduced_hamiltonian(geo.state(b.saddle.point));
    RunResult res = run_orbit(geo, p0, b.forward ? t_max : -t_max, spec.tol, capture,
                              capture_radius, 3.0 * capture_radius, spec.escape_radius);

    OrbitCurve curve;
    curve.samples = std::move(res.samples);
    thin_samples(curve.samples);
    curve.h_level = h_source;
    curve.from_equilibrium = b.saddle.equilibrium_index;
    if (res.stop == StopKind::Captured &&
        std::abs(saddle_h[static_cast<std::size_t>(res.target)] - h_source) <=
            1e-9 * std::max(1.0, std::abs(h_source))) {
        curve.to_equilibrium = saddles[static_cast<std::size_t>(res.target)].equilibrium_index;
        curve.kind = curve.to_equilibrium == curve.from_equilibrium ? CurveKind::Homoclinic
                                                                    : CurveKind::Heteroclinic;
    } else {
        curve.kind = CurveKind::Unbounded;
        if (portrait_counts) portrait_counts->unbounded_branches++;
    }
    return curve;
}

std::optional<OrbitCurve> run_periodic(const Geometry& geo, const Point3& seed, double tol,
                                       double escape_radius, int family) {
    const ReducedState s0 = geo.state(seed);
    std::array<double, 3> v0{};
    try {
        v0 = reduced_vector_field(s0);
    } catch (const SingularityError&) {
        return std::nullopt;
    }
    const double vnorm = std::hypot(v0[0], v0[1], v0[2]);
    if (vnorm < 1e-300) return std::nullopt;

    OrbitCurve curve;
    curve.kind = CurveKind::Periodic;
    curve.family = family;
    curve.h_level = reduced_hamiltonian(s0);

    AdaptiveRK rk([&](double, const std::vector<double>& y, std::vector<double>& dy) {
        const auto f = reduced_vector_field(geo.state({y[0], y[1], y[2]}));
        dy.assign(f.begin(), f.end());
    });

    const Point3 n{v0[0] / vnorm, v0[1] / vnorm, v0[2] / vnorm};
    const double band = 0.35 * std::max(geo.dist(seed, {0, 0, 0}), 1e-3) + 1e-6;
    double prev_side = 0.0;
    bool armed = false;
    bool closed = false, escaped = false, singular = false;
    const double arg_scale = geo.scale * geo.scale;

    auto observer = [&](double t, const std::vector<double>& y) -> StepStatus {
        const Point3 p{y[0], y[1], y[2]};
        curve.samples.push_back(p);
        const LogArguments a = log_arguments(geo.state(p));
        for (int q = 0; q < 3; ++q)
            if (a.sigma[q] * a.value[q] <= 1e-11 * arg_scale) {
                singular = true;
                return StepStatus::Stop;
            }
        if (geo.radius(p) > escape_radius) {
            escaped = true;
            return StepStatus::Stop;
        }
        const double side =
            (p[0] - seed[0]) * n[0] + (p[1] - seed[1]) * n[1] + (p[2] - seed[2]) * n[2];
        const double away = geo.dist(p, seed);
        if (!armed && away > 3e-3 * std::max(1.0, geo.radius(seed))) armed = true;
        if (armed && prev_side < 0.0 && side >= 0.0 && away < band) {
            closed = true;
            curve.period = t;
            return StepStatus::Stop;
        }
        prev_side = side;
        return StepStatus::Continue;
    };

    // generous cap: many multiples of the seed's characteristic turnover time
    const double t_cap = 2000.0 * std::max(geo.radius(seed), 0.1) * geo.scale / (geo.s * vnorm + 1e-300) + 2000.0;
    std::vector<double> y{seed[0], seed[1], seed[2]};
    rk.run(y, 0.0, t_cap, tol, observer);
    thin_samples(curve.samples);
    if (closed) return curve;
    if (escaped || singular) {
        curve.kind = CurveKind::Unbounded;
        return curve;
    }
    return std::nullopt;  // did not close within budget; drop rather than mislabel
}

}  // namespace

std::vector<OrbitCurve> separatrices(const Equilibrium& eq, const PortraitSpec& spec) {
    if (eq.classification != StabilityKind::Saddle)
        throw PreconditionError("separatrices: equilibrium is not a saddle");
    const Geometry geo = make_geometry(eq.state.circulations, eq.state.theta);
    const auto info = saddle_info(eq, 0);
    if (!info) throw PreconditionError("separatrices: no unstable direction found");
    std::vector<SaddleInfo> saddles{*info};
    const std::vector<double> saddle_h{reduced_hamiltonian(eq.state)};
    std::vector<OrbitCurve> out;
    for (const bool forward : {true, false}) {
        const Point3 dir0 = forward ? info->unstable : info->stable;
        for (const double sign : {1.0, -1.0}) {
            BranchSetup b{*info, {sign * dir0[0], sign * dir0[1], sign * dir0[2]}, forward};
            out.push_back(run_branch(geo, b, spec, saddles, saddle_h, nullptr));
        }
    }
    return out;
}

namespace {

/// Equilibria of the reduced flow that live on the requested sheet.
std::vector<Equilibrium> sheet_equilibria(const Circulations& c, double theta) {
    std::vector<Equilibrium> out;
    if (theta == 0.0) return out;  // everything scales with Theta: only the apex remains
    const SymmetricInvariants g = symmetric_invariants(c);
    for (const auto& e : collinear_equilibria(c, theta))
        if (e.state.theta == theta) out.push_back(e);
    if (g.gamma2 != 0.0) {
        const EquilateralPair tri = equilateral_equilibria(c, theta);
        if (!tri.at_infinity) {
            for (const auto& st : tri.states)
                if (on_physical_sheet(st)) out.push_back(classify_equilibrium(st, EquilibriumKind::Equilateral));
        }
    }
    return out;
}

std::vector<SingularPoint> sheet_singularities(const Circulations& c, double theta) {
    std::vector<SingularPoint> out;
    if (theta == 0.0) return out;  // collapsed onto the cone apex
    for (const auto& p : singularities(c, theta)) {
        if (!p.finite) continue;
        const ReducedState st{p.X, p.Y, p.Z, theta, c};
        if (on_physical_sheet(st)) out.push_back(p);
    }
    return out;
}

}  // namespace

Portrait sample_portrait(const PortraitSpec& spec) {
    const Circulations& c = spec.circulations;
    const SymmetricInvariants g = symmetric_invariants(c);
    if (g.gamma1 == 0.0)
        throw PreconditionError("sample_portrait: gamma1 = 0 belongs to the zero-circulation chart");

    Portrait out;
    out.circulations = c;
    out.theta = spec.theta;
    out.surface = classify_surface(c, spec.theta);
    out.projection = spec.projection_explicit
                         ? spec.projection
                         : (out.surface == SurfaceKind::Spheroid ? Projection::SphereFrontBack
                                                                 : Projection::PlaneXY);
    if (out.projection == Projection::SphereFrontBack && out.surface != SurfaceKind::Spheroid)
        throw PreconditionError("sample_portrait: sphere projection requires a spheroid surface");

    {  // bifurcation-boundary warning, from the normalized circulations
        const double s2 = g.gamma2 / (g.gamma1 * g.gamma1);
        const double s3 = g.gamma3 / (g.gamma1 * g.gamma1 * g.gamma1);
        const double quartic = 32.0 * s2 - 36.0 * s3 - 3.0 * s2 * s2;
        out.boundary_warning = std::abs(s2) < 1e-9 || std::abs(quartic) < 1e-9;
    }

    const Geometry geo = make_geometry(c, spec.theta);
    const double gscale = std::max({std::abs(c.g1), std::abs(c.g2), std::abs(c.g3)});
    out.collapse_mode =
        spec.theta == 0.0 && std::abs(g.gamma2) <= 1e-12 * gscale * gscale;

    out.equilibria = sheet_equilibria(c, spec.theta);
    out.singular_points = sheet_singularities(c, spec.theta);

    if (spec.theta == 0.0) {
        // a vanishing log argument on the cone marks a singular equator
        const double zc = std::sqrt(std::max(-geo.k, 0.0));
        for (const double x : {1.0, -1.0}) {
            const ReducedState probe{x, 0.0, zc, 0.0, c};
            const LogArguments a = log_arguments(probe);
            for (int q = 0; q < 3; ++q)
                if (a.sigma[q] * a.value[q] <= 1e-12) out.singular_equator = true;
        }
    }

    if (out.collapse_mode) {
        // level sets are rays through the apex
        const int m = std::max(8, 4 * spec.orbit_count);
        for (int kray = 0; kray < m; ++kray) {
            const double ang = 2.0 * M_PI * kray / m;
            OrbitCurve ray;
            ray.kind = CurveKind::Ray;
            const double zfac = std::sqrt(std::max(-geo.k, 0.0));
            for (double r = 0.05; r <= 1.2; r += 0.025) {
                ray.samples.push_back({r * std::cos(ang), r * std::sin(ang), zfac * r});
            }
            try {
                const auto& pmid = ray.samples[ray.samples.size() / 2];
                ray.h_level = reduced_hamiltonian(geo.state(pmid));
            } catch (const SingularityError&) {
                continue;  // ray lies in the singular locus
            }
            out.curves.push_back(std::move(ray));
        }
        return out;
    }

    // separatrices from every saddle: two unstable branches each
    std::vector<SaddleInfo> saddles;
    std::vector<double> saddle_h;
    for (std::size_t i = 0; i < out.equilibria.size(); ++i) {
        auto info = saddle_info(out.equilibria[i], static_cast<int>(i));
        if (info) {
            saddles.push_back(*info);
            saddle_h.push_back(reduced_hamiltonian(out.equilibria[i].state));
        }
    }
    std::vector<BranchSetup> branches;
    if (spec.separatrices) {
        for (const auto& s : saddles)
            for (const double sign : {1.0, -1.0})
                branches.push_back(
                    {s, {sign * s.unstable[0], sign * s.unstable[1], sign * s.unstable[2]}, true});
    }
    std::vector<OrbitCurve> branch_curves(branches.size());
    parallel_for(branches.size(), [&](std::size_t i) {
        branch_curves[i] = run_branch(geo, branches[i], spec, saddles, saddle_h, nullptr);
    });
    for (auto& bc : branch_curves) {
        if (bc.kind == CurveKind::Unbounded) out.unbounded_branches++;
        out.curves.push_back(std::move(bc));
    }

    // periodic families: seeds between each center and its nearest
    // neighbouring critical point, equally spaced to avoid accumulation
    struct Center {
        Point3 p;
        int family;
    };
    std::vector<Center> centers;
    std::vector<Point3> criticals;
    for (const auto& e : out.equilibria) criticals.push_back({e.state.X, e.state.Y, e.state.Z});
    for (const auto& sp : out.singular_points) criticals.push_back({sp.X, sp.Y, sp.Z});
    int family = 0;
    for (const auto& e : out.equilibria) {
        if (e.classification == StabilityKind::Center)
            centers.push_back({{e.state.X, e.state.Y, e.state.Z}, family});
        ++family;
    }
    for (const auto& sp : out.singular_points) centers.push_back({{sp.X, sp.Y, sp.Z}, family++});
    if (spec.theta == 0.0 && !out.singular_equator) {
        const double zfac = std::sqrt(std::max(-geo.k, 0.0));
        centers.push_back({{0.0, 0.0, 0.0}, family++});
        criticals.push_back({geo.scale, 0.0, zfac * geo.scale});
    }

    std::vector<Point3> seeds;
    std::vector<int> seed_family;
    for (const auto& ctr : centers) {
        // nearest distinct critical point sets the extent of the family
        double best = std::numeric_limits<double>::infinity();
        Point3 target{ctr.p[0] + 0.6 * geo.scale, ctr.p[1], ctr.p[2]};
        for (const auto& q : criticals) {
            const double d = geo.dist(ctr.p, q);
            if (d > 1e-9 && d < best) {
                best = d;
                target = q;
            }
        }
        const int n = std::max(1, spec.orbit_count);
        for (int kseed = 1; kseed <= n; ++kseed) {
            const double f = 0.85 * kseed / (n + 0.0) ;
            Point3 p{ctr.p[0] + f * (target[0] - ctr.p[0]), ctr.p[1] + f * (target[1] - ctr.p[1]),
                     ctr.p[2] + f * (target[2] - ctr.p[2])};
            geo.project(p);
            seeds.push_back(p);
            seed_family.push_back(ctr.family);
        }
    }
    std::vector<std::optional<OrbitCurve>> periodic(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        periodic[i] = run_periodic(geo, seeds[i], spec.tol, spec.escape_radius, seed_family[i]);
    });
    for (auto& oc : periodic)
        if (oc) out.curves.push_back(std::move(*oc));

    // deterministic emission order
    std::sort(out.curves.begin(), out.curves.end(), [](const OrbitCurve& a, const OrbitCurve& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.h_level != b.h_level) return a.h_level < b.h_level;
        return a.family < b.family;
    });
    return out;
}

CollapseReport collapse_analysis(const Circulations& c, double X, double Y) {
    const SymmetricInvariants g = symmetric_invariants(c);
    const double gscale = std::max({std::abs(c.g1), std::abs(c.g2), std::abs(c.g3)});
    if (std::abs(g.gamma2) > 1e-12 * gscale * gscale)
        throw PreconditionError("collapse_analysis: gamma2 must vanish");
    if (g.gamma3 >= 0.0) throw PreconditionError("collapse_analysis: expected gamma3 < 0");

    CollapseReport rep;
    rep.r0 = std::hypot(X, Y);
    rep.theta0 = std::atan2(Y, X);
    if (rep.r0 <= 0.0) throw PreconditionError("collapse_analysis: state at the apex");

    const double k = 4.0 * g.gamma3 / g.gamma1;
    const double zfac = std::sqrt(-k);
    const ReducedState s{X, Y, zfac * rep.r0, 0.0, c};

    const auto f = reduced_vector_field(s);
    rep.drdt_field = (X * f[0] + Y * f[1]) / rep.r0;
    rep.drdt_formula = 2.0 * std::sqrt(3.0) * std::sin(2.0 * rep.theta0) /
                       (3.0 * std::cos(2.0 * rep.theta0) - 5.0);

    // cone-form Hamiltonian check, additive constant removed by differencing
    // against a reference angle
    auto h_at = [&](double ang, double r) {
        const ReducedState st{r * std::cos(ang), r * std::sin(ang), zfac * r, 0.0, c};
        return reduced_hamiltonian(st);
    };
    auto h_formula = [&](double ang) {
        const double cx = std::cos(ang), sy = std::sin(ang);
        return std::log((cx * cx + 4.0 * sy * sy) / (cx * cx + sy * sy)) / 9.0;
    };
    const double ref_ang = 1.0;
    rep.hamiltonian_residual = std::abs((h_at(rep.theta0, rep.r0) - h_at(ref_ang, rep.r0)) -
                                        (h_formula(rep.theta0) - h_formula(ref_ang)));
    rep.scale_invariance_residual = std::abs(h_at(rep.theta0, rep.r0) - h_at(rep.theta0, 2.0 * rep.r0));

    rep.t_star = rep.drdt_field < 0.0 ? -rep.r0 / rep.drdt_field
                                      : std::numeric_limits<double>::infinity();

    if (rep.drdt_field < 0.0) {
        ReducedIntegrationOptions opts;
        opts.singularity_floor = 1e-10;
        const ReducedTrajectory tr = integrate_reduced(s, 0.0, 3.0 * rep.t_star, 1e-12, opts);
        const auto& last = tr.states.back();
        const double r_end = std::hypot(last[0], last[1]);
        rep.t_collapse_measured = tr.t_end * rep.r0 / (rep.r0 - r_end);
        double drift = 0.0;
        for (const auto& st : tr.states) {
            double dth = std::atan2(st[1], st[0]) - rep.theta0;
            while (dth > M_PI) dth -= 2.0 * M_PI;
            while (dth < -M_PI) dth += 2.0 * M_PI;
            drift = std::max(drift, std::abs(dth));
        }
        rep.profile_drift = drift;
    }
    return rep;
}

}  // namespace trivortex
