#include "trivortex/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace trivortex {

Eigen::Matrix3d reduced_jacobian(const ReducedState& s) {
    const ReducedPartials d = reduced_partials(s);
    const SymmetricInvariants g = symmetric_invariants(s.circulations);
    const double q = g.gamma1 / g.gamma3;
    Eigen::Matrix3d m;
    m << -4.0 * d.hXZ * s.Y, -4.0 * d.hZ, -4.0 * d.hZZ * s.Y,
        -q * d.hXX * s.Z + 4.0 * (d.hXZ * s.X + d.hZ), 0.0,
        -q * (d.hX + d.hXZ * s.Z) + 4.0 * d.hZZ * s.X,
        4.0 * d.hXX * s.Y, 4.0 * d.hX, 4.0 * d.hXZ * s.Y;
    return m;
}

namespace {

/// chi(lambda) = -lambda^3 - r lambda for a trace-free Jacobian with
/// vanishing determinant; r is the sum of the principal 2x2 minors.
double characteristic_r(const Eigen::Matrix3d& m) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
           m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
}

Equilibrium make_equilibrium(const ReducedState& s, EquilibriumKind kind, double r,
                             double scale) {
    Equilibrium e;
    e.state = s;
    e.kind = kind;
    e.r = r;
    const double lam2 = -r;
    if (std::abs(lam2) < 1e-10 * std::max(1.0, scale)) {
        e.classification = StabilityKind::Degenerate;
        e.eigenvalues = {0.0, 0.0, 0.0};
    } else if (lam2 > 0.0) {
        e.classification = StabilityKind::Saddle;
        const double l = std::sqrt(lam2);
        e.eigenvalues = {0.0, l, -l};
    } else {
        e.classification = StabilityKind::Center;
        const double l = std::sqrt(-lam2);
        e.eigenvalues = {0.0, std::complex<double>(0, l), std::complex<double>(0, -l)};
    }
    return e;
}

}  // namespace

Equilibrium classify_equilibrium(const ReducedState& s, EquilibriumKind kind) {
    const Eigen::Matrix3d m = reduced_jacobian(s);
    return make_equilibrium(s, kind, characteristic_r(m), m.squaredNorm());
}

EquilateralPair equilateral_equilibria(const Circulations& c, double theta) {
    const SymmetricInvariants g = symmetric_invariants(c);
    EquilateralPair out;
    if (g.gamma2 == 0.0 || c.g1 + c.g2 == 0.0) {
        out.at_infinity = true;
        return out;
    }
    const double pre = theta / g.gamma2;
    const double X = pre * (c.g1 - c.g2) * g.gamma1 / (2.0 * (c.g1 + c.g2));
    const double Y = pre * std::sqrt(3.0) * g.gamma1 / 2.0;
    const double Z =
        pre * (c.g1 * c.g2 - (c.g1 * c.g1 + c.g2 * c.g2) * c.g3 / (c.g1 + c.g2));
    out.states[0] = ReducedState{X, Y, Z, theta, c};
    out.states[1] = ReducedState{X, -Y, Z, theta, c};
    return out;
}

Equilibrium tri_stability(const Circulations& c, double theta) {
    const SymmetricInvariants g = symmetric_invariants(c);
    if (g.gamma2 == 0.0) throw PreconditionError("tri_stability: gamma2 = 0, equilibria at infinity");
    if (theta == 0.0) throw PreconditionError("tri_stability: Theta must be nonzero");
    const EquilateralPair pair = equilateral_equilibria(c, theta);
    if (pair.at_infinity)
        throw PreconditionError("tri_stability: equilateral equilibria at infinity");
    const double r = 3.0 * std::pow(g.gamma2, 3) / (theta * theta * g.gamma1 * g.gamma1);
    return make_equilibrium(pair.states[0], EquilibriumKind::Equilateral, r, std::abs(r));
}

// ---------------------------------------------------------------------------
// exact elimination pipeline for the collinear family
// ---------------------------------------------------------------------------

namespace {

using RPoly = UniPoly<Rational>;
using RBi = BiPoly<Rational>;  // outer variable X, inner variable Z

RBi linear_xz(const Rational& cx, const Rational& cz, const Rational& c0) {
    return RBi(std::vector<RPoly>{RPoly{c0, cz}, RPoly{cx}});
}

RBi rat_scale(const Rational& s, const RBi& p) {
    std::vector<RPoly> c;
    c.reserve(p.coefficients().size());
    for (const auto& q : p.coefficients()) c.push_back(s * q);
    return RBi(std::move(c));
}

struct ExactFamily {
    Rational g1, g2, g3, th;
    Rational gamma1, gamma2, gamma3;
    RBi F;  // quadric restricted to Y = 0
    RBi G;  // numerator of dY/dt at Y = 0
    RBi A12, A13, A23;
    // second-derivative numerators, built on demand for the stability system
    RBi HX, HZ;
};

ExactFamily exact_family(const Rational& g1, const Rational& g2, const Rational& g3,
                         const Rational& th) {
    ExactFamily f;
    f.g1 = g1;
    f.g2 = g2;
    f.g3 = g3;
    f.th = th;
    f.gamma1 = g1 + g2 + g3;
    f.gamma2 = g1 * g2 + g3 * g1 + g2 * g3;
    f.gamma3 = g1 * g2 * g3;
    if (f.gamma1 == 0 || f.gamma3 == 0)
        throw PreconditionError("collinear elimination: gamma1 and gamma3 must be nonzero");

    const Rational b13 = g2 * g3 - f.gamma1 * g1;
    const Rational b23 = g1 * g3 - f.gamma1 * g2;
    f.A12 = linear_xz(0, 1, th);
    f.A13 = linear_xz(4 * f.gamma3, b13, (g1 + g2) * (g1 + g3) * th);
    f.A23 = linear_xz(-4 * f.gamma3, b23, (g1 + g2) * (g2 + g3) * th);

    const Rational c12 = g1 * g2, c13 = g1 * g3, c23 = g2 * g3;
    const Rational half(1, 2);
    const RBi m1223 = f.A12 * f.A23;
    const RBi m1213 = f.A12 * f.A13;
    const RBi m1323 = f.A13 * f.A23;
    f.HX = rat_scale(-half * c13 * 4 * f.gamma3, m1223) + rat_scale(half * c23 * 4 * f.gamma3, m1213);
    f.HZ = rat_scale(-half * c12, m1323) + rat_scale(-half * c13 * b13, m1223) +
           rat_scale(-half * c23 * b23, m1213);

    const RBi Xv = bipoly_x<Rational>();
    const RBi Zv = linear_xz(0, 1, 0);
    f.G = rat_scale(4, Xv * f.HZ) - rat_scale(f.gamma1 / f.gamma3, Zv * f.HX);
    const Rational mth2 = -th * th;
    f.F = RBi(std::vector<RPoly>{RPoly{mth2, Rational(0), Rational(1)}, RPoly{},
                                 RPoly{4 * f.gamma3 / f.gamma1}});
    return f;
}

/// Numerator of the stability scalar r, cleared by P^3 = (A12 A13 A23)^3.
RBi stability_numerator(const ExactFamily& f) {
    const Rational half(1, 2);
    const Rational c12 = f.g1 * f.g2, c13 = f.g1 * f.g3, c23 = f.g2 * f.g3;
    const Rational a13 = 4 * f.gamma3, a23 = -4 * f.gamma3;
    const Rational b13 = f.g2 * f.g3 - f.gamma1 * f.g1;
    const Rational b23 = f.g1 * f.g3 - f.gamma1 * f.g2;
    const RBi m1223 = f.A12 * f.A23;
    const RBi m1213 = f.A12 * f.A13;
    const RBi m1323 = f.A13 * f.A23;
    const RBi sq1223 = m1223 * m1223;
    const RBi sq1213 = m1213 * m1213;
    const RBi sq1323 = m1323 * m1323;
    const RBi HXX = rat_scale(half * c13 * a13 * a13, sq1223) + rat_scale(half * c23 * a23 * a23, sq1213);
    const RBi HXZ = rat_scale(half * c13 * a13 * b13, sq1223) + rat_scale(half * c23 * a23 * b23, sq1213);
    const RBi HZZ = rat_scale(half * c12, sq1323) + rat_scale(half * c13 * b13 * b13, sq1223) +
                    rat_scale(half * c23 * b23 * b23, sq1213);
    const RBi P = m1213 * f.A23;
    const RBi Xv = bipoly_x<Rational>();
    const RBi Zv = linear_xz(0, 1, 0);
    const RBi t1 = f.HX * f.HX * P + f.HX * HXZ * Zv - HXX * f.HZ * Zv;
    const RBi t2 = HXZ * f.HZ * Xv + f.HZ * f.HZ * P - f.HX * HZZ * Xv;
    return rat_scale(4 * f.gamma1 / f.gamma3, t1) + rat_scale(16, t2);
}

struct CubicExtraction {
    RPoly rho;  // full resultant in Z
    RPoly p3;   // after stripping the singularity factors
};

CubicExtraction extract_p3(const ExactFamily& f) {
    CubicExtraction out;
    out.rho = resultant(f.F, f.G);
    if (out.rho.is_zero())
        throw Error("collinear elimination: resultant vanished identically");
    out.p3 = out.rho;
    std::vector<Rational> singular_z{-f.th};
    const Rational d13 = (f.g1 + f.g2) * (f.g1 + f.g3);
    const Rational d23 = (f.g1 + f.g2) * (f.g2 + f.g3);
    if (d13 != 0) singular_z.push_back((f.gamma1 * f.g1 - f.g2 * f.g3) * f.th / d13);
    if (d23 != 0) singular_z.push_back((f.gamma1 * f.g2 - f.g1 * f.g3) * f.th / d23);
    for (const Rational& zs : singular_z) {
        const Rational mz = -zs;
        auto [q, rem] = out.p3.divrem(RPoly{mz, Rational(1)});
        if (rem.is_zero() && !q.is_zero()) out.p3 = q;
    }
    return out;
}

double vector_field_residual(const ReducedState& s) {
    const auto fld = reduced_vector_field(s);
    const ReducedGradient g = reduced_gradient(s);
    const double scale = (std::abs(g.hX) + std::abs(g.hZ) + 1.0) *
                         (std::abs(s.X) + std::abs(s.Y) + std::abs(s.Z) + std::abs(s.theta));
    return std::max({std::abs(fld[0]), std::abs(fld[1]), std::abs(fld[2])}) / std::max(scale, 1e-300);
}

/// dY/dt and the quadric at Y = 0, plus their (X, Z) Jacobian.
struct CollinearSystem {
    double g = 0, q = 0;
    double gX = 0, gZ = 0, qX = 0, qZ = 0;
};

CollinearSystem collinear_system(const ReducedState& s) {
    const ReducedPartials d = reduced_partials(s);
    const SymmetricInvariants gg = symmetric_invariants(s.circulations);
    const double ratio = gg.gamma1 / gg.gamma3;
    const double k = 4.0 * gg.gamma3 / gg.gamma1;
    CollinearSystem sys;
    sys.g = 4.0 * d.hZ * s.X - ratio * d.hX * s.Z;
    sys.gX = 4.0 * (d.hZ + s.X * d.hXZ) - ratio * d.hXX * s.Z;
    sys.gZ = 4.0 * s.X * d.hZZ - ratio * (d.hX + d.hXZ * s.Z);
    sys.q = s.Z * s.Z + k * s.X * s.X - s.theta * s.theta;
    sys.qX = 2.0 * k * s.X;
    sys.qZ = 2.0 * s.Z;
    return sys;
}

bool newton_refine_collinear(ReducedState& s, int iters = 30) {
    for (int it = 0; it < iters; ++it) {
        CollinearSystem sys;
        try {
            sys = collinear_system(s);
        } catch (const SingularityError&) {
            return false;
        }
        const double det = sys.gX * sys.qZ - sys.gZ * sys.qX;
        if (det == 0.0) return false;
        const double dX = (sys.g * sys.qZ - sys.gZ * sys.q) / det;
        const double dZ = (sys.gX * sys.q - sys.g * sys.qX) / det;
        s.X -= dX;
        s.Z -= dZ;
        const double scale = std::abs(s.X) + std::abs(s.Z) + std::abs(s.theta);
        if (std::abs(dX) + std::abs(dZ) < 1e-15 * std::max(scale, 1e-300)) break;
    }
    return true;
}

/// Moves an algebraic solution onto the sheet where it is physically
/// admissible; (X, Z, Theta) -> (-X, -Z, -Theta) maps flows to flows.
ReducedState admissible_representative(const ReducedState& s) {
    if (on_physical_sheet(s)) return s;
    ReducedState m = s;
    m.X = -s.X;
    m.Z = -s.Z;
    m.theta = -s.theta;
    return m;
}

}  // namespace

std::vector<Equilibrium> collinear_equilibria(const Circulations& c, double theta) {
    const SymmetricInvariants g = symmetric_invariants(c);
    if (g.gamma1 == 0.0 || g.gamma3 == 0.0)
        throw PreconditionError("collinear_equilibria: gamma1 and gamma3 must be nonzero");

    const ExactFamily fam = exact_family(rational_from_double(c.g1), rational_from_double(c.g2),
                                         rational_from_double(c.g3), rational_from_double(theta));
    const CubicExtraction ex = extract_p3(fam);
    if (ex.p3.degree() < 1) return {};

    std::vector<double> zroots = poly_real_roots(to_double_poly(ex.p3));
    const double zscale = std::abs(theta) + 1e-300;
    std::vector<double> unique_z;
    for (double z : zroots) {
        bool dup = false;
        for (double u : unique_z)
            if (std::abs(u - z) < 1e-7 * zscale) dup = true;
        if (!dup) unique_z.push_back(z);
    }

    const auto sing_plus = singularities(c, theta);
    const auto sing_minus = singularities(c, -theta);

    std::vector<Equilibrium> out;
    auto near_singularity = [&](const ReducedState& s) {
        const auto& sing = (s.theta == theta) ? sing_plus : sing_minus;
        const double scale = std::abs(s.theta) + std::abs(s.X) + std::abs(s.Z) + 1e-300;
        for (const auto& p : sing) {
            if (!p.finite) continue;
            if (std::abs(p.X - s.X) + std::abs(p.Z - s.Z) < 1e-7 * scale) return true;
        }
        return false;
    };
    auto already_have = [&](const ReducedState& s) {
        for (const auto& e : out) {
            const double scale = std::abs(s.theta) + std::abs(s.X) + std::abs(s.Z) + 1e-300;
            if (e.state.theta == s.theta && std::abs(e.state.X - s.X) + std::abs(e.state.Z - s.Z) <
                                                1e-7 * scale)
                return true;
        }
        return false;
    };

    for (double zr : unique_z) {
        const double x2 = g.gamma1 / (4.0 * g.gamma3) * (theta * theta - zr * zr);
        if (x2 < -1e-9 * zscale * zscale) continue;
        const double xa = std::sqrt(std::max(x2, 0.0));
        std::vector<double> xs = (xa < 1e-9 * zscale) ? std::vector<double>{0.0}
                                                      : std::vector<double>{xa, -xa};
        for (double xc : xs) {
            ReducedState st = admissible_representative(ReducedState{xc, 0.0, zr, theta, c});
            if (!newton_refine_collinear(st)) continue;
            if (near_singularity(st)) continue;
            try {
                if (vector_field_residual(st) > 1e-8) continue;
            } catch (const SingularityError&) {
                continue;
            }
            if (already_have(st)) continue;
            out.push_back(collinear_stability(
                Equilibrium{st, EquilibriumKind::Collinear, {}, StabilityKind::Degenerate, 0.0}));
        }
    }
    std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) {
        if (a.state.theta != b.state.theta) return a.state.theta < b.state.theta;
        if (a.state.Z != b.state.Z) return a.state.Z < b.state.Z;
        return a.state.X < b.state.X;
    });
    return out;
}

Equilibrium collinear_stability(const Equilibrium& e) {
    Equilibrium out = classify_equilibrium(e.state, EquilibriumKind::Collinear);
    return out;
}

DiscriminantReport discriminant_p3(const Circulations& c, double theta) {
    const SymmetricInvariants g = symmetric_invariants(c);
    if (g.gamma1 == 0.0 || g.gamma3 == 0.0)
        throw PreconditionError("discriminant_p3: gamma1 and gamma3 must be nonzero");
    const Rational g1 = rational_from_double(c.g1), g2 = rational_from_double(c.g2),
                   g3 = rational_from_double(c.g3), th = rational_from_double(theta);
    const ExactFamily fam = exact_family(g1, g2, g3, th);
    const CubicExtraction ex = extract_p3(fam);
    DiscriminantReport rep;
    rep.p3 = ex.p3;
    rep.computed = (ex.p3.degree() >= 2) ? discriminant(ex.p3) : Rational(0);
    const Rational quartic =
        32 * fam.gamma2 * fam.gamma1 * fam.gamma1 - 36 * fam.gamma3 * fam.gamma1 - 3 * fam.gamma2 * fam.gamma2;
    Rational th6 = th * th;
    th6 = th6 * th6 * th * th;
    Rational g3p6 = fam.gamma3 * fam.gamma3;
    g3p6 = g3p6 * g3p6 * g3p6;
    rep.reference = 64 * th6 * (g1 - g2) * (g1 - g2) * (g1 + g2) * (g1 + g2) * fam.gamma1 *
                    fam.gamma1 * fam.gamma2 * fam.gamma2 * g3p6 * quartic;
    rep.quartic_factor = to_double(quartic);
    return rep;
}

RegionReport region_classify(const TrilinearPoint& p, double theta) {
    const double sum = p.eta1 + p.eta2 + p.eta3;
    if (std::abs(sum - 1.0) > 1e-9)
        throw PreconditionError("region_classify: trilinear coordinates must sum to 1");
    if (p.eta1 == 0.0 || p.eta2 == 0.0 || p.eta3 == 0.0)
        throw PreconditionError("region_classify: every eta must be nonzero");
    const Circulations c(p.eta1, p.eta2, p.eta3);
    const SymmetricInvariants g = symmetric_invariants(c);
    RegionReport rep;
    rep.deltoid_value = 32.0 * g.gamma2 * g.gamma1 * g.gamma1 - 36.0 * g.gamma3 * g.gamma1 -
                        3.0 * g.gamma2 * g.gamma2;
    rep.gamma2_sign = (g.gamma2 > 0) - (g.gamma2 < 0);
    rep.surface = g.gamma3 > 0.0 ? SurfaceKind::Spheroid
                                 : (theta == 0.0 ? SurfaceKind::Cone : SurfaceKind::Hyperboloid);
    rep.collinear_count = rep.deltoid_value > 0.0 ? 3 : 1;
    rep.tri_stability = g.gamma2 > 0.0 ? StabilityKind::Center : StabilityKind::Saddle;
    const double eta_scale = std::max({std::abs(p.eta1), std::abs(p.eta2), std::abs(p.eta3)});
    const double s2 = eta_scale * eta_scale;
    rep.boundary = std::abs(g.gamma2) < 1e-12 * s2 || std::abs(g.gamma3) < 1e-12 * s2 * eta_scale ||
                   std::abs(rep.deltoid_value) < 1e-12 * s2 * s2;
    rep.factors = {{"gamma1", g.gamma1},
                   {"gamma2", g.gamma2},
                   {"gamma3", g.gamma3},
                   {"deltoid_quartic", rep.deltoid_value},
                   {"pair_sum_12", p.eta1 + p.eta2},
                   {"pair_sum_13", p.eta1 + p.eta3},
                   {"pair_sum_23", p.eta2 + p.eta3},
                   {"diff_12_sq", (p.eta1 - p.eta2) * (p.eta1 - p.eta2)}};
    return rep;
}

std::vector<Equilibrium> symmetric_case_equilibria(double gamma3_circ, double theta) {
    const double G3 = gamma3_circ;
    if (G3 == 0.0 || G3 == 1.0 || G3 == -1.0)
        throw PreconditionError("symmetric_case_equilibria: Gamma3 must avoid {0, +-1}");
    const double G1 = (1.0 - G3) / 2.0;
    const Circulations c(G1, G1, G3);

    std::vector<Equilibrium> out;
    const ReducedState e3{0.0, 0.0, theta, theta, c};
    if (on_physical_sheet(e3)) out.push_back(classify_equilibrium(e3, EquilibriumKind::Collinear));

    const double inside = (5.0 + 3.0 * G3) / (1.0 - G3);
    const double denom = (1.0 + G3) * (1.0 + 3.0 * G3);
    if (inside > 0.0 && denom != 0.0) {
        const double Z = theta / denom * (-3.0 * G3 * G3 - 6.0 * G3 + 1.0);
        const SymmetricInvariants g = symmetric_invariants(c);
        const double x2 = g.gamma1 / (4.0 * g.gamma3) * (theta * theta - Z * Z);
        if (x2 >= 0.0) {
            const double X = std::sqrt(x2);
            for (double xs : {X, -X}) {
                ReducedState st{xs, 0.0, Z, theta, c};
                if (!on_physical_sheet(st)) continue;
                newton_refine_collinear(st);
                out.push_back(classify_equilibrium(st, EquilibriumKind::Collinear));
            }
        }
    }
    return out;
}

std::pair<double, double> symmetric_r_formulas(double gamma3_circ, double theta) {
    const double G3 = gamma3_circ;
    const double r12 = std::pow(G3 - 1.0, 2) * std::pow(3.0 * G3 + 1.0, 3) * (3.0 * G3 + 5.0) /
                       (64.0 * theta * theta);
    const double r3 =
        3.0 * std::pow(G3 - 1.0, 3) * (3.0 * G3 + 5.0) / (16.0 * theta * theta);
    return {r12, r3};
}

namespace {

StabilityBoundary stability_boundary_exact(const Rational& g1, const Rational& g2,
                                           const Rational& g3, const Rational& th) {
    const ExactFamily fam = exact_family(g1, g2, g3, th);
    const RBi R = stability_numerator(fam);
    StabilityBoundary out;
    out.value = eliminate_three(fam.F, fam.G, R);
    const Rational quartic = 32 * fam.gamma2 * fam.gamma1 * fam.gamma1 -
                             36 * fam.gamma3 * fam.gamma1 - 3 * fam.gamma2 * fam.gamma2;
    out.factors = {{"gamma1", to_double(fam.gamma1)},   {"gamma2", to_double(fam.gamma2)},
                   {"gamma3", to_double(fam.gamma3)},   {"quartic", to_double(quartic)},
                   {"pair_sum_12", to_double(g1 + g2)}, {"pair_sum_13", to_double(g1 + g3)},
                   {"pair_sum_23", to_double(g2 + g3)}};
    return out;
}

}  // namespace

StabilityBoundary stability_boundary_value(const Circulations& c, double theta) {
    return stability_boundary_exact(rational_from_double(c.g1), rational_from_double(c.g2),
                                    rational_from_double(c.g3), rational_from_double(theta));
}

StabilityBoundary stability_boundary_value(const std::array<Rational, 3>& g, const Rational& theta) {
    return stability_boundary_exact(g[0], g[1], g[2], theta);
}

std::vector<ScanRow> bifurcation_scan(const std::vector<double>& theta_values,
                                      const std::vector<double>& grid) {
    std::vector<ScanRow> rows;
    auto stability_name = [](StabilityKind k) {
        switch (k) {
            case StabilityKind::Center: return "center";
            case StabilityKind::Saddle: return "saddle";
            default: return "degenerate";
        }
    };
    for (double theta : theta_values) {
        for (double G3 : grid) {
            if (G3 == 1.0 || G3 == 0.0) continue;  // degenerate parameters
            const double G1 = (1.0 - G3) / 2.0;
            const Circulations c(G1, G1, G3);
            const SymmetricInvariants g = symmetric_invariants(c);

            auto push = [&](const std::string& branch, bool exists, double X, double Y, double Z,
                            const std::string& stab) {
                rows.push_back({G3, theta, branch, X, Y, Z, stab, exists});
            };

            // collinear branches from the closed symmetric forms
            const auto coll = symmetric_case_equilibria(G3, theta);
            bool have_e3 = false;
            int pair_index = 0;
            for (const auto& e : coll) {
                if (e.state.X == 0.0 && !have_e3) {
                    have_e3 = true;
                    push("E3", true, 0.0, 0.0, e.state.Z, stability_name(e.classification));
                } else {
                    push(pair_index == 0 ? "E1" : "E2", true, e.state.X, 0.0, e.state.Z,
                         stability_name(e.classification));
                    ++pair_index;
                }
            }
            if (!have_e3) push("E3", false, 0, 0, 0, "none");
            for (; pair_index < 2; ++pair_index)
                push(pair_index == 0 ? "E1" : "E2", false, 0, 0, 0, "none");

            // triangular branches
            if (g.gamma2 != 0.0) {
                const auto tri = equilateral_equilibria(c, theta);
                const char* stab = g.gamma2 > 0.0 ? "center" : "saddle";
                int idx = 0;
                for (const auto& st : tri.states) {
                    const bool exists = on_physical_sheet(st);
                    push(idx == 0 ? "Etri+" : "Etri-", exists, st.X, st.Y, st.Z, exists ? stab : "none");
                    ++idx;
                }
            } else {
                push("Etri+", false, 0, 0, 0, "none");
                push("Etri-", false, 0, 0, 0, "none");
            }

            // singularities
            const auto sing = singularities(c, theta);
            const char* names[3] = {"S12", "S13", "S23"};
            for (int k = 0; k < 3; ++k) {
                bool exists = sing[k].finite;
                if (exists) {
                    const ReducedState st{sing[k].X, sing[k].Y, sing[k].Z, theta, c};
                    exists = on_physical_sheet(st);
                }
                push(names[k], exists, sing[k].X, sing[k].Y, sing[k].Z, exists ? "singular" : "none");
            }
        }
    }
    return rows;
}

Complex trilinear_to_cartesian(const TrilinearPoint& p) {
    const double x = std::sqrt(3.0) / 2.0 * (p.eta2 - p.eta1);
    const double y = p.eta3 - 0.5 * (p.eta1 + p.eta2);
    return {x, y};
}

TrilinearPoint cartesian_to_trilinear(const Complex& xy) {
    TrilinearPoint p;
    p.eta3 = (2.0 * xy.imag() + 1.0) / 3.0;
    const double half_rest = 0.5 * (1.0 - p.eta3);
    const double d = xy.real() / std::sqrt(3.0);
    p.eta1 = half_rest - d;
    p.eta2 = half_rest + d;
    return p;
}

}  // namespace trivortex
