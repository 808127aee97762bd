#include "trivortex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "trivortex/rational.hpp"

namespace trivortex::io {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_full_csv(std::ostream& os, const FullTrajectory& traj) {
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    os << "t";
    for (std::size_t j = 1; j <= n; ++j) os << ",x" << j << ",y" << j;
    os << ",H,Mx,My,Theta\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << g17(traj.times[k]);
        for (const Complex& z : traj.states[k]) os << ',' << g17(z.real()) << ',' << g17(z.imag());
        os << ',' << g17(traj.energy[k]) << ',' << g17(traj.linear_impulse[k].real()) << ','
           << g17(traj.linear_impulse[k].imag()) << ',' << g17(traj.angular_impulse[k]) << '\n';
    }
}

void write_reduced_csv(std::ostream& os, const ReducedTrajectory& traj) {
    os << "t,X,Y,Z,h,quadric_residual\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& s = traj.states[k];
        os << g17(traj.times[k]) << ',' << g17(s[0]) << ',' << g17(s[1]) << ',' << g17(s[2]) << ','
           << g17(traj.h[k]) << ',' << g17(traj.residual[k]) << '\n';
    }
}

void write_zero_csv(std::ostream& os, const ZeroTrajectory& traj) {
    os << "t,X,Y,h\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& s = traj.states[k];
        os << g17(traj.times[k]) << ',' << g17(s[0]) << ',' << g17(s[1]) << ',' << g17(traj.h[k])
           << '\n';
    }
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "Gamma3,Theta,branch,X,Y,Z,stability,exists\n";
    for (const auto& r : rows) {
        os << g17(r.gamma3_circ) << ',' << g17(r.theta) << ',' << r.branch << ',' << g17(r.X) << ','
           << g17(r.Y) << ',' << g17(r.Z) << ',' << r.stability << ',' << (r.exists ? 1 : 0)
           << '\n';
    }
}

nlohmann::json state_record(const ReducedState& s) {
    return {{"circulations", {s.circulations.g1, s.circulations.g2, s.circulations.g3}},
            {"Theta", s.theta},
            {"X", s.X},
            {"Y", s.Y},
            {"Z", s.Z}};
}

namespace {

const char* stability_name(StabilityKind k) {
    switch (k) {
        case StabilityKind::Center: return "center";
        case StabilityKind::Saddle: return "saddle";
        default: return "degenerate";
    }
}

const char* surface_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::Spheroid: return "spheroid";
        case SurfaceKind::Hyperboloid: return "hyperboloid";
        default: return "cone";
    }
}

const char* kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::Periodic: return "periodic";
        case CurveKind::Heteroclinic: return "heteroclinic";
        case CurveKind::Homoclinic: return "homoclinic";
        case CurveKind::Ray: return "ray";
        default: return "unbounded";
    }
}

}  // namespace

nlohmann::json region_record(const RegionReport& rep) {
    nlohmann::json j{{"surface", surface_name(rep.surface)},
                     {"gamma2_sign", rep.gamma2_sign},
                     {"deltoid_value", rep.deltoid_value},
                     {"collinear_count", rep.collinear_count},
                     {"tri_stability", stability_name(rep.tri_stability)},
                     {"boundary", rep.boundary}};
    j["factors"] = rep.factors;
    return j;
}

nlohmann::json equilibrium_record(const Equilibrium& e) {
    nlohmann::json j = state_record(e.state);
    j["kind"] = e.kind == EquilibriumKind::Equilateral ? "equilateral" : "collinear";
    j["classification"] = stability_name(e.classification);
    j["r"] = e.r;
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& l : e.eigenvalues) eig.push_back({{"re", l.real()}, {"im", l.imag()}});
    j["eigenvalues"] = eig;
    return j;
}

nlohmann::json portrait_index(const Portrait& p) {
    nlohmann::json j;
    j["surface"] = surface_name(p.surface);
    j["projection"] = p.projection == Projection::SphereFrontBack ? "sphere" : "plane";
    j["theta"] = p.theta;
    j["circulations"] = {p.circulations.g1, p.circulations.g2, p.circulations.g3};
    j["boundary_warning"] = p.boundary_warning;
    j["singular_equator"] = p.singular_equator;
    j["collapse_mode"] = p.collapse_mode;
    j["counts"] = {{"equilibria", p.equilibria.size()},
                   {"singularities", p.singular_points.size()},
                   {"homoclinic", p.homoclinic_count()},
                   {"heteroclinic", p.heteroclinic_count()},
                   {"periodic_families", p.periodic_family_count()},
                   {"unbounded_branches", p.unbounded_branches},
                   {"saddles", p.saddle_count()}};
    j["equilibria"] = nlohmann::json::array();
    for (const auto& e : p.equilibria) j["equilibria"].push_back(equilibrium_record(e));
    j["singularities"] = nlohmann::json::array();
    for (const auto& s : p.singular_points)
        j["singularities"].push_back(
            {{"pair", {s.i + 1, s.j + 1}}, {"X", s.X}, {"Y", s.Y}, {"Z", s.Z}});
    j["curves"] = nlohmann::json::array();
    for (std::size_t k = 0; k < p.curves.size(); ++k) {
        const auto& c = p.curves[k];
        j["curves"].push_back({{"index", k},
                               {"kind", kind_name(c.kind)},
                               {"h_level", c.h_level},
                               {"samples", c.samples.size()},
                               {"from", c.from_equilibrium},
                               {"to", c.to_equilibrium},
                               {"family", c.family},
                               {"period", c.period}});
    }
    return j;
}

namespace {

struct Frame {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    double width = 420, height = 420;
    double px(double x) const { return (x - xmin) / (xmax - xmin) * width; }
    double py(double y) const { return height - (y - ymin) / (ymax - ymin) * height; }
};

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void emit_path(std::ostream& os, const Frame& fr, const std::vector<std::pair<double, double>>& pts,
               const std::string& cls) {
    if (pts.size() < 2) return;
    os << "<path class=\"" << cls << "\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i == 0 ? 'M' : 'L') << fmt6(fr.px(pts[i].first)) << ' ' << fmt6(fr.py(pts[i].second));
    os << "\"/>\n";
}

void emit_dot(std::ostream& os, const Frame& fr, double x, double y, const std::string& cls) {
    os << "<circle class=\"" << cls << "\" cx=\"" << fmt6(fr.px(x)) << "\" cy=\"" << fmt6(fr.py(y))
       << "\" r=\"3\"/>\n";
}

}  // namespace

std::string portrait_svg(const Portrait& p) {
    const SymmetricInvariants g = symmetric_invariants(p.circulations);
    const double s = std::sqrt(std::abs(4.0 * g.gamma3 / g.gamma1));
    const bool sphere = p.projection == Projection::SphereFrontBack;

    // sphere view: normalized (u,v,w) with u^2+v^2+w^2 = 1; front face w>=0
    // plots (u,v), back face plots (-u,v). Plane view: raw (X,Y).
    auto normalize3 = [&](const std::array<double, 3>& q) {
        return std::array<double, 3>{s * q[0] / p.theta, s * q[1] / p.theta, q[2] / p.theta};
    };

    std::ostringstream os;
    Frame fr;
    const double panel = 420;
    const double gap = 24;
    fr.width = panel;
    fr.height = panel;
    if (sphere) {
        fr.xmin = -1.1;
        fr.xmax = 1.1;
        fr.ymin = -1.1;
        fr.ymax = 1.1;
    } else {
        double lo = std::numeric_limits<double>::infinity(), hix = -lo, loy = lo, hiy = -lo;
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& c : p.curves)
            for (const auto& q : c.samples) {
                lo = std::min(lo, q[0]);
                hi = std::max(hi, q[0]);
                loy = std::min(loy, q[1]);
                hiy = std::max(hiy, q[1]);
            }
        (void)hix;
        if (!std::isfinite(lo)) {
            lo = loy = -1;
            hi = hiy = 1;
        }
        const double padx = 0.05 * (hi - lo + 1e-12), pady = 0.05 * (hiy - loy + 1e-12);
        fr.xmin = lo - padx;
        fr.xmax = hi + padx;
        fr.ymin = loy - pady;
        fr.ymax = hiy + pady;
    }

    const double total_w = sphere ? 2 * panel + gap : panel;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\"" << panel
       << "\" viewBox=\"0 0 " << total_w << ' ' << panel << "\">\n";
    os << "<style>\n"
          ".periodic{fill:none;stroke:#555;stroke-width:1}\n"
          ".separatrix{fill:none;stroke:#b22;stroke-width:2}\n"
          ".singularity{fill:#000}\n"
          ".equilibrium{fill:#27c}\n"
          ".frame{fill:none;stroke:#999;stroke-width:1}\n"
          "</style>\n";

    auto curve_class = [](CurveKind k) {
        return (k == CurveKind::Heteroclinic || k == CurveKind::Homoclinic) ? "separatrix"
                                                                            : "periodic";
    };

    if (sphere) {
        for (int face = 0; face < 2; ++face) {
            os << "<g transform=\"translate(" << face * (panel + gap) << ",0)\">\n";
            os << "<circle class=\"frame\" cx=\"" << panel / 2 << "\" cy=\"" << panel / 2
               << "\" r=\"" << panel / 2.2 / 1.1 * 1.0 << "\"/>\n";
            for (const auto& c : p.curves) {
                // split the polyline whenever it crosses between faces
                std::vector<std::pair<double, double>> seg;
                for (const auto& q : c.samples) {
                    const auto n = normalize3(q);
                    const bool on_face = face == 0 ? n[2] >= 0.0 : n[2] < 0.0;
                    if (on_face) {
                        seg.emplace_back(face == 0 ? n[0] : -n[0], n[1]);
                    } else if (!seg.empty()) {
                        emit_path(os, fr, seg, curve_class(c.kind));
                        seg.clear();
                    }
                }
                emit_path(os, fr, seg, curve_class(c.kind));
            }
            for (const auto& e : p.equilibria) {
                const auto n = normalize3({e.state.X, e.state.Y, e.state.Z});
                const bool on_face = face == 0 ? n[2] >= 0.0 : n[2] < 0.0;
                if (on_face) emit_dot(os, fr, face == 0 ? n[0] : -n[0], n[1], "equilibrium");
            }
            for (const auto& sp : p.singular_points) {
                const auto n = normalize3({sp.X, sp.Y, sp.Z});
                const bool on_face = face == 0 ? n[2] >= 0.0 : n[2] < 0.0;
                if (on_face) emit_dot(os, fr, face == 0 ? n[0] : -n[0], n[1], "singularity");
            }
            os << "</g>\n";
        }
    } else {
        for (const auto& c : p.curves) {
            std::vector<std::pair<double, double>> seg;
            for (const auto& q : c.samples) seg.emplace_back(q[0], q[1]);
            emit_path(os, fr, seg, curve_class(c.kind));
        }
        for (const auto& e : p.equilibria) emit_dot(os, fr, e.state.X, e.state.Y, "equilibrium");
        for (const auto& sp : p.singular_points) emit_dot(os, fr, sp.X, sp.Y, "singularity");
    }
    os << "</svg>\n";
    return os.str();
}

void write_portrait_files(const Portrait& p, const std::string& prefix) {
    for (std::size_t k = 0; k < p.curves.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "_curve_%03zu.csv", k);
        std::ofstream os(prefix + name);
        os << "X,Y,Z\n";
        for (const auto& q : p.curves[k].samples)
            os << g17(q[0]) << ',' << g17(q[1]) << ',' << g17(q[2]) << '\n';
    }
    {
        std::ofstream os(prefix + "_index.json");
        os << portrait_index(p).dump(2) << '\n';
    }
    {
        std::ofstream os(prefix + ".svg");
        os << portrait_svg(p);
    }
}

double json_real(const nlohmann::json& v) {
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    return v.get<double>();
}

RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.raw = j;
    if (j.contains("circulations")) {
        const auto& arr = j["circulations"];
        if (!arr.is_array() || arr.size() != 3)
            throw PreconditionError("config: circulations must be an array of three values");
        cfg.circulations = Circulations(json_real(arr[0]), json_real(arr[1]), json_real(arr[2]));
    }
    if (j.contains("theta")) cfg.theta = json_real(j["theta"]);
    if (j.contains("tol")) cfg.tol = json_real(j["tol"]);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw PreconditionError("config: cannot open " + path);
    nlohmann::json j;
    is >> j;
    return parse_config(j);
}

}  // namespace trivortex::io
