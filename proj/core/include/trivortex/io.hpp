#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "trivortex/portrait.hpp"
#include "trivortex/zero_circulation.hpp"

namespace trivortex::io {

/// Floating-point formatting used by every CSV writer: 17 significant
/// digits, enough to round-trip a double exactly.
std::string g17(double v);

/// Header: t,x1,y1,...,xN,yN,H,Mx,My,Theta
void write_full_csv(std::ostream& os, const FullTrajectory& traj);

/// Header: t,X,Y,Z,h,quadric_residual
void write_reduced_csv(std::ostream& os, const ReducedTrajectory& traj);

/// Header: t,X,Y,h
void write_zero_csv(std::ostream& os, const ZeroTrajectory& traj);

/// Header: Gamma3,Theta,branch,X,Y,Z,stability,exists
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

/// Keys: circulations, Theta, X, Y, Z.
nlohmann::json state_record(const ReducedState& s);

nlohmann::json region_record(const RegionReport& rep);

nlohmann::json equilibrium_record(const Equilibrium& e);

nlohmann::json portrait_index(const Portrait& p);

/// One path element per curve with CSS classes periodic|separatrix;
/// singularities and equilibria are classed dots. Deterministic for a
/// fixed portrait.
std::string portrait_svg(const Portrait& p);

/// Writes <prefix>_curve_NNN.csv per curve, <prefix>_index.json, and
/// <prefix>.svg.
void write_portrait_files(const Portrait& p, const std::string& prefix);

/// Accepts JSON numbers as well as exact-rational strings "p/q".
double json_real(const nlohmann::json& v);

struct RunConfig {
    Circulations circulations{1.0, 1.0, 1.0};
    double theta = 1.0;
    double tol = 1e-10;
    nlohmann::json raw;
};

/// Config schema: {"circulations":[a,b,c], "theta":t, "tol":..., "portrait":{...}}
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace trivortex::io
