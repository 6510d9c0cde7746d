#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fssm/dynamics.hpp"

namespace fssm {

enum class InterpMode { linear, spline };

/// Normal-form models at sorted parameter nodes; coefficient tables are
/// interpolated, modal data (W, transform) is taken from the nearest node.
struct ParametricModel {
    std::vector<double> mu;
    std::vector<NormalFormModel> nodes;
    InterpMode mode = InterpMode::linear;

    void validate() const;
    NormalFormModel interpolate(double m) const;
    /// 1.5x the largest training amplitude over all nodes.
    Vec rho_domain() const;
};

struct FixedPoint {
    Vec rho;
    VecC eig;
    std::string kind;       // origin | axis1 | axis2 | ... | interior
    std::string stability;  // stable | unstable | saddle | degenerate
    double residual = 0;
    bool fd_agrees = true;  // finite-difference Jacobian gives the same type
};

std::vector<FixedPoint> find_fixed_points(const NormalFormModel& nf, const Vec& rho_max, int grid = 25);

struct HeteroclinicResult {
    bool valid = false;
    std::string diagnostic;
    double gap = 0;           // signed: section crossing of W^u(A) minus that of W^s(B)
    double min_distance = 0;  // between the two sampled branches
    Vec saddle_a, saddle_b, section_dir;
    std::vector<Vec> branch_u, branch_s;
};

/// Throws "no saddle pair" when the two axis saddles are absent.
HeteroclinicResult detect_heteroclinic(const NormalFormModel& nf, const Vec& rho_max, int grid = 25);
/// Non-throwing variant used by scans.
HeteroclinicResult heteroclinic_gap(const NormalFormModel& nf, const std::vector<FixedPoint>& fps, const Vec& rho_max);

struct ClosedOrbit {
    double section_s = 0;  // distance from the interior point along the section
    bool stable = false;
    std::vector<Vec> samples;
};

struct OrbitOptions {
    int grid = 40;
    double dt = 0.05;
    double t_max = 3000;
};

/// Closed orbits around the interior focus via a return map on the ray
/// from the focus pointing away from the origin.
std::vector<ClosedOrbit> find_closed_orbits(const NormalFormModel& nf, const FixedPoint& focus, const Vec& rho_max,
                                            const OrbitOptions& opt = {});

struct PortraitAnalysis {
    double mu = 0;
    Vec rho_max;
    std::vector<FixedPoint> fixed_points;
    HeteroclinicResult heteroclinic;
    std::vector<ClosedOrbit> orbits;
    std::optional<double> interior_real;  // max Re eig of the non-saddle interior point
};

PortraitAnalysis analyze_portrait(const NormalFormModel& nf, const Vec& rho_max, int grid = 25, bool orbits = true,
                                  const OrbitOptions& oopt = {});

struct BifurcationEvent {
    double mu = 0;
    std::string type;  // heteroclinic | hopf | torus3_appear | torus3_disappear
    nlohmann::json location;
};

struct ScanOptions {
    int steps = 41;
    double mu_tol = 1e-6;
    int grid = 25;
    bool orbits = true;
    OrbitOptions orbit;
};

std::vector<BifurcationEvent> scan_bifurcations(const ParametricModel& pm, double mu_lo, double mu_hi,
                                                const ScanOptions& opt = {});

nlohmann::json portrait_to_json(const PortraitAnalysis& pa);
void to_json(nlohmann::json& j, const ParametricModel& m);
void from_json(const nlohmann::json& j, ParametricModel& m);

}  // namespace fssm
