#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fssm/diagnostics.hpp"
#include "fssm/dynamics.hpp"
#include "fssm/manifold.hpp"
#include "fssm/parametric.hpp"
#include "fssm/sim.hpp"

namespace fssm {

/// A full-state initial condition together with the samples that precede it.
struct InitialCondition {
    std::string kind;  // upright | torus_scaled | torus_perturbed
    SimState state;
    std::vector<Sample> history;  // indices -1, -2, ...
    double t_end = 0;
};

/// Initial conditions for one training node. Small random perturbations of
/// the upright equilibrium plus states taken from long reference runs that
/// settle on the quasi-periodic attractor, rescaled.
struct TrainingDesign {
    int n_upright = 16;
    double t_upright = 150;
    double log10_amp_lo = -3.5, log10_amp_hi = -1.5;
    double arm_rate = 2.0;  // omega_phi ~ U(-arm_rate, arm_rate)

    int n_scaled = 12;
    double t_scaled = 300;
    double scale_lo = 0.3, scale_hi = 1.3;
    double ref_scaled_dt = 0.0313;
    double ref_scaled_settle = 200;

    int n_perturbed = 12;
    double t_perturbed = 400;
    double perturbation = 0.1;
    double ref_perturbed_dt = 0.0312;
    double ref_perturbed_settle = 300;

    double theta_max = 0.17;  // series are cut at the first |theta| above this
    int substeps = 256;
};

/// Reference run from theta = 0.01 at sampling time `dt`.
Trajectory reference_run(const PendulumParams& p, const ControllerConfig& cfg, double dt, double t_end,
                         int substeps = 256);

/// Full state at output index j of a run sampled at controller instants,
/// scaled by `s`, with its two preceding samples as history.
InitialCondition state_with_history(const Trajectory& tr, size_t j, double s = 1.0);

std::vector<InitialCondition> training_conditions(const PendulumParams& p, const ControllerConfig& cfg,
                                                  const TrainingDesign& design, std::uint64_t seed);

/// Observable series (one value per sampling instant) of every condition at
/// sampling time cfg.dt_sample, cut at design.theta_max.
std::vector<std::vector<double>> simulate_conditions(const PendulumParams& p, const ControllerConfig& cfg,
                                                     const std::vector<InitialCondition>& ics, int substeps,
                                                     double theta_max);

std::vector<double> truncate_series(const std::vector<double>& s, double abs_max);

struct NodeOptions {
    int d = 4;
    int m = 12;
    int stride = 1;
    int geometry_order = 3;
    int dynamics_order = 5;
    bool odd = true;
    bool mirror = true;
    int min_length = 62;  // series shorter than this are skipped
    GeometryOptions geometry{0, 1e-9};
    NormalFormOptions nf;
};

struct NodeModel {
    double mu = 0;
    ManifoldModel manifold;
    PolyReducedModel map;
    NormalFormModel nf;
    int series_used = 0;
    long samples_used = 0;
};

/// Embed, fit the manifold, regress the reduced sampled map and convert it to
/// polar normal form. `dt` is the spacing of the series.
NodeModel fit_node(const std::vector<std::vector<double>>& series, double dt, const NodeOptions& opt);

ParametricModel assemble(const std::vector<NodeModel>& nodes, InterpMode mode = InterpMode::linear);

/// Observable predicted by a node-aligned normal form: the first delay
/// coordinate of the lifted trajectory.
std::vector<double> predict_observable(const NormalFormModel& nf, const ManifoldModel& manifold,
                                       const std::vector<double>& head, double dt, long n_steps);

struct ChaosOptions {
    double dt = 0.025;
    double h = 0.001;
    double t_end = 600;
    double transient = 100;
    int n_train = 2;
    double ic_scale = 0.01;
    int d = 6;
    int m = 12;
    int stride = 1;
    size_t max_centers = 3000;
    double ridge = 1e-10;
    long model_steps = 30000;
    long model_transient = 2000;
    int bins = 40;
    double bound = 0.5;  // |theta| bound for a bounded attractor
    size_t lyap_points = 25000;
    RosensteinOptions rosenstein{400, 1200, -1, -1, 0.5, 20000};
    int gp_theiler = 400;
    size_t gp_points = 5000;
    int substeps = 256;
};

struct ChaosReport {
    double h = 0, dt = 0;
    bool bounded = false;
    double max_abs_theta = 0;
    std::vector<double> singular_values;  // normalized
    Lyapunov lyap_data, lyap_model;
    double lyap_rel_diff = 0;
    std::vector<double> ks;
    CorrelationDimension gp;
    bool model_diverged = false;
    size_t centers = 0;
    Histograms pdf_data, pdf_model;
    bool reliable = true;
    std::vector<std::string> warnings;
};

/// Quantized runs, 6D delay-embedded reduction, RBF map, statistics.
ChaosReport run_chaos(const PendulumParams& p, const ControllerConfig& cfg, const ChaosOptions& opt,
                      std::uint64_t seed);

nlohmann::json chaos_to_json(const ChaosReport& r);
nlohmann::json node_to_json(const NodeModel& n);
NodeModel node_from_json(const nlohmann::json& j);

/// CSV with header t,theta,omega_theta,phi,omega_phi,u. Optional leading
/// comment lines (prefixed by '#').
void write_trajectory_csv(const std::string& path, const Trajectory& tr, const std::vector<std::string>& header = {});
/// Reads one named channel from a trajectory CSV.
std::vector<double> read_csv_channel(const std::string& path, const std::string& channel, double* dt = nullptr);

}  // namespace fssm
