#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fssm {

/// Physical constants of the Furuta pendulum. Defaults are the laboratory rig.
struct PendulumParams {
    double m = 0.191;
    double l = 0.15;
    double r_arm = 0.094;
    double g = 9.81;
    double J_p = 5.73e-3;
    double J_a = 1.34e-3;
    double b1 = 0.039;
    double b2 = 0.02094;
    double N_motor = 1.05;
    double K_emf = 1.12706;

    /// Throws std::invalid_argument on non-positive masses/inertias or a
    /// mass matrix that comes close to singular on a theta grid.
    void validate(double eps = 1e-12) const;
    double delta(double theta) const;
};

struct ControllerConfig {
    double K_P = 15.5;
    double K_D = 5.45;
    double K_phiD = 1.5;
    double K_I = 0.0;
    double dt_sample = 0.0308;
    int r_delay = 1;
    std::optional<double> h_quant;
    std::string observable = "theta";

    void validate() const;
};

struct SimState {
    double theta = 0, omega_theta = 0, phi = 0, omega_phi = 0, x_I = 0;
};

struct Derivative {
    double theta = 0, omega_theta = 0, phi = 0, omega_phi = 0, x_I = 0;
};

/// One measurement taken at a sampling instant.
struct Sample {
    double xi = 0;   // observable
    double phi = 0;  // arm angle
    double x_I = 0;  // integral state
};

/// Samples indexed by sampling-interval number. Indices below zero are
/// served from explicit history if supplied, else the constant prehistory.
class SampleBuffer {
public:
    SampleBuffer() = default;
    SampleBuffer(Sample prehistory, std::vector<Sample> history = {});

    void push(const Sample& s) { data_.push_back(s); }
    /// Sample for interval index i (may be negative).
    const Sample& at(long i) const;
    long size() const { return static_cast<long>(data_.size()); }

private:
    Sample pre_{};
    std::vector<Sample> hist_;  // hist_[0] is index -1, hist_[1] is index -2, ...
    std::vector<Sample> data_;
};

struct Trajectory {
    double t0 = 0;
    double dt_out = 0;
    std::vector<double> theta, omega_theta, phi, omega_phi, u, x_I;
    bool has_integral = false;
    bool stopped_early = false;  // hit the |theta| stop threshold

    size_t size() const { return theta.size(); }
    SimState state(size_t k) const;
    std::vector<double> time() const;
};

double rho(double t, double dt_sample, int r_delay);
double average_delay(double dt_sample, int r_delay);
double quantize(double x, double h);

/// Observable value of a state per cfg.observable ("theta" or "phi").
double observable(const SimState& s, const ControllerConfig& cfg);

/// Voltage held over interval `i` given samples up to index i.
double control_voltage(const SampleBuffer& buf, const ControllerConfig& cfg, long i);

Derivative rhs(const SimState& s, double u, const PendulumParams& p, const ControllerConfig* cfg = nullptr);

double mechanical_energy(const SimState& s, const PendulumParams& p);

struct SimOptions {
    int substeps = 256;
    int outputs_per_interval = 1;  // must divide substeps
    double stop_abs_theta = std::numeric_limits<double>::infinity();
    std::vector<Sample> history;  // explicit samples at indices -1, -2, ...
};

/// Sampled-data simulation: RK4 with `substeps` fixed steps per sampling
/// interval, input held constant over each interval.
Trajectory simulate(const PendulumParams& p, const ControllerConfig& cfg, const SimState& ic,
                    const SimState& prehistory, double t_end, const SimOptions& opt = {});

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fssm
