#include "fssm/sim.hpp"

#include <cmath>
#include <sstream>

namespace fssm {

double PendulumParams::delta(double theta) const {
    const double s = std::sin(theta), c = std::cos(theta);
    const double mrl = m * r_arm * l * c;
    return J_p * (J_a + J_p * s * s) - mrl * mrl;
}

void PendulumParams::validate(double eps) const {
    if (!(m > 0 && l > 0 && r_arm > 0 && J_p > 0 && J_a > 0))
        throw std::invalid_argument("masses, lengths and inertias must be positive");
    if (!(b1 >= 0 && b2 >= 0 && K_emf >= 0)) throw std::invalid_argument("damping must be non-negative");
    double dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 720; ++k) dmin = std::min(dmin, std::abs(delta(k * M_PI / 360.0)));
    if (dmin < eps) throw std::invalid_argument("singular mass matrix");
}

void ControllerConfig::validate() const {
    if (!(dt_sample > 0)) throw std::invalid_argument("dt_sample must be positive");
    if (r_delay != 0 && r_delay != 1) throw std::invalid_argument("r_delay must be 0 or 1");
    if (h_quant && !(*h_quant > 0)) throw std::invalid_argument("h_quant must be positive");
    if (observable != "theta" && observable != "phi") throw std::invalid_argument("unknown observable: " + observable);
}

SampleBuffer::SampleBuffer(Sample prehistory, std::vector<Sample> history)
    : pre_(prehistory), hist_(std::move(history)) {}

const Sample& SampleBuffer::at(long i) const {
    if (i >= 0) {
        if (i >= size()) throw std::out_of_range("sample index not yet recorded");
        return data_[i];
    }
    const long k = -i - 1;
    if (k < static_cast<long>(hist_.size())) return hist_[k];
    return pre_;
}

SimState Trajectory::state(size_t k) const {
    return {theta[k], omega_theta[k], phi[k], omega_phi[k], has_integral ? x_I[k] : 0.0};
}

std::vector<double> Trajectory::time() const {
    std::vector<double> t(size());
    for (size_t k = 0; k < t.size(); ++k) t[k] = t0 + dt_out * static_cast<double>(k);
    return t;
}

double rho(double t, double dt_sample, int r_delay) {
    return t + r_delay * dt_sample - dt_sample * std::floor(t / dt_sample);
}

double average_delay(double dt_sample, int r_delay) { return (r_delay + 0.5) * dt_sample; }

double quantize(double x, double h) { return h * std::floor(x / h); }

double observable(const SimState& s, const ControllerConfig& cfg) {
    return cfg.observable == "phi" ? s.phi : s.theta;
}

double control_voltage(const SampleBuffer& buf, const ControllerConfig& cfg, long i) {
    const long a = i - cfg.r_delay;
    if (a >= buf.size()) throw std::out_of_range("insufficient prehistory");
    const Sample& s0 = buf.at(a);
    const Sample& s1 = buf.at(a - 1);
    const double dt = cfg.dt_sample;
    const double xid = (s0.xi - s1.xi) / dt;
    const double phid = (s0.phi - s1.phi) / dt;
    if (!cfg.h_quant)
        return -cfg.K_P * s0.xi - cfg.K_D * xid + cfg.K_phiD * phid - cfg.K_I * s0.x_I;
    const double h = *cfg.h_quant;
    // inner floors are the ADC, the outer floor the DAC
    const double counts = -cfg.K_P * std::floor(s0.xi / h) - cfg.K_D * std::floor(xid / h) +
                          cfg.K_phiD * std::floor(phid / h) - cfg.K_I * s0.x_I / h;
    return h * std::floor(counts);
}

Derivative rhs(const SimState& x, double u, const PendulumParams& p, const ControllerConfig* cfg) {
    const double s = std::sin(x.theta), c = std::cos(x.theta);
    const double mrl = p.m * p.r_arm * p.l;
    const double D = p.J_p * (p.J_a + p.J_p * s * s) - mrl * mrl * c * c;
    if (std::abs(D) < 1e-14) throw SimError("singular mass matrix");
    const double M = p.N_motor * u - p.K_emf * x.omega_phi;
    const double A = M - 2 * p.J_p * s * c * x.omega_theta * x.omega_phi - p.b2 * x.omega_phi -
                     mrl * s * x.omega_theta * x.omega_theta;
    const double B = p.J_p * s * c * x.omega_phi * x.omega_phi - p.b1 * x.omega_theta + p.m * p.g * p.l * s;
    Derivative d;
    d.theta = x.omega_theta;
    d.omega_theta = ((p.J_a + p.J_p * s * s) * B + mrl * c * A) / D;
    d.phi = x.omega_phi;
    d.omega_phi = (p.J_p * A + mrl * c * B) / D;
    if (cfg && cfg->K_I != 0) {
        const double xi = observable(x, *cfg);
        d.x_I = cfg->h_quant ? quantize(xi, *cfg->h_quant) : xi;
    }
    return d;
}

double mechanical_energy(const SimState& x, const PendulumParams& p) {
    const double s = std::sin(x.theta), c = std::cos(x.theta);
    const double mrl = p.m * p.r_arm * p.l;
    return 0.5 * (p.J_a + p.J_p * s * s) * x.omega_phi * x.omega_phi + 0.5 * p.J_p * x.omega_theta * x.omega_theta -
           mrl * c * x.omega_phi * x.omega_theta + p.m * p.g * p.l * c;
}

namespace {

SimState axpy(const SimState& x, double h, const Derivative& k) {
    return {x.theta + h * k.theta, x.omega_theta + h * k.omega_theta, x.phi + h * k.phi,
            x.omega_phi + h * k.omega_phi, x.x_I + h * k.x_I};
}

void record(Trajectory& tr, const SimState& x, double u) {
    tr.theta.push_back(x.theta);
    tr.omega_theta.push_back(x.omega_theta);
    tr.phi.push_back(x.phi);
    tr.omega_phi.push_back(x.omega_phi);
    tr.u.push_back(u);
    if (tr.has_integral) tr.x_I.push_back(x.x_I);
}

Sample sample_of(const SimState& x, const ControllerConfig& cfg) { return {observable(x, cfg), x.phi, x.x_I}; }

}  // namespace

Trajectory simulate(const PendulumParams& p, const ControllerConfig& cfg, const SimState& ic,
                    const SimState& prehistory, double t_end, const SimOptions& opt) {
    if (!(t_end > 0)) throw std::invalid_argument("t_end must be positive");
    if (opt.substeps < 1) throw std::invalid_argument("substeps must be >= 1");
    if (opt.outputs_per_interval < 1 || opt.substeps % opt.outputs_per_interval != 0)
        throw std::invalid_argument("outputs_per_interval must divide substeps");
    cfg.validate();

    const double dt = cfg.dt_sample;
    const long n = std::lround(t_end / dt);
    const double hs = dt / opt.substeps;
    const int every = opt.substeps / opt.outputs_per_interval;

    Trajectory tr;
    tr.t0 = 0;
    tr.dt_out = dt / opt.outputs_per_interval;
    tr.has_integral = cfg.K_I != 0;
    const size_t cap = static_cast<size_t>(n) * opt.outputs_per_interval + 1;
    tr.theta.reserve(cap);
    tr.omega_theta.reserve(cap);
    tr.phi.reserve(cap);
    tr.omega_phi.reserve(cap);
    tr.u.reserve(cap);

    SampleBuffer buf(sample_of(prehistory, cfg), opt.history);
    SimState x = ic;
    const ControllerConfig* c = &cfg;
    double u = 0;
    for (long i = 0; i <= n; ++i) {
        buf.push(sample_of(x, cfg));
        u = control_voltage(buf, cfg, i);
        if (i == n) break;
        for (int j = 0; j < opt.substeps; ++j) {
            if (j % every == 0) record(tr, x, u);
            const Derivative k1 = rhs(x, u, p, c);
            const Derivative k2 = rhs(axpy(x, 0.5 * hs, k1), u, p, c);
            const Derivative k3 = rhs(axpy(x, 0.5 * hs, k2), u, p, c);
            const Derivative k4 = rhs(axpy(x, hs, k3), u, p, c);
            x.theta += hs / 6 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta);
            x.omega_theta += hs / 6 * (k1.omega_theta + 2 * k2.omega_theta + 2 * k3.omega_theta + k4.omega_theta);
            x.phi += hs / 6 * (k1.phi + 2 * k2.phi + 2 * k3.phi + k4.phi);
            x.omega_phi += hs / 6 * (k1.omega_phi + 2 * k2.omega_phi + 2 * k3.omega_phi + k4.omega_phi);
            x.x_I += hs / 6 * (k1.x_I + 2 * k2.x_I + 2 * k3.x_I + k4.x_I);
        }
        if (!std::isfinite(x.theta) || !std::isfinite(x.omega_theta) || !std::isfinite(x.phi) ||
            !std::isfinite(x.omega_phi) || !std::isfinite(x.x_I)) {
            std::ostringstream os;
            os << "divergence at t=" << (i + 1) * dt;
            throw SimError(os.str());
        }
        if (std::abs(x.theta) > opt.stop_abs_theta) {
            tr.stopped_early = true;
            return tr;
        }
    }
    record(tr, x, u);
    return tr;
}

}  // namespace fssm
