#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fssm/poly.hpp"

namespace fssm {

/// Polynomial reduced dynamics, either a vector field (eta' = R phi(eta)) or
/// a sampled map (eta_{n+1} = R phi(eta_n)) with sampling step `step`.
struct PolyReducedModel {
    int d = 0;
    int order = 1;
    bool discrete = false;
    double step = 0;
    std::vector<MultiIndex> exps;  // degrees 1..order, graded lex (maybe odd only)
    Mat R;                         // d x exps.size()
    double amplitude = 0;          // largest |eta| in the training data

    Mat R1() const;
    Vec eval(const Vec& eta) const { return R * features(eta, exps); }
    Mat eval(const Mat& etas) const { return R * features(etas, exps); }
};

/// Regression of 4th-order central differences of the trajectories.
PolyReducedModel fit_poly_dynamics(const std::vector<Mat>& etas, double dt, int order, bool odd_only = false);

/// Regression of the one-step map eta_n -> eta_{n+1}.
PolyReducedModel fit_poly_map(const std::vector<Mat>& etas, double dt, int order, bool odd_only = false);

/// Polar amplitude/phase equations
///   rho_i'   = rho_i * sum_k amp(i,k)   rho^basis_k
///   theta_i' =         sum_k phase(i,k) rho^basis_k
/// in modal coordinates xi = W^-1 eta, optionally after a cubic
/// near-identity change xi = z + h(z).
struct NormalFormModel {
    int npairs = 0;
    std::vector<cd> lambda;           // continuous-time eigenvalue per pair, Im > 0, slow first
    MatC W;                           // columns ordered lambda_1, conj, lambda_2, conj, ...
    std::vector<MultiIndex> basis;    // even monomials in rho, degree 0..order-1
    Mat amp;                          // npairs x basis
    Mat phase;                        // npairs x basis
    std::vector<CPoly> transform;     // h(z), empty when no transform
    int order = 5;
    Vec rho_max;                      // largest amplitude per pair in the data

    Vec rho_dot(const Vec& rho) const;
    Mat jacobian(const Vec& rho) const;
    Vec theta_dot(const Vec& rho) const;
    /// Modal coordinates -> normal-form coordinates; returns false on no convergence.
    bool to_nf(const VecC& xi, VecC& z) const;
    VecC from_nf(const VecC& z) const;
    /// Amplitudes rho of a reduced state eta; NaN when to_nf fails.
    Vec amplitudes(const Vec& eta) const;
};

struct NormalFormOptions {
    int order = 5;
    double resonance_tol = 0.1;
    bool transform = true;
    bool pin_linear = true;  // constant terms fixed to the linear eigenvalues
    size_t max_points = 40000;
};

NormalFormModel to_normal_form(const PolyReducedModel& model, const std::vector<Mat>& etas,
                               const NormalFormOptions& opt = {});

/// eta_{n+1} = sum_i C_i |eta_n - eta_i|
struct RBFModel {
    Mat centers;  // d x n
    Mat C;        // n x d
    double step = 0;
    double amplitude = 0;
    size_t duplicates_removed = 0;

    Vec eval(const Vec& eta) const;
};

RBFModel fit_rbf_map(const std::vector<Mat>& etas, double step, double ridge = 1e-10, size_t max_centers = 0);

struct Advected {
    Mat etas;  // d x n, sampled every `dt`
    double dt = 0;
    bool diverged = false;
};

/// RK4 with internal step `h` (default: model step / 10), output every model step.
Advected advect(const PolyReducedModel& model, const Vec& eta0, double t_end, double h = 0);
Advected advect(const NormalFormModel& model, const Vec& eta0, double t_end, double out_dt, double h = 0);
Advected advect(const RBFModel& model, const Vec& eta0, double t_end);

void to_json(nlohmann::json& j, const PolyReducedModel& m);
void from_json(const nlohmann::json& j, PolyReducedModel& m);
void to_json(nlohmann::json& j, const NormalFormModel& m);
void from_json(const nlohmann::json& j, NormalFormModel& m);
void to_json(nlohmann::json& j, const RBFModel& m);
void from_json(const nlohmann::json& j, RBFModel& m);

}  // namespace fssm
