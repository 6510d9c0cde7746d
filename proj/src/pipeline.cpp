#include "fssm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "fssm/embedding.hpp"

namespace fssm {

Trajectory reference_run(const PendulumParams& p, const ControllerConfig& cfg, double dt, double t_end,
                         int substeps) {
    ControllerConfig c = cfg;
    c.dt_sample = dt;
    SimState ic;
    ic.theta = 0.01;
    SimOptions so;
    so.substeps = substeps;
    return simulate(p, c, ic, ic, t_end, so);
}

InitialCondition state_with_history(const Trajectory& tr, size_t j, double s) {
    if (j < 2 || j >= tr.size()) throw std::out_of_range("state index needs two preceding samples");
    InitialCondition ic;
    SimState x = tr.state(j);
    x.theta *= s;
    x.omega_theta *= s;
    x.phi *= s;
    x.omega_phi *= s;
    x.x_I *= s;
    ic.state = x;
    for (size_t k = 1; k <= 2; ++k) {
        const SimState h = tr.state(j - k);
        ic.history.push_back(Sample{h.theta * s, h.phi * s, h.x_I * s});
    }
    return ic;
}

std::vector<InitialCondition> training_conditions(const PendulumParams& p, const ControllerConfig& cfg,
                                                  const TrainingDesign& dz, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };

    std::vector<InitialCondition> out;
    for (int k = 0; k < dz.n_upright; ++k) {
        InitialCondition ic;
        ic.kind = "upright";
        const double a = std::pow(10.0, uniform(dz.log10_amp_lo, dz.log10_amp_hi));
        ic.state.theta = a * normal(rng);
        ic.state.omega_theta = 10 * a * normal(rng);
        ic.state.omega_phi = uniform(-dz.arm_rate, dz.arm_rate);
        ic.t_end = dz.t_upright;
        out.push_back(ic);
    }
    auto from_reference = [&](int n, double ref_dt, double settle, const char* kind, double t_end, bool scaled) {
        if (n <= 0) return;
        const Trajectory ref = reference_run(p, cfg, ref_dt, settle, dz.substeps);
        const size_t lo = ref.size() / 2, hi = ref.size() - 3;
        std::uniform_int_distribution<size_t> pick(lo, hi);
        for (int k = 0; k < n; ++k) {
            const size_t j = pick(rng);
            const double s = scaled ? uniform(dz.scale_lo, dz.scale_hi) : 1 + dz.perturbation * uniform(-1, 1);
            InitialCondition ic = state_with_history(ref, j, s);
            ic.kind = kind;
            ic.t_end = t_end;
            out.push_back(ic);
        }
    };
    from_reference(dz.n_scaled, dz.ref_scaled_dt, dz.ref_scaled_settle, "torus_scaled", dz.t_scaled, true);
    from_reference(dz.n_perturbed, dz.ref_perturbed_dt, dz.ref_perturbed_settle, "torus_perturbed", dz.t_perturbed,
                   false);
    return out;
}

std::vector<double> truncate_series(const std::vector<double>& s, double abs_max) {
    for (size_t k = 0; k < s.size(); ++k)
        if (std::abs(s[k]) > abs_max) return {s.begin(), s.begin() + static_cast<long>(k)};
    return s;
}

std::vector<std::vector<double>> simulate_conditions(const PendulumParams& p, const ControllerConfig& cfg,
                                                     const std::vector<InitialCondition>& ics, int substeps,
                                                     double theta_max) {
    std::vector<std::vector<double>> out;
    for (auto& ic : ics) {
        SimOptions so;
        so.substeps = substeps;
        so.history = ic.history;
        so.stop_abs_theta = theta_max;
        const Trajectory tr = simulate(p, cfg, ic.state, ic.state, ic.t_end, so);
        std::vector<double> s(tr.size());
        for (size_t k = 0; k < tr.size(); ++k) s[k] = observable(tr.state(k), cfg);
        out.push_back(truncate_series(s, theta_max));
    }
    return out;
}

NodeModel fit_node(const std::vector<std::vector<double>>& series, double dt, const NodeOptions& opt) {
    std::vector<std::vector<double>> used;
    NodeModel nm;
    for (auto& s : series)
        if (static_cast<int>(s.size()) >= std::max(opt.min_length, (opt.m - 1) * opt.stride + 2)) {
            used.push_back(s);
            nm.samples_used += static_cast<long>(s.size());
        }
    nm.series_used = static_cast<int>(used.size());
    if (used.empty()) throw std::runtime_error("no training series long enough for embedding");
    const Dataset ds = make_dataset(used, {}, opt.m, opt.stride, dt, 0.0, opt.mirror);
    nm.manifold = fit_geometry(ds.train_matrix(), opt.d, opt.geometry_order, opt.geometry);
    std::vector<Mat> etas;
    for (auto& e : ds.train) etas.push_back(nm.manifold.project(e.Y));
    // consecutive columns are one sampling step apart when stride == 1
    nm.map = fit_poly_map(etas, dt, opt.dynamics_order, opt.odd);
    NormalFormOptions nfo = opt.nf;
    nfo.order = opt.dynamics_order;
    nm.nf = to_normal_form(nm.map, etas, nfo);
    return nm;
}

ParametricModel assemble(const std::vector<NodeModel>& nodes, InterpMode mode) {
    ParametricModel pm;
    pm.mode = mode;
    std::vector<const NodeModel*> sorted;
    for (auto& n : nodes) sorted.push_back(&n);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->mu < b->mu; });
    for (auto* n : sorted) {
        pm.mu.push_back(n->mu);
        pm.nodes.push_back(n->nf);
    }
    pm.validate();
    return pm;
}

std::vector<double> predict_observable(const NormalFormModel& nf, const ManifoldModel& manifold,
                                       const std::vector<double>& head, double dt, long n_steps) {
    const int m = static_cast<int>(manifold.V1.rows());
    if (static_cast<int>(head.size()) < m) throw std::invalid_argument("need m samples to start a prediction");
    Vec y0(m);
    for (int i = 0; i < m; ++i) y0[i] = head[i];
    const Advected a = advect(nf, manifold.project(y0), n_steps * dt, dt);
    const Mat Y = manifold.lift(a.etas);
    return std::vector<double>(Y.row(0).data(), Y.row(0).data() + Y.cols());
}

// ---------------------------------------------------------------- chaos

namespace {

Mat head_cols(const Mat& m, size_t n) { return m.leftCols(std::min<Eigen::Index>(m.cols(), n)); }

}  // namespace

ChaosReport run_chaos(const PendulumParams& p, const ControllerConfig& cfg0, const ChaosOptions& opt,
                      std::uint64_t seed) {
    ControllerConfig cfg = cfg0;
    cfg.dt_sample = opt.dt;
    cfg.h_quant = opt.h;
    cfg.validate();
    ChaosReport r;
    r.h = opt.h;
    r.dt = opt.dt;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const long skip = std::lround(opt.transient / opt.dt);
    std::vector<std::vector<double>> runs;
    r.bounded = true;
    for (int k = 0; k < opt.n_train + 1; ++k) {
        SimState ic;
        ic.theta = opt.ic_scale * normal(rng);
        SimOptions so;
        so.substeps = opt.substeps;
        so.stop_abs_theta = opt.bound;
        const Trajectory tr = simulate(p, cfg, ic, ic, opt.t_end, so);
        if (tr.stopped_early || static_cast<long>(tr.size()) <= skip + opt.m) {
            r.bounded = false;
            r.reliable = false;
            r.warnings.push_back("trajectory left |theta| <= " + std::to_string(opt.bound));
            return r;
        }
        std::vector<double> s(tr.theta.begin() + skip, tr.theta.end());
        for (double v : s) r.max_abs_theta = std::max(r.max_abs_theta, std::abs(v));
        runs.push_back(std::move(s));
    }
    std::vector<std::vector<double>> train(runs.begin(), runs.begin() + opt.n_train);
    const Dataset ds = make_dataset(train, {runs.back()}, opt.m, opt.stride, opt.dt, 0.0, false);
    const Mat Y = ds.train_matrix();
    const ManifoldModel mm = fit_geometry(Y, opt.d, 1);
    {
        Eigen::JacobiSVD<Mat> svd(Y);
        const Vec sv = svd.singularValues();
        for (Eigen::Index i = 0; i < std::min<Eigen::Index>(sv.size(), opt.d + 2); ++i)
            r.singular_values.push_back(sv[i] / sv[0]);
    }
    std::vector<Mat> etas;
    for (auto& e : ds.train) etas.push_back(mm.project(e.Y));
    const Mat test = mm.project(ds.test.front().Y);

    const RBFModel rbf = fit_rbf_map(etas, opt.dt * opt.stride, opt.ridge, opt.max_centers);
    r.centers = static_cast<size_t>(rbf.centers.cols());
    const Advected adv = advect(rbf, etas.front().col(0), opt.model_steps * rbf.step);
    r.model_diverged = adv.diverged;
    if (adv.diverged || adv.etas.cols() <= opt.model_transient + 10) {
        r.reliable = false;
        r.warnings.push_back("RBF model trajectory diverged");
        return r;
    }
    const Mat model = adv.etas.rightCols(adv.etas.cols() - opt.model_transient);

    r.lyap_data = lyapunov_data(head_cols(test, opt.lyap_points), rbf.step, opt.rosenstein);
    // the model exponent comes from the map itself, renormalized every step
    const MapFn step = [&rbf](const Vec& x) { return rbf.eval(x); };
    r.lyap_model = lyapunov_model(step, model.col(0), static_cast<long>(model.cols()), rbf.step);
    r.lyap_rel_diff = std::abs(r.lyap_model.per_time - r.lyap_data.per_time) /
                      std::max(std::abs(r.lyap_data.per_time), 1e-300);
    r.ks = ks_statistics(model, test);
    r.pdf_data = pdf_histograms(test, opt.bins, &model);
    r.pdf_model = pdf_histograms(model, opt.bins, &test);
    r.gp = correlation_dimension(head_cols(test, opt.gp_points), opt.gp_theiler);
    if (!r.gp.reliable) {
        r.reliable = false;
        r.warnings.push_back("no correlation scaling region");
    }
    if (!r.lyap_data.reliable || !r.lyap_model.reliable) {
        r.reliable = false;
        r.warnings.push_back("Lyapunov divergence curve has no usable fit window");
    }
    return r;
}

nlohmann::json chaos_to_json(const ChaosReport& r) {
    auto ly = [](const Lyapunov& l) {
        return nlohmann::json{{"per_time", l.per_time},
                              {"per_sample", l.per_sample},
                              {"fit_window", {l.fit_lo, l.fit_hi}},
                              {"reliable", l.reliable}};
    };
    auto hist = [](const Histograms& h) {
        return nlohmann::json{{"bins", h.bins}, {"lo", h.lo}, {"hi", h.hi}, {"density", h.density}};
    };
    return nlohmann::json{{"h", r.h},
                          {"dt", r.dt},
                          {"bounded", r.bounded},
                          {"max_abs_theta", r.max_abs_theta},
                          {"singular_values", r.singular_values},
                          {"rbf_centers", r.centers},
                          {"model_diverged", r.model_diverged},
                          {"lyapunov_data", ly(r.lyap_data)},
                          {"lyapunov_model", ly(r.lyap_model)},
                          {"lyapunov_relative_difference", r.lyap_rel_diff},
                          {"ks", r.ks},
                          {"correlation_dimension",
                           {{"value", r.gp.dimension},
                            {"stderr", r.gp.stderr_},
                            {"eps_range", {r.gp.eps_lo, r.gp.eps_hi}},
                            {"r2", r.gp.r2},
                            {"reliable", r.gp.reliable}}},
                          {"pdf_data", hist(r.pdf_data)},
                          {"pdf_model", hist(r.pdf_model)},
                          {"reliable", r.reliable},
                          {"warnings", r.warnings}};
}

nlohmann::json node_to_json(const NodeModel& n) {
    return nlohmann::json{{"mu", n.mu},
                          {"series_used", n.series_used},
                          {"samples_used", n.samples_used},
                          {"manifold", n.manifold},
                          {"map", n.map},
                          {"normal_form", n.nf}};
}

NodeModel node_from_json(const nlohmann::json& j) {
    NodeModel n;
    n.mu = j.at("mu");
    n.series_used = j.value("series_used", 0);
    n.samples_used = j.value("samples_used", 0L);
    n.manifold = j.at("manifold").get<ManifoldModel>();
    n.map = j.at("map").get<PolyReducedModel>();
    n.nf = j.at("normal_form").get<NormalFormModel>();
    return n;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr, const std::vector<std::string>& header) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    for (auto& h : header) f << "# " << h << "\n";
    f << "t,theta,omega_theta,phi,omega_phi,u\n";
    f << std::setprecision(17);
    const auto t = tr.time();
    for (size_t k = 0; k < tr.size(); ++k)
        f << t[k] << ',' << tr.theta[k] << ',' << tr.omega_theta[k] << ',' << tr.phi[k] << ',' << tr.omega_phi[k]
          << ',' << tr.u[k] << "\n";
}

std::vector<double> read_csv_channel(const std::string& path, const std::string& channel, double* dt) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("missing file: " + path);
    std::string line;
    int col = -1, tcol = -1;
    std::vector<double> out, ts;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (col < 0) {
            for (size_t i = 0; i < cells.size(); ++i) {
                if (cells[i] == channel) col = static_cast<int>(i);
                if (cells[i] == "t") tcol = static_cast<int>(i);
            }
            if (col < 0) throw std::runtime_error("channel '" + channel + "' not found in " + path);
            continue;
        }
        if (col >= static_cast<int>(cells.size())) throw std::runtime_error("short row in " + path);
        out.push_back(std::stod(cells[col]));
        if (tcol >= 0 && ts.size() < 2) ts.push_back(std::stod(cells[tcol]));
    }
    if (dt && ts.size() == 2) *dt = ts[1] - ts[0];
    return out;
}

}  // namespace fssm
