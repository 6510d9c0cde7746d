// fssm: simulate -> train -> portrait/scan -> validate, plus chaos statistics.
// Every stage reads a key = value config; see README for the keys.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "fssm/config.hpp"
#include "fssm/embedding.hpp"
#include "fssm/jsonio.hpp"
#include "fssm/pipeline.hpp"

namespace fs = std::filesystem;
using namespace fssm;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailure = 1, kValidation = 2, kUnreliable = 3;

struct MissingArtifact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = [] {
        std::set<std::string> k{"seed", "out_dir",
                                // simulate
                                "sim.mode", "sim.nodes", "sim.n_ics", "sim.ic", "sim.t_end", "sim.substeps",
                                "sim.outputs_per_interval", "sim.ic_scale",
                                // training design and fit
                                "train.nodes", "train.d", "train.m", "train.stride", "train.geometry_order",
                                "train.geometry_refine", "train.dynamics_order", "train.odd", "train.mirror",
                                "train.transform", "train.resonance_tol", "train.theta_max", "train.n_upright",
                                "train.t_upright", "train.n_scaled", "train.t_scaled", "train.n_perturbed",
                                "train.t_perturbed", "train.interp",
                                // analysis
                                "portrait.mu", "portrait.grid", "portrait.field_grid", "scan.mu_lo", "scan.mu_hi",
                                "scan.steps", "scan.mu_tol", "scan.grid", "scan.orbits",
                                // chaos
                                "chaos.input", "chaos.h", "chaos.dt", "chaos.t_end", "chaos.transient", "chaos.n_train",
                                "chaos.d", "chaos.m", "chaos.stride", "chaos.max_centers", "chaos.model_steps",
                                "chaos.bins",
                                // validation
                                "validate.mu", "validate.t_end", "validate.ic_scale"};
        k.insert(pendulum_keys().begin(), pendulum_keys().end());
        k.insert(controller_keys().begin(), controller_keys().end());
        return k;
    }();
    return keys;
}

struct Context {
    Config cfg;
    std::string hash;
    std::uint64_t seed = 0;
    fs::path out;
    PendulumParams params;
    ControllerConfig ctrl;
    bool allow_unreliable = false;
};

Context load_context(const std::string& path, const std::string& out_override, bool allow_unreliable) {
    Context c;
    c.cfg = Config::load(path);
    c.cfg.check_keys(known_keys());
    c.hash = c.cfg.hash();
    const long seed = c.cfg.integer("seed", 1);
    if (seed < 0) throw ConfigError("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
    c.out = out_override.empty() ? fs::path(c.cfg.str("out_dir", "out")) : fs::path(out_override);
    fs::create_directories(c.out);
    c.params = c.cfg.pendulum();
    c.ctrl = c.cfg.controller();
    c.allow_unreliable = allow_unreliable;
    return c;
}

json stamp(const Context& c, json payload) {
    payload["config_hash"] = c.hash;
    payload["seed"] = c.seed;
    return payload;
}

std::vector<std::string> csv_header(const Context& c) {
    return {"config_hash=" + c.hash, "seed=" + std::to_string(c.seed)};
}

/// Parameter values in microseconds label file names unambiguously.
std::string mu_tag(double mu) { return std::to_string(std::lround(mu * 1e6)); }

json read_artifact(const fs::path& p) {
    if (!fs::exists(p)) throw MissingArtifact("missing upstream artifact: " + p.string());
    return read_json(p.string());
}

TrainingDesign design_from(const Config& cfg) {
    TrainingDesign dz;
    dz.n_upright = static_cast<int>(cfg.integer("train.n_upright", dz.n_upright));
    dz.t_upright = cfg.num("train.t_upright", dz.t_upright);
    dz.n_scaled = static_cast<int>(cfg.integer("train.n_scaled", dz.n_scaled));
    dz.t_scaled = cfg.num("train.t_scaled", dz.t_scaled);
    dz.n_perturbed = static_cast<int>(cfg.integer("train.n_perturbed", dz.n_perturbed));
    dz.t_perturbed = cfg.num("train.t_perturbed", dz.t_perturbed);
    dz.theta_max = cfg.num("train.theta_max", dz.theta_max);
    dz.substeps = static_cast<int>(cfg.integer("sim.substeps", dz.substeps));
    if (dz.n_upright < 0 || dz.n_scaled < 0 || dz.n_perturbed < 0) throw ConfigError("negative trajectory count");
    if (dz.n_upright + dz.n_scaled + dz.n_perturbed == 0) throw ConfigError("training design has no trajectories");
    return dz;
}

std::vector<double> train_nodes(const Config& cfg) {
    auto nodes = cfg.nums("train.nodes", {0.0305, 0.031, 0.032, 0.0325});
    for (double v : nodes)
        if (!(v > 0)) throw ConfigError("train.nodes must be positive");
    return nodes;
}

// ------------------------------------------------------------ simulate

int cmd_simulate(const Context& c) {
    const std::string mode = c.cfg.str("sim.mode", "random");
    const int substeps = static_cast<int>(c.cfg.integer("sim.substeps", 256));
    const int per = static_cast<int>(c.cfg.integer("sim.outputs_per_interval", 1));
    if (substeps < 1) throw ConfigError("sim.substeps must be >= 1");
    if (per < 1 || substeps % per) throw ConfigError("sim.outputs_per_interval must divide sim.substeps");
    json manifest = json::array();

    double stop = INFINITY;
    auto run_one = [&](const ControllerConfig& cc, const InitialCondition& ic, const std::string& name) {
        if (!(ic.t_end > 0)) throw ConfigError("simulation duration must be positive");
        SimOptions so;
        so.stop_abs_theta = stop;
        so.substeps = substeps;
        so.outputs_per_interval = per;
        so.history = ic.history;
        const Trajectory tr = simulate(c.params, cc, ic.state, ic.state, ic.t_end, so);
        write_trajectory_csv((c.out / name).string(), tr, csv_header(c));
        manifest.push_back({{"file", name}, {"dt_sample", cc.dt_sample}, {"kind", ic.kind}, {"samples", tr.size()}});
    };

    if (mode == "training") {
        const TrainingDesign dz = design_from(c.cfg);
        const auto ics = training_conditions(c.params, c.ctrl, dz, c.seed);
        // training series are cut at theta_max anyway; stop before the pendulum falls
        stop = dz.theta_max;
        for (double mu : train_nodes(c.cfg)) {
            ControllerConfig cc = c.ctrl;
            cc.dt_sample = mu;
            for (size_t k = 0; k < ics.size(); ++k) run_one(cc, ics[k], "train_" + mu_tag(mu) + "_" + std::to_string(k) + ".csv");
        }
    } else if (mode == "random" || mode == "single") {
        const double t_end = c.cfg.num("sim.t_end", 10.0);
        const auto nodes = c.cfg.nums("sim.nodes", {c.ctrl.dt_sample});
        std::vector<InitialCondition> ics;
        if (mode == "single") {
            const auto v = c.cfg.nums("sim.ic", {0.01, 0, 0, 0});
            if (v.size() != 4) throw ConfigError("sim.ic needs theta,omega_theta,phi,omega_phi");
            InitialCondition ic;
            ic.kind = "single";
            ic.state = SimState{v[0], v[1], v[2], v[3], 0};
            ic.t_end = t_end;
            ics.push_back(ic);
        } else {
            const long n = c.cfg.integer("sim.n_ics", 1);
            if (n < 1) throw ConfigError("sim.n_ics must be >= 1");
            const double scale = c.cfg.num("sim.ic_scale", 0.01);
            std::mt19937_64 rng(c.seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (long k = 0; k < n; ++k) {
                InitialCondition ic;
                ic.kind = "random";
                ic.state.theta = scale * normal(rng);
                ic.state.omega_theta = scale * normal(rng);
                ic.t_end = t_end;
                ics.push_back(ic);
            }
        }
        for (double mu : nodes) {
            ControllerConfig cc = c.ctrl;
            cc.dt_sample = mu;
            cc.validate();
            for (size_t k = 0; k < ics.size(); ++k) run_one(cc, ics[k], "traj_" + mu_tag(mu) + "_" + std::to_string(k) + ".csv");
        }
    } else {
        throw ConfigError("sim.mode must be training, random or single");
    }
    write_json((c.out / "simulate.json").string(), stamp(c, {{"files", manifest}}));
    std::cout << "wrote " << manifest.size() << " trajectory files to " << c.out << "\n";
    return kOk;
}

// ------------------------------------------------------------ train

NodeOptions node_options(const Config& cfg) {
    NodeOptions no;
    no.d = static_cast<int>(cfg.integer("train.d", no.d));
    no.m = static_cast<int>(cfg.integer("train.m", no.m));
    no.stride = static_cast<int>(cfg.integer("train.stride", no.stride));
    no.geometry_order = static_cast<int>(cfg.integer("train.geometry_order", no.geometry_order));
    no.geometry.refine_iters = static_cast<int>(cfg.integer("train.geometry_refine", no.geometry.refine_iters));
    no.dynamics_order = static_cast<int>(cfg.integer("train.dynamics_order", no.dynamics_order));
    no.odd = cfg.flag("train.odd", no.odd);
    no.mirror = cfg.flag("train.mirror", no.mirror);
    no.nf.transform = cfg.flag("train.transform", no.nf.transform);
    no.nf.resonance_tol = cfg.num("train.resonance_tol", no.nf.resonance_tol);
    if (no.d != 4) throw ConfigError("train.d must be 4 for the parametric amplitude model");
    if (no.m <= 2 * no.d) throw ConfigError("train.m must exceed 2*d");
    if (no.stride != 1) throw ConfigError("train.stride must be 1 (the reduced map steps one sample)");
    return no;
}

int cmd_train(const Context& c) {
    const NodeOptions no = node_options(c.cfg);
    const double theta_max = c.cfg.num("train.theta_max", 0.17);
    const std::string interp = c.cfg.str("train.interp", "linear");
    if (interp != "linear" && interp != "spline") throw ConfigError("train.interp must be linear or spline");
    std::vector<NodeModel> nodes;
    for (double mu : train_nodes(c.cfg)) {
        std::vector<std::vector<double>> series;
        const std::string prefix = "train_" + mu_tag(mu) + "_";
        std::vector<fs::path> files;
        if (fs::exists(c.out))
            for (auto& e : fs::directory_iterator(c.out)) {
                const auto name = e.path().filename().string();
                if (name.rfind(prefix, 0) == 0 && e.path().extension() == ".csv") files.push_back(e.path());
            }
        if (files.empty())
            throw MissingArtifact("missing upstream artifact: " + (c.out / (prefix + "*.csv")).string() +
                                  " (run simulate with sim.mode = training)");
        std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
            auto idx = [](const fs::path& p) {
                const auto s = p.stem().string();
                return std::stol(s.substr(s.rfind('_') + 1));
            };
            return idx(a) < idx(b);
        });
        for (auto& f : files) series.push_back(truncate_series(read_csv_channel(f.string(), c.ctrl.observable), theta_max));
        NodeModel nm = fit_node(series, mu, no);
        nm.mu = mu;
        write_json((c.out / ("node_" + mu_tag(mu) + ".json")).string(), stamp(c, node_to_json(nm)));
        std::cout << "node " << mu << ": " << nm.series_used << " series, lambda = " << nm.nf.lambda[0] << ", "
                  << nm.nf.lambda[1] << "\n";
        nodes.push_back(std::move(nm));
    }
    const ParametricModel pm = assemble(nodes, interp == "spline" ? InterpMode::spline : InterpMode::linear);
    json j = pm;
    write_json((c.out / "parametric.json").string(), stamp(c, j));
    return kOk;
}

// ------------------------------------------------------------ portrait / scan

ParametricModel load_parametric(const Context& c) {
    return read_artifact(c.out / "parametric.json").get<ParametricModel>();
}

int cmd_portrait(const Context& c) {
    const ParametricModel pm = load_parametric(c);
    const int grid = static_cast<int>(c.cfg.integer("portrait.grid", 25));
    const int fgrid = static_cast<int>(c.cfg.integer("portrait.field_grid", 30));
    const Vec dom = pm.rho_domain();
    bool unreliable = false;
    for (double mu : c.cfg.nums("portrait.mu", {0.0308})) {
        NormalFormModel nf;
        try {
            nf = pm.interpolate(mu);
        } catch (const std::logic_error& e) {
            throw ConfigError(e.what());
        }
        PortraitAnalysis pa = analyze_portrait(nf, dom, grid, true);
        pa.mu = mu;
        for (auto& f : pa.fixed_points) unreliable |= !f.fd_agrees;
        const std::string tag = mu_tag(mu);
        write_json((c.out / ("portrait_" + tag + ".json")).string(), stamp(c, portrait_to_json(pa)));
        std::ofstream field(c.out / ("portrait_" + tag + "_field.csv"));
        for (auto& h : csv_header(c)) field << "# " << h << "\n";
        field << "rho1,rho2,drho1,drho2\n" << std::setprecision(17);
        for (int i = 0; i < fgrid; ++i)
            for (int k = 0; k < fgrid; ++k) {
                Vec r(2);
                r << dom[0] * i / (fgrid - 1), dom[1] * k / (fgrid - 1);
                const Vec v = nf.rho_dot(r);
                field << r[0] << ',' << r[1] << ',' << v[0] << ',' << v[1] << "\n";
            }
        std::ofstream orb(c.out / ("portrait_" + tag + "_orbits.csv"));
        for (auto& h : csv_header(c)) orb << "# " << h << "\n";
        orb << "orbit,stable,rho1,rho2\n" << std::setprecision(17);
        for (size_t o = 0; o < pa.orbits.size(); ++o)
            for (auto& s : pa.orbits[o].samples)
                orb << o << ',' << (pa.orbits[o].stable ? 1 : 0) << ',' << s[0] << ',' << s[1] << "\n";
        std::cout << "mu " << mu << ": " << pa.fixed_points.size() << " fixed points, " << pa.orbits.size()
                  << " closed orbits\n";
    }
    if (unreliable) {
        std::cerr << "warning: finite-difference Jacobian disagrees with a classification\n";
        if (!c.allow_unreliable) return kUnreliable;
    }
    return kOk;
}

int cmd_scan(const Context& c) {
    const ParametricModel pm = load_parametric(c);
    ScanOptions so;
    so.steps = static_cast<int>(c.cfg.integer("scan.steps", so.steps));
    so.mu_tol = c.cfg.num("scan.mu_tol", so.mu_tol);
    so.grid = static_cast<int>(c.cfg.integer("scan.grid", so.grid));
    so.orbits = c.cfg.flag("scan.orbits", so.orbits);
    const double lo = c.cfg.num("scan.mu_lo", pm.mu.front()), hi = c.cfg.num("scan.mu_hi", pm.mu.back());
    if (!(lo < hi)) throw ConfigError("scan.mu_lo must be below scan.mu_hi");
    if (so.steps < 2) throw ConfigError("scan.steps must be >= 2");
    std::vector<BifurcationEvent> ev;
    try {
        ev = scan_bifurcations(pm, lo, hi, so);
    } catch (const std::logic_error& e) {
        throw ConfigError(e.what());
    }
    json events = json::array();
    for (auto& e : ev) {
        events.push_back({{"mu", e.mu}, {"type", e.type}, {"location", e.location}});
        std::cout << e.type << " at " << e.mu << "\n";
    }
    write_json((c.out / "events.json").string(), stamp(c, {{"events", events}, {"mu_range", {lo, hi}}}));
    return kOk;
}

// ------------------------------------------------------------ chaos

ChaosOptions chaos_options(const Config& cfg) {
    ChaosOptions o;
    o.h = cfg.num("chaos.h", o.h);
    o.dt = cfg.num("chaos.dt", o.dt);
    o.t_end = cfg.num("chaos.t_end", o.t_end);
    o.transient = cfg.num("chaos.transient", o.transient);
    o.n_train = static_cast<int>(cfg.integer("chaos.n_train", o.n_train));
    o.d = static_cast<int>(cfg.integer("chaos.d", o.d));
    o.m = static_cast<int>(cfg.integer("chaos.m", o.m));
    o.stride = static_cast<int>(cfg.integer("chaos.stride", o.stride));
    o.max_centers = static_cast<size_t>(cfg.integer("chaos.max_centers", static_cast<long>(o.max_centers)));
    o.model_steps = cfg.integer("chaos.model_steps", o.model_steps);
    o.bins = static_cast<int>(cfg.integer("chaos.bins", o.bins));
    o.substeps = static_cast<int>(cfg.integer("sim.substeps", o.substeps));
    if (!(o.h > 0)) throw ConfigError("chaos.h must be positive");
    if (o.bins < 10) throw ConfigError("chaos.bins must be >= 10");
    if (o.n_train < 1) throw ConfigError("chaos.n_train must be >= 1");
    if (o.m <= o.d) throw ConfigError("chaos.m must exceed chaos.d");
    if (o.t_end <= o.transient) throw ConfigError("chaos.t_end must exceed chaos.transient");
    return o;
}

int cmd_chaos(const Context& c) {
    const ChaosOptions o = chaos_options(c.cfg);
    json out;
    bool reliable = true;
    if (c.cfg.has("chaos.input")) {
        // statistics of an external series only; no model is trained
        const std::string path = c.cfg.str("chaos.input", "");
        if (!fs::exists(path)) throw MissingArtifact("missing upstream artifact: " + path);
        double dt = o.dt;
        const auto s = read_csv_channel(path, c.ctrl.observable, &dt);
        const EmbeddedSeries e = embed(s, o.m, o.stride, dt);
        const ManifoldModel mm = fit_geometry(e.Y, o.d, 1);
        const Mat eta = mm.project(e.Y);
        const CorrelationDimension gp = correlation_dimension(eta.leftCols(std::min<Eigen::Index>(eta.cols(), 5000)), 0);
        const Lyapunov ly = lyapunov_data(eta.leftCols(std::min<Eigen::Index>(eta.cols(), 20000)), dt * o.stride);
        // a dimension reaching the embedding dimension is not resolved
        const bool saturated = gp.dimension > o.d - 0.5;
        reliable = gp.reliable && !saturated && ly.reliable;
        out = {{"input", path},
               {"correlation_dimension",
                {{"value", gp.dimension}, {"stderr", gp.stderr_}, {"r2", gp.r2}, {"reliable", gp.reliable && !saturated}}},
               {"lyapunov_data", {{"per_time", ly.per_time}, {"per_sample", ly.per_sample}, {"reliable", ly.reliable}}},
               {"reliable", reliable}};
    } else {
        const ChaosReport r = run_chaos(c.params, c.ctrl, o, c.seed);
        reliable = r.reliable;
        out = chaos_to_json(r);
        std::ofstream pdf(c.out / "chaos_pdf.csv");
        for (auto& h : csv_header(c)) pdf << "# " << h << "\n";
        pdf << "coordinate,bin_center,density_data,density_model\n" << std::setprecision(17);
        for (size_t i = 0; i < r.pdf_data.density.size(); ++i) {
            const double w = (r.pdf_data.hi[i] - r.pdf_data.lo[i]) / r.pdf_data.bins;
            for (int b = 0; b < r.pdf_data.bins; ++b)
                pdf << i << ',' << r.pdf_data.lo[i] + (b + 0.5) * w << ',' << r.pdf_data.density[i][b] << ','
                    << r.pdf_model.density[i][b] << "\n";
        }
        std::cout << "lyapunov data " << r.lyap_data.per_time << "/s (" << r.lyap_data.per_sample << "/sample), model "
                  << r.lyap_model.per_time << "/s; GP dimension " << r.gp.dimension << "\n";
    }
    write_json((c.out / "chaos.json").string(), stamp(c, out));
    if (!reliable) {
        std::cerr << "result flagged unreliable\n";
        if (!c.allow_unreliable) return kUnreliable;
    }
    return kOk;
}

// ------------------------------------------------------------ validate

int cmd_validate(const Context& c) {
    const ParametricModel pm = load_parametric(c);
    const double mu = c.cfg.num("validate.mu", 0.0312);
    const double t_end = c.cfg.num("validate.t_end", 60.0);
    const double scale = c.cfg.num("validate.ic_scale", 0.8);
    if (!(t_end > 0)) throw ConfigError("validate.t_end must be positive");
    NormalFormModel nf;
    try {
        nf = pm.interpolate(mu);
    } catch (const std::logic_error& e) {
        throw ConfigError(e.what());
    }
    // manifold of the nearest node
    size_t near = 0;
    for (size_t k = 1; k < pm.mu.size(); ++k)
        if (std::abs(pm.mu[k] - mu) < std::abs(pm.mu[near] - mu)) near = k;
    const NodeModel node = node_from_json(read_artifact(c.out / ("node_" + mu_tag(pm.mu[near]) + ".json")));

    // held-out run: a scaled state of the reference torus at this sampling time
    ControllerConfig cc = c.ctrl;
    cc.dt_sample = mu;
    const TrainingDesign dz = design_from(c.cfg);
    const Trajectory ref = reference_run(c.params, cc, mu, dz.ref_perturbed_settle, dz.substeps);
    const InitialCondition ic = state_with_history(ref, ref.size() - 3, scale);
    SimOptions so;
    so.substeps = dz.substeps;
    so.history = ic.history;
    const Trajectory tr = simulate(c.params, cc, ic.state, ic.state, t_end, so);
    std::vector<double> truth(tr.size());
    for (size_t k = 0; k < tr.size(); ++k) truth[k] = observable(tr.state(k), cc);

    const long n = static_cast<long>(truth.size()) - node.manifold.V1.rows();
    const auto pred = predict_observable(nf, node.manifold, truth, mu, n);
    const Eigen::Index len = static_cast<Eigen::Index>(pred.size());
    Mat A(1, len), B(1, len);
    for (Eigen::Index k = 0; k < len; ++k) {
        A(0, k) = truth[k];
        B(0, k) = pred[k];
    }
    const DTWResult d = dtw_nmte(A, B);
    std::ofstream f(c.out / "validate_trajectory.csv");
    for (auto& h : csv_header(c)) f << "# " << h << "\n";
    f << "t,reference,prediction\n" << std::setprecision(17);
    for (Eigen::Index k = 0; k < len; ++k) f << k * mu << ',' << A(0, k) << ',' << B(0, k) << "\n";
    write_json((c.out / "validate.json").string(),
               stamp(c, {{"mu", mu}, {"nmte_raw", d.nmte_raw}, {"nmte_dtw", d.nmte_dtw}, {"samples", len}}));
    std::cout << "NMTE raw " << d.nmte_raw << ", DTW-aligned " << d.nmte_dtw << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampled-data pendulum simulation and spectral-submanifold reduced models"};
    app.require_subcommand(1);
    std::string config, out;
    bool allow_unreliable = false;
    using Handler = int (*)(const Context&);
    const std::vector<std::tuple<std::string, std::string, Handler>> cmds{
        {"simulate", "integrate the full pendulum and write trajectory CSVs", cmd_simulate},
        {"train", "fit node models and the parametric model", cmd_train},
        {"portrait", "fixed points, closed orbits and vector field at given parameters", cmd_portrait},
        {"scan", "bifurcation events over a parameter range", cmd_scan},
        {"chaos", "microchaos statistics and RBF model", cmd_chaos},
        {"validate", "compare a held-out trajectory with the model", cmd_validate}};
    Handler chosen = nullptr;
    for (auto& [name, help, fn] : cmds) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", config, "key = value configuration file")->required();
        sub->add_option("-o,--out", out, "output directory (overrides out_dir)");
        sub->add_flag("--allow-unreliable", allow_unreliable, "exit 0 even if a result is flagged unreliable");
        sub->callback([&chosen, f = fn] { chosen = f; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }
    try {
        const Context c = load_context(config, out, allow_unreliable);
        return chosen(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kValidation;
    } catch (const MissingArtifact& e) {
        std::cerr << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
