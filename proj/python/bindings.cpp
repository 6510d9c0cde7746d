#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fssm/diagnostics.hpp"
#include "fssm/embedding.hpp"
#include "fssm/manifold.hpp"
#include "fssm/parametric.hpp"
#include "fssm/pipeline.hpp"
#include "fssm/sim.hpp"

namespace py = pybind11;
using namespace fssm;

namespace {

// JSON crosses the boundary as text; the Python side parses it
std::string node_fit(const std::vector<std::vector<double>>& series, double dt, int m, int d) {
    NodeOptions no;
    no.m = m;
    no.d = d;
    NodeModel n = fit_node(series, dt, no);
    n.mu = dt;
    return node_to_json(n).dump();
}

ParametricModel parametric_from(const std::vector<std::string>& nodes, const std::string& mode) {
    std::vector<NodeModel> ns;
    for (auto& s : nodes) ns.push_back(node_from_json(nlohmann::json::parse(s)));
    return assemble(ns, mode == "spline" ? InterpMode::spline : InterpMode::linear);
}

py::dict trajectory_dict(const Trajectory& tr) {
    py::dict d;
    d["t"] = tr.time();
    d["theta"] = tr.theta;
    d["omega_theta"] = tr.omega_theta;
    d["phi"] = tr.phi;
    d["omega_phi"] = tr.omega_phi;
    d["u"] = tr.u;
    d["stopped_early"] = tr.stopped_early;
    if (tr.has_integral) d["x_I"] = tr.x_I;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fssm, m) {
    m.doc() = "Sampled-data pendulum simulation and spectral-submanifold reduced models";

    py::class_<PendulumParams>(m, "PendulumParams")
        .def(py::init<>())
        .def_readwrite("m", &PendulumParams::m)
        .def_readwrite("l", &PendulumParams::l)
        .def_readwrite("r_arm", &PendulumParams::r_arm)
        .def_readwrite("g", &PendulumParams::g)
        .def_readwrite("J_p", &PendulumParams::J_p)
        .def_readwrite("J_a", &PendulumParams::J_a)
        .def_readwrite("b1", &PendulumParams::b1)
        .def_readwrite("b2", &PendulumParams::b2)
        .def_readwrite("N_motor", &PendulumParams::N_motor)
        .def_readwrite("K_emf", &PendulumParams::K_emf)
        .def("validate", &PendulumParams::validate);

    py::class_<ControllerConfig>(m, "ControllerConfig")
        .def(py::init<>())
        .def_readwrite("K_P", &ControllerConfig::K_P)
        .def_readwrite("K_D", &ControllerConfig::K_D)
        .def_readwrite("K_phiD", &ControllerConfig::K_phiD)
        .def_readwrite("K_I", &ControllerConfig::K_I)
        .def_readwrite("dt_sample", &ControllerConfig::dt_sample)
        .def_readwrite("r_delay", &ControllerConfig::r_delay)
        .def_readwrite("h_quant", &ControllerConfig::h_quant)
        .def_readwrite("observable", &ControllerConfig::observable)
        .def("validate", &ControllerConfig::validate);

    m.def("rho", &rho, py::arg("t"), py::arg("dt_sample"), py::arg("r_delay") = 1);
    m.def("average_delay", &average_delay, py::arg("dt_sample"), py::arg("r_delay") = 1);
    m.def("quantize", &quantize, py::arg("x"), py::arg("h"));

    m.def(
        "simulate",
        [](const PendulumParams& p, const ControllerConfig& c, const std::vector<double>& ic, double t_end,
           int substeps, int outputs_per_interval, double stop_abs_theta) {
            if (ic.size() != 4) throw std::invalid_argument("ic needs theta, omega_theta, phi, omega_phi");
            const SimState x{ic[0], ic[1], ic[2], ic[3], 0};
            SimOptions so;
            so.substeps = substeps;
            so.outputs_per_interval = outputs_per_interval;
            so.stop_abs_theta = stop_abs_theta;
            return trajectory_dict(simulate(p, c, x, x, t_end, so));
        },
        py::arg("params"), py::arg("controller"), py::arg("ic"), py::arg("t_end"), py::arg("substeps") = 256,
        py::arg("outputs_per_interval") = 1, py::arg("stop_abs_theta") = std::numeric_limits<double>::infinity());
    m.def(
        "mechanical_energy",
        [](const std::vector<double>& x, const PendulumParams& p) {
            return mechanical_energy(SimState{x.at(0), x.at(1), x.at(2), x.at(3), 0}, p);
        },
        py::arg("state"), py::arg("params"));

    m.def(
        "embed", [](const std::vector<double>& s, int mm, int stride) { return embed(s, mm, stride).Y; },
        py::arg("series"), py::arg("m"), py::arg("stride") = 1);

    py::class_<ManifoldModel>(m, "ManifoldModel")
        .def_readonly("V1", &ManifoldModel::V1)
        .def_readonly("Vnl", &ManifoldModel::Vnl)
        .def("project", py::overload_cast<const Mat&>(&ManifoldModel::project, py::const_))
        .def("lift", py::overload_cast<const Mat&>(&ManifoldModel::lift, py::const_));
    m.def(
        "fit_geometry", [](const Mat& Y, int d, int order) { return fit_geometry(Y, d, order); }, py::arg("Y"),
        py::arg("d"), py::arg("order"));

    m.def("fit_node_json", &node_fit, py::arg("series"), py::arg("dt"), py::arg("m") = 12, py::arg("d") = 4);

    py::class_<ParametricModel>(m, "ParametricModel")
        .def(py::init(&parametric_from), py::arg("nodes_json"), py::arg("mode") = "linear")
        .def_readonly("mu", &ParametricModel::mu)
        .def(
            "portrait_json",
            [](const ParametricModel& pm, double mu, bool orbits) {
                PortraitAnalysis pa = analyze_portrait(pm.interpolate(mu), pm.rho_domain(), 25, orbits);
                pa.mu = mu;
                return portrait_to_json(pa).dump();
            },
            py::arg("mu"), py::arg("orbits") = false)
        .def(
            "scan",
            [](const ParametricModel& pm, double lo, double hi, int steps, bool orbits) {
                ScanOptions so;
                so.steps = steps;
                so.orbits = orbits;
                std::vector<std::pair<double, std::string>> out;
                for (auto& e : scan_bifurcations(pm, lo, hi, so)) out.emplace_back(e.mu, e.type);
                return out;
            },
            py::arg("mu_lo"), py::arg("mu_hi"), py::arg("steps") = 41, py::arg("orbits") = false);

    m.def(
        "correlation_dimension",
        [](const Mat& pts, int theiler) {
            const auto c = correlation_dimension(pts, theiler);
            return py::dict(py::arg("dimension") = c.dimension, py::arg("stderr") = c.stderr_,
                            py::arg("reliable") = c.reliable);
        },
        py::arg("points"), py::arg("theiler") = 0);
    m.def(
        "lyapunov_data",
        [](const Mat& pts, double dt, int theiler, int k_max) {
            RosensteinOptions o;
            o.theiler = theiler;
            o.k_max = k_max;
            const auto l = lyapunov_data(pts, dt, o);
            return py::dict(py::arg("per_time") = l.per_time, py::arg("per_sample") = l.per_sample,
                            py::arg("reliable") = l.reliable);
        },
        py::arg("points"), py::arg("dt"), py::arg("theiler") = 50, py::arg("k_max") = 200);
    m.def(
        "fft_peaks",
        [](const std::vector<double>& s, double dt, int k, double prominence) {
            std::vector<std::pair<double, double>> out;
            for (auto& p : find_peaks(fft_spectrum(s, dt), k, prominence)) out.emplace_back(p.freq, p.amp);
            return out;
        },
        py::arg("series"), py::arg("dt"), py::arg("k") = 5, py::arg("prominence") = 0.05);
    m.def("ks_statistics", &ks_statistics, py::arg("a"), py::arg("b"));
    m.def(
        "dtw_nmte",
        [](const Mat& ref, const Mat& pred) {
            const auto r = dtw_nmte(ref, pred);
            return py::dict(py::arg("nmte_raw") = r.nmte_raw, py::arg("nmte_dtw") = r.nmte_dtw,
                            py::arg("distance") = r.distance);
        },
        py::arg("reference"), py::arg("prediction"));
    m.def(
        "run_chaos_json",
        [](const PendulumParams& p, const ControllerConfig& c, double h, double t_end, std::uint64_t seed) {
            ChaosOptions o;
            o.h = h;
            o.t_end = t_end;
            return chaos_to_json(run_chaos(p, c, o, seed)).dump();
        },
        py::arg("params"), py::arg("controller"), py::arg("h") = ChaosOptions{}.h, py::arg("t_end") = ChaosOptions{}.t_end,
        py::arg("seed") = 1);
}
