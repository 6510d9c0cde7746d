#include "fssm/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fssm {

// ---------------------------------------------------------------- interpolation

void ParametricModel::validate() const {
    if (mu.size() < 2 || mu.size() != nodes.size()) throw std::invalid_argument("need at least two nodes");
    for (size_t k = 1; k < mu.size(); ++k)
        if (!(mu[k] > mu[k - 1])) throw std::invalid_argument("nodes must be strictly increasing");
    for (auto& n : nodes)
        if (n.npairs != nodes[0].npairs || n.basis != nodes[0].basis || n.order != nodes[0].order)
            throw std::invalid_argument("nodes must share the monomial basis");
}

namespace {

// natural cubic spline second derivatives for values y at knots x
std::vector<double> spline_m(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 3) return m;
    std::vector<double> a(n), b(n), c(n), r(n);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        a[i] = h0;
        b[i] = 2 * (h0 + h1);
        c[i] = h1;
        r[i] = 6 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    // Thomas algorithm on rows 1..n-2
    for (size_t i = 2; i + 1 < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
        m[i] = (r[i] - (i + 2 < n ? c[i] * m[i + 1] : 0.0)) / b[i];
        if (i == 1) break;
    }
    return m;
}

double interp1(const std::vector<double>& x, const std::vector<double>& y, double q, InterpMode mode) {
    size_t j = static_cast<size_t>(std::upper_bound(x.begin(), x.end(), q) - x.begin());
    j = std::clamp<size_t>(j, 1, x.size() - 1) - 1;
    const double h = x[j + 1] - x[j];
    const double t = (q - x[j]) / h;
    if (q == x[j]) return y[j];
    if (q == x[j + 1]) return y[j + 1];
    if (mode == InterpMode::linear || x.size() < 3) return (1 - t) * y[j] + t * y[j + 1];
    const auto m = spline_m(x, y);
    const double A = 1 - t, B = t;
    return A * y[j] + B * y[j + 1] + ((A * A * A - A) * m[j] + (B * B * B - B) * m[j + 1]) * h * h / 6;
}

}  // namespace

NormalFormModel ParametricModel::interpolate(double q) const {
    validate();
    const double span = mu.back() - mu.front();
    if (q < mu.front() - 1e-12 * span || q > mu.back() + 1e-12 * span)
        throw std::out_of_range("extrapolation not supported");
    q = std::clamp(q, mu.front(), mu.back());
    size_t nearest = 0;
    for (size_t k = 1; k < mu.size(); ++k)
        if (std::abs(mu[k] - q) < std::abs(mu[nearest] - q)) nearest = k;
    NormalFormModel out = nodes[nearest];
    const size_t nn = nodes.size();
    std::vector<double> y(nn);
    auto coef = [&](auto get) {
        for (size_t k = 0; k < nn; ++k) y[k] = get(nodes[k]);
        return interp1(mu, y, q, mode);
    };
    for (int i = 0; i < out.npairs; ++i) {
        for (Eigen::Index k = 0; k < out.amp.cols(); ++k) {
            out.amp(i, k) = coef([&](const NormalFormModel& n) { return n.amp(i, k); });
            out.phase(i, k) = coef([&](const NormalFormModel& n) { return n.phase(i, k); });
        }
        const double re = coef([&](const NormalFormModel& n) { return n.lambda[i].real(); });
        const double im = coef([&](const NormalFormModel& n) { return n.lambda[i].imag(); });
        out.lambda[i] = cd(re, im);
        out.rho_max[i] = coef([&](const NormalFormModel& n) { return n.rho_max[i]; });
    }
    return out;
}

Vec ParametricModel::rho_domain() const {
    Vec r = nodes.front().rho_max;
    for (auto& n : nodes) r = r.cwiseMax(n.rho_max);
    return 1.5 * r;
}

// ---------------------------------------------------------------- fixed points

namespace {

std::string classify(const VecC& ev) {
    double mx = -INFINITY, mn = INFINITY;
    for (auto& e : ev) {
        mx = std::max(mx, e.real());
        mn = std::min(mn, e.real());
    }
    const double scale = std::max({std::abs(mx), std::abs(mn), 1e-300});
    if (std::abs(mx) < 1e-12 * scale || std::abs(mn) < 1e-12 * scale) return "degenerate";
    if (mx < 0) return "stable";
    if (mn > 0) return "unstable";
    return "saddle";
}

Mat fd_jacobian(const NormalFormModel& nf, const Vec& r) {
    const int p = nf.npairs;
    Mat J(p, p);
    for (int q = 0; q < p; ++q) {
        const double h = 1e-7 * std::max(1.0, std::abs(r[q]));
        Vec a = r, b = r;
        a[q] += h;
        b[q] -= h;
        J.col(q) = (nf.rho_dot(a) - nf.rho_dot(b)) / (2 * h);
    }
    return J;
}

}  // namespace

std::vector<FixedPoint> find_fixed_points(const NormalFormModel& nf, const Vec& rho_max, int grid) {
    const int p = nf.npairs;
    const double L = rho_max.norm();
    std::vector<FixedPoint> out;
    std::vector<int> idx(p, 0);
    const long total = static_cast<long>(std::pow(grid + 1, p));
    for (long s = 0; s < total; ++s) {
        long t = s;
        Vec x(p);
        for (int q = 0; q < p; ++q) {
            x[q] = rho_max[q] * static_cast<double>(t % (grid + 1)) / grid;
            t /= grid + 1;
        }
        bool conv = false;
        for (int it = 0; it < 60; ++it) {
            const Vec f = nf.rho_dot(x);
            if (!f.allFinite()) break;
            if (f.norm() < 1e-13) {
                conv = true;
                break;
            }
            const Vec dx = nf.jacobian(x).fullPivLu().solve(-f);
            if (!dx.allFinite()) break;
            x += dx;
            if (x.norm() > 10 * L) break;
        }
        if (!conv) continue;
        for (int q = 0; q < p; ++q)
            if (std::abs(x[q]) < 1e-9 * std::max(L, 1e-300)) x[q] = 0;
        x = x.cwiseAbs();  // rho -> -rho is a symmetry of the odd equations
        const double res = nf.rho_dot(x).norm();
        if (!(res < 1e-10)) continue;
        bool inside = true;
        for (int q = 0; q < p; ++q) inside = inside && x[q] <= rho_max[q] * 1.0001;
        if (!inside) continue;
        bool dup = false;
        for (auto& f : out) dup = dup || (f.rho - x).norm() < 1e-6 * std::max(L, 1e-300);
        if (dup) continue;
        FixedPoint fp;
        fp.rho = x;
        fp.residual = res;
        fp.eig = nf.jacobian(x).eigenvalues();
        fp.stability = classify(fp.eig);
        fp.fd_agrees = classify(fd_jacobian(nf, x).eigenvalues()) == fp.stability;
        int nz = 0, last = -1;
        for (int q = 0; q < p; ++q)
            if (x[q] > 0) {
                ++nz;
                last = q;
            }
        fp.kind = nz == 0 ? "origin" : (nz == p ? "interior" : (nz == 1 ? "axis" + std::to_string(last + 1) : "face"));
        out.push_back(fp);
    }
    std::sort(out.begin(), out.end(), [](const FixedPoint& a, const FixedPoint& b) {
        if (a.rho.norm() != b.rho.norm()) return a.rho.norm() < b.rho.norm();
        return a.rho[0] < b.rho[0];
    });
    return out;
}

// ---------------------------------------------------------------- heteroclinic

namespace {

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// one RK4 step of the arclength-parametrized flow, direction sgn
Vec arc_step(const NormalFormModel& nf, const Vec& x, double ds, double sgn) {
    auto f = [&](const Vec& v) {
        Vec g = nf.rho_dot(v);
        const double n = g.norm();
        return Vec(n > 0 ? Vec(sgn * g / n) : Vec(Vec::Zero(v.size())));
    };
    const Vec k1 = f(x), k2 = f(x + 0.5 * ds * k1), k3 = f(x + 0.5 * ds * k2), k4 = f(x + ds * k3);
    return x + ds / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

struct Branch {
    bool crossed = false;
    double s = 0;  // position of the crossing along the section direction
    std::vector<Vec> pts;
};

Branch trace_branch(const NormalFormModel& nf, const Vec& x0, double sgn, const Vec& dir, double L) {
    Branch b;
    const double ds = 1e-3 * L;
    Vec x = x0;
    b.pts.push_back(x);
    double c0 = cross2(dir, x);
    const int nmax = 20000;
    for (int k = 0; k < nmax; ++k) {
        if (nf.rho_dot(x).norm() < 1e-14) break;
        Vec xn = arc_step(nf, x, ds, sgn);
        if (!xn.allFinite() || xn.minCoeff() < -1e-9 * L || xn.norm() > 3 * L) break;
        const double c1 = cross2(dir, xn);
        if ((c0 < 0) != (c1 < 0) && c0 != 0) {
            double lo = 0, hi = ds;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double cm = cross2(dir, arc_step(nf, x, mid, sgn));
                if ((cm < 0) == (c0 < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            const Vec xc = arc_step(nf, x, 0.5 * (lo + hi), sgn);
            b.pts.push_back(xc);
            b.crossed = true;
            b.s = xc.dot(dir);
            return b;
        }
        x = xn;
        c0 = c1;
        b.pts.push_back(x);
    }
    return b;
}

Vec eigvec_real(const Mat& J, bool unstable) {
    Eigen::EigenSolver<Mat> es(J);
    int k = 0;
    for (int i = 1; i < J.rows(); ++i) {
        const double ri = es.eigenvalues()[i].real(), rk = es.eigenvalues()[k].real();
        if (unstable ? ri > rk : ri < rk) k = i;
    }
    Vec v = es.eigenvectors().col(k).real();
    return v / v.norm();
}

}  // namespace

HeteroclinicResult heteroclinic_gap(const NormalFormModel& nf, const std::vector<FixedPoint>& fps,
                                    const Vec& rho_max) {
    HeteroclinicResult r;
    if (nf.npairs != 2) {
        r.diagnostic = "heteroclinic analysis needs two amplitude equations";
        return r;
    }
    const FixedPoint *A = nullptr, *B = nullptr, *F = nullptr;
    for (auto& f : fps) {
        if (f.kind == "interior" && f.stability != "saddle" && !F) F = &f;
        if (f.stability != "saddle" || (f.kind != "axis1" && f.kind != "axis2")) continue;
        // on an axis the Jacobian is triangular: transverse eigenvalue is g_other
        const int other = f.kind == "axis1" ? 1 : 0;
        const double transverse = nf.rho_dot(f.rho + Vec::Unit(2, other) * 1e-9)[other] / 1e-9;
        if (transverse > 0 && !A) A = &f;
        if (transverse < 0 && !B) B = &f;
    }
    if (!A || !B) {
        r.diagnostic = "no saddle pair";
        return r;
    }
    const double L = rho_max.norm();
    Vec dir = F ? F->rho : Vec(0.5 * (A->rho + B->rho));
    dir /= dir.norm();
    r.saddle_a = A->rho;
    r.saddle_b = B->rho;
    r.section_dir = dir;

    const double eps = 1e-6 * L;
    Vec vu = eigvec_real(nf.jacobian(A->rho), true);
    if (vu.minCoeff() < 0 && vu.maxCoeff() <= 0) vu = -vu;
    if ((A->rho + eps * vu).minCoeff() < 0) vu = -vu;
    Vec vs = eigvec_real(nf.jacobian(B->rho), false);
    if ((B->rho + eps * vs).minCoeff() < 0) vs = -vs;

    const Branch bu = trace_branch(nf, A->rho + eps * vu, +1, dir, L);
    const Branch bs = trace_branch(nf, B->rho + eps * vs, -1, dir, L);
    r.branch_u = bu.pts;
    r.branch_s = bs.pts;
    double md = INFINITY;
    for (auto& a : bu.pts)
        for (auto& b : bs.pts) md = std::min(md, (a - b).norm());
    r.min_distance = md;
    if (!bu.crossed || !bs.crossed) {
        r.diagnostic = "manifold branch does not reach the section";
        return r;
    }
    r.gap = bu.s - bs.s;
    r.valid = true;
    return r;
}

HeteroclinicResult detect_heteroclinic(const NormalFormModel& nf, const Vec& rho_max, int grid) {
    auto fps = find_fixed_points(nf, rho_max, grid);
    auto r = heteroclinic_gap(nf, fps, rho_max);
    if (r.diagnostic == "no saddle pair") throw std::runtime_error("no saddle pair");
    return r;
}

// ---------------------------------------------------------------- closed orbits

std::vector<ClosedOrbit> find_closed_orbits(const NormalFormModel& nf, const FixedPoint& focus, const Vec& rho_max,
                                            const OrbitOptions& opt) {
    std::vector<ClosedOrbit> out;
    if (nf.npairs != 2 || focus.kind != "interior") return out;
    if (std::abs(focus.eig[0].imag()) == 0) return out;  // node: no rotation
    const Vec F = focus.rho;
    const Vec u = F / F.norm();
    // section extends from F until the first component leaves the domain
    double smax = INFINITY;
    for (int q = 0; q < 2; ++q)
        if (u[q] > 0) smax = std::min(smax, (rho_max[q] - F[q]) / u[q]);
    if (!(smax > 0) || !std::isfinite(smax)) return out;

    auto rk = [&](const Vec& x, double h) {
        const Vec k1 = nf.rho_dot(x), k2 = nf.rho_dot(x + 0.5 * h * k1), k3 = nf.rho_dot(x + 0.5 * h * k2),
                  k4 = nf.rho_dot(x + h * k3);
        return Vec(x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
    };
    // returns NaN when the orbit does not come back to the section
    auto ret = [&](double s, std::vector<Vec>* samples) -> double {
        Vec x = F + s * u;
        const double orient = cross2(u, nf.rho_dot(x));
        if (orient == 0) return NAN;
        double c0 = 0;  // start on the section
        bool left = false;
        const int n = static_cast<int>(opt.t_max / opt.dt);
        for (int k = 0; k < n; ++k) {
            Vec xn = rk(x, opt.dt);
            if (!xn.allFinite() || xn.minCoeff() <= 0 || xn[0] > 2 * rho_max[0] || xn[1] > 2 * rho_max[1])
                return NAN;
            if (samples && k % 10 == 0) samples->push_back(xn);
            const double c1 = cross2(u, xn - F);
            if (!left) {
                if (std::abs(c1) > 0) left = true;
            } else if ((c0 < 0) != (c1 < 0) && (c1 > 0) == (orient > 0) && (xn - F).dot(u) > 0) {
                // back on the section from the same side; interpolate
                const double w = c0 / (c0 - c1);
                const Vec xc = x + w * (xn - x);
                return (xc - F).dot(u);
            }
            x = xn;
            c0 = c1;
        }
        return NAN;
    };
    std::vector<double> s(opt.grid), D(opt.grid);
    for (int k = 0; k < opt.grid; ++k) {
        s[k] = smax * (k + 1) / (opt.grid + 1);
        D[k] = ret(s[k], nullptr) - s[k];
    }
    for (int k = 0; k + 1 < opt.grid; ++k) {
        if (!std::isfinite(D[k]) || !std::isfinite(D[k + 1]) || (D[k] < 0) == (D[k + 1] < 0)) continue;
        double lo = s[k], hi = s[k + 1], dlo = D[k];
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double dm = ret(mid, nullptr) - mid;
            if (!std::isfinite(dm)) break;
            if ((dm < 0) == (dlo < 0)) {
                lo = mid;
                dlo = dm;
            } else {
                hi = mid;
            }
        }
        ClosedOrbit o;
        o.section_s = 0.5 * (lo + hi);
        o.stable = D[k] > 0;  // return map pushes inward from outside
        ret(o.section_s, &o.samples);
        out.push_back(std::move(o));
    }
    return out;
}

// ---------------------------------------------------------------- portraits and scans

PortraitAnalysis analyze_portrait(const NormalFormModel& nf, const Vec& rho_max, int grid, bool orbits,
                                  const OrbitOptions& oopt) {
    PortraitAnalysis pa;
    pa.rho_max = rho_max;
    pa.fixed_points = find_fixed_points(nf, rho_max, grid);
    pa.heteroclinic = heteroclinic_gap(nf, pa.fixed_points, rho_max);
    for (auto& f : pa.fixed_points)
        if (f.kind == "interior" && f.stability != "saddle") {
            double mx = -INFINITY;
            for (auto& e : f.eig) mx = std::max(mx, e.real());
            pa.interior_real = mx;
            if (orbits) pa.orbits = find_closed_orbits(nf, f, rho_max, oopt);
            break;
        }
    return pa;
}

namespace {

struct Probe {
    std::optional<double> gap, interior;
    int norbits = 0;
};

Probe probe(const ParametricModel& pm, double m, const Vec& dom, const ScanOptions& opt, bool orbits) {
    const auto nf = pm.interpolate(m);
    const auto pa = analyze_portrait(nf, dom, opt.grid, orbits, opt.orbit);
    Probe p;
    if (pa.heteroclinic.valid) p.gap = pa.heteroclinic.gap;
    p.interior = pa.interior_real;
    p.norbits = static_cast<int>(pa.orbits.size());
    return p;
}

template <class Pred>
double bisect(double lo, double hi, double tol, Pred same_as_lo) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (same_as_lo(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<BifurcationEvent> scan_bifurcations(const ParametricModel& pm, double mu_lo, double mu_hi,
                                                const ScanOptions& opt) {
    pm.validate();
    if (opt.steps < 2) throw std::invalid_argument("steps must be >= 2");
    const Vec dom = pm.rho_domain();
    std::vector<double> ms(opt.steps);
    std::vector<Probe> pr(opt.steps);
    for (int k = 0; k < opt.steps; ++k) {
        ms[k] = mu_lo + (mu_hi - mu_lo) * k / (opt.steps - 1);
        pr[k] = probe(pm, ms[k], dom, opt, opt.orbits);
    }
    std::vector<BifurcationEvent> ev;
    auto sgn = [](const std::optional<double>& v) { return v && *v > 0; };
    for (int k = 0; k + 1 < opt.steps; ++k) {
        const Probe &a = pr[k], &b = pr[k + 1];
        if (a.gap && b.gap && sgn(a.gap) != sgn(b.gap)) {
            const bool s0 = sgn(a.gap);
            const double m = bisect(ms[k], ms[k + 1], opt.mu_tol, [&](double x) {
                auto p = probe(pm, x, dom, opt, false);
                return p.gap ? sgn(p.gap) == s0 : x - ms[k] < ms[k + 1] - x;
            });
            ev.push_back({m, "heteroclinic", {{"gap_before", *a.gap}, {"gap_after", *b.gap}}});
        }
        if (a.interior && b.interior && sgn(a.interior) != sgn(b.interior)) {
            const bool s0 = sgn(a.interior);
            const double m = bisect(ms[k], ms[k + 1], opt.mu_tol, [&](double x) {
                auto p = probe(pm, x, dom, opt, false);
                return p.interior ? sgn(p.interior) == s0 : x - ms[k] < ms[k + 1] - x;
            });
            ev.push_back({m, "hopf", {{"stable_before", !s0}, {"real_before", *a.interior}, {"real_after", *b.interior}}});
        }
        if (opt.orbits && a.norbits != b.norbits) {
            const int n0 = a.norbits;
            const double m = bisect(ms[k], ms[k + 1], opt.mu_tol,
                                    [&](double x) { return probe(pm, x, dom, opt, true).norbits == n0; });
            ev.push_back({m, b.norbits > a.norbits ? "torus3_appear" : "torus3_disappear",
                          {{"orbits_before", a.norbits}, {"orbits_after", b.norbits}}});
        }
    }
    std::stable_sort(ev.begin(), ev.end(), [](auto& x, auto& y) { return x.mu < y.mu; });
    return ev;
}

nlohmann::json portrait_to_json(const PortraitAnalysis& pa) {
    auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    nlohmann::json fps = nlohmann::json::array();
    for (auto& f : pa.fixed_points) {
        nlohmann::json ev = nlohmann::json::array();
        for (auto& e : f.eig) ev.push_back({e.real(), e.imag()});
        fps.push_back({{"rho", vec(f.rho)},
                       {"kind", f.kind},
                       {"stability", f.stability},
                       {"eigenvalues", ev},
                       {"residual", f.residual},
                       {"fd_agrees", f.fd_agrees}});
    }
    nlohmann::json orb = nlohmann::json::array();
    for (auto& o : pa.orbits) orb.push_back({{"section_s", o.section_s}, {"stable", o.stable}});
    nlohmann::json het = {{"valid", pa.heteroclinic.valid}, {"diagnostic", pa.heteroclinic.diagnostic}};
    if (pa.heteroclinic.valid) {
        het["gap"] = pa.heteroclinic.gap;
        het["min_distance"] = pa.heteroclinic.min_distance;
        het["saddle_a"] = vec(pa.heteroclinic.saddle_a);
        het["saddle_b"] = vec(pa.heteroclinic.saddle_b);
    }
    nlohmann::json j = {{"mu", pa.mu}, {"rho_max", vec(pa.rho_max)}, {"fixed_points", fps}, {"heteroclinic", het},
                        {"closed_orbits", orb}};
    if (pa.interior_real) j["interior_max_real"] = *pa.interior_real;
    return j;
}

void to_json(nlohmann::json& j, const ParametricModel& m) {
    j = nlohmann::json{{"mu", m.mu}, {"mode", m.mode == InterpMode::linear ? "linear" : "spline"}, {"nodes", m.nodes}};
}

void from_json(const nlohmann::json& j, ParametricModel& m) {
    m.mu = j.at("mu").get<std::vector<double>>();
    m.mode = j.at("mode") == "spline" ? InterpMode::spline : InterpMode::linear;
    m.nodes = j.at("nodes").get<std::vector<NormalFormModel>>();
}

}  // namespace fssm
