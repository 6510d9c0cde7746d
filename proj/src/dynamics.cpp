#include "fssm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "fssm/jsonio.hpp"

namespace fssm {

Mat PolyReducedModel::R1() const {
    Mat A = Mat::Zero(d, d);
    for (size_t c = 0; c < exps.size(); ++c) {
        if (degree(exps[c]) != 1) continue;
        for (int i = 0; i < d; ++i)
            if (exps[c][i] == 1) A.col(i) = R.col(c);
    }
    return A;
}

namespace {

Mat hstack(const std::vector<Mat>& parts) {
    Eigen::Index n = 0, rows = 0;
    for (auto& p : parts) {
        n += p.cols();
        rows = p.rows();
    }
    Mat out(rows, n);
    Eigen::Index c = 0;
    for (auto& p : parts) {
        out.middleCols(c, p.cols()) = p;
        c += p.cols();
    }
    return out;
}

Mat regress(const Mat& F, const Mat& Y, const char* msg) {
    // solves min |Y - C F| column-scaled
    const Vec sc = F.rowwise().norm().cwiseMax(1e-300);
    const Mat Fs = sc.cwiseInverse().asDiagonal() * F;
    Eigen::ColPivHouseholderQR<Mat> qr(Fs.transpose());
    qr.setThreshold(1e-12);
    if (qr.rank() < Fs.rows()) throw std::runtime_error(msg);
    Mat C = qr.solve(Y.transpose()).transpose();
    return C * sc.cwiseInverse().asDiagonal();
}

PolyReducedModel fit_common(const Mat& X, const Mat& Z, int d, double dt, int order, bool odd_only, bool discrete) {
    if (X.cols() == 0) throw std::runtime_error("rank-deficient: no samples");
    PolyReducedModel m;
    m.d = d;
    m.order = order;
    m.discrete = discrete;
    m.step = dt;
    m.exps = odd_only ? odd_monomials(d, 1, order) : monomials(d, 1, order);
    if (X.cols() <= static_cast<Eigen::Index>(m.exps.size())) throw std::runtime_error("rank-deficient: too few samples");
    const Mat F = features(X, m.exps);
    m.R = regress(F, Z, "ill-conditioned features: rescale reduced coordinates");
    m.amplitude = X.colwise().norm().maxCoeff();
    return m;
}

}  // namespace

PolyReducedModel fit_poly_dynamics(const std::vector<Mat>& etas, double dt, int order, bool odd_only) {
    if (etas.empty()) throw std::runtime_error("rank-deficient: no trajectories");
    const int d = static_cast<int>(etas.front().rows());
    std::vector<Mat> xs, ds;
    for (auto& e : etas) {
        const Eigen::Index n = e.cols();
        if (n < 5) continue;
        const Eigen::Index k = n - 4;
        xs.push_back(e.middleCols(2, k));
        ds.push_back((e.leftCols(k) - 8 * e.middleCols(1, k) + 8 * e.middleCols(3, k) - e.middleCols(4, k)) /
                     (12 * dt));
    }
    if (xs.empty()) throw std::runtime_error("rank-deficient: trajectories too short");
    return fit_common(hstack(xs), hstack(ds), d, dt, order, odd_only, false);
}

PolyReducedModel fit_poly_map(const std::vector<Mat>& etas, double dt, int order, bool odd_only) {
    if (etas.empty()) throw std::runtime_error("rank-deficient: no trajectories");
    const int d = static_cast<int>(etas.front().rows());
    std::vector<Mat> xs, zs;
    for (auto& e : etas) {
        if (e.cols() < 2) continue;
        xs.push_back(e.leftCols(e.cols() - 1));
        zs.push_back(e.rightCols(e.cols() - 1));
    }
    if (xs.empty()) throw std::runtime_error("rank-deficient: trajectories too short");
    return fit_common(hstack(xs), hstack(zs), d, dt, order, odd_only, true);
}

// ---------------------------------------------------------------- normal form

Vec NormalFormModel::rho_dot(const Vec& rho) const {
    const Vec b = features(rho, basis);
    return rho.cwiseProduct(amp * b);
}

Vec NormalFormModel::theta_dot(const Vec& rho) const { return phase * features(rho, basis); }

Mat NormalFormModel::jacobian(const Vec& rho) const {
    const int p = npairs;
    const Vec b = features(rho, basis);
    const Vec g = amp * b;
    // d(rho^k)/d rho_q = k_q rho^(k - e_q)
    Mat db(basis.size(), p);
    for (size_t k = 0; k < basis.size(); ++k)
        for (int q = 0; q < p; ++q) {
            if (!basis[k][q]) {
                db(k, q) = 0;
                continue;
            }
            double t = basis[k][q];
            for (int r = 0; r < p; ++r) t *= std::pow(rho[r], basis[k][r] - (r == q ? 1 : 0));
            db(k, q) = t;
        }
    Mat J = rho.asDiagonal() * (amp * db);
    J.diagonal() += g;
    return J;
}

bool NormalFormModel::to_nf(const VecC& xi, VecC& z) const {
    z = xi;
    if (transform.empty()) return true;
    double dz = 0;
    for (int it = 0; it < 40; ++it) {
        VecC zn = xi - poly_eval(transform, z);
        dz = (zn - z).cwiseAbs().maxCoeff();
        z = zn;
    }
    return std::isfinite(dz) && dz <= 1e-7 * std::max(z.cwiseAbs().maxCoeff(), 1e-300);
}

Vec NormalFormModel::amplitudes(const Vec& eta) const {
    VecC z;
    Vec r = Vec::Constant(npairs, NAN);
    if (!to_nf(W.inverse() * eta.cast<cd>(), z)) return r;
    for (int p = 0; p < npairs; ++p) r[p] = std::abs(z[2 * p]);
    return r;
}

VecC NormalFormModel::from_nf(const VecC& z) const {
    if (transform.empty()) return z;
    return z + poly_eval(transform, z);
}

namespace {

std::vector<MultiIndex> amplitude_basis(int npairs, int order) {
    std::vector<MultiIndex> out;
    for (auto& k : monomials(npairs, 0, order - 1)) {
        bool even = true;
        for (int e : k) even = even && (e % 2 == 0);
        if (even) out.push_back(k);
    }
    return out;
}

// Degree-`deg` part of W^-1 P(W xi), one sparse polynomial per modal component.
std::vector<CPoly> modal_part(const PolyReducedModel& m, const MatC& W, const MatC& Wi, int deg) {
    const int d = m.d;
    std::vector<CPoly> lin(d);
    for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c) {
            MultiIndex k(d, 0);
            k[c] = 1;
            lin[i][k] = W(i, c);
        }
    std::vector<CPoly> out(d);
    for (size_t col = 0; col < m.exps.size(); ++col) {
        if (degree(m.exps[col]) != deg) continue;
        CPoly p{{MultiIndex(d, 0), cd(1, 0)}};
        for (int i = 0; i < d; ++i)
            for (int r = 0; r < m.exps[col][i]; ++r) p = poly_mul(p, lin[i]);
        for (int j = 0; j < d; ++j) {
            cd cj = 0;
            for (int i = 0; i < d; ++i) cj += Wi(j, i) * m.R(i, col);
            if (cj == cd(0, 0)) continue;
            for (auto& [k, v] : p) out[j][k] += cj * v;
        }
    }
    return out;
}

}  // namespace

NormalFormModel to_normal_form(const PolyReducedModel& model, const std::vector<Mat>& etas,
                               const NormalFormOptions& opt) {
    const int d = model.d;
    if (d % 2) throw std::runtime_error("mixed-mode normal form not supported; fit polynomial model instead");
    Eigen::EigenSolver<Mat> es(model.R1());
    VecC ev = es.eigenvalues();
    MatC V = es.eigenvectors();
    VecC lam(d);
    for (int i = 0; i < d; ++i) lam[i] = model.discrete ? std::log(ev[i]) / model.step : ev[i];

    std::vector<int> pos;
    for (int i = 0; i < d; ++i) {
        if (std::abs(lam[i].imag()) < 1e-12 * std::max(1.0, std::abs(lam[i])))
            throw std::runtime_error("mixed-mode normal form not supported; fit polynomial model instead");
        if (lam[i].imag() > 0) pos.push_back(i);
    }
    if (static_cast<int>(pos.size()) * 2 != d)
        throw std::runtime_error("mixed-mode normal form not supported; fit polynomial model instead");
    std::sort(pos.begin(), pos.end(), [&](int a, int b) { return lam[a].imag() < lam[b].imag(); });

    NormalFormModel nf;
    nf.npairs = d / 2;
    nf.order = opt.order;
    nf.W.resize(d, d);
    VecC mu(d), lamo(d);
    for (int p = 0; p < nf.npairs; ++p) {
        VecC w = V.col(pos[p]);
        w /= w.norm();
        nf.W.col(2 * p) = w;
        nf.W.col(2 * p + 1) = w.conjugate();
        nf.lambda.push_back(lam[pos[p]]);
        lamo[2 * p] = lam[pos[p]];
        lamo[2 * p + 1] = std::conj(lam[pos[p]]);
        mu[2 * p] = ev[pos[p]];
        mu[2 * p + 1] = std::conj(ev[pos[p]]);
    }
    const MatC Wi = nf.W.inverse();

    if (opt.transform) {
        const auto N3 = modal_part(model, nf.W, Wi, 3);
        nf.transform.assign(d, {});
        for (int j = 0; j < d; ++j)
            for (auto& [k, v] : N3[j]) {
                cd sk = 0, pk = 1;
                for (int i = 0; i < d; ++i) {
                    sk += static_cast<double>(k[i]) * lamo[i];
                    for (int r = 0; r < k[i]; ++r) pk *= mu[i];
                }
                const double mism = std::abs(sk.imag() - lamo[j].imag()) / std::abs(lamo[j].imag());
                if (mism <= opt.resonance_tol) continue;  // resonant: stays in the normal form
                nf.transform[j][k] = model.discrete ? v / (pk - mu[j]) : v / (sk - lamo[j]);
            }
    }

    // regression samples
    Mat X;
    {
        std::vector<Mat> xs;
        for (auto& e : etas) xs.push_back(model.discrete && e.cols() > 1 ? Mat(e.leftCols(e.cols() - 1)) : e);
        X = hstack(xs);
    }
    if (X.cols() == 0) throw std::runtime_error("no samples for normal-form regression");
    const Eigen::Index stride = std::max<Eigen::Index>(1, X.cols() / static_cast<Eigen::Index>(opt.max_points));
    std::vector<Eigen::Index> idx;
    for (Eigen::Index c = 0; c < X.cols(); c += stride) idx.push_back(c);
    Mat Xs(d, idx.size());
    for (size_t c = 0; c < idx.size(); ++c) Xs.col(c) = X.col(idx[c]);
    const Mat P = model.eval(Xs);  // next state or derivative

    const int np = nf.npairs;
    nf.basis = amplitude_basis(np, opt.order);
    std::vector<Vec> rows_rho, rows_g, rows_w;
    nf.rho_max = Vec::Zero(np);
    for (Eigen::Index c = 0; c < Xs.cols(); ++c) {
        const VecC xi0 = Wi * Xs.col(c).cast<cd>();
        const VecC xi1 = Wi * P.col(c).cast<cd>();
        VecC z0, z1;
        if (!nf.to_nf(xi0, z0)) continue;
        Vec rho(np), g(np), w(np);
        bool ok = true;
        if (model.discrete) {
            if (!nf.to_nf(xi1, z1)) continue;
            for (int p = 0; p < np; ++p) {
                const double r0 = std::abs(z0[2 * p]), r1 = std::abs(z1[2 * p]);
                if (!(r0 > 0 && r1 > 0)) ok = false;
                rho[p] = std::sqrt(r0 * r1);
                g[p] = std::log(r1 / r0) / model.step;
                w[p] = std::arg(z1[2 * p] / z0[2 * p]) / model.step;
            }
        } else {
            VecC zd = xi1;
            if (!nf.transform.empty()) {
                MatC J = poly_jacobian(nf.transform, z0);
                J.diagonal().array() += cd(1, 0);
                zd = J.partialPivLu().solve(xi1);
            }
            for (int p = 0; p < np; ++p) {
                const double r0 = std::abs(z0[2 * p]);
                if (!(r0 > 0)) ok = false;
                const cd q = zd[2 * p] / z0[2 * p];
                rho[p] = r0;
                g[p] = q.real();
                w[p] = q.imag();
            }
        }
        if (!ok || !g.allFinite() || !w.allFinite()) continue;
        nf.rho_max = nf.rho_max.cwiseMax(rho);
        rows_rho.push_back(rho);
        rows_g.push_back(g);
        rows_w.push_back(w);
    }
    const Eigen::Index n = static_cast<Eigen::Index>(rows_rho.size());
    const Eigen::Index nb = static_cast<Eigen::Index>(nf.basis.size());
    if (n <= nb) throw std::runtime_error("too few usable samples for normal-form regression");
    Mat Rh(np, n), G(np, n), Wm(np, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Rh.col(c) = rows_rho[c];
        G.col(c) = rows_g[c];
        Wm.col(c) = rows_w[c];
    }
    const Mat B = features(Rh, nf.basis);  // nb x n; row 0 is the constant
    nf.amp.resize(np, nb);
    nf.phase.resize(np, nb);
    const char* msg = "ill-conditioned amplitude basis: enrich trajectories";
    if (opt.pin_linear && nb > 1) {
        const Mat Bn = B.bottomRows(nb - 1);
        Vec re(np), im(np);
        for (int p = 0; p < np; ++p) {
            re[p] = nf.lambda[p].real();
            im[p] = nf.lambda[p].imag();
        }
        const Mat Ga = G.colwise() - re, Wa = Wm.colwise() - im;
        nf.amp.col(0) = re;
        nf.phase.col(0) = im;
        nf.amp.rightCols(nb - 1) = regress(Bn, Ga, msg);
        nf.phase.rightCols(nb - 1) = regress(Bn, Wa, msg);
    } else {
        nf.amp = regress(B, G, msg);
        nf.phase = regress(B, Wm, msg);
    }
    return nf;
}

// ---------------------------------------------------------------- RBF

Vec RBFModel::eval(const Vec& eta) const {
    const Vec r = (centers.colwise() - eta).colwise().norm();
    return C.transpose() * r;
}

RBFModel fit_rbf_map(const std::vector<Mat>& etas, double step, double ridge, size_t max_centers) {
    std::vector<Mat> xs, zs;
    Eigen::Index total = 0;
    for (auto& e : etas) {
        if (e.cols() < 2) continue;
        xs.push_back(e.leftCols(e.cols() - 1));
        zs.push_back(e.rightCols(e.cols() - 1));
        total += e.cols() - 1;
    }
    Mat X = hstack(xs), Z = hstack(zs);
    if (max_centers && static_cast<size_t>(total) > max_centers) {
        Mat Xs(X.rows(), max_centers), Zs(Z.rows(), max_centers);
        for (size_t c = 0; c < max_centers; ++c) {
            const auto k = static_cast<Eigen::Index>((static_cast<double>(c) * (total - 1)) / (max_centers - 1));
            Xs.col(c) = X.col(k);
            Zs.col(c) = Z.col(k);
        }
        X = Xs;
        Z = Zs;
    }
    // deduplicate centers
    const double scale = X.size() ? X.cwiseAbs().maxCoeff() : 0.0;
    std::vector<Eigen::Index> keep;
    size_t dup = 0;
    {
        std::vector<Eigen::Index> order(X.cols());
        for (Eigen::Index c = 0; c < X.cols(); ++c) order[c] = c;
        std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            for (Eigen::Index i = 0; i < X.rows(); ++i)
                if (X(i, a) != X(i, b)) return X(i, a) < X(i, b);
            return a < b;
        });
        for (size_t t = 0; t < order.size(); ++t) {
            if (t > 0 && (X.col(order[t]) - X.col(order[t - 1])).norm() <= 1e-14 * std::max(scale, 1e-300)) {
                ++dup;
                continue;
            }
            keep.push_back(order[t]);
        }
        std::sort(keep.begin(), keep.end());
    }
    if (dup) std::cerr << "warning: removed " << dup << " duplicate RBF centers\n";
    if (keep.size() < 2) throw std::runtime_error("RBF fit needs at least two distinct pairs (k(0)=0 is singular)");
    RBFModel m;
    m.step = step;
    m.duplicates_removed = dup;
    const Eigen::Index n = static_cast<Eigen::Index>(keep.size());
    m.centers.resize(X.rows(), n);
    Mat T(n, Z.rows());
    for (Eigen::Index c = 0; c < n; ++c) {
        m.centers.col(c) = X.col(keep[c]);
        T.row(c) = Z.col(keep[c]).transpose();
    }
    Mat K(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j; i < n; ++i) K(i, j) = K(j, i) = (m.centers.col(i) - m.centers.col(j)).norm();
    K.diagonal().array() += ridge;
    m.C = K.partialPivLu().solve(T);
    m.amplitude = m.centers.colwise().norm().maxCoeff();
    return m;
}

// ---------------------------------------------------------------- advection

namespace {

template <class F>
Vec rk4(const F& f, const Vec& x, double h) {
    const Vec k1 = f(x);
    const Vec k2 = f(x + 0.5 * h * k1);
    const Vec k3 = f(x + 0.5 * h * k2);
    const Vec k4 = f(x + h * k3);
    return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace

Advected advect(const PolyReducedModel& model, const Vec& eta0, double t_end, double h) {
    Advected a;
    a.dt = model.step;
    const long n = std::lround(t_end / model.step);
    std::vector<Vec> out{eta0};
    Vec x = eta0;
    const double lim = 10 * std::max(model.amplitude, 1e-300);
    if (model.discrete) {
        for (long k = 0; k < n; ++k) {
            x = model.eval(x);
            if (!x.allFinite() || x.norm() > lim) {
                a.diverged = true;
                break;
            }
            out.push_back(x);
        }
    } else {
        const int sub = h > 0 ? std::max(1, static_cast<int>(std::lround(model.step / h))) : 10;
        const double hh = model.step / sub;
        auto f = [&](const Vec& v) { return model.eval(v); };
        for (long k = 0; k < n && !a.diverged; ++k) {
            for (int s = 0; s < sub; ++s) x = rk4(f, x, hh);
            if (!x.allFinite() || x.norm() > lim) {
                a.diverged = true;
                break;
            }
            out.push_back(x);
        }
    }
    a.etas.resize(eta0.size(), out.size());
    for (size_t k = 0; k < out.size(); ++k) a.etas.col(k) = out[k];
    return a;
}

Advected advect(const NormalFormModel& model, const Vec& eta0, double t_end, double out_dt, double h) {
    const int np = model.npairs;
    const MatC Wi = model.W.inverse();
    VecC z;
    if (!model.to_nf(Wi * eta0.cast<cd>(), z)) throw std::runtime_error("initial state outside normal-form domain");
    // state: rho (np), theta (np)
    Vec s(2 * np);
    for (int p = 0; p < np; ++p) {
        s[p] = std::abs(z[2 * p]);
        s[np + p] = std::arg(z[2 * p]);
    }
    auto f = [&](const Vec& v) {
        Vec out(2 * np);
        const Vec r = v.head(np);
        out.head(np) = model.rho_dot(r);
        out.tail(np) = model.theta_dot(r);
        return out;
    };
    auto to_eta = [&](const Vec& v) {
        VecC zz(2 * np);
        for (int p = 0; p < np; ++p) {
            zz[2 * p] = std::polar(v[p], v[np + p]);
            zz[2 * p + 1] = std::conj(zz[2 * p]);
        }
        return Vec((model.W * model.from_nf(zz)).real());
    };
    Advected a;
    a.dt = out_dt;
    const long n = std::lround(t_end / out_dt);
    const int sub = h > 0 ? std::max(1, static_cast<int>(std::lround(out_dt / h))) : 10;
    const double hh = out_dt / sub;
    const double lim = 10 * std::max(model.rho_max.size() ? model.rho_max.maxCoeff() : 1.0, 1e-300);
    std::vector<Vec> out{to_eta(s)};
    for (long k = 0; k < n; ++k) {
        for (int q = 0; q < sub; ++q) s = rk4(f, s, hh);
        if (!s.allFinite() || s.head(np).maxCoeff() > lim) {
            a.diverged = true;
            break;
        }
        out.push_back(to_eta(s));
    }
    a.etas.resize(eta0.size(), out.size());
    for (size_t k = 0; k < out.size(); ++k) a.etas.col(k) = out[k];
    return a;
}

Advected advect(const RBFModel& model, const Vec& eta0, double t_end) {
    Advected a;
    a.dt = model.step;
    const long n = std::lround(t_end / model.step);
    const double lim = 10 * std::max(model.amplitude, 1e-300);
    std::vector<Vec> out{eta0};
    Vec x = eta0;
    for (long k = 0; k < n; ++k) {
        x = model.eval(x);
        if (!x.allFinite() || x.norm() > lim) {
            a.diverged = true;
            break;
        }
        out.push_back(x);
    }
    a.etas.resize(eta0.size(), out.size());
    for (size_t k = 0; k < out.size(); ++k) a.etas.col(k) = out[k];
    return a;
}

// ---------------------------------------------------------------- json

namespace {

nlohmann::json poly_to_json(const std::vector<CPoly>& P) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& p : P) {
        nlohmann::json terms = nlohmann::json::array();
        for (auto& [k, v] : p) terms.push_back({{"exponent", k}, {"re", v.real()}, {"im", v.imag()}});
        j.push_back(terms);
    }
    return j;
}

std::vector<CPoly> poly_from_json(const nlohmann::json& j) {
    std::vector<CPoly> P;
    for (auto& terms : j) {
        CPoly p;
        for (auto& t : terms) p[t.at("exponent").get<MultiIndex>()] = cd(t.at("re"), t.at("im"));
        P.push_back(std::move(p));
    }
    return P;
}

// amplitude equation monomial of pair i for basis entry k: rho_i * rho^k
MultiIndex amp_exponent(const MultiIndex& k, int i) {
    MultiIndex e = k;
    e[i] += 1;
    return e;
}

}  // namespace

void to_json(nlohmann::json& j, const PolyReducedModel& m) {
    j = nlohmann::json{{"d", m.d},         {"order", m.order},         {"discrete", m.discrete},
                       {"step", m.step},   {"monomials", m.exps},      {"R", mat_to_json(m.R)},
                       {"amplitude", m.amplitude}};
}

void from_json(const nlohmann::json& j, PolyReducedModel& m) {
    m.d = j.at("d");
    m.order = j.at("order");
    m.discrete = j.at("discrete");
    m.step = j.at("step");
    m.exps = j.at("monomials").get<std::vector<MultiIndex>>();
    m.R = mat_from_json(j.at("R"));
    m.amplitude = j.at("amplitude");
}

void to_json(nlohmann::json& j, const NormalFormModel& m) {
    nlohmann::json lam = nlohmann::json::array();
    for (auto& l : m.lambda) lam.push_back({l.real(), l.imag()});
    nlohmann::json amp = nlohmann::json::array(), ph = nlohmann::json::array();
    for (int i = 0; i < m.npairs; ++i) {
        nlohmann::json a = nlohmann::json::array(), p = nlohmann::json::array();
        for (size_t k = 0; k < m.basis.size(); ++k) {
            a.push_back({{"exponent", amp_exponent(m.basis[k], i)}, {"coeff", m.amp(i, k)}});
            p.push_back({{"exponent", m.basis[k]}, {"coeff", m.phase(i, k)}});
        }
        amp.push_back(a);
        ph.push_back(p);
    }
    std::vector<double> rmax(m.rho_max.data(), m.rho_max.data() + m.rho_max.size());
    j = nlohmann::json{{"npairs", m.npairs},      {"order", m.order},           {"eigenvalues", lam},
                       {"W", cmat_to_json(m.W)},  {"basis", m.basis},           {"amplitude_equations", amp},
                       {"phase_equations", ph},   {"transform", poly_to_json(m.transform)},
                       {"rho_max", rmax}};
}

void from_json(const nlohmann::json& j, NormalFormModel& m) {
    m.npairs = j.at("npairs");
    m.order = j.at("order");
    m.lambda.clear();
    for (auto& l : j.at("eigenvalues")) m.lambda.emplace_back(l[0].get<double>(), l[1].get<double>());
    m.W = cmat_from_json(j.at("W"));
    m.basis = j.at("basis").get<std::vector<MultiIndex>>();
    const auto nb = static_cast<Eigen::Index>(m.basis.size());
    m.amp.resize(m.npairs, nb);
    m.phase.resize(m.npairs, nb);
    for (int i = 0; i < m.npairs; ++i)
        for (Eigen::Index k = 0; k < nb; ++k) {
            m.amp(i, k) = j.at("amplitude_equations")[i][k].at("coeff");
            m.phase(i, k) = j.at("phase_equations")[i][k].at("coeff");
        }
    m.transform = poly_from_json(j.at("transform"));
    auto rm = j.at("rho_max").get<std::vector<double>>();
    m.rho_max = Eigen::Map<Vec>(rm.data(), static_cast<Eigen::Index>(rm.size()));
}

void to_json(nlohmann::json& j, const RBFModel& m) {
    j = nlohmann::json{{"centers", mat_to_json(m.centers)},
                       {"weights", mat_to_json(m.C)},
                       {"step", m.step},
                       {"amplitude", m.amplitude},
                       {"kernel", "linear"}};
}

void from_json(const nlohmann::json& j, RBFModel& m) {
    m.centers = mat_from_json(j.at("centers"));
    m.C = mat_from_json(j.at("weights"));
    m.step = j.at("step");
    m.amplitude = j.at("amplitude");
}

}  // namespace fssm
