#include "fssm/manifold.hpp"

#include <stdexcept>

#include "fssm/jsonio.hpp"

namespace fssm {

Vec ManifoldModel::lift(const Vec& eta) const {
    Vec y = V1 * eta;
    if (!exps.empty()) y += Vnl * features(eta, exps);
    return y;
}

Mat ManifoldModel::lift(const Mat& etas) const {
    Mat Y = V1 * etas;
    if (!exps.empty()) Y += Vnl * features(etas, exps);
    return Y;
}

namespace {

Mat leading_subspace(const Mat& Y, int d) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Y * Y.transpose());
    // eigenvalues ascending
    Mat V = es.eigenvectors().rightCols(d).rowwise().reverse();
    // fix sign so the largest entry of each column is positive
    for (int j = 0; j < d; ++j) {
        Eigen::Index i;
        V.col(j).cwiseAbs().maxCoeff(&i);
        if (V(i, j) < 0) V.col(j) *= -1;
    }
    return V;
}

struct Stage {
    Mat Vnl;
    double residual;
};

Stage fit_nonlinear(const Mat& Y, const Mat& V1, const std::vector<MultiIndex>& exps) {
    const Eigen::Index n = Y.cols();
    const Mat eta = V1.transpose() * Y;
    Mat R = Y - V1 * eta;
    Stage st;
    if (exps.empty()) {
        st.Vnl = Mat::Zero(Y.rows(), 0);
    } else {
        const Mat F = features(eta, exps);
        // column scaling keeps the normal equations tame for mixed degrees
        const Vec sc = F.rowwise().norm().cwiseMax(1e-300);
        const Mat Fs = sc.cwiseInverse().asDiagonal() * F;
        Eigen::ColPivHouseholderQR<Mat> qr(Fs.transpose());
        qr.setThreshold(1e-12);
        if (qr.rank() < Fs.rows()) throw std::runtime_error("degenerate data: enrich trajectories");
        Mat C = qr.solve(R.transpose()).transpose();  // m x nmono, scaled
        C = C * sc.cwiseInverse().asDiagonal();
        C -= V1 * (V1.transpose() * C);
        st.Vnl = C;
        R -= C * F;
    }
    st.residual = R.squaredNorm() / static_cast<double>(n);
    return st;
}

}  // namespace

ManifoldModel fit_geometry(const Mat& Y, int d, int order, const GeometryOptions& opt) {
    if (d < 1 || d > Y.rows()) throw std::invalid_argument("invalid SSM dimension");
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    ManifoldModel mm;
    mm.d = d;
    mm.order = order;
    mm.exps = monomials(d, 2, order);
    const Eigen::Index nunk = static_cast<Eigen::Index>(mm.exps.size()) + d;
    if (Y.cols() < nunk) throw std::invalid_argument("degenerate data: enrich trajectories");

    mm.V1 = leading_subspace(Y, d);
    Stage st = fit_nonlinear(Y, mm.V1, mm.exps);
    mm.residual_history.push_back(st.residual);
    for (int it = 0; it < opt.refine_iters && !mm.exps.empty(); ++it) {
        // tangent space of the data after removing the current nonlinear part
        const Mat eta = mm.V1.transpose() * Y;
        const Mat lin = Y - st.Vnl * features(eta, mm.exps);
        Mat V1n = leading_subspace(lin, d);
        Stage stn;
        try {
            stn = fit_nonlinear(Y, V1n, mm.exps);
        } catch (const std::runtime_error&) {
            break;
        }
        if (!(stn.residual < st.residual)) break;
        const double change = (st.residual - stn.residual) / std::max(st.residual, 1e-300);
        mm.V1 = V1n;
        st = stn;
        mm.residual_history.push_back(st.residual);
        if (change < opt.refine_tol) break;
    }
    mm.Vnl = st.Vnl;
    mm.residual = st.residual;
    const Mat eta = mm.V1.transpose() * Y;
    mm.amplitude = eta.colwise().norm().maxCoeff();
    return mm;
}

void to_json(nlohmann::json& j, const ManifoldModel& m) {
    j = nlohmann::json{{"d", m.d},
                       {"order", m.order},
                       {"V1", mat_to_json(m.V1)},
                       {"monomials", m.exps},
                       {"Vnl", mat_to_json(m.Vnl)},
                       {"residual", m.residual},
                       {"residual_history", m.residual_history},
                       {"amplitude", m.amplitude}};
}

void from_json(const nlohmann::json& j, ManifoldModel& m) {
    m.d = j.at("d");
    m.order = j.at("order");
    m.V1 = mat_from_json(j.at("V1"));
    m.exps = j.at("monomials").get<std::vector<MultiIndex>>();
    m.Vnl = mat_from_json(j.at("Vnl"));
    m.residual = j.at("residual");
    m.residual_history = j.at("residual_history").get<std::vector<double>>();
    m.amplitude = j.at("amplitude");
}

}  // namespace fssm
