#include "fssm/embedding.hpp"

#include <stdexcept>

namespace fssm {

EmbeddedSeries embed(std::span<const double> s, int m, int stride, double dt, double t0) {
    if (m < 1 || stride < 1) throw std::invalid_argument("m and stride must be >= 1");
    const long span = static_cast<long>(m - 1) * stride;
    if (static_cast<long>(s.size()) < span + 1) throw std::invalid_argument("insufficient samples for embedding");
    const long n = static_cast<long>(s.size()) - span;
    EmbeddedSeries e;
    e.m = m;
    e.stride = stride;
    e.dt = dt;
    e.t0 = t0;
    e.Y.resize(m, n);
    for (long j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) e.Y(i, j) = s[j + static_cast<long>(i) * stride];
    return e;
}

int estimate_min_embedding(int d_ssm) {
    if (d_ssm < 1) throw std::invalid_argument("d_ssm must be >= 1");
    return 2 * d_ssm + 1;
}

Mat Dataset::train_matrix() const {
    Eigen::Index n = 0;
    for (auto& e : train) n += e.cols();
    if (train.empty()) return {};
    Mat Y(train.front().m, n);
    Eigen::Index c = 0;
    for (auto& e : train) {
        Y.middleCols(c, e.cols()) = e.Y;
        c += e.cols();
    }
    return Y;
}

Dataset make_dataset(const std::vector<std::vector<double>>& train, const std::vector<std::vector<double>>& test,
                     int m, int stride, double dt, double s_eq, bool mirror) {
    Dataset ds;
    ds.anchor = Vec::Constant(m, s_eq);
    auto add = [&](const std::vector<double>& s, std::vector<EmbeddedSeries>& dst, bool mir) {
        if (static_cast<long>(s.size()) < static_cast<long>(m - 1) * stride + 2) return;
        EmbeddedSeries e = embed(s, m, stride, dt);
        e.Y.colwise() -= ds.anchor;
        if (mir) {
            EmbeddedSeries f = e;
            f.Y = -e.Y;
            dst.push_back(std::move(e));
            dst.push_back(std::move(f));
        } else {
            dst.push_back(std::move(e));
        }
    };
    for (auto& s : train) add(s, ds.train, mirror);
    for (auto& s : test) add(s, ds.test, false);
    return ds;
}

}  // namespace fssm
