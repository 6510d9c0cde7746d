#include "fssm/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fssm {

std::vector<MultiIndex> monomials(int d, int kmin, int kmax) {
    std::vector<MultiIndex> out;
    MultiIndex e(d, 0);
    // fill exponents of degree `rem` starting at variable i, largest first
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == d - 1) {
            e[i] = rem;
            out.push_back(e);
            return;
        }
        for (int p = rem; p >= 0; --p) {
            e[i] = p;
            rec(i + 1, rem - p);
        }
    };
    for (int k = std::max(kmin, 0); k <= kmax; ++k) rec(0, k);
    return out;
}

std::vector<MultiIndex> odd_monomials(int d, int kmin, int kmax) {
    auto all = monomials(d, kmin, kmax);
    std::vector<MultiIndex> out;
    for (auto& k : all)
        if (degree(k) % 2 == 1) out.push_back(k);
    return out;
}

int degree(const MultiIndex& k) { return std::accumulate(k.begin(), k.end(), 0); }

Mat features(const Mat& X, const std::vector<MultiIndex>& exps) {
    const int d = static_cast<int>(X.rows());
    const Eigen::Index n = X.cols();
    int kmax = 0;
    for (auto& k : exps)
        for (int p : k) kmax = std::max(kmax, p);
    // pw[i](p, j) = X(i, j)^p
    std::vector<Mat> pw(d, Mat::Ones(kmax + 1, n));
    for (int i = 0; i < d; ++i)
        for (int p = 1; p <= kmax; ++p) pw[i].row(p) = pw[i].row(p - 1).cwiseProduct(X.row(i));
    Mat F(exps.size(), n);
    for (size_t r = 0; r < exps.size(); ++r) {
        F.row(r).setOnes();
        for (int i = 0; i < d; ++i)
            if (exps[r][i]) F.row(r) = F.row(r).cwiseProduct(pw[i].row(exps[r][i]));
    }
    return F;
}

Vec features(const Vec& x, const std::vector<MultiIndex>& exps) {
    Mat X = x;
    return features(X, exps).col(0);
}

CPoly poly_mul(const CPoly& a, const CPoly& b) {
    CPoly out;
    for (auto& [ka, va] : a)
        for (auto& [kb, vb] : b) {
            MultiIndex k(ka.size());
            for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
            out[k] += va * vb;
        }
    return out;
}

MatC poly_eval(const std::vector<CPoly>& P, const MatC& Z) {
    const int d = static_cast<int>(Z.rows());
    const Eigen::Index n = Z.cols();
    int kmax = 0;
    for (auto& p : P)
        for (auto& [k, v] : p)
            for (int e : k) kmax = std::max(kmax, e);
    std::vector<MatC> pw(d, MatC::Ones(kmax + 1, n));
    for (int i = 0; i < d; ++i)
        for (int p = 1; p <= kmax; ++p) pw[i].row(p) = pw[i].row(p - 1).cwiseProduct(Z.row(i));
    MatC out = MatC::Zero(P.size(), n);
    Eigen::RowVectorXcd term(n);
    for (size_t j = 0; j < P.size(); ++j)
        for (auto& [k, v] : P[j]) {
            term.setConstant(v);
            for (int i = 0; i < d; ++i)
                if (k[i]) term = term.cwiseProduct(pw[i].row(k[i]));
            out.row(j) += term;
        }
    return out;
}

VecC poly_eval(const std::vector<CPoly>& P, const VecC& z) {
    MatC Z = z;
    return poly_eval(P, Z).col(0);
}

MatC poly_jacobian(const std::vector<CPoly>& P, const VecC& z) {
    const int d = static_cast<int>(z.size());
    MatC J = MatC::Zero(P.size(), d);
    for (size_t j = 0; j < P.size(); ++j)
        for (auto& [k, v] : P[j])
            for (int i = 0; i < d; ++i) {
                if (!k[i]) continue;
                cd t = v * static_cast<double>(k[i]);
                for (int q = 0; q < d; ++q) {
                    int e = k[q] - (q == i ? 1 : 0);
                    for (int p = 0; p < e; ++p) t *= z[q];
                }
                J(j, i) += t;
            }
    return J;
}

}  // namespace fssm
