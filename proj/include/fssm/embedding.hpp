#pragma once

#include <span>
#include <vector>

#include "fssm/poly.hpp"

namespace fssm {

/// Delay-coordinate matrix; column j is [s_j, s_{j+stride}, ..., s_{j+(m-1)stride}].
struct EmbeddedSeries {
    int m = 0;
    int stride = 1;
    double dt = 1.0;  // spacing between consecutive columns
    double t0 = 0.0;
    Mat Y;

    Eigen::Index cols() const { return Y.cols(); }
};

EmbeddedSeries embed(std::span<const double> s, int m, int stride, double dt = 1.0, double t0 = 0.0);

/// Takens bound 2d + 1.
int estimate_min_embedding(int d_ssm);

struct Dataset {
    std::vector<EmbeddedSeries> train;
    std::vector<EmbeddedSeries> test;
    Vec anchor;  // embedded equilibrium

    /// Stacks the training columns (anchor subtracted) into one matrix.
    Mat train_matrix() const;
};

/// Builds a dataset from scalar series; equilibrium value `s_eq` is embedded
/// and subtracted from every column. With `mirror` each training series is
/// also added with flipped sign about the anchor (odd-symmetric systems).
Dataset make_dataset(const std::vector<std::vector<double>>& train, const std::vector<std::vector<double>>& test,
                     int m, int stride, double dt, double s_eq = 0.0, bool mirror = false);

}  // namespace fssm
