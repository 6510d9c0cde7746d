#pragma once

#include <vector>

#include <json.hpp>

#include "fssm/poly.hpp"

namespace fssm {

/// Polynomial graph y = V1 eta + sum_k V_k eta^k over the tangent space.
struct ManifoldModel {
    int d = 0;
    int order = 1;
    Mat V1;                        // m x d, orthonormal columns
    std::vector<MultiIndex> exps;  // degrees 2..order, graded lex
    Mat Vnl;                       // m x exps.size()
    double residual = 0;           // mean squared reconstruction error on the fit data
    std::vector<double> residual_history;
    double amplitude = 0;  // largest |eta| seen in the fit data

    Vec project(const Vec& y) const { return V1.transpose() * y; }
    Mat project(const Mat& Y) const { return V1.transpose() * Y; }
    Vec lift(const Vec& eta) const;
    Mat lift(const Mat& etas) const;
};

struct GeometryOptions {
    int refine_iters = 10;
    double refine_tol = 1e-9;  // relative residual change that stops refinement
};

/// Two-stage fit: V1 from leading left singular vectors, then the nonlinear
/// coefficients by least squares projected onto span(V1)'s complement.
/// Optional alternating refinement of V1 that never increases the residual.
ManifoldModel fit_geometry(const Mat& Y, int d, int order, const GeometryOptions& opt = {});

void to_json(nlohmann::json& j, const ManifoldModel& m);
void from_json(const nlohmann::json& j, ManifoldModel& m);

}  // namespace fssm
