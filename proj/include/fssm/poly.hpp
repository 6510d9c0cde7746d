#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace fssm {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

using MultiIndex = std::vector<int>;

/// All multi-indices in `d` variables with total degree in [kmin, kmax].
/// Graded lexicographic order: by total degree, then lexicographically
/// descending on the exponent tuple, e.g. x^2, xy, y^2.
std::vector<MultiIndex> monomials(int d, int kmin, int kmax);

/// Same set restricted to odd total degree.
std::vector<MultiIndex> odd_monomials(int d, int kmin, int kmax);

int degree(const MultiIndex& k);

/// Feature matrix (n_monomials x n_points) for points stored as columns of X.
Mat features(const Mat& X, const std::vector<MultiIndex>& exps);
Vec features(const Vec& x, const std::vector<MultiIndex>& exps);

/// Sparse complex polynomial, one per output component.
using CPoly = std::map<MultiIndex, cd>;

CPoly poly_mul(const CPoly& a, const CPoly& b);

/// Evaluates a vector of sparse polynomials at the columns of Z.
MatC poly_eval(const std::vector<CPoly>& P, const MatC& Z);
VecC poly_eval(const std::vector<CPoly>& P, const VecC& z);

/// Jacobian of the polynomial map at z.
MatC poly_jacobian(const std::vector<CPoly>& P, const VecC& z);

}  // namespace fssm
