#ifndef CARTANQ_LINALG_HPP
#define CARTANQ_LINALG_HPP

#include <Eigen/Dense>

#include "cartanq/core.hpp"
#include "cartanq/rng.hpp"

namespace cartanq {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVecE = Eigen::VectorXcd;

inline bool is_finite(const CMat& m) { return m.allFinite(); }

/// largest singular value of a 2x2 complex matrix, closed form
inline double sv_max_2x2(const CMat& a) {
  // singular values solve s^4 - tr(A A*) s^2 + |det A|^2 = 0
  double t = a.squaredNorm();
  double d = std::norm(a.determinant());
  double disc = std::max(t * t - 4.0 * d, 0.0);
  return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

/// largest singular value (closed form for 2x2, Jacobi SVD otherwise)
inline double sv_max(const CMat& a) {
  if (a.rows() == 2 && a.cols() == 2) return sv_max_2x2(a);
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

inline Eigen::VectorXd singular_values(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues();
}

inline double sv_min(const CMat& a) {
  Eigen::VectorXd s = singular_values(a);
  return s(s.size() - 1);
}

inline CMat to_matrix(const cvec& flat, int rows, int cols) {
  if (static_cast<int>(flat.size()) != rows * cols)
    throw std::invalid_argument("to_matrix: size mismatch");
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = flat[static_cast<std::size_t>(i * cols + j)];
  return m;
}

inline cvec to_flat(const CMat& m) {
  cvec flat(static_cast<std::size_t>(m.rows() * m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) flat[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return flat;
}

/// Haar-ish random special orthogonal matrix via QR of a Gaussian matrix
inline RMat random_so(int n, Rng& rng) {
  if (n == 0) return RMat(0, 0);
  RMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<RMat> qr(g);
  RMat q = qr.householderQ();
  RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// central finite-difference Jacobian determinant of a holomorphic map,
/// real step h along each coordinate
inline cplx fd_jacobian_det(const PointMap& m, const cvec& z, double h = 1e-6) {
  if (m.dim_in != m.dim_out)
    throw std::invalid_argument("fd_jacobian_det: map is not square");
  int n = m.dim_in;
  CMat jac(n, n);
  for (int j = 0; j < n; ++j) {
    cvec zp = z, zm = z;
    zp[static_cast<std::size_t>(j)] += h;
    zm[static_cast<std::size_t>(j)] -= h;
    cvec fp = m.f(zp), fm = m.f(zm);
    for (int i = 0; i < n; ++i)
      jac(i, j) = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2.0 * h);
  }
  return jac.determinant();
}

}  // namespace cartanq

#endif  // CARTANQ_LINALG_HPP
