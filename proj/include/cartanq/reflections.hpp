#ifndef CARTANQ_REFLECTIONS_HPP
#define CARTANQ_REFLECTIONS_HPP

#include "cartanq/linalg.hpp"
#include "cartanq/proper_maps.hpp"

namespace cartanq {

/// true iff M is an involution with rank(I - M) == 1, i.e. a linear map that
/// negates one direction and fixes a hyperplane
inline bool is_reflection(const CMat& m, double tol = 1e-10) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_reflection: tol must be positive");
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("is_reflection: matrix must be square");
  if (!is_finite(m)) throw std::invalid_argument("is_reflection: non-finite entry");
  int n = static_cast<int>(m.rows());
  CMat eye = CMat::Identity(n, n);
  if ((m * m - eye).norm() >= tol) return false;
  Eigen::VectorXd sv = singular_values(eye - m);
  double thr = tol * std::max(1.0, m.norm());
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) ++rank;
  return rank == 1;
}

struct ReflectionData {
  cvec axis;              // unit vector with M axis = -axis
  cvec hyperplane_normal; // ker(I - M) = { x : <x, normal> = 0 }
};

inline ReflectionData reflection_data(const CMat& m, double tol = 1e-10) {
  if (!is_reflection(m, tol)) throw std::invalid_argument("reflection_data: not a reflection");
  int n = static_cast<int>(m.rows());
  // I - M = s u v*; the -1 eigenvector is u, the fixed hyperplane is v-perp
  Eigen::JacobiSVD<CMat> svd(CMat::Identity(n, n) - m,
                             Eigen::ComputeThinU | Eigen::ComputeThinV);
  CVecE u = svd.matrixU().col(0);
  CVecE v = svd.matrixV().col(0);
  if ((m * u + u).norm() > 100.0 * tol * std::max(1.0, m.norm()))
    throw std::invalid_argument("reflection_data: -1 eigenvector check failed");
  ReflectionData out;
  out.axis.assign(u.data(), u.data() + n);
  out.hyperplane_normal.assign(v.data(), v.data() + n);
  return out;
}

/// reflection with the given -1 eigenvector and fixed hyperplane {x : <x,normal>=0}
inline CMat make_reflection(const cvec& axis, const cvec& normal) {
  int n = static_cast<int>(axis.size());
  require_dim(normal, n, "make_reflection");
  CMat v(n, 1), a(n, 1);
  for (int i = 0; i < n; ++i) {
    v(i, 0) = axis[static_cast<std::size_t>(i)];
    a(i, 0) = normal[static_cast<std::size_t>(i)];
  }
  cplx pairing = (a.adjoint() * v)(0, 0);
  if (std::abs(pairing) < 1e-12 * v.norm() * a.norm())
    throw std::invalid_argument("make_reflection: axis lies in the hyperplane");
  return CMat::Identity(n, n) - 2.0 / pairing * (v * a.adjoint());
}

/// The invariant-ring generators of {id, sigma} in the frame A: squares the
/// first coordinate of Az and keeps the rest. Requires A sigma A^{-1} =
/// diag(-1, 1, ..., 1) (A carries the -1 direction to e1 and the fixed
/// hyperplane to {0} x C^{n-1}).
inline PointMap basic_map_from_reflection(const CMat& sigma, const CMat& a, double tol = 1e-10) {
  int n = static_cast<int>(sigma.rows());
  if (sigma.cols() != n || a.rows() != n || a.cols() != n)
    throw std::invalid_argument("basic_map_from_reflection: shape mismatch");
  Eigen::FullPivLU<CMat> lu(a);
  if (!lu.isInvertible())
    throw std::invalid_argument("basic_map_from_reflection: frame matrix not invertible");
  CMat conj = a * sigma * lu.inverse();
  CMat model = CMat::Identity(n, n);
  model(0, 0) = -1.0;
  if ((conj - model).norm() > tol * std::max(1.0, conj.norm()))
    throw std::invalid_argument("basic_map_from_reflection: frame conditions violated");
  CMat frame = a;
  return PointMap{n, n, [frame, n](const cvec& z) {
                    CVecE zv(n);
                    for (int i = 0; i < n; ++i) zv(i) = z[static_cast<std::size_t>(i)];
                    CVecE y = frame * zv;
                    cvec out(static_cast<std::size_t>(n));
                    out[0] = y(0) * y(0);
                    for (int i = 1; i < n; ++i) out[static_cast<std::size_t>(i)] = y(i);
                    return out;
                  }};
}

/// sup over sampled z of |theta2(P z) - theta1(z)|; ~0 certifies the exact
/// intertwining theta2 o P = theta1
inline double intertwine_residual(const PointMap& theta1, const PointMap& theta2, const CMat& p,
                                  int samples, std::uint64_t seed) {
  if (theta1.dim_in != static_cast<int>(p.cols()) || theta2.dim_in != static_cast<int>(p.rows()))
    throw std::invalid_argument("intertwine_residual: shape mismatch");
  if (theta1.dim_out != theta2.dim_out)
    throw std::invalid_argument("intertwine_residual: target dimensions differ");
  Rng rng(seed);
  double sup = 0.0;
  for (int s = 0; s < samples; ++s) {
    cvec z = rng.in_polydisc(theta1.dim_in);
    CVecE zv(theta1.dim_in);
    for (int i = 0; i < theta1.dim_in; ++i) zv(i) = z[static_cast<std::size_t>(i)];
    CVecE pz = p * zv;
    cvec pzv(pz.data(), pz.data() + pz.size());
    sup = std::max(sup, dist2(theta2.f(pzv), theta1.f(z)));
  }
  return sup;
}

/// the bidisc map (conj(omega) z1 + omega z2, z1 z2) as a plain PointMap
inline PointMap sym_map(cplx omega) { return as_point_map(MapId::bidisc_sym(omega)); }

/// P_omega = diag(omega, conj(omega)); conjugates the coordinate swap to the
/// deck element of sym_map(omega) and intertwines it with sym_map(1)
inline CMat p_omega(cplx omega) {
  CMat p = CMat::Zero(2, 2);
  p(0, 0) = omega;
  p(1, 1) = std::conj(omega);
  return p;
}

}  // namespace cartanq

#endif  // CARTANQ_REFLECTIONS_HPP
