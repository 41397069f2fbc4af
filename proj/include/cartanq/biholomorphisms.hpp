#ifndef CARTANQ_BIHOLOMORPHISMS_HPP
#define CARTANQ_BIHOLOMORPHISMS_HPP

#include "cartanq/proper_maps.hpp"

namespace cartanq {

enum class BihTag {
  L2toBidisc,  // Lie ball -> bidisc
  L3toR3,      // Lie ball -> symmetric 2x2 ball, coords (a11, a22, a)
  L4toR1,      // Lie ball -> 2x2 matrix ball, coords (a11, a12, a21, a22)
  LL2toG2,     // quotient -> symmetrized bidisc
  LL3toE,      // quotient -> tetrablock
  LL4toF,      // quotient -> F domain
};

struct BihId {
  BihTag tag = BihTag::L2toBidisc;
  bool inverse = false;

  BihId flipped() const { return BihId{tag, !inverse}; }
};

inline const char* bih_tag_name(BihTag t) {
  switch (t) {
    case BihTag::L2toBidisc: return "L2toBidisc";
    case BihTag::L3toR3: return "L3toR3";
    case BihTag::L4toR1: return "L4toR1";
    case BihTag::LL2toG2: return "LL2toG2";
    case BihTag::LL3toE: return "LL3toE";
    case BihTag::LL4toF: return "LL4toF";
  }
  return "?";
}

inline int bih_dim(BihTag t) {
  switch (t) {
    case BihTag::L2toBidisc:
    case BihTag::LL2toG2: return 2;
    case BihTag::L3toR3:
    case BihTag::LL3toE: return 3;
    case BihTag::L4toR1:
    case BihTag::LL4toF: return 4;
  }
  return 0;
}

namespace detail {

inline cvec bih_forward(BihTag t, const cvec& z) {
  switch (t) {
    case BihTag::L2toBidisc:
      return {z[0] + kI * z[1], -z[0] + kI * z[1]};
    case BihTag::L3toR3:
      return {z[0] + kI * z[1], -z[0] + kI * z[1], z[2]};
    case BihTag::L4toR1:
      return {z[0] + kI * z[1], z[2] + kI * z[3], z[2] - kI * z[3], -z[0] + kI * z[1]};
    case BihTag::LL2toG2:
      return {2.0 * kI * z[1], -z[0] - z[1] * z[1]};
    case BihTag::LL3toE:
      return {z[1] + kI * z[2], -z[1] + kI * z[2], -z[2] * z[2] - z[1] * z[1] - z[0]};
    case BihTag::LL4toF:
      return {z[2] + kI * z[3], -z[2] + kI * z[3],
              -z[1] * z[1] - z[2] * z[2] - z[3] * z[3] - z[0], 2.0 * z[1]};
  }
  throw std::logic_error("unreachable");
}

inline cvec bih_backward(BihTag t, const cvec& q) {
  switch (t) {
    case BihTag::L2toBidisc:
      return {(q[0] - q[1]) / 2.0, (q[0] + q[1]) / (2.0 * kI)};
    case BihTag::L3toR3:
      return {(q[0] - q[1]) / 2.0, (q[0] + q[1]) / (2.0 * kI), q[2]};
    case BihTag::L4toR1:
      return {(q[0] - q[3]) / 2.0, (q[0] + q[3]) / (2.0 * kI), (q[1] + q[2]) / 2.0,
              (q[1] - q[2]) / (2.0 * kI)};
    case BihTag::LL2toG2: {
      cplx w2 = q[0] / (2.0 * kI);
      return {-q[1] - w2 * w2, w2};
    }
    case BihTag::LL3toE: {
      cplx w2 = (q[0] - q[1]) / 2.0;
      cplx w3 = (q[0] + q[1]) / (2.0 * kI);
      return {-q[2] - w2 * w2 - w3 * w3, w2, w3};
    }
    case BihTag::LL4toF: {
      cplx w3 = (q[0] - q[1]) / 2.0;
      cplx w4 = (q[0] + q[1]) / (2.0 * kI);
      cplx w2 = q[3] / 2.0;
      return {-q[2] - w2 * w2 - w3 * w3 - w4 * w4, w2, w3, w4};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

inline DomainId bih_source_domain(BihTag t) {
  switch (t) {
    case BihTag::L2toBidisc: return DomainId::lie_ball(2);
    case BihTag::L3toR3: return DomainId::lie_ball(3);
    case BihTag::L4toR1: return DomainId::lie_ball(4);
    case BihTag::LL2toG2: return DomainId::quotient_l(2);
    case BihTag::LL3toE: return DomainId::quotient_l(3);
    case BihTag::LL4toF: return DomainId::quotient_l(4);
  }
  throw std::logic_error("unreachable");
}

/// membership margin on the target side, in the same reduced coordinates
/// bih_eval emits
inline double bih_target_margin(BihTag t, const cvec& q) {
  switch (t) {
    case BihTag::L2toBidisc: return domain_margin(DomainId::polydisc(2), q);
    case BihTag::L3toR3: return 1.0 - sv_max_2x2(tetrablock_source_matrix(q));
    case BihTag::L4toR1: return 1.0 - sv_max_2x2(fmap_source_matrix(q));
    case BihTag::LL2toG2: return domain_margin(DomainId::sym_bidisc(), q);
    case BihTag::LL3toE: return domain_margin(DomainId::tetrablock(), q);
    case BihTag::LL4toF: return domain_margin(DomainId::f_domain(), q);
  }
  throw std::logic_error("unreachable");
}

inline double bih_source_margin(BihTag t, const cvec& p) {
  return domain_margin(bih_source_domain(t), p);
}

inline cvec bih_eval(const BihId& b, const cvec& p, bool check_source = false) {
  require_finite(p, "bih_eval");
  require_dim(p, bih_dim(b.tag), "bih_eval");
  if (check_source) {
    double mg = b.inverse ? bih_target_margin(b.tag, p) : bih_source_margin(b.tag, p);
    if (mg <= 0.0) throw outside_domain_error("bih_eval: point outside the source domain", mg);
  }
  return b.inverse ? detail::bih_backward(b.tag, p) : detail::bih_forward(b.tag, p);
}

inline cvec bih_inverse(const BihId& b, const cvec& q, bool check_source = false) {
  return bih_eval(b.flipped(), q, check_source);
}

inline PointMap as_point_map(const BihId& b) {
  int d = bih_dim(b.tag);
  return PointMap{d, d, [b](const cvec& z) { return bih_eval(b, z); }};
}

/// The coordinate permutation entering the commuting square at level n; not
/// forced by the formulas above on the quotient side, fixed here and
/// certified by commuting_square_residual.
inline cvec square_permutation(int n, const cvec& z) {
  switch (n) {
    case 2: return z;
    case 3: return {z[1], z[2], z[0]};
    case 4: return {z[2], z[3], z[1], z[0]};
    default: throw std::invalid_argument("square_permutation: n must be 2, 3 or 4");
  }
}

namespace detail {

inline void square_triple(int n, BihId& b, MapId& phi, BihId& a) {
  switch (n) {
    case 2:
      b = {BihTag::LL2toG2};
      phi = MapId::bidisc_sym(cplx{1.0, 0.0});
      a = {BihTag::L2toBidisc};
      return;
    case 3:
      b = {BihTag::LL3toE};
      phi = MapId::tetrablock_phi();
      a = {BihTag::L3toR3};
      return;
    case 4:
      b = {BihTag::LL4toF};
      phi = MapId::f_map_phi4();
      a = {BihTag::L4toR1};
      return;
    default: throw std::invalid_argument("commuting_square: n must be 2, 3 or 4");
  }
}

}  // namespace detail

/// | b(Lambda_n z) - phi(a(P_n z)) | at one Lie-ball point
inline double commuting_square_residual_at(int n, const cvec& z) {
  BihId b, a;
  MapId phi;
  detail::square_triple(n, b, phi, a);
  cvec left = bih_eval(b, eval(MapId::lambda_n(n), z));
  cvec right = eval(phi, bih_eval(a, square_permutation(n, z)));
  return dist2(left, right);
}

/// sup of the residual over `samples` random Lie-ball points
inline double commuting_square_residual(int n, int samples, std::uint64_t seed) {
  Rng rng(seed);
  DomainId ln = DomainId::lie_ball(n);
  double sup = 0.0;
  for (int s = 0; s < samples; ++s)
    sup = std::max(sup, commuting_square_residual_at(n, sample_point(ln, rng)));
  return sup;
}

}  // namespace cartanq

#endif  // CARTANQ_BIHOLOMORPHISMS_HPP
