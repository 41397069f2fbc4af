#ifndef CARTANQ_BERGMAN_HPP
#define CARTANQ_BERGMAN_HPP

#include <array>
#include <cstdint>
#include <limits>

#include "cartanq/domains.hpp"

namespace cartanq {

/// exact integer binomial coefficients; C(64,32) still fits in 64 bits
inline constexpr int kMaxKernelOrder = 64;

inline std::uint64_t binom(int n, int k) {
  if (n < 0 || n > kMaxKernelOrder)
    throw std::invalid_argument("binom: order must lie in [0, 64]");
  if (k < 0 || k > n) return 0;
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxKernelOrder + 1>, kMaxKernelOrder + 1> t{};
    for (int i = 0; i <= kMaxKernelOrder; ++i) {
      t[static_cast<std::size_t>(i)][0] = 1;
      for (int j = 1; j <= i; ++j)
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
            (j <= i - 1 ? t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0);
    }
    return t;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

inline cplx int_pow(cplx base, int e) {
  cplx out{1.0, 0.0};
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

/// Kernel value of the quotient domain together with the intermediates of the
/// closed form: X_n and A^2 (only even powers of A enter, so the value is
/// branch-free in quotient coordinates).
struct KernelValue {
  cplx value{0.0};
  cplx Xn{0.0};
  cplx Asq{0.0};
};

inline constexpr double kKernelPoleGuard = 1e-30;

/// Volume-normalized type-IV kernel
///   (1 + (z.z)(conj(w).conj(w)) - 2<z,w>)^{-n},  K(0,0) = 1.
inline cplx k_lie(const cvec& z, const cvec& w, int n) {
  require_dim(z, n, "k_lie");
  require_dim(w, n, "k_lie");
  require_finite(z, "k_lie");
  require_finite(w, "k_lie");
  if (n < 1 || n > kMaxKernelOrder) throw std::invalid_argument("k_lie: n out of range");
  cplx base = 1.0 + bullet(z) * std::conj(bullet(w)) - 2.0 * herm(z, w);
  if (std::abs(base) < kKernelPoleGuard) throw std::invalid_argument("k_lie: pole of the closed form");
  return 1.0 / int_pow(base, n);
}

/// quotient kernel through the deck-difference formula,
///   (K(z,w) - K(sigma z, w)) / (4 z1 conj(w1))
inline cplx k_quotient_diff(const cvec& z, const cvec& w, int n) {
  require_dim(z, n, "k_quotient_diff");
  require_dim(w, n, "k_quotient_diff");
  cplx pre = 4.0 * z[0] * std::conj(w[0]);
  if (std::abs(pre) == 0.0)
    throw std::invalid_argument("k_quotient_diff: z1 conj(w1) = 0, use the closed form");
  return (k_lie(z, w, n) - k_lie(sigma_flip(z), w, n)) / pre;
}

/// Closed form of the quotient kernel, directly in quotient coordinates:
///   X = 1 + (p1 + sum_{j>=2} p_j^2) conj(q1 + sum_{j>=2} q_j^2)
///         - 2 sum_{j>=2} p_j conj(q_j),
///   A^2 = 4 p1 conj(q1),
///   K = [ sum_{k odd} C(n,k) X^{n-k} (A^2)^{(k-1)/2} ] / (X^2 - A^2)^n.
inline KernelValue k_quotient_closed(const cvec& p, const cvec& q, int n) {
  require_dim(p, n, "k_quotient_closed");
  require_dim(q, n, "k_quotient_closed");
  require_finite(p, "k_quotient_closed");
  require_finite(q, "k_quotient_closed");
  if (n < 1 || n > kMaxKernelOrder)
    throw std::invalid_argument("k_quotient_closed: n out of range");

  cplx sp = p[0], sq = q[0];
  cplx cross{0.0};
  for (int j = 1; j < n; ++j) {
    sp += p[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
    sq += q[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(j)];
    cross += p[static_cast<std::size_t>(j)] * std::conj(q[static_cast<std::size_t>(j)]);
  }
  KernelValue kv;
  kv.Xn = 1.0 + sp * std::conj(sq) - 2.0 * cross;
  kv.Asq = 4.0 * p[0] * std::conj(q[0]);

  cplx denom_base = kv.Xn * kv.Xn - kv.Asq;
  if (std::abs(denom_base) < kKernelPoleGuard)
    throw std::invalid_argument("k_quotient_closed: kernel pole (X^2 - A^2 ~ 0)");

  cplx num{0.0};
  for (int k = 1; k <= n; k += 2)
    num += static_cast<double>(binom(n, k)) * int_pow(kv.Xn, n - k) * int_pow(kv.Asq, (k - 1) / 2);
  kv.value = num / int_pow(denom_base, n);
  return kv;
}

// ---------------------------------------------------------------------------
// kernel zeros

/// Explicit zero of the quotient kernel: with w = e^{i pi / n},
/// z0 = (w - 1)/(w + 1), the pair  zhat = (z0/r, 0, ..., 0),
/// what = (r, 0, ..., 0)  satisfies K(Lambda zhat, Lambda what) = 0.
struct LqkWitness {
  int n = 3;
  cplx z0{0.0};
  double r = 0.8;
  cvec zhat, what;
  cplx kernel_value{0.0};
  double lie_kernel_scale = 0.0;  // |K_L(zhat, what)|, for relative zero checks
};

inline LqkWitness lqk_witness(int n, double r) {
  if (n < 2) throw std::invalid_argument("lqk_witness: n must be >= 2");
  cplx w2n{std::cos(kPi / n), std::sin(kPi / n)};
  cplx z0 = (w2n - 1.0) / (w2n + 1.0);
  if (!(std::abs(z0) < r && r < 1.0))
    throw std::invalid_argument("lqk_witness: need |z0| < r < 1 (fails for n = 2)");
  LqkWitness out;
  out.n = n;
  out.z0 = z0;
  out.r = r;
  out.zhat = origin(n);
  out.what = origin(n);
  out.zhat[0] = z0 / r;
  out.what[0] = r;
  cvec lz = out.zhat, lw = out.what;
  lz[0] *= lz[0];
  lw[0] *= lw[0];
  out.kernel_value = k_quotient_closed(lz, lw, n).value;
  out.lie_kernel_scale = std::abs(k_lie(out.zhat, out.what, n));
  return out;
}

struct LqkScanResult {
  double min_abs = 0.0;
  cvec argmin_p, argmin_q;
};

/// minimum |K| over random pairs of quotient-domain points
inline LqkScanResult lqk_scan(int n, int samples, std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("lqk_scan: samples must be >= 1e3");
  Rng rng(seed);
  DomainId dom = DomainId::quotient_l(n);
  LqkScanResult best;
  best.min_abs = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    cvec p = sample_point(dom, rng);
    cvec q = sample_point(dom, rng);
    double a = std::abs(k_quotient_closed(p, q, n).value);
    if (a < best.min_abs) {
      best.min_abs = a;
      best.argmin_p = p;
      best.argmin_q = q;
    }
  }
  return best;
}

/// scan restricted to a neighborhood of the witness pair (perturbations are
/// taken upstairs in the Lie ball and pushed through Lambda)
inline LqkScanResult lqk_scan_near(const LqkWitness& w, int samples, std::uint64_t seed,
                                   double radius = 0.01) {
  Rng rng(seed);
  DomainId lie = DomainId::lie_ball(w.n);
  LqkScanResult best;
  best.min_abs = std::numeric_limits<double>::infinity();
  auto perturb = [&](const cvec& center) {
    for (;;) {
      cvec z = center;
      for (cplx& c : z) c += radius * rng.in_disc();
      if (domain_margin(lie, z) > 0.0) {
        z[0] *= z[0];
        return z;
      }
    }
  };
  for (int s = 0; s < samples; ++s) {
    cvec p = perturb(w.zhat);
    cvec q = perturb(w.what);
    double a = std::abs(k_quotient_closed(p, q, w.n).value);
    if (a < best.min_abs) {
      best.min_abs = a;
      best.argmin_p = p;
      best.argmin_q = q;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// volume identity

/// The kernel here is volume-normalized (K(0,0)=1), so K_quotient(0,.) = n
/// forces Vol(L_n) = n Vol(quotient): compare both sides by Monte Carlo.
struct VolumeIdentity {
  VolumeEstimate vol_lie;
  VolumeEstimate vol_quotient;
  double residual = 0.0;       // |n Vq - Vl| / Vl
  double three_se = 0.0;       // 3 combined standard errors, relative to Vl
};

inline VolumeIdentity volume_identity(int n, std::int64_t samples, std::uint64_t seed) {
  VolumeIdentity out;
  Rng base(seed);
  out.vol_lie = mc_volume(DomainId::lie_ball(n), samples, base.split(1).u64());
  out.vol_quotient = mc_volume(DomainId::quotient_l(n), samples, base.split(2).u64());
  double nn = static_cast<double>(n);
  out.residual = std::abs(nn * out.vol_quotient.estimate - out.vol_lie.estimate) /
                 out.vol_lie.estimate;
  out.three_se = 3.0 *
                 std::sqrt(nn * nn * out.vol_quotient.stderr_ * out.vol_quotient.stderr_ +
                           out.vol_lie.stderr_ * out.vol_lie.stderr_) /
                 out.vol_lie.estimate;
  return out;
}

inline double volume_identity_residual(int n, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000000)
    throw std::invalid_argument("volume_identity_residual: samples must be >= 1e6");
  return volume_identity(n, samples, seed).residual;
}

}  // namespace cartanq

#endif  // CARTANQ_BERGMAN_HPP
