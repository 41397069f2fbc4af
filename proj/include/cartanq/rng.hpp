#ifndef CARTANQ_RNG_HPP
#define CARTANQ_RNG_HPP

#include <cstdint>

#include "cartanq/core.hpp"

namespace cartanq {

/// Default seed used by every CLI subcommand and verification entry unless
/// overridden. Reports citing it are reproducible byte for byte.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// splitmix64 generator. Chosen over std::mt19937_64 + distributions so the
/// stream (and hence every report) is identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// standard normal via Box-Muller (no caching, call-order independent)
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * kPi * u2);
  }

  cplx unit_modulus() {
    double t = uniform(0.0, 2.0 * kPi);
    return cplx{std::cos(t), std::sin(t)};
  }

  /// uniform on the complex disc of radius R
  cplx in_disc(double R = 1.0) {
    double r = R * std::sqrt(uniform());
    return r * unit_modulus();
  }

  /// uniform in the square [-R, R]^2 of the complex plane
  cplx in_square(double R = 1.0) { return cplx{uniform(-R, R), uniform(-R, R)}; }

  /// uniform on the real unit sphere S^{n-1} (Gaussian normalization)
  std::vector<double> real_unit_sphere(int n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    double s = 0.0;
    do {
      s = 0.0;
      for (double& c : x) {
        c = gaussian();
        s += c * c;
      }
    } while (s == 0.0);
    double inv = 1.0 / std::sqrt(s);
    for (double& c : x) c *= inv;
    return x;
  }

  cvec in_polydisc(int n, double R = 1.0) {
    cvec z(static_cast<std::size_t>(n));
    for (cplx& c : z) c = in_disc(R);
    return z;
  }

  cvec in_square_box(int n, double R = 1.0) {
    cvec z(static_cast<std::size_t>(n));
    for (cplx& c : z) c = in_square(R);
    return z;
  }

  /// uniform in the complex Euclidean ball of radius R
  cvec in_ball(int n, double R = 1.0) {
    cvec z(static_cast<std::size_t>(n));
    double s = 0.0;
    for (cplx& c : z) {
      c = cplx{gaussian(), gaussian()};
      s += std::norm(c);
    }
    double r = R * std::pow(uniform(), 1.0 / (2.0 * n));
    double inv = (s > 0.0) ? r / std::sqrt(s) : 0.0;
    for (cplx& c : z) c *= inv;
    return z;
  }

  /// derive an independent sub-stream (deterministic in seed and tag)
  Rng split(std::uint64_t tag) const {
    Rng child(state_ ^ (0xA5A5A5A55A5A5A5AULL + tag * 0x9E3779B97F4A7C15ULL));
    child.u64();
    return child;
  }

private:
  std::uint64_t state_;
};

}  // namespace cartanq

#endif  // CARTANQ_RNG_HPP
