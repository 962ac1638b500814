#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace agler {

using Rng = std::mt19937_64;

inline std::complex<double> complex_gaussian(Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

// Uniform in the open disk of the given radius.
inline std::complex<double> random_disk_point(Rng& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double t = 2 * std::numbers::pi * u(rng);
  return std::polar(r, t);
}

inline std::complex<double> random_torus_point(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

inline std::vector<std::complex<double>> random_polydisk_point(Rng& rng, std::size_t n,
                                                               double radius = 1.0) {
  std::vector<std::complex<double>> z(n);
  for (auto& zi : z) zi = random_disk_point(rng, radius);
  return z;
}

inline std::vector<std::complex<double>> random_torus_point(Rng& rng, std::size_t n) {
  std::vector<std::complex<double>> z(n);
  for (auto& zi : z) zi = random_torus_point(rng);
  return z;
}

}  // namespace agler
