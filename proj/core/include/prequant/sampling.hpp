#pragma once

#include <cstdint>
#include <random>

#include "prequant/geometry.hpp"

namespace prequant {

/// Seeded sampler on constraint manifolds: ambient Gaussians, normalized.
/// Uniform on spheres and Fubini-Study uniform on CP^n.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from a seed and a salt (splitmix64 mixing).
  static Sampler stream(std::uint64_t seed, std::uint64_t salt);

  Point point(const ManifoldPtr& space);
  /// Gaussian ambient vector projected to the tangent space at p.
  Tangent tangent(const Point& p);
  Vec gaussian(int dim, double sigma = 1.0);
  double uniform(double lo, double hi);
  int integer(int lo, int hi);

private:
  std::mt19937_64 engine_;
};

} // namespace prequant
