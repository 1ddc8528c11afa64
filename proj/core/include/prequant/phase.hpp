#pragma once

#include <cmath>

namespace prequant {

/// Element of R/Z, stored in [0, 1). Identified with U(1) by theta -> e^{2 pi i theta}.
class Phase {
public:
  constexpr Phase() = default;
  explicit Phase(double value) : value_(wrap(value)) {}

  double value() const { return value_; }

  /// Minimal circular distance in R/Z, in [0, 1/2].
  friend double circular_distance(Phase a, Phase b) {
    const double d = std::fabs(a.value_ - b.value_);
    return d > 0.5 ? 1.0 - d : d;
  }

  friend Phase operator+(Phase a, Phase b) { return Phase(a.value_ + b.value_); }
  friend Phase operator-(Phase a, Phase b) { return Phase(a.value_ - b.value_); }
  Phase operator-() const { return Phase(-value_); }

  static double wrap(double x) {
    double r = x - std::floor(x);
    // floor can leave exactly 1.0 for tiny negative inputs
    return r >= 1.0 ? 0.0 : r;
  }

private:
  double value_ = 0.0;
};

/// Distance from x to the nearest integer.
inline double distance_to_integer(double x) { return std::fabs(x - std::round(x)); }

} // namespace prequant
