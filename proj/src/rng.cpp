#include "tpmab/rng.hpp"

namespace tpmab {

// Marsaglia-Tsang squeeze method; shape < 1 handled via the boost
// gamma(a) = gamma(a+1) * U^(1/a).
double KeyedStream::next_gamma(double shape) {
  if (shape < 1.0) {
    double u = next_unit();
    while (u <= 0.0) u = next_unit();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = next_normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double KeyedStream::next_beta(double a, double b) {
  if (a == 1.0 && b == 1.0) return next_unit();
  double x = next_gamma(a);
  double y = next_gamma(b);
  double s = x + y;
  if (s <= 0.0) return 0.5;
  double z = x / s;
  if (z < 0.0) z = 0.0;
  if (z > 1.0) z = 1.0;
  return z;
}

}  // namespace tpmab
