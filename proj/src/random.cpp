#include "attitude/random.hpp"

#include <cmath>

#include "attitude/dynamics.hpp"

namespace attitude::random {

Vec3 unit_vector(Engine& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    const Vec3 v{normal(rng), normal(rng), normal(rng)};
    const double n = norm(v);
    if (n > 1e-6) return (1.0 / n) * v;
  }
}

Mat3 rotation(Engine& rng) {
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  const Vec3 axis = unit_vector(rng);
  return rodrigues_exp(axis, angle(rng));
}

Vec3 vector(Engine& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

Mat3 matrix(Engine& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat3 m;
  for (double& x : m.a) x = u(rng);
  return m;
}

Mat3 symmetric(Engine& rng, double scale) {
  return sym_skew_split(matrix(rng, scale)).sym;
}

Mat3 skew(Engine& rng, double scale) { return hat(vector(rng, scale)); }

Mat3 near_rotation(Engine& rng, double max_distance) {
  std::normal_distribution<double> normal(0.0, 0.15);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Mat3 q = rotation(rng);
  for (;;) {
    Mat3 p;
    for (double& x : p.a) x = normal(rng);
    const Mat3 r = q * (Mat3::identity() + unit(rng) * p);
    if (det(r) > 0.0 && manifold_distance(r) < max_distance) return r;
  }
}

}  // namespace attitude::random
