#pragma once

// Random draws of the library's value types, shared by the sweep sampler and
// the numerical check suite.

#include <random>

#include "attitude/linalg3.hpp"

namespace attitude::random {

using Engine = std::mt19937_64;

/// Uniform direction on the unit sphere.
Vec3 unit_vector(Engine& rng);

/// Rotation about a uniformly drawn axis by an angle uniform in [0, pi).
Mat3 rotation(Engine& rng);

/// Entries uniform in [-scale, scale].
Vec3 vector(Engine& rng, double scale = 1.0);
Mat3 matrix(Engine& rng, double scale = 1.0);
Mat3 symmetric(Engine& rng, double scale = 1.0);
Mat3 skew(Engine& rng, double scale = 1.0);

/// R = Q (I + P) with det R > 0 and ||R^T R - I|| < max_distance.
Mat3 near_rotation(Engine& rng, double max_distance);

}  // namespace attitude::random
