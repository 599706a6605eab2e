#pragma once

#include <vector>

namespace fixtures {

// Eleven arms whose UIG at eps = 0.15 has five neighborhood classes.
// Ids here are 0-based.
inline const std::vector<double> eleven_arm_means = {0.8, 0.8, 0.8, 0.9, 1.0, 1.0, 0.9, 0.9, 0.8, 0.7, 0.6};
inline constexpr double eleven_arm_epsilon = 0.15;

}  // namespace fixtures
