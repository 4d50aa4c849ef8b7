#pragma once

namespace polysieve {

// Euler-Mascheroni constant, 18 significant digits.
inline constexpr double euler_gamma = 0.577215664901532861;

}  // namespace polysieve
