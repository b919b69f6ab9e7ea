#pragma once

namespace psiroots {

// Shared constants. Every closed form in the library is assembled from
// these five values.
inline constexpr double kGamma  = 0.57721566490153286060651209008240243;  // Euler-Mascheroni
inline constexpr double kPi     = 3.14159265358979323846264338327950288;
inline constexpr double kZeta3  = 1.20205690315959428539973816151144999;  // zeta(3)
inline constexpr double kLog2Pi = 1.83787706640934548356065947281123527;  // log(2 pi)
inline constexpr double kC      = 0.5 * (1.0 + kLog2Pi);                  // (1 + log 2 pi)/2

struct Constants {
  double gamma = kGamma;
  double pi = kPi;
  double zeta3 = kZeta3;
  double L = kLog2Pi;
  double c = kC;
};

constexpr Constants constants() { return {}; }

}  // namespace psiroots
