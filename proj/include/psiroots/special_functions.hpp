#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "psiroots/constants.hpp"
#include "psiroots/errors.hpp"

namespace psiroots {

namespace detail {

// Inputs closer than this to a pole are rejected rather than extrapolated;
// bracketing callers stay outside this radius.
inline constexpr double kPoleGuard = 1e-12;

inline void check_nonpos_pole(double x, const char* fn) {
  if (std::isnan(x)) throw std::domain_error(std::string(fn) + ": NaN argument");
  if (x > 0.5) return;
  const double r = std::round(x);
  if (r <= 0.0 && std::abs(x - r) < kPoleGuard) {
    throw pole_error(std::string(fn) + ": argument within 1e-12 of pole at " +
                     std::to_string(static_cast<long long>(r)));
  }
}

// cot(pi x) via reduction r = x - round(x); exact for |x| < 2^52, so the
// pole-adjacent behaviour is resolved to full precision.
inline double cot_pi(double x) {
  const double r = x - std::round(x);
  const double s = std::sin(kPi * r);
  return std::cos(kPi * r) / s;
}

// |sin(pi x)| with the same reduction.
inline double abs_sin_pi(double x) {
  const double r = x - std::round(x);
  return std::abs(std::sin(kPi * r));
}

// B_{2k}/(2k), k = 1..8. With arguments shifted to >= 10 the first omitted
// term (B_18) is ~3e-18, comfortably below the 1e-14 truncation target.
inline constexpr double kPsiAsym[8] = {
    1.0 / 12.0,      -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0,     -691.0 / 32760.0, 1.0 / 12.0,  -3617.0 / 8160.0};

// B_{2k}, k = 1..8.
inline constexpr double kBernoulli[8] = {
    1.0 / 6.0,  -1.0 / 30.0,      1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0,  7.0 / 6.0,  -3617.0 / 510.0};

// B_{2k}/(2k(2k-1)), k = 1..8, for the Stirling series.
inline constexpr double kLogGammaAsym[8] = {
    1.0 / 12.0,   -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0};

inline constexpr double kAsymShift = 10.0;

inline double horner_even(const double* c, int n, double inv2) {
  double s = 0.0;
  for (int k = n - 1; k >= 0; --k) s = s * inv2 + c[k];
  return s;
}

// psi(x) for x >= 10: log x - 1/(2x) - sum B_{2k}/(2k x^{2k}).
inline double digamma_asym(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return std::log(x) - 0.5 * inv - inv2 * horner_even(kPsiAsym, 8, inv2);
}

// psi_1(x) for x >= 10: 1/x + 1/(2x^2) + sum B_{2k}/x^{2k+1}.
inline double trigamma_asym(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv + 0.5 * inv2 + inv * inv2 * horner_even(kBernoulli, 8, inv2);
}

// log Gamma(x) for x >= 10.
inline double log_gamma_asym(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * kLog2Pi +
         inv * horner_even(kLogGammaAsym, 8, inv2);
}

}  // namespace detail

// Digamma psi(x) = Gamma'(x)/Gamma(x). Recurrence shifts the argument to
// >= 10, then the Bernoulli asymptotic series; negative arguments go
// through the reflection psi(x) = psi(1-x) - pi cot(pi x).
inline double digamma(double x) {
  detail::check_nonpos_pole(x, "digamma");
  if (x < 0.0) {
    const double refl = kPi * detail::cot_pi(x);
    x = 1.0 - x;
    double acc = -refl;
    while (x < detail::kAsymShift) {
      acc -= 1.0 / x;
      x += 1.0;
    }
    return acc + detail::digamma_asym(x);
  }
  double acc = 0.0;
  while (x < detail::kAsymShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  return acc + detail::digamma_asym(x);
}

// Trigamma psi_1 = psi'. Strictly positive away from poles.
inline double trigamma(double x) {
  detail::check_nonpos_pole(x, "trigamma");
  if (x < 0.0) {
    // psi_1(x) + psi_1(1-x) = pi^2 / sin^2(pi x)
    const double s = detail::abs_sin_pi(x);
    const double refl = kPi * kPi / (s * s);
    x = 1.0 - x;
    double acc = refl;
    while (x < detail::kAsymShift) {
      acc -= 1.0 / (x * x);
      x += 1.0;
    }
    return acc - detail::trigamma_asym(x);
  }
  double acc = 0.0;
  while (x < detail::kAsymShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  return acc + detail::trigamma_asym(x);
}

// log Gamma(x), x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  double acc = 0.0;
  while (x < detail::kAsymShift) {
    acc -= std::log(x);
    x += 1.0;
  }
  return acc + detail::log_gamma_asym(x);
}

// log |Gamma(x)| for any non-pole real x; negative arguments use
// |Gamma(x)| = pi / (|sin(pi x)| Gamma(1-x)).
inline double log_abs_gamma(double x) {
  if (x > 0.0) return log_gamma(x);
  detail::check_nonpos_pole(x, "log_abs_gamma");
  return std::log(kPi) - std::log(detail::abs_sin_pi(x)) - log_gamma(1.0 - x);
}

// psi_G(x) = G'(x)/G(x) = (log(2 pi) + 1)/2 - x + (x - 1) psi(x).
inline double psi_g(double x) {
  return kC - x + (x - 1.0) * digamma(x);
}

// Derivative of psi_G, used by the zero finders.
inline double psi_g_prime(double x) {
  return digamma(x) + (x - 1.0) * trigamma(x) - 1.0;
}

namespace detail {

// log of the Glaisher-Kinkelin constant, 1/12 - zeta'(-1).
inline constexpr double kLogGlaisher = 0.24875447703378426254725299357602068;

// B_{2k+2}/(2k(2k+1)(2k+2)), k = 1..5, tail of the Barnes expansion.
inline constexpr double kBarnesAsym[5] = {
    -1.0 / 720.0, 1.0 / 5040.0, -1.0 / 10080.0, 1.0 / 9504.0,
    -691.0 / 3603600.0};

inline constexpr double kBarnesShift = 20.0;

// log G(w) for w >= 20, in terms of z = w - 1:
//   z^2/4 + z log Gamma(z+1) - (z(z+1)/2 + 1/12) log z - log A
//   + sum_k B_{2k+2} / (2k(2k+1)(2k+2) z^{2k}).
// At z = 19 the first omitted term is ~2e-17.
inline double log_barnes_g_asym(double w) {
  const double z = w - 1.0;
  const double inv2 = 1.0 / (z * z);
  return 0.25 * z * z + z * log_gamma(z + 1.0) -
         (0.5 * z * (z + 1.0) + 1.0 / 12.0) * std::log(z) - kLogGlaisher +
         inv2 * horner_even(kBarnesAsym, 5, inv2);
}

}  // namespace detail

// log G(x) for x > 0, Barnes G normalized by G(1) = 1. Recurrence
// log G(x) = log G(x+1) - log Gamma(x) shifts the argument to >= 20, then
// the asymptotic expansion above (validated against the recurrence in the
// test suite).
inline double log_barnes_g(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_barnes_g: requires x > 0");
  double acc = 0.0;
  while (x < detail::kBarnesShift) {
    acc -= log_gamma(x);
    x += 1.0;
  }
  return acc + detail::log_barnes_g_asym(x);
}

// Principal branch W_0 of the Lambert W function, w e^w = x, x >= -1/e.
// Starts: branch-point series near -1/e, w = x for small |x|,
// log x - log log x for large x; polished by Halley (or, for x > e, by
// Newton on w + log w = log x, which cannot overflow).
inline double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144232159552377016146087;
  constexpr double kE = 2.71828182845904523536028747135266250;
  if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN argument");
  if (x < -kInvE) {
    if (x < -kInvE * (1.0 + 1e-12)) {
      throw std::domain_error("lambert_w0: requires x >= -1/e");
    }
    x = -kInvE;  // round-off below the branch point
  }
  if (x == 0.0) return 0.0;

  const double p2 = 2.0 * (kE * x + 1.0);
  if (p2 <= 0.0) return -1.0;
  if (p2 < 1e-6) {
    // branch-point series w = -1 + p - p^2/3 + 11 p^3/72 - ...
    const double p = std::sqrt(p2);
    return -1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0)));
  }

  if (x > kE) {
    // Newton on h(w) = w + log w - log x
    const double lx = std::log(x);
    double w = lx - std::log(lx);
    for (int it = 0; it < 50; ++it) {
      const double h = w + std::log(w) - lx;
      const double dw = h * w / (w + 1.0);
      w -= dw;
      if (std::abs(dw) <= 2e-16 * w) return w;
    }
    throw iteration_error("lambert_w0: no convergence");
  }

  double w;
  if (p2 < 0.11) {
    const double p = std::sqrt(p2);
    w = -1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0)));
  } else if (x < kInvE) {
    w = x;
  } else {
    w = std::log1p(x);
  }
  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-14 * std::max(1.0, std::abs(x))) return w;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 2e-16 * (1.0 + std::abs(w))) return w;
  }
  throw iteration_error("lambert_w0: no convergence");
}

}  // namespace psiroots
