#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psiroots/constants.hpp"
#include "psiroots/errors.hpp"
#include "psiroots/special_functions.hpp"
#include "psiroots/zeros.hpp"

namespace psiroots {

enum class ExtremumKind { Min, Max };

inline const char* kind_name(ExtremumKind k) {
  return k == ExtremumKind::Min ? "min" : "max";
}

// One extremum of the hyperfactorial K. n = 0 marks the positive pair;
// n >= 1 marks roots in the window (-n - 1/2, -n + 1/2). residual is the
// extremum-equation residual evaluated in pole-offset coordinates, where
// the root is resolved to full relative precision.
struct ExtremumRecord {
  int n;
  double location;
  ExtremumKind kind;
  std::optional<double> approx_location;
  double residual;
  std::optional<double> gap;  // |location - approx_location|
};

// log K(x) for the hyperfactorial K(x) = Gamma(x)^(x-1) / G(x); at positive
// integers K(n+1) = prod_{k<=n} k^k.
inline double log_hyperfactorial(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_hyperfactorial: requires x > 0");
  return (x - 1.0) * log_gamma(x) - log_barnes_g(x);
}

// (log K)'(x) collapses to log Gamma(x) + x - c; extrema of K solve this
// equation. Defined off the positive axis through log|Gamma|.
inline double extremum_equation(double x) {
  return log_abs_gamma(x) + x - kC;
}

// The two positive extrema: a maximum below 1 and a minimum above 1,
// bracketed by the sign pattern of the equation on (0.05, 1) and (1, 3).
inline std::pair<ExtremumRecord, ExtremumRecord> find_positive_extrema() {
  auto eq = [](double x) { return extremum_equation(x); };
  auto deq = [](double x) { return digamma(x) + 1.0; };

  auto solve = [&](double a, double b, double guess) {
    const double fa = eq(a), fb = eq(b);
    if ((fa < 0.0) == (fb < 0.0)) {
      throw no_sign_change_error("find_positive_extrema: bracket failure");
    }
    return detail::newton_bisect(eq, deq, a, b, fa, fb, guess,
                                 "find_positive_extrema");
  };
  const auto rmax = solve(0.05, 1.0, 0.29);
  const auto rmin = solve(1.0, 3.0, 1.54);
  return {ExtremumRecord{0, rmax.x, ExtremumKind::Max, std::nullopt,
                         std::abs(rmax.fx), std::nullopt},
          ExtremumRecord{0, rmin.x, ExtremumKind::Min, std::nullopt,
                         std::abs(rmin.fx), std::nullopt}};
}

// Lambert-form approximation of the extremum near -n:
//   -n + W(a_n (1 + log n)) / (1 + log n),
//   a_n = exp(-c)/pi * (-1)^n / n^n  (cos(pi n) taken as exact +-1,
//   and a_n assembled in log space since n^n overflows quickly).
inline double approx_negative_extremum(std::int64_t n) {
  if (n < 1) throw std::domain_error("approx_negative_extremum: requires n >= 1");
  const double nn = static_cast<double>(n);
  const double log_abs_a = -kC - std::log(kPi) - nn * std::log(nn);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double a = sign * std::exp(log_abs_a);
  const double one_log_n = 1.0 + std::log(nn);
  return -nn + lambert_w0(a * one_log_n) / one_log_n;
}

namespace detail {

// Extremum equation at x = -n -+ d, rewritten through the reflection formula
// in the pole offset d. Evaluating in d keeps full relative precision even
// when the root sits within 1e-9 of the pole, which the double grid around
// -n cannot represent.
inline double neg_eq(std::int64_t n, double d, bool left) {
  const double nn = static_cast<double>(n);
  const double shifted = left ? nn + 1.0 + d : nn + 1.0 - d;
  const double x = left ? -nn - d : -nn + d;
  return std::log(kPi) - std::log(std::sin(kPi * d)) - log_gamma(shifted) + x - kC;
}

}  // namespace detail

// All extrema of K in the window (-n - 1/2, -n + 1/2). There is one root on
// each side of the pole -n; each is solved in the pole-offset coordinate
// (see neg_eq), and a uniform scan of the window guards against additional
// sign changes away from the pole. The record nearest to
// approx_negative_extremum(n) carries the approximation and its gap.
inline std::vector<ExtremumRecord> find_negative_extrema(std::int64_t n) {
  if (n < 1) throw std::domain_error("find_negative_extrema: requires n >= 1");
  const double nn = static_cast<double>(n);

  // leading-order offset: -log d ~ log Gamma(n+1) + n + c
  const double d0 = std::exp(-(log_gamma(nn + 1.0) + nn + kC));

  auto solve_side = [&](bool left) {
    auto f = [&](double d) { return detail::neg_eq(n, d, left); };
    auto df = [&](double d) {
      const double shifted = left ? nn + 1.0 + d : nn + 1.0 - d;
      const double sgn = left ? -1.0 : 1.0;
      return -kPi * std::cos(kPi * d) / std::sin(kPi * d) -
             sgn * digamma(shifted) + sgn;
    };
    double lo = std::max(d0 * 1e-3, 1e-300);
    double hi = 0.5;
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo > 0.0) || !(fhi < 0.0)) {
      throw no_sign_change_error("find_negative_extrema: offset bracket failure at n = " +
                                 std::to_string(n));
    }
    const auto r = detail::newton_bisect(f, df, lo, hi, flo, fhi,
                                         std::clamp(d0, lo, hi),
                                         "find_negative_extrema");
    const double x = left ? -nn - r.x : -nn + r.x;
    // classification from the equation's slope in x at the root
    const ExtremumKind kind = (digamma(x) + 1.0 > 0.0) ? ExtremumKind::Min
                                                       : ExtremumKind::Max;
    return ExtremumRecord{static_cast<int>(n), x, kind, std::nullopt,
                          std::abs(r.fx), std::nullopt};
  };

  std::vector<ExtremumRecord> found;
  found.push_back(solve_side(true));
  found.push_back(solve_side(false));

  // window scan for any sign change away from the pole neighbourhood
  const double wlo = -nn - 0.5, whi = -nn + 0.5;
  const int samples = 1000;
  double prev_x = 0.0, prev_f = 0.0;
  bool have_prev = false;
  for (int i = 0; i <= samples; ++i) {
    const double x = wlo + (whi - wlo) * static_cast<double>(i) / samples;
    if (std::abs(x + nn) < 1e-7) {
      have_prev = false;  // do not bridge across the pole
      continue;
    }
    const double fx = extremum_equation(x);
    if (have_prev && (prev_f < 0.0) != (fx < 0.0)) {
      const auto r = detail::newton_bisect(
          [](double t) { return extremum_equation(t); },
          [](double t) { return digamma(t) + 1.0; }, prev_x, x, prev_f, fx,
          0.5 * (prev_x + x), "find_negative_extrema");
      const bool dup = std::any_of(found.begin(), found.end(), [&](const ExtremumRecord& e) {
        return std::abs(e.location - r.x) < 1e-4;
      });
      if (!dup) {
        const ExtremumKind kind = (digamma(r.x) + 1.0 > 0.0) ? ExtremumKind::Min
                                                             : ExtremumKind::Max;
        found.push_back(ExtremumRecord{static_cast<int>(n), r.x, kind,
                                       std::nullopt, std::abs(r.fx), std::nullopt});
      }
    }
    prev_x = x;
    prev_f = fx;
    have_prev = true;
  }

  std::sort(found.begin(), found.end(),
            [](const ExtremumRecord& a, const ExtremumRecord& b) {
              return a.location < b.location;
            });

  const double approx = approx_negative_extremum(n);
  std::size_t best = 0;
  for (std::size_t i = 1; i < found.size(); ++i) {
    if (std::abs(found[i].location - approx) < std::abs(found[best].location - approx)) {
      best = i;
    }
  }
  found[best].approx_location = approx;
  found[best].gap = std::abs(found[best].location - approx);
  return found;
}

// Residual of the reduced extremum equation  x^x sin(pi x) = e^{-c}  in
// magnitude form, evaluated in log space: |exp(x log x + log|sin pi x|) - e^{-c}|.
// The reduction drops the -log(x)/2 Stirling term, so this residual is only
// expected to be small relative to e^{-c}, degrading like 1 - sqrt(pi/(2x)).
inline double reduced_extremum_residual(double x) {
  if (!(x > 0.0)) throw std::domain_error("reduced_extremum_residual: requires x > 0");
  const double log_mag = x * std::log(x) + std::log(detail::abs_sin_pi(x));
  return std::abs(std::exp(log_mag) - std::exp(-kC));
}

}  // namespace psiroots
