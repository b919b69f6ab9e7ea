#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "psiroots/errors.hpp"
#include "psiroots/special_functions.hpp"
#include "psiroots/summation.hpp"

namespace psiroots {

enum class ZeroFamily { Psi, PsiG };

enum class ApproxForm { Arctan, Hermite };

inline const char* family_name(ZeroFamily f) {
  return f == ZeroFamily::Psi ? "psi" : "psig";
}

// One located zero. For family Psi, index 0 is the positive zero in (1,2)
// and index k >= 1 lies in (-k, -k+1). For family PsiG, indices 0 and 1 are
// the positive zeros in (2,3) and (1,2), and index k >= 2 lies in
// (-(k-1), -(k-2)).
struct ZeroRecord {
  ZeroFamily family;
  std::int64_t index;
  double value;
  double residual;  // |f(value)|
  double bracket_lo;
  double bracket_hi;
  int iterations;
};

namespace detail {

inline double pole_offset(double pole) {
  const double ulp = std::nextafter(std::abs(pole) + 1.0, std::numeric_limits<double>::infinity()) -
                     (std::abs(pole) + 1.0);
  return std::max(1e-9, 8.0 * ulp);
}

struct RootResult {
  double x;
  double fx;
  int iterations;
};

// Safeguarded Newton inside a sign-change bracket [a,b]: a Newton step that
// leaves the bracket (or fails to be finite) is replaced by bisection. Stops
// on |f| <= 1e-11 max(1, |f'|) or when the bracket narrows to ~2 ulps.
template <class F, class DF>
RootResult newton_bisect(F f, DF df, double a, double b, double fa, double fb,
                         double x0, const char* what, int max_iter = 100) {
  (void)fb;
  double x = std::clamp(x0, a, b);
  for (int it = 1; it <= max_iter; ++it) {
    double fx = f(x);
    const double dfx = df(x);
    if (std::abs(fx) <= 1e-11 * std::max(1.0, std::abs(dfx))) {
      // one polishing step: quadratic convergence puts the root at the
      // few-ulp level once the residual tolerance already holds
      const double polished = x - fx / dfx;
      if (std::isfinite(polished) && polished > a && polished < b) {
        const double fp = f(polished);
        if (std::abs(fp) <= std::abs(fx)) {
          x = polished;
          fx = fp;
        }
      }
      return {x, fx, it};
    }
    if ((fa < 0.0) == (fx < 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double width = b - a;
    if (width <= 2.0 * std::abs(a) * std::numeric_limits<double>::epsilon()) {
      return {x, fx, it};
    }
    double next = x - fx / dfx;
    if (!std::isfinite(next) || next <= a || next >= b) {
      next = a + 0.5 * width;
    }
    x = next;
  }
  throw iteration_error(std::string(what) + ": no convergence in " +
                        std::to_string(max_iter) + " iterations");
}

}  // namespace detail

inline std::pair<double, double> psi_zero_bracket(std::int64_t k) {
  if (k == 0) return {1.0, 2.0};
  const double lo_pole = -static_cast<double>(k);
  const double hi_pole = lo_pole + 1.0;
  return {lo_pole + detail::pole_offset(lo_pole), hi_pole - detail::pole_offset(hi_pole)};
}

inline std::pair<double, double> psi_g_zero_bracket(std::int64_t k) {
  if (k == 0) return {2.0, 3.0};
  if (k == 1) return {1.0, 2.0};
  const double lo_pole = -static_cast<double>(k - 1);
  const double hi_pole = lo_pole + 1.0;
  return {lo_pole + detail::pole_offset(lo_pole), hi_pole - detail::pole_offset(hi_pole)};
}

// Hermite-style one-term asymptotic, alpha_k ~ -k + 1/log k, and the
// sharper arctan form derived from the reflection formula.
inline double approx_psi_zero(std::int64_t k, ApproxForm form) {
  if (k < 2) throw std::domain_error("approx_psi_zero: requires k >= 2");
  const double kk = static_cast<double>(k);
  const double den = std::log(kk) - 0.5 / kk;
  if (form == ApproxForm::Hermite) return -kk + 1.0 / std::log(kk);
  return -kk + std::atan(kPi / den) / kPi;
}

// Same construction for psi_G. The record index k maps to the bounding
// integer n = k - 1 (beta_k lies in (-n, -n+1) for k >= 2).
inline double approx_psi_g_zero(std::int64_t k, ApproxForm form) {
  if (k < 4) throw std::domain_error("approx_psi_g_zero: requires k >= 4");
  const double n = static_cast<double>(k - 1);
  const double den = std::log(n) - 1.0 - kLog2Pi / (2.0 * n);
  if (den <= 0.0) {
    throw std::domain_error("approx_psi_g_zero: asymptotic invalid for k = " +
                            std::to_string(k));
  }
  if (form == ApproxForm::Hermite) return -n + 1.0 / den;
  return -n + std::atan(kPi / den) / kPi;
}

// k-th zero of psi, counted from the right. psi is strictly increasing
// between consecutive poles (trigamma > 0), so each bracket holds exactly
// one simple zero.
inline ZeroRecord find_psi_zero(std::int64_t k) {
  if (k < 0) throw std::domain_error("find_psi_zero: requires k >= 0");
  const auto [lo, hi] = psi_zero_bracket(k);
  const double flo = digamma(lo);
  const double fhi = digamma(hi);
  if (!(flo < 0.0) || !(fhi > 0.0)) {
    throw no_sign_change_error("find_psi_zero: no sign change in bracket of index " +
                               std::to_string(k));
  }
  double guess;
  if (k == 0) {
    guess = 1.4616;
  } else if (k == 1) {
    guess = -0.5;
  } else {
    const double margin = 0.05 * (hi - lo);
    guess = std::clamp(-static_cast<double>(k) + 1.0 / std::log(static_cast<double>(k)),
                       lo + margin, hi - margin);
  }
  const auto r = detail::newton_bisect([](double x) { return digamma(x); },
                                       [](double x) { return trigamma(x); },
                                       lo, hi, flo, fhi, guess, "find_psi_zero");
  return {ZeroFamily::Psi, k, r.x, std::abs(r.fx), lo, hi, r.iterations};
}

// k-th zero of psi_G. psi_G is not monotone between poles, so a sign change
// is located by sampling the bracket (geometric offsets from each end plus
// the midpoint); the refined root comes from safeguarded Newton inside the
// sampled sign-change interval.
inline ZeroRecord find_psi_g_zero(std::int64_t k) {
  if (k < 0) throw std::domain_error("find_psi_g_zero: requires k >= 0");
  const auto [lo, hi] = psi_g_zero_bracket(k);

  std::vector<double> xs;
  xs.push_back(lo);
  for (int j = 1; j <= 8; ++j) {
    const double off = std::pow(10.0, -j);
    if (lo + off < hi) xs.push_back(lo + off);
    if (hi - off > lo) xs.push_back(hi - off);
  }
  xs.push_back(0.5 * (lo + hi));
  xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = psi_g(xs[i]);

  std::size_t hit = xs.size();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if ((fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
      hit = i;
      break;
    }
  }
  if (hit == xs.size()) {
    std::string msg = "find_psi_g_zero: no sign change for index " + std::to_string(k) + "; samples:";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      msg += " f(" + std::to_string(xs[i]) + ")=" + std::to_string(fs[i]);
    }
    throw no_sign_change_error(msg);
  }

  const double a = xs[hit], b = xs[hit + 1];
  const auto r = detail::newton_bisect([](double x) { return psi_g(x); },
                                       [](double x) { return psi_g_prime(x); },
                                       a, b, fs[hit], fs[hit + 1], 0.5 * (a + b),
                                       "find_psi_g_zero");
  return {ZeroFamily::PsiG, k, r.x, std::abs(r.fx), lo, hi, r.iterations};
}

inline ZeroRecord find_zero(ZeroFamily family, std::int64_t k) {
  return family == ZeroFamily::Psi ? find_psi_zero(k) : find_psi_g_zero(k);
}

// Records for k = 0..k_max, optionally computed in parallel. Output is
// index-ordered and bitwise independent of the thread count.
inline std::vector<ZeroRecord> zero_table(ZeroFamily family, std::int64_t k_max,
                                          unsigned threads = default_threads()) {
  if (k_max < 0) throw std::domain_error("zero_table: requires k_max >= 0");
  std::vector<ZeroRecord> out(static_cast<std::size_t>(k_max) + 1);
  parallel_for_index(k_max + 1, threads, [&](std::int64_t k) {
    try {
      out[static_cast<std::size_t>(k)] = find_zero(family, k);
    } catch (const std::exception& e) {
      throw iteration_error("zero_table(" + std::string(family_name(family)) +
                            "): index " + std::to_string(k) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace psiroots
