#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psiroots/constants.hpp"
#include "psiroots/errors.hpp"
#include "psiroots/summation.hpp"
#include "psiroots/zeros.hpp"

namespace psiroots {

// The six closed-form zero-sum identities. Quad/Quartic name the term
// function (1/x^2, 1/x^4); QuadShift is 1/(x^2 - x), QuadMinus1 is
// 1/(x^2 - 1).
enum class IdentityId {
  PsiQuadShift,
  PsiQuad,
  PsiQuadMinus1,
  PsiQuartic,
  PsiGQuad,
  PsiGQuartic,
};

inline constexpr IdentityId kAllIdentities[6] = {
    IdentityId::PsiQuadShift, IdentityId::PsiQuad,  IdentityId::PsiQuadMinus1,
    IdentityId::PsiQuartic,   IdentityId::PsiGQuad, IdentityId::PsiGQuartic};

inline const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::PsiQuadShift: return "psi-quad-shift";
    case IdentityId::PsiQuad: return "psi-quad";
    case IdentityId::PsiQuadMinus1: return "psi-quad-minus1";
    case IdentityId::PsiQuartic: return "psi-quartic";
    case IdentityId::PsiGQuad: return "psig-quad";
    case IdentityId::PsiGQuartic: return "psig-quartic";
  }
  return "?";
}

inline ZeroFamily identity_family(IdentityId id) {
  return (id == IdentityId::PsiGQuad || id == IdentityId::PsiGQuartic)
             ? ZeroFamily::PsiG
             : ZeroFamily::Psi;
}

inline double identity_term(IdentityId id, double x) {
  const double x2 = x * x;
  switch (id) {
    case IdentityId::PsiQuadShift: return 1.0 / (x2 - x);
    case IdentityId::PsiQuad: return 1.0 / x2;
    case IdentityId::PsiQuadMinus1: return 1.0 / (x2 - 1.0);
    case IdentityId::PsiQuartic: return 1.0 / (x2 * x2);
    case IdentityId::PsiGQuad: return 1.0 / x2;
    case IdentityId::PsiGQuartic: return 1.0 / (x2 * x2);
  }
  return 0.0;
}

// Right-hand sides, assembled from the shared constants only.
inline double closed_form(IdentityId id) {
  const double g = kGamma;
  const double pi2 = kPi * kPi;
  const double L = kLog2Pi;
  switch (id) {
    case IdentityId::PsiQuadShift:
      return g + pi2 / (6.0 * g);
    case IdentityId::PsiQuad:
      return g * g + pi2 / 2.0;
    case IdentityId::PsiQuadMinus1:
      return 0.5 * g + pi2 / (12.0 * g) - 1.0;
    case IdentityId::PsiQuartic:
      return g * g * g * g + 2.0 * g * g * pi2 / 3.0 + pi2 * pi2 / 9.0 +
             4.0 * g * kZeta3;
    case IdentityId::PsiGQuad:
      return 9.0 / 4.0 + pi2 / 2.0 + g * (1.0 + g + L) - 0.5 * L + 0.25 * L * L;
    case IdentityId::PsiGQuartic:
      return 2.0 * kZeta3 * (L + 1.0) + g * g * g * g + pi2 * pi2 / 9.0 +
             pi2 / 6.0 * (L * L + 3.0) + 2.0 * g * g * g * (L + 1.0) +
             g / 6.0 *
                 (24.0 * kZeta3 + 3.0 + 4.0 * pi2 * (L + 1.0) +
                  3.0 * L * (L * L - L + 7.0)) +
             g * g / 6.0 * (9.0 * L * L + 6.0 * L + 4.0 * pi2 + 21.0) +
             (L * L * L * L - 4.0 * L * L * L + 22.0 * L * L - 36.0 * L + 49.0) / 16.0;
  }
  return 0.0;
}

struct TailEstimate {
  double value;  // estimated remainder sum_{k >= K} term(zero_k)
  double bound;  // upper bound on the true remainder magnitude
};

struct SeriesResult {
  IdentityId id;
  std::int64_t terms_used;
  double partial_sum;
  double tail_estimate;
  double tail_bound;
  double total;  // partial_sum + tail_estimate
  double closed_form;
  double abs_error;
  double rel_error;
};

namespace detail {

// Asymptotic surrogate for the k-th zero, used only in the tail region
// (k >= 50, far past the validity threshold of the arctan forms).
inline double surrogate_zero(ZeroFamily fam, std::int64_t k) {
  return fam == ZeroFamily::Psi ? approx_psi_zero(k, ApproxForm::Arctan)
                                : approx_psi_g_zero(k, ApproxForm::Arctan);
}

// Monotone envelope of |term| past the surrogate region. With s = 1 for the
// psi family and s = 2 for psi_G, |zero_k| >= k - s, so each term is
// dominated by the envelope below; the integral over [M, inf) closes the
// estimate. Integrands use m = k - s.
inline double envelope_integral(IdentityId id, double M) {
  const double s = identity_family(id) == ZeroFamily::Psi ? 1.0 : 2.0;
  const double m = M - s;
  switch (id) {
    case IdentityId::PsiQuadShift:
      // term <= 1/(m(m+1))
      return std::log1p(1.0 / m);
    case IdentityId::PsiQuad:
    case IdentityId::PsiGQuad:
      // term <= 1/m^2
      return 1.0 / m;
    case IdentityId::PsiQuadMinus1:
      // term <= 1/(m^2 - 1)
      return 0.5 * std::log((m + 1.0) / (m - 1.0));
    case IdentityId::PsiQuartic:
    case IdentityId::PsiGQuartic:
      // term <= 1/m^4
      return 1.0 / (3.0 * m * m * m);
  }
  return 0.0;
}

}  // namespace detail

// Remainder estimate for sum_{k >= K}: exact zeros are not used; the term
// function is summed over the arctan surrogate zeros for k = K..M with
// M = max(10^6, 100 K), plus the envelope integral over [M, inf). The bound
// adds 5% headroom for surrogate drift, which dwarfs the observed error.
inline TailEstimate tail_estimate_with_bound(IdentityId id, std::int64_t K,
                                             unsigned threads = default_threads()) {
  if (K < 50) {
    throw std::domain_error("tail_estimate: surrogate tail requires K >= 50");
  }
  const std::int64_t M = std::max<std::int64_t>(1000000, 100 * K);
  const ZeroFamily fam = identity_family(id);
  const double s = sum_indexed(K, M + 1, threads, [&](std::int64_t k) {
    return identity_term(id, detail::surrogate_zero(fam, k));
  });
  const double value = s + detail::envelope_integral(id, static_cast<double>(M));
  return {value, 1.05 * value};
}

inline double tail_estimate(IdentityId id, std::int64_t K,
                            unsigned threads = default_threads()) {
  return tail_estimate_with_bound(id, K, threads).value;
}

// sum_{k=0}^{K-1} term(zero_k) over precomputed zeros, compensated, in
// ascending k.
inline double partial_sum(IdentityId id, std::int64_t K,
                          std::span<const ZeroRecord> zeros) {
  if (K < 1) throw std::domain_error("partial_sum: requires K >= 1");
  if (std::cmp_less(zeros.size(), K)) {
    throw std::domain_error("partial_sum: needs zeros 0.." + std::to_string(K - 1));
  }
  CompensatedSum s;
  for (std::int64_t k = 0; k < K; ++k) {
    s.add(identity_term(id, zeros[static_cast<std::size_t>(k)].value));
  }
  return s.value();
}

inline double partial_sum(IdentityId id, std::int64_t K,
                          unsigned threads = default_threads()) {
  const auto zeros = zero_table(identity_family(id), K - 1, threads);
  return partial_sum(id, K, zeros);
}

inline SeriesResult verify_identity(IdentityId id, std::int64_t K,
                                    std::span<const ZeroRecord> zeros,
                                    unsigned threads = default_threads()) {
  if (K < 50) throw std::domain_error("verify_identity: requires K >= 50");
  const double ps = partial_sum(id, K, zeros);
  const TailEstimate tail = tail_estimate_with_bound(id, K, threads);
  const double total = ps + tail.value;
  const double cf = closed_form(id);
  const double abs_err = std::abs(total - cf);
  return {id, K, ps, tail.value, tail.bound, total, cf, abs_err, abs_err / std::abs(cf)};
}

inline SeriesResult verify_identity(IdentityId id, std::int64_t K,
                                    unsigned threads = default_threads()) {
  const auto zeros = zero_table(identity_family(id), K - 1, threads);
  return verify_identity(id, K, zeros, threads);
}

namespace detail {

// Truncated genus-1 product over the first K zeros, evaluated as
// sum of log|1 - z/zero| + z/zero plus the exponential prefactor, with the
// sign tracked separately so K ~ 10^4 factors cannot under/overflow.
inline double weierstrass_product(double z, std::int64_t K,
                                  std::span<const ZeroRecord> zeros,
                                  double prefactor_rate, double front_sign,
                                  const char* what) {
  if (!(std::abs(z) <= 50.0)) {
    throw std::domain_error(std::string(what) + ": requires |z| <= 50");
  }
  if (std::cmp_less(zeros.size(), K)) {
    throw std::domain_error(std::string(what) + ": needs zeros 0.." +
                            std::to_string(K - 1));
  }
  CompensatedSum logmag(prefactor_rate * z);
  double sign = front_sign;
  for (std::int64_t k = 0; k < K; ++k) {
    const double a = zeros[static_cast<std::size_t>(k)].value;
    if (std::abs(z - a) <= 1e-6) {
      throw degenerate_error(std::string(what) + ": z coincides with zero " +
                             std::to_string(k));
    }
    const double t = 1.0 - z / a;
    if (t < 0.0) sign = -sign;
    logmag.add(std::log(std::abs(t)) + z / a);
  }
  return sign * std::exp(logmag.value());
}

}  // namespace detail

// Truncation of  psi(z)/Gamma(z) = -e^{2 gamma z} prod (1 - z/alpha_k) e^{z/alpha_k}.
inline double weierstrass_psi(double z, std::int64_t K,
                              std::span<const ZeroRecord> zeros) {
  return detail::weierstrass_product(z, K, zeros, 2.0 * kGamma, -1.0,
                                     "weierstrass_psi");
}

inline double weierstrass_psi(double z, std::int64_t K,
                              unsigned threads = default_threads()) {
  const auto zeros = zero_table(ZeroFamily::Psi, K > 0 ? K - 1 : 0, threads);
  return weierstrass_psi(z, K, zeros);
}

// Truncation of  psi_G(z)/Gamma(z) = e^{(2 gamma + L/2 - 1/2) z} prod (1 - z/beta_k) e^{z/beta_k}.
inline double weierstrass_psi_g(double z, std::int64_t K,
                                std::span<const ZeroRecord> zeros) {
  return detail::weierstrass_product(z, K, zeros, 2.0 * kGamma + 0.5 * kLog2Pi - 0.5,
                                     1.0, "weierstrass_psi_g");
}

inline double weierstrass_psi_g(double z, std::int64_t K,
                                unsigned threads = default_threads()) {
  const auto zeros = zero_table(ZeroFamily::PsiG, K > 0 ? K - 1 : 0, threads);
  return weierstrass_psi_g(z, K, zeros);
}

// Residual of the log-derivative relation
//   psi'(z)/psi(z) - psi(z) = 2 gamma - z sum_k 1/(alpha_k^2 - alpha_k z),
// with the same surrogate treatment for the truncated sum's tail.
inline double check_logderiv_relation(double z, std::int64_t K,
                                      std::span<const ZeroRecord> zeros,
                                      unsigned threads = default_threads()) {
  if (K < 50) throw std::domain_error("check_logderiv_relation: requires K >= 50");
  if (std::cmp_less(zeros.size(), K)) {
    throw std::domain_error("check_logderiv_relation: needs zeros 0.." +
                            std::to_string(K - 1));
  }
  const double psi_z = digamma(z);
  if (std::abs(psi_z) < 1e-8) {
    throw degenerate_error("check_logderiv_relation: psi(z) within 1e-8 of 0");
  }
  CompensatedSum s;
  for (std::int64_t k = 0; k < K; ++k) {
    const double a = zeros[static_cast<std::size_t>(k)].value;
    if (std::abs(z - a) <= 1e-6) {
      throw degenerate_error("check_logderiv_relation: z coincides with zero " +
                             std::to_string(k));
    }
    s.add(1.0 / (a * (a - z)));
  }
  const std::int64_t M = std::max<std::int64_t>(1000000, 100 * K);
  const double tail = sum_indexed(K, M + 1, threads, [&](std::int64_t k) {
    const double a = detail::surrogate_zero(ZeroFamily::Psi, k);
    return 1.0 / (a * (a - z));
  });
  // integral of the envelope 1/((k-1)(k-1+z)) over [M, inf)
  const double m = static_cast<double>(M) - 1.0;
  const double integral = std::abs(z) < 1e-12 ? 1.0 / m : std::log1p(z / m) / z;
  const double total = s.value() + tail + integral;
  const double lhs = trigamma(z) / psi_z - psi_z;
  return std::abs(lhs - (2.0 * kGamma - z * total));
}

inline double check_logderiv_relation(double z, std::int64_t K,
                                      unsigned threads = default_threads()) {
  const auto zeros = zero_table(ZeroFamily::Psi, K - 1, threads);
  return check_logderiv_relation(z, K, zeros, threads);
}

}  // namespace psiroots
