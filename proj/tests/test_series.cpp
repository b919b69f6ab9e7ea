#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "psiroots/series.hpp"
#include "oracles.hpp"

using namespace psiroots;

namespace {

const std::vector<ZeroRecord>& psi_table() {
  static const auto t = zero_table(ZeroFamily::Psi, 19999);
  return t;
}

const std::vector<ZeroRecord>& psig_table() {
  static const auto t = zero_table(ZeroFamily::PsiG, 19999);
  return t;
}

const std::vector<ZeroRecord>& table_for(IdentityId id) {
  return identity_family(id) == ZeroFamily::Psi ? psi_table() : psig_table();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("closed forms match the frozen references") {
  CHECK(rel_diff(closed_form(IdentityId::PsiQuadShift), ref::psi_quad_shift) <= 5e-15);
  CHECK(rel_diff(closed_form(IdentityId::PsiQuad), ref::psi_quad) <= 5e-15);
  CHECK(rel_diff(closed_form(IdentityId::PsiQuadMinus1), ref::psi_quad_minus1) <= 5e-15);
  CHECK(rel_diff(closed_form(IdentityId::PsiQuartic), ref::psi_quartic) <= 5e-15);
  CHECK(rel_diff(closed_form(IdentityId::PsiGQuad), ref::psig_quad) <= 5e-15);
  CHECK(rel_diff(closed_form(IdentityId::PsiGQuartic), ref::psig_quartic) <= 5e-15);
}

TEST_CASE("long quartic closed form pinned against a regrouped transcription") {
  // same expression entered as an explicit polynomial in gamma
  const double g = kGamma;
  const double L = kLog2Pi;
  const double pi2 = kPi * kPi;
  const double z3 = kZeta3;
  const double c0 = 2.0 * z3 * (L + 1.0) + pi2 * pi2 / 9.0 + pi2 / 6.0 * (L * L + 3.0) +
                    (L * L * L * L - 4.0 * L * L * L + 22.0 * L * L - 36.0 * L + 49.0) / 16.0;
  const double c1 = 4.0 * z3 + 0.5 + 2.0 / 3.0 * pi2 * (L + 1.0) +
                    0.5 * L * (L * L - L + 7.0);
  const double c2 = 1.5 * L * L + L + 2.0 / 3.0 * pi2 + 3.5;
  const double c3 = 2.0 * (L + 1.0);
  const double regrouped = c0 + g * (c1 + g * (c2 + g * (c3 + g)));
  CHECK(rel_diff(closed_form(IdentityId::PsiGQuartic), regrouped) <= 1e-15);
}

TEST_CASE("identity metadata") {
  CHECK(identity_family(IdentityId::PsiQuad) == ZeroFamily::Psi);
  CHECK(identity_family(IdentityId::PsiGQuartic) == ZeroFamily::PsiG);
  CHECK(identity_term(IdentityId::PsiQuadShift, 2.0) == doctest::Approx(0.5));
  CHECK(identity_term(IdentityId::PsiQuadMinus1, 3.0) == doctest::Approx(0.125));
  CHECK(identity_term(IdentityId::PsiQuartic, 2.0) == doctest::Approx(0.0625));
}

TEST_CASE("partial sums") {
  const double a0 = psi_table()[0].value;
  CHECK(partial_sum(IdentityId::PsiQuad, 1, psi_table()) ==
        doctest::Approx(1.0 / (a0 * a0)).epsilon(1e-15));

  // all terms positive, so a truncation underestimates the closed form
  const double s = partial_sum(IdentityId::PsiQuad, 10000, psi_table());
  CHECK(s < closed_form(IdentityId::PsiQuad));

  // compensated sum agrees with a plain oracle sum at small K
  std::vector<double> terms;
  for (int k = 0; k < 100; ++k) {
    terms.push_back(identity_term(IdentityId::PsiQuartic, psi_table()[k].value));
  }
  CHECK(rel_diff(partial_sum(IdentityId::PsiQuartic, 100, psi_table()),
                 oracle::naive_sum(terms)) <= 1e-13);

  CHECK_THROWS_AS(partial_sum(IdentityId::PsiQuad, 0, psi_table()), std::domain_error);
  CHECK_THROWS_AS(partial_sum(IdentityId::PsiQuad, 30000, psi_table()), std::domain_error);
}

TEST_CASE("term positivity for the pure power sums") {
  for (IdentityId id : {IdentityId::PsiQuad, IdentityId::PsiQuartic,
                        IdentityId::PsiGQuad, IdentityId::PsiGQuartic}) {
    const auto& zeros = table_for(id);
    for (int k = 0; k < 2000; ++k) {
      CHECK(identity_term(id, zeros[k].value) > 0.0);
    }
  }
}

TEST_CASE("tail estimates") {
  CHECK(tail_estimate(IdentityId::PsiQuartic, 1000) < 1e-8);
  const double t1 = tail_estimate(IdentityId::PsiQuad, 1000);
  CHECK(t1 > 5e-4);
  CHECK(t1 < 5e-3);
  const double t2 = tail_estimate(IdentityId::PsiQuad, 2000);
  CHECK(t1 / t2 > 1.8);
  CHECK(t1 / t2 < 2.2);
  CHECK_THROWS_AS(tail_estimate(IdentityId::PsiQuad, 49), std::domain_error);
}

TEST_CASE("tail bound dominates a deep surrogate remainder") {
  const auto te = tail_estimate_with_bound(IdentityId::PsiQuartic, 1000);
  CompensatedSum proxy;
  for (std::int64_t k = 1000; k <= 10000000; ++k) {
    proxy.add(identity_term(IdentityId::PsiQuartic,
                            approx_psi_zero(k, ApproxForm::Arctan)));
  }
  CHECK(std::abs(proxy.value()) <= te.bound);
  CHECK(te.value <= te.bound);
}

TEST_CASE("quartic truncation plus tail lands on the closed form") {
  const double s = partial_sum(IdentityId::PsiQuartic, 100, psi_table());
  const double t = tail_estimate(IdentityId::PsiQuartic, 100);
  CHECK(std::abs(s + t - closed_form(IdentityId::PsiQuartic)) <= 1e-6);
}

TEST_CASE("verify_identity meets the per-identity tolerances") {
  for (IdentityId id : kAllIdentities) {
    const auto r = verify_identity(id, 20000, table_for(id));
    CAPTURE(identity_name(id));
    const bool quartic = id == IdentityId::PsiQuartic || id == IdentityId::PsiGQuartic;
    CHECK(r.rel_error <= (quartic ? 1e-8 : 1e-5));
    CHECK(r.total == doctest::Approx(r.partial_sum + r.tail_estimate).epsilon(1e-15));
    CHECK(r.abs_error == doctest::Approx(std::abs(r.total - r.closed_form)).epsilon(1e-12));
    CHECK(r.terms_used == 20000);
  }
}

TEST_CASE("refinement: deeper truncation does not lose accuracy") {
  for (IdentityId id : kAllIdentities) {
    const auto coarse = verify_identity(id, 1000, table_for(id));
    const auto fine = verify_identity(id, 20000, table_for(id));
    CAPTURE(identity_name(id));
    CHECK(fine.abs_error <= coarse.abs_error + 1e-14);
  }
}

TEST_CASE("weierstrass product for psi") {
  CHECK(weierstrass_psi(0.0, 0, psi_table()) == -1.0);
  CHECK(weierstrass_psi(0.0, 5000, psi_table()) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(rel_diff(weierstrass_psi(1.0, 10000, psi_table()), -kGamma) <= 1e-3);
  CHECK(rel_diff(weierstrass_psi(0.5, 10000, psi_table()), ref::psi_ratio_05) <= 1e-3);
  // kernel-ratio oracle at several points
  for (double z : {0.25, 0.5, 1.5}) {
    const double kernel = digamma(z) * std::exp(-log_gamma(z));
    CHECK(rel_diff(weierstrass_psi(z, 10000, psi_table()), kernel) <= 1e-3);
  }
  CHECK_THROWS_AS(weierstrass_psi(ref::alpha0 + 1e-8, 100, psi_table()), degenerate_error);
  CHECK_THROWS_AS(weierstrass_psi(51.0, 100, psi_table()), std::domain_error);
}

TEST_CASE("weierstrass product for psi_G") {
  CHECK(weierstrass_psi_g(0.0, 0, psig_table()) == 1.0);
  CHECK(rel_diff(weierstrass_psi_g(1.0, 10000, psig_table()), ref::psi_g_1) <= 1e-3);
  CHECK(rel_diff(weierstrass_psi_g(0.5, 10000, psig_table()), ref::psig_ratio_05) <= 1e-3);
  for (double z : {0.25, 0.5, 1.5}) {
    const double kernel = psi_g(z) * std::exp(-log_gamma(z));
    CHECK(rel_diff(weierstrass_psi_g(z, 10000, psig_table()), kernel) <= 1e-3);
  }
}

TEST_CASE("product truncation error decreases in K") {
  for (double z : {0.25, 0.5, 1.5}) {
    const double kernel_psi = digamma(z) * std::exp(-log_gamma(z));
    const double kernel_psig = psi_g(z) * std::exp(-log_gamma(z));
    double prev_psi = 1e9, prev_psig = 1e9;
    for (std::int64_t K : {100, 1000, 10000}) {
      const double e = std::abs(weierstrass_psi(z, K, psi_table()) - kernel_psi);
      const double eg = std::abs(weierstrass_psi_g(z, K, psig_table()) - kernel_psig);
      CHECK(e < prev_psi);
      CHECK(eg < prev_psig);
      prev_psi = e;
      prev_psig = eg;
    }
  }
}

TEST_CASE("log-derivative relation residuals") {
  for (double z : {1.0, 0.5, 2.5}) {
    CHECK(check_logderiv_relation(z, 20000, psi_table()) <= 1e-4);
  }
  // z = 1 collapses to the shifted quadratic identity: same residual scale
  const double r1 = check_logderiv_relation(1.0, 20000, psi_table());
  const double direct = std::abs((kGamma - kPi * kPi / (6.0 * kGamma)) -
                                 (2.0 * kGamma - closed_form(IdentityId::PsiQuadShift)));
  CHECK(std::abs(r1 - direct) <= 1e-4);

  // psi(z) ~ 0 near the positive zero
  CHECK_THROWS_AS(check_logderiv_relation(ref::alpha0 + 1e-9, 200, psi_table()),
                  degenerate_error);
  // z coincides with a zero of the product
  CHECK_THROWS_AS(check_logderiv_relation(ref::alpha0 + 1e-7, 200, psi_table()),
                  degenerate_error);
  CHECK_THROWS_AS(check_logderiv_relation(0.5, 10, psi_table()), std::domain_error);
}
