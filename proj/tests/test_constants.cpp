#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "paucity/constants.hpp"
#include "paucity/errors.hpp"
#include "paucity/sieve.hpp"

using namespace paucity;

namespace {
constexpr long double kPi = 3.14159265358979323846264338327950288L;
}

TEST(Catalan, RequestedAccuracy) {
  const long double ref = oracle::catalan_ramanujan();
  for (long double eps : {1e-3L, 1e-6L, 1e-10L, 1e-13L}) {
    const auto g = catalan(eps);
    EXPECT_LE(std::fabs(g.value - ref), eps) << double(eps);
    EXPECT_GT(g.error_bound, 0);
    EXPECT_LE(g.error_bound, eps);
    EXPECT_FALSE(g.truncated);
  }
  EXPECT_NEAR(double(catalan(1e-3L).value), 0.915, 1e-3);
  EXPECT_NEAR(double(catalan(1e-10L).value), 0.9159655941, 1e-10);
}

TEST(Catalan, ClampedRequestIsFlagged) {
  const auto g = catalan(1e-20L);
  EXPECT_TRUE(g.truncated);
  EXPECT_NEAR(double(g.value), double(oracle::catalan_ramanujan()), 2e-15);
}

TEST(Catalan, PartialSumsBracket) {
  EXPECT_EQ(catalan_partial_sum(0), 1.0L);
  const long double g = oracle::catalan_ramanujan();
  for (std::uint64_t k = 0; k < 200; ++k) {
    const long double s = catalan_partial_sum(k);
    if (k % 2 == 0) EXPECT_GT(s, g);
    else EXPECT_LT(s, g);
    EXPECT_NEAR(double(s), double(oracle::catalan_forward(k + 1)), 1e-15);
  }
}

TEST(Catalan, IndependentSeriesAgree) {
  // forward summation of 10^6 pairs against the fast-converging series
  const long double slow = oracle::catalan_forward(2'000'000);
  EXPECT_NEAR(double(slow), double(oracle::catalan_ramanujan()), 1e-12);
}

TEST(LandauRamanujan, PublishedDigits) {
  const auto k = landau_ramanujan(10'000'000);
  EXPECT_NEAR(double(k.value), 0.764223653, 1e-6);
  EXPECT_GT(k.error_bound, 0);
}

TEST(LandauRamanujan, TwoProductFormsAgree) {
  for (std::uint64_t P : {1000ull, 100'000ull, 10'000'000ull}) {
    const auto a = landau_ramanujan(P);
    const auto b = landau_ramanujan_mod3(P);
    EXPECT_LE(std::fabs(a.value - b.value), a.error_bound + b.error_bound) << P;
    // the p = 1 mod 4 form only drops as P grows, the other only rises
    EXPECT_LE(a.value - a.error_bound, b.value + b.error_bound);
  }
}

TEST(LandauRamanujan, NestedTails) {
  const auto lo = landau_ramanujan(1000);
  const auto hi = landau_ramanujan(100'000);
  EXPECT_LT(std::fabs(lo.value - hi.value), std::max(lo.error_bound, hi.error_bound));
  EXPECT_GE(lo.value, hi.value);
  EXPECT_THROW(landau_ramanujan(999), ValidationError);
}

TEST(MainTerms, Constants) {
  const long double G = catalan(1e-15L).value;
  const long double x = 1e6L, L = std::log(x);
  EXPECT_NEAR(double(predicted_main_term(Statistic::S01, x)), 5e5, 1e-6);
  EXPECT_NEAR(double(predicted_main_term(Statistic::S02, x)), double(12 * G / (kPi * kPi) * x / L),
              1e-6);
  EXPECT_NEAR(double(predicted_main_term(Statistic::S11, x)), double((kPi / 2 + 2.25L) * x / L),
              1e-6);
  EXPECT_NEAR(double(predicted_main_term(Statistic::S22, x) / predicted_main_term(Statistic::M2, x)),
              2.0, 1e-15);
  EXPECT_NEAR(double(predicted_main_term(Statistic::R2Cube, x)), double(4 * kPi * x / (L * L)), 1e-6);
  EXPECT_NEAR(double(predicted_main_term(Statistic::Supp2, x)), double(kPi / 2 * x / (L * L)), 1e-6);
  EXPECT_NEAR(double(predicted_main_term(Statistic::Lemma31, x)), double(L / kPi), 1e-12);
  EXPECT_NEAR(double(predicted_main_term(Statistic::Lemma32, x)),
              double(12 * G / (kPi * kPi * kPi) * L), 1e-12);
  const long double K = landau_ramanujan(10'000'000).value;
  EXPECT_NEAR(double(predicted_main_term(Statistic::CountA, x) * predicted_main_term(Statistic::LandauB, x)),
              double(x * x / (4 * L)), 1e-3);
  EXPECT_NEAR(double(predicted_main_term(Statistic::LandauB, x)), double(K * x / std::sqrt(L)), 1e-6);
}

TEST(MainTerms, Errors) {
  EXPECT_THROW(predicted_main_term(Statistic::S01, 2), ValidationError);
  EXPECT_THROW(predicted_main_term(Statistic::S12, 100), ValidationError);
  EXPECT_THROW(predicted_main_term(Statistic::S00, 100), ValidationError);
  EXPECT_FALSE(main_term_model(Statistic::Dispersion).constant.has_value());
}

TEST(MainTerms, Normalization) {
  const long double x = 1e5L, L = std::log(x);
  EXPECT_NEAR(double(normalize(Statistic::S22, 1000, x)), double(1000 * L * L / x), 1e-12);
  EXPECT_NEAR(double(normalize(Statistic::S00, 3e5L, x)), double(4 * 3e5L / x - L), 1e-12);
  for (Statistic s : all_statistics()) {
    if (s == Statistic::S00) continue;
    EXPECT_NEAR(double(normalize(s, 7 * main_term_scale(s, x), x)), 7.0, 1e-12) << to_string(s);
  }
}

TEST(SieveDensity, SmallValues) {
  EXPECT_NEAR(double(sieve_density_product(4)), 2.0 / 9, 1e-18);
  EXPECT_NEAR(double(sieve_density_product(6)), 8.0 / 75, 1e-18);
  EXPECT_EQ(sieve_density_product(3), 1.0L);
  EXPECT_EQ(sieve_density_product(5), sieve_density_product(4));
}

TEST(SieveDensity, CubicLogScaling) {
  const auto primes = sieve_primes(100'000);
  long double lo = 1e9, hi = 0;
  for (long double z : {1e3L, 1e4L, 1e5L}) {
    const long double v = sieve_density_product(z, primes) * std::pow(std::log(z), 3);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_LT((hi - lo) / lo, 0.05);
}
