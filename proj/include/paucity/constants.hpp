#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "paucity/sieve.hpp"
#include "paucity/statistic.hpp"

namespace paucity {

struct ConstantValue {
  std::string name;
  long double value = 0;
  long double error_bound = 0;
  std::string method;
  /// Set when the requested accuracy was finer than the method can certify.
  bool truncated = false;
};

inline constexpr long double kMinCatalanEps = 1e-15L;

/// Catalan's constant from the alternating series sum (-1)^k/(2k+1)^2,
/// grouped in pairs. Requests below kMinCatalanEps are clamped and flagged.
ConstantValue catalan(long double eps);

/// Partial sum of the alternating series over k = 0..k_max.
long double catalan_partial_sum(std::uint64_t k_max);

/// Landau-Ramanujan K = pi/4 * prod_{p = 1 (4), p <= P} (1 - p^-2)^(1/2).
/// The omitted tail only lowers the product; error_bound covers it.
ConstantValue landau_ramanujan(std::uint64_t prime_limit);

/// Same constant from K = 2^(-1/2) * prod_{p = 3 (4), p <= P} (1 - p^-2)^(-1/2).
ConstantValue landau_ramanujan_mod3(std::uint64_t prime_limit);

/// Asymptotic shape of a statistic: raw ~ constant * scale(x).
struct MainTermModel {
  std::optional<long double> constant;
  std::string scale_name;  // "x", "x/log x", ...
};

MainTermModel main_term_model(Statistic s);
long double main_term_scale(Statistic s, long double x);

/// Raw value divided by the scale, except S00 which reports 4 S00/x - log x.
long double normalize(Statistic s, long double raw, long double x);

/// Leading term only. ValidationError for x < 3 or a statistic without one.
long double predicted_main_term(Statistic s, long double x);

/// V(z) = prod over odd primes p < z of (1 - (3p - 2)/p^2).
long double sieve_density_product(long double z, const PrimeTable& primes);
long double sieve_density_product(long double z);

}  // namespace paucity
