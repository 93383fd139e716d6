#include "paucity/constants.hpp"

#include <cmath>
#include <cstdio>
#include <cfloat>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "paucity/errors.hpp"

namespace paucity {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr std::uint64_t kPredictionPrimeLimit = 10'000'000;

// Neumaier compensated accumulator.
struct CompensatedSum {
  long double sum = 0;
  long double carry = 0;
  void add(long double v) {
    const long double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) carry += (sum - t) + v;
    else carry += (v - t) + sum;
    sum = t;
  }
  long double value() const { return sum + carry; }
};

long double catalan_group(std::uint64_t j) {
  const long double a = 4.0L * j + 1, b = 4.0L * j + 3;
  return 1.0L / (a * a) - 1.0L / (b * b);
}

long double log_tail_bound(std::uint64_t prime_limit) {
  // sum_{p > P} -log(1 - p^-2) <= sum_{n > P} 1/(n^2 - 1) < 1/(P - 1)
  return 1.0L / static_cast<long double>(prime_limit - 1);
}

template <typename Compute>
ConstantValue cached(const std::string& key, Compute compute) {
  static std::mutex mu;
  static std::map<std::string, ConstantValue> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ConstantValue v = compute();
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(v)).first->second;
}

long double catalan_value() { return catalan(kMinCatalanEps).value; }
long double landau_value() { return landau_ramanujan(kPredictionPrimeLimit).value; }

}  // namespace

long double catalan_partial_sum(std::uint64_t k_max) {
  CompensatedSum s;
  for (std::uint64_t k = k_max + 1; k-- > 0;) {
    const long double d = 2.0L * k + 1;
    s.add((k % 2 == 0 ? 1.0L : -1.0L) / (d * d));
  }
  return s.value();
}

ConstantValue catalan(long double eps) {
  if (!(eps > 0)) throw ValidationError("catalan: eps must be positive");
  const bool truncated = eps < kMinCatalanEps;
  const long double target = truncated ? kMinCatalanEps : eps;
  char key[48];
  std::snprintf(key, sizeof key, "catalan:%.6Le", target);
  ConstantValue out = cached(key, [&] {
    // Midpoint of S_{2N-1} and S_{2N} is within half of the next term 1/(4N+1)^2.
    // Spend half of the budget on truncation and keep the rest for rounding.
    const long double n_real = (std::sqrt(1.0L / target) - 1.0L) / 4.0L;
    const auto groups = static_cast<std::uint64_t>(std::ceil(std::max(n_real, 1.0L)));
    CompensatedSum s;
    for (std::uint64_t j = groups; j-- > 0;) s.add(catalan_group(j));
    const long double next = 4.0L * groups + 1;
    const long double half_term = 0.5L / (next * next);
    ConstantValue v;
    v.name = "G";
    v.value = s.value() + half_term;
    v.error_bound = half_term + 8 * LDBL_EPSILON;
    v.method = "alternating series, " + std::to_string(groups) + " grouped pairs, midpoint";
    return v;
  });
  out.truncated = truncated;
  return out;
}

ConstantValue landau_ramanujan(std::uint64_t prime_limit) {
  if (prime_limit < 1000) throw ValidationError("landau_ramanujan: prime_limit must be >= 1000");
  return cached("K1:" + std::to_string(prime_limit), [&] {
    const PrimeTable primes = sieve_primes(prime_limit);
    CompensatedSum log_prod;
    for (std::uint64_t p : primes.primes()) {
      if (p % 4 != 1) continue;
      const long double pp = static_cast<long double>(p);
      log_prod.add(std::log1p(-1.0L / (pp * pp)));
    }
    const long double k = kPi / 4 * std::exp(log_prod.value() / 2);
    ConstantValue v;
    v.name = "K";
    v.value = k;
    v.error_bound = k * (-std::expm1(-log_tail_bound(prime_limit) / 2)) + 64 * LDBL_EPSILON;
    v.method = "Euler product over p = 1 mod 4 up to " + std::to_string(prime_limit);
    return v;
  });
}

ConstantValue landau_ramanujan_mod3(std::uint64_t prime_limit) {
  if (prime_limit < 1000) {
    throw ValidationError("landau_ramanujan_mod3: prime_limit must be >= 1000");
  }
  return cached("K3:" + std::to_string(prime_limit), [&] {
    const PrimeTable primes = sieve_primes(prime_limit);
    CompensatedSum log_prod;
    for (std::uint64_t p : primes.primes()) {
      if (p % 4 != 3) continue;
      const long double pp = static_cast<long double>(p);
      log_prod.add(-std::log1p(-1.0L / (pp * pp)));
    }
    const long double k = std::exp(log_prod.value() / 2) / std::sqrt(2.0L);
    ConstantValue v;
    v.name = "K_mod3";
    v.value = k;
    v.error_bound = k * std::expm1(log_tail_bound(prime_limit) / 2) + 64 * LDBL_EPSILON;
    v.method = "Euler product over p = 3 mod 4 up to " + std::to_string(prime_limit);
    return v;
  });
}

MainTermModel main_term_model(Statistic s) {
  const long double pi = kPi;
  switch (s) {
    case Statistic::S00: return {std::nullopt, "x"};
    case Statistic::S01: return {0.5L, "x"};
    case Statistic::S02: return {12 * catalan_value() / (pi * pi), "x/log x"};
    case Statistic::S11: return {pi / 2 + 9.0L / 4, "x/log x"};
    case Statistic::S12: return {std::nullopt, "x/log^2 x"};
    case Statistic::S22: return {2 * pi, "x/log^2 x"};
    case Statistic::M0: return {pi / 4, "x"};
    case Statistic::M1: return {pi / 2, "x/log x"};
    case Statistic::M2: return {pi, "x/log^2 x"};
    case Statistic::R2Cube: return {4 * pi, "x/log^2 x"};
    case Statistic::Supp1: return {pi / 2, "x/log x"};
    case Statistic::Supp2: return {pi / 2, "x/log^2 x"};
    case Statistic::LandauB: return {landau_value(), "x/sqrt(log x)"};
    case Statistic::CountA: return {1 / (4 * landau_value()), "x/sqrt(log x)"};
    case Statistic::Lemma31: return {1 / pi, "log x"};
    case Statistic::Lemma32: return {12 * catalan_value() / (pi * pi * pi), "log x"};
    case Statistic::Dispersion: return {std::nullopt, "x/log x"};
  }
  throw ValidationError("main_term_model: unknown statistic");
}

long double main_term_scale(Statistic s, long double x) {
  const long double lx = std::log(x);
  switch (s) {
    case Statistic::S00:
    case Statistic::S01:
    case Statistic::M0:
      return x;
    case Statistic::S02:
    case Statistic::S11:
    case Statistic::M1:
    case Statistic::Supp1:
    case Statistic::Dispersion:
      return x / lx;
    case Statistic::S12:
    case Statistic::S22:
    case Statistic::M2:
    case Statistic::R2Cube:
    case Statistic::Supp2:
      return x / (lx * lx);
    case Statistic::LandauB:
    case Statistic::CountA:
      return x / std::sqrt(lx);
    case Statistic::Lemma31:
    case Statistic::Lemma32:
      return lx;
  }
  throw ValidationError("main_term_scale: unknown statistic");
}

long double normalize(Statistic s, long double raw, long double x) {
  if (s == Statistic::S00) return 4 * raw / x - std::log(x);
  return raw / main_term_scale(s, x);
}

long double predicted_main_term(Statistic s, long double x) {
  if (!(x >= 3)) throw ValidationError("predicted_main_term: x must be >= 3");
  const MainTermModel m = main_term_model(s);
  if (!m.constant) {
    throw ValidationError("predicted_main_term: no main term for " + std::string(to_string(s)));
  }
  return *m.constant * main_term_scale(s, x);
}

long double sieve_density_product(long double z, const PrimeTable& primes) {
  if (!(z >= 3)) throw ValidationError("sieve_density_product: z must be >= 3");
  if (static_cast<long double>(primes.limit()) + 1 < z) {
    throw ValidationError("sieve_density_product: z beyond prime table");
  }
  long double v = 1;
  for (std::uint64_t p : primes.primes()) {
    const auto pp = static_cast<long double>(p);
    if (pp >= z) break;
    if (p == 2) continue;
    v *= 1 - (3 * pp - 2) / (pp * pp);
  }
  return v;
}

long double sieve_density_product(long double z) {
  if (!(z >= 3)) throw ValidationError("sieve_density_product: z must be >= 3");
  return sieve_density_product(z, sieve_primes(static_cast<std::uint64_t>(std::ceil(z))));
}

}  // namespace paucity
