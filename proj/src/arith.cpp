#include "paucity/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paucity/errors.hpp"

namespace paucity {

namespace {
constexpr std::uint64_t kMaxSpfLimit = std::uint64_t{1} << 31;
}  // namespace

SpfTable::SpfTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 1) throw ValidationError("SpfTable: limit must be >= 1");
  if (limit > kMaxSpfLimit) {
    throw CapacityError("SpfTable: limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(kMaxSpfLimit));
  }
  spf_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  // Linear sieve: each composite is written exactly once, by its smallest prime.
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (p > spf_[i] || m > limit) break;
      spf_[m] = p;
    }
  }
}

Factorization SpfTable::factorize(std::uint64_t n) const {
  if (n < 1 || n > limit_) {
    throw ValidationError("factorize: " + std::to_string(n) + " outside [1, " +
                          std::to_string(limit_) + "]");
  }
  Factorization f;
  f.value = n;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

std::uint32_t omega(const Factorization& f) {
  return static_cast<std::uint32_t>(f.factors.size());
}

std::uint64_t tau(const Factorization& f) {
  std::uint64_t t = 1;
  for (const auto& pe : f.factors) t *= pe.exponent + 1;
  return t;
}

std::uint64_t phi(const Factorization& f) {
  std::uint64_t r = 1;
  for (const auto& pe : f.factors) {
    r *= pe.prime - 1;
    for (std::uint32_t k = 1; k < pe.exponent; ++k) r *= pe.prime;
  }
  return r;
}

bool in_A(const Factorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pe) { return pe.prime % 4 == 1; });
}

bool is_sum_two_squares(const Factorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pe) {
    return pe.prime % 4 != 3 || pe.exponent % 2 == 0;
  });
}

std::uint64_t divisor_chi4_sum(const Factorization& f) {
  std::uint64_t r = 1;
  for (const auto& pe : f.factors) {
    switch (pe.prime % 4) {
      case 1:
        r *= pe.exponent + 1;
        break;
      case 3:
        if (pe.exponent % 2 != 0) return 0;
        break;
      default:  // p = 2
        break;
    }
  }
  return r;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> ds{1};
  for (const auto& pe : f.factors) {
    const std::size_t base = ds.size();
    std::uint64_t pk = 1;
    for (std::uint32_t k = 1; k <= pe.exponent; ++k) {
      pk *= pe.prime;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::uint64_t isqrt(std::uint64_t n) {
  constexpr std::uint64_t kMaxRoot = 0xFFFFFFFFull;
  auto r = std::min(kMaxRoot, static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n))));
  while (r * r > n) --r;
  while (r < kMaxRoot && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n;
}

}  // namespace paucity
