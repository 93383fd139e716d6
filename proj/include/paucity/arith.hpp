#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace paucity {

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Exact prime decomposition of a positive integer. `factors` is sorted by
/// strictly increasing prime; n = 1 has no factors.
struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
};

/// Smallest-prime-factor table over [0, limit]; entries 0 and 1 are unused.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

  /// Throws ValidationError unless 1 <= n <= limit.
  Factorization factorize(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

/// Non-principal character mod 4.
constexpr int chi4(std::uint64_t n) {
  if (n % 2 == 0) return 0;
  return n % 4 == 1 ? 1 : -1;
}

std::uint32_t omega(const Factorization& f);
std::uint64_t tau(const Factorization& f);
std::uint64_t phi(const Factorization& f);

/// Every prime factor is 1 mod 4 (true for n = 1).
bool in_A(const Factorization& f);

/// Primes 3 mod 4 occur to even powers only; counts squares such as 9.
bool is_sum_two_squares(const Factorization& f);

/// Sum of chi4(d) over d | n, assembled from the local factors.
std::uint64_t divisor_chi4_sum(const Factorization& f);

/// All positive divisors in ascending order.
std::vector<std::uint64_t> divisors(const Factorization& f);

std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n);

}  // namespace paucity
