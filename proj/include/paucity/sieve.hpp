#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace paucity {

class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<bool> membership);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t count() const { return primes_.size(); }
  bool contains(std::uint64_t n) const { return n <= limit_ && is_prime_[n]; }

 private:
  std::uint64_t limit_ = 0;
  std::vector<bool> is_prime_;
  std::vector<std::uint64_t> primes_;
};

/// Eratosthenes over [0, limit]. ValidationError for limit < 2, CapacityError
/// above the memory budget.
PrimeTable sieve_primes(std::uint64_t limit);

inline constexpr std::uint64_t kSieveLimitBudget = 10'000'000'000;
inline constexpr std::uint64_t kBlockSizeBudget = std::uint64_t{1} << 28;

/// validate() raises ValidationError for malformed values and CapacityError
/// past the budgets above.
struct SieveConfig {
  std::uint64_t limit = 1;
  std::uint64_t block_size = 1 << 16;
  unsigned thread_count = 1;

  void validate() const;
};

/// Per-n tallies over the half-open range [lo, hi). Index i holds n = lo + i.
///  r0_pair  ordered (a, b), a, b >= 1
///  r0_div   sum of chi4(d) over d | n
///  r1       ordered (a, p), p prime
///  r2       ordered (p, q), both prime
struct RepresentationBlock {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint16_t> r0_pair;
  std::vector<std::uint16_t> r0_div;
  std::vector<std::uint16_t> r1;
  std::vector<std::uint16_t> r2;

  std::size_t size() const { return static_cast<std::size_t>(hi - lo); }
};

/// Requires 1 <= lo < hi <= cfg.limit + 1 and primes.limit() >= isqrt(hi - 1).
/// Throws OverflowError if any tally exceeds 16 bits.
RepresentationBlock sieve_block(const SieveConfig& cfg, std::uint64_t lo, std::uint64_t hi,
                                const PrimeTable& primes);

/// uint32 -> uint16 with an OverflowError naming the first n that does not fit.
std::vector<std::uint16_t> narrow_tallies(const std::vector<std::uint32_t>& wide, std::uint64_t lo,
                                          const char* name);

using BlockSink = std::function<void(const RepresentationBlock&)>;

/// Covers [1, cfg.limit] with blocks of cfg.block_size, computed on
/// cfg.thread_count workers and handed to `sink` in ascending order.
void sieve_all(const SieveConfig& cfg, const PrimeTable& primes, const BlockSink& sink);
void sieve_all(const SieveConfig& cfg, const BlockSink& sink);

/// Raw dump: "PCTY", u32 version, u64 lo, u64 hi, then r0_pair, r0_div, r1, r2
/// as little-endian u16 arrays.
inline constexpr std::uint32_t kBlockDumpVersion = 1;
void write_block(std::ostream& out, const RepresentationBlock& block);
RepresentationBlock read_block(std::istream& in);

}  // namespace paucity
