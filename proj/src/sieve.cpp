#include "paucity/sieve.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include "paucity/arith.hpp"
#include "paucity/errors.hpp"

namespace paucity {

namespace {

constexpr std::uint64_t kMaxPrimeLimit = std::uint64_t{1} << 34;
constexpr std::uint32_t kTallyMax = std::numeric_limits<std::uint16_t>::max();

std::uint64_t ceil_sqrt(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n ? r : r + 1;
}


void put_u16(std::ostream& out, std::uint16_t v) {
  const std::array<char, 2> b{static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b.data(), b.size());
}

template <typename T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> b{};
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), b.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!in) throw ValidationError("read_block: truncated input");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint16_t> narrow_tallies(const std::vector<std::uint32_t>& wide, std::uint64_t lo,
                                  const char* name) {
  std::vector<std::uint16_t> out(wide.size());
  for (std::size_t i = 0; i < wide.size(); ++i) {
    if (wide[i] > kTallyMax) {
      throw OverflowError(std::string("sieve_block: ") + name + "(" + std::to_string(lo + i) +
                          ") = " + std::to_string(wide[i]) + " exceeds 16 bits");
    }
    out[i] = static_cast<std::uint16_t>(wide[i]);
  }
  return out;
}

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<bool> membership)
    : limit_(limit), is_prime_(std::move(membership)) {
  for (std::uint64_t n = 2; n <= limit_; ++n) {
    if (is_prime_[n]) primes_.push_back(n);
  }
}

PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw ValidationError("sieve_primes: limit must be >= 2");
  if (limit > kMaxPrimeLimit) {
    throw CapacityError("sieve_primes: limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(kMaxPrimeLimit));
  }
  std::vector<bool> is_prime(limit + 1, true);
  is_prime[0] = is_prime[1] = false;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (!is_prime[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) is_prime[m] = false;
  }
  return PrimeTable(limit, std::move(is_prime));
}

void SieveConfig::validate() const {
  if (limit < 1) throw ValidationError("SieveConfig: limit must be >= 1");
  if (block_size < 2) throw ValidationError("SieveConfig: block_size must be >= 2");
  if (thread_count < 1) throw ValidationError("SieveConfig: thread_count must be >= 1");
  if (limit > kSieveLimitBudget) {
    throw CapacityError("SieveConfig: limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(kSieveLimitBudget));
  }
  if (block_size > kBlockSizeBudget) {
    throw CapacityError("SieveConfig: block_size " + std::to_string(block_size) +
                        " exceeds budget " + std::to_string(kBlockSizeBudget));
  }
}

RepresentationBlock sieve_block(const SieveConfig& cfg, std::uint64_t lo, std::uint64_t hi,
                                const PrimeTable& primes) {
  if (lo < 1 || lo >= hi || hi > cfg.limit + 1) {
    throw ValidationError("sieve_block: bad range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + ")");
  }
  const std::uint64_t root = isqrt(hi - 1);
  if (primes.limit() < root) {
    throw ValidationError("sieve_block: prime table limit " + std::to_string(primes.limit()) +
                          " below sqrt bound " + std::to_string(root));
  }
  const std::size_t len = static_cast<std::size_t>(hi - lo);
  std::vector<std::uint32_t> r0(len, 0), r1(len, 0), r2(len, 0);

  for (std::uint64_t a = 1; a * a + 1 <= hi - 1; ++a) {
    const std::uint64_t a2 = a * a;
    const std::uint64_t b_min = lo > a2 + 1 ? ceil_sqrt(lo - a2) : 1;
    const std::uint64_t b_max = isqrt(hi - 1 - a2);
    const bool a_prime = primes.contains(a);
    for (std::uint64_t b = b_min; b <= b_max; ++b) {
      const std::size_t i = static_cast<std::size_t>(a2 + b * b - lo);
      ++r0[i];
      if (primes.contains(b)) {
        ++r1[i];
        if (a_prime) ++r2[i];
      }
    }
  }

  // Divisor-sum convention via segmented factorization, independent of the pair loop.
  std::vector<std::uint64_t> rest(len);
  std::vector<std::uint32_t> r0d(len, 1);
  for (std::size_t i = 0; i < len; ++i) rest[i] = lo + i;
  for (std::uint64_t p : primes.primes()) {
    if (p > root) break;
    const std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t m = first; m < hi; m += p) {
      const std::size_t i = static_cast<std::size_t>(m - lo);
      std::uint32_t e = 0;
      while (rest[i] % p == 0) {
        rest[i] /= p;
        ++e;
      }
      if (p % 4 == 1) {
        r0d[i] *= e + 1;
      } else if (p % 4 == 3 && e % 2 != 0) {
        r0d[i] = 0;
      }
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (rest[i] > 1) {
      if (rest[i] % 4 == 1) r0d[i] *= 2;
      else if (rest[i] % 4 == 3) r0d[i] = 0;
    }
  }

  RepresentationBlock block;
  block.lo = lo;
  block.hi = hi;
  block.r0_pair = narrow_tallies(r0, lo, "r0_pair");
  block.r0_div = narrow_tallies(r0d, lo, "r0_div");
  block.r1 = narrow_tallies(r1, lo, "r1");
  block.r2 = narrow_tallies(r2, lo, "r2");
  return block;
}

void sieve_all(const SieveConfig& cfg, const PrimeTable& primes, const BlockSink& sink) {
  cfg.validate();
  const std::uint64_t end = cfg.limit + 1;
  const std::uint64_t block_count = (end - 1 + cfg.block_size - 1) / cfg.block_size;
  const unsigned workers = cfg.thread_count;

  // Waves of `workers` blocks; each worker owns one slot, the sink sees slots in order.
  for (std::uint64_t wave = 0; wave < block_count; wave += workers) {
    const std::uint64_t n = std::min<std::uint64_t>(workers, block_count - wave);
    std::vector<RepresentationBlock> slots(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::uint64_t k) {
      try {
        const std::uint64_t lo = 1 + (wave + k) * cfg.block_size;
        const std::uint64_t hi = std::min(end, lo + cfg.block_size);
        slots[k] = sieve_block(cfg, lo, hi, primes);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    };
    if (n == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(n);
      for (std::uint64_t k = 0; k < n; ++k) pool.emplace_back(work, k);
    }
    for (std::uint64_t k = 0; k < n; ++k) {
      if (errors[k]) std::rethrow_exception(errors[k]);
      sink(slots[k]);
    }
  }
}

void sieve_all(const SieveConfig& cfg, const BlockSink& sink) {
  cfg.validate();
  const PrimeTable primes = sieve_primes(std::max<std::uint64_t>(2, isqrt(cfg.limit)));
  sieve_all(cfg, primes, sink);
}

void write_block(std::ostream& out, const RepresentationBlock& block) {
  out.write("PCTY", 4);
  put_le<std::uint32_t>(out, kBlockDumpVersion);
  put_le<std::uint64_t>(out, block.lo);
  put_le<std::uint64_t>(out, block.hi);
  for (const auto* arr : {&block.r0_pair, &block.r0_div, &block.r1, &block.r2}) {
    for (std::uint16_t v : *arr) put_u16(out, v);
  }
}

RepresentationBlock read_block(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || std::string(magic.data(), 4) != "PCTY") {
    throw ValidationError("read_block: bad magic");
  }
  const auto version = get_le<std::uint32_t>(in);
  if (version != kBlockDumpVersion) {
    throw ValidationError("read_block: unsupported version " + std::to_string(version));
  }
  RepresentationBlock block;
  block.lo = get_le<std::uint64_t>(in);
  block.hi = get_le<std::uint64_t>(in);
  if (block.hi < block.lo) throw ValidationError("read_block: hi < lo");
  for (auto* arr : {&block.r0_pair, &block.r0_div, &block.r1, &block.r2}) {
    arr->resize(block.size());
    for (auto& v : *arr) v = get_le<std::uint16_t>(in);
  }
  return block;
}

}  // namespace paucity
