#pragma once

#include <cstdint>
#include <optional>

#include "paucity/arith.hpp"

namespace paucity {

enum class CountMethod { Closed, Oracle };

struct CongruenceCount {
  std::uint64_t modulus = 1;
  std::uint64_t count = 0;
  CountMethod method = CountMethod::Closed;
};

/// Coefficients of the linear forms f1 = n2 t - n1 d, f2 = n2 d + n1 t,
/// f3 = n1 d + n2 t. Construction rejects non-positive or non-coprime pairs.
class FormParams {
 public:
  FormParams(std::uint64_t t, std::uint64_t d);
  std::uint64_t t() const { return t_; }
  std::uint64_t d() const { return d_; }

 private:
  std::uint64_t t_;
  std::uint64_t d_;
};

inline constexpr std::uint64_t kRhoOracleBudget = 100'000;
inline constexpr std::uint64_t kNuOracleBudget = 3'000;

/// #{(u, v) mod d : u^2 + v^2 = 0, gcd(v, d) = 1} from its prime-power values.
CongruenceCount rho_closed(const Factorization& d);
/// Exhaustive over residue pairs; CapacityError above kRhoOracleBudget.
CongruenceCount rho_oracle(std::uint64_t d);

/// Smaller root of i^2 = -1 mod p for p = 1 mod 4, nullopt for p = 3 mod 4.
/// ValidationError unless p is an odd prime.
std::optional<std::uint64_t> sqrt_minus_one(std::uint64_t p);

/// #{(n1, n2) mod p : f1 f2 f3 = 0 mod p} from the case table.
CongruenceCount nu_prime_closed(std::uint64_t p, const FormParams& params);
/// Exhaustive over residue pairs; CapacityError above kNuOracleBudget.
CongruenceCount nu_oracle(std::uint64_t delta, const FormParams& params);
/// Multiplicative assembly over the primes of a squarefree delta.
CongruenceCount nu_closed(std::uint64_t delta, const FormParams& params);

bool is_prime_trial(std::uint64_t n);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace paucity
