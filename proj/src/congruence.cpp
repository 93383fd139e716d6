#include "paucity/congruence.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "paucity/errors.hpp"

namespace paucity {

namespace {

constexpr std::uint64_t kDirectRootSearchBelow = 10'000;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Trial-division factorization for moduli outside any table.
std::vector<PrimePower> trial_factor(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

FormParams::FormParams(std::uint64_t t, std::uint64_t d) : t_(t), d_(d) {
  if (t == 0 || d == 0) throw ValidationError("FormParams: t and d must be positive");
  if (std::gcd(t, d) != 1) {
    throw ValidationError("FormParams: gcd(" + std::to_string(t) + ", " + std::to_string(d) +
                          ") != 1");
  }
}

CongruenceCount rho_closed(const Factorization& d) {
  std::uint64_t count = 1;
  for (const auto& pe : d.factors) {
    if (pe.prime == 2) {
      if (pe.exponent >= 2) count = 0;
    } else if (pe.prime % 4 == 3) {
      count = 0;
    } else {
      std::uint64_t phi_pk = pe.prime - 1;
      for (std::uint32_t k = 1; k < pe.exponent; ++k) phi_pk *= pe.prime;
      count *= 2 * phi_pk;
    }
  }
  return {d.value, count, CountMethod::Closed};
}

CongruenceCount rho_oracle(std::uint64_t d) {
  if (d == 0) throw ValidationError("rho_oracle: modulus must be positive");
  if (d > kRhoOracleBudget) {
    throw CapacityError("rho_oracle: modulus " + std::to_string(d) + " exceeds budget");
  }
  // square_count[s] = #{u mod d : u^2 = s}; then sum over admissible v.
  std::vector<std::uint32_t> square_count(d, 0);
  for (std::uint64_t u = 0; u < d; ++u) ++square_count[u * u % d];
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < d; ++v) {
    if (std::gcd(v, d) != 1) continue;
    count += square_count[(d - v * v % d) % d];
  }
  return {d, count, CountMethod::Oracle};
}

std::optional<std::uint64_t> sqrt_minus_one(std::uint64_t p) {
  if (p == 2 || !is_prime_trial(p)) {
    throw ValidationError("sqrt_minus_one: " + std::to_string(p) + " is not an odd prime");
  }
  if (p % 4 == 3) return std::nullopt;
  if (p < kDirectRootSearchBelow) {
    for (std::uint64_t i = 1; i < p; ++i) {
      if (i * i % p == p - 1) return i;
    }
  }
  for (std::uint64_t g = 2; g < p; ++g) {
    if (powmod(g, (p - 1) / 2, p) != p - 1) continue;
    const std::uint64_t i = powmod(g, (p - 1) / 4, p);
    return std::min(i, p - i);
  }
  throw std::logic_error("sqrt_minus_one: no non-residue found");
}

CongruenceCount nu_prime_closed(std::uint64_t p, const FormParams& params) {
  if (!is_prime_trial(p)) {
    throw ValidationError("nu_prime_closed: " + std::to_string(p) + " is not prime");
  }
  const std::uint64_t t = params.t() % p;
  const std::uint64_t d = params.d() % p;
  if (p == 2) return {p, (t * d) % 2 == 0 ? 3u : 2u, CountMethod::Closed};
  if (t == 0 || d == 0) return {p, 2 * p - 1, CountMethod::Closed};

  // Three lines through the origin; two coincide when d = +-t or d = +-i t.
  // Both at once would force 2 t^2 = 0, impossible for odd p.
  const bool d_pm_t = d == t || d == p - t;
  bool d_pm_it = false;
  if (const auto i = sqrt_minus_one(p)) {
    const std::uint64_t it = mulmod(*i, t, p);
    d_pm_it = d == it || d == (p - it) % p;
  }
  const std::uint64_t count = (d_pm_t || d_pm_it) ? 2 * p - 1 : 3 * p - 2;
  return {p, count, CountMethod::Closed};
}

CongruenceCount nu_oracle(std::uint64_t delta, const FormParams& params) {
  if (delta == 0) throw ValidationError("nu_oracle: modulus must be positive");
  if (delta > kNuOracleBudget) {
    throw CapacityError("nu_oracle: modulus " + std::to_string(delta) + " exceeds budget");
  }
  const std::uint64_t t = params.t() % delta;
  const std::uint64_t d = params.d() % delta;
  std::uint64_t count = 0;
  for (std::uint64_t n1 = 0; n1 < delta; ++n1) {
    // Values at n2 = 0, stepped by +t, +d, +t as n2 increases.
    std::uint64_t f1 = (delta - n1 * d % delta) % delta;
    std::uint64_t f2 = n1 * t % delta;
    std::uint64_t f3 = n1 * d % delta;
    for (std::uint64_t n2 = 0; n2 < delta; ++n2) {
      if ((f1 * f2 % delta) * f3 % delta == 0) ++count;
      f1 += t;
      if (f1 >= delta) f1 -= delta;
      f2 += d;
      if (f2 >= delta) f2 -= delta;
      f3 += t;
      if (f3 >= delta) f3 -= delta;
    }
  }
  return {delta, count, CountMethod::Oracle};
}

CongruenceCount nu_closed(std::uint64_t delta, const FormParams& params) {
  if (delta == 0) throw ValidationError("nu_closed: modulus must be positive");
  std::uint64_t count = 1;
  for (const auto& pe : trial_factor(delta)) {
    if (pe.exponent > 1) {
      throw ValidationError("nu_closed: " + std::to_string(delta) + " is not squarefree");
    }
    count *= nu_prime_closed(pe.prime, params).count;
  }
  return {delta, count, CountMethod::Closed};
}

}  // namespace paucity
