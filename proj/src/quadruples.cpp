#include "paucity/quadruples.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "paucity/arith.hpp"
#include "paucity/congruence.hpp"
#include "paucity/errors.hpp"
#include "paucity/sieve.hpp"

namespace paucity {

namespace {

using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

void tally(OffdiagCensus& c, QuadrupleClass k) {
  ++c.total;
  switch (k) {
    case QuadrupleClass::N1: ++c.n1; break;
    case QuadrupleClass::N1Prime: ++c.n1_prime; break;
    case QuadrupleClass::N1DoublePrime: ++c.n1_dprime; break;
    case QuadrupleClass::Mirrored: ++c.mirrored; break;
    case QuadrupleClass::Degenerate: ++c.degenerate; break;
  }
}

PrimeTable primes_to_root(std::uint64_t limit) {
  return sieve_primes(std::max<std::uint64_t>(2, isqrt(limit)));
}

}  // namespace

QuadrupleClass classify(const Quadruple& x) {
  if (x.a == x.p || x.q == x.r || x.a <= 2 || x.p == 2 || x.q == 2 || x.r == 2) {
    return QuadrupleClass::Degenerate;
  }
  if (x.q > x.r) return QuadrupleClass::Mirrored;
  if (x.a < x.q && x.r < x.p) return QuadrupleClass::N1;
  if (x.q < x.a && x.a < x.r && x.q < x.p && x.p < x.r) return QuadrupleClass::N1Prime;
  if (x.p < x.q && x.r < x.a) return QuadrupleClass::N1DoublePrime;
  throw std::logic_error("classify: off-diagonal quadruple fits no class");
}

OffdiagCensus enumerate_offdiag(std::uint64_t limit, const QuadrupleSink& sink,
                                unsigned threads) {
  if (limit > kOffdiagBudget) {
    throw CapacityError("enumerate_offdiag: limit " + std::to_string(limit) +
                        " exceeds budget " + std::to_string(kOffdiagBudget));
  }
  OffdiagCensus census;
  census.limit = limit;
  if (limit < 8) return census;
  const PrimeTable primes = primes_to_root(limit);
  const auto& ps = primes.primes();

  std::unordered_map<std::uint64_t, PairList> sums;
  for (std::uint64_t q : ps) {
    for (std::uint64_t r : ps) {
      const std::uint64_t n = q * q + r * r;
      if (n > limit) break;
      sums[n].emplace_back(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(r));
    }
  }

  const std::uint64_t a_max = isqrt(limit - 4);
  const unsigned workers = std::max(1u, threads);
  struct Chunk {
    OffdiagCensus census;
    std::vector<Quadruple> found;
  };
  std::vector<Chunk> chunks(workers);
  auto probe = [&](unsigned k) {
    const std::uint64_t lo = 1 + a_max * k / workers;
    const std::uint64_t hi = 1 + a_max * (k + 1) / workers;
    Chunk& out = chunks[k];
    for (std::uint64_t a = lo; a < hi; ++a) {
      for (std::uint64_t p : ps) {
        const std::uint64_t n = a * a + p * p;
        if (n > limit) break;
        const auto it = sums.find(n);
        if (it == sums.end()) continue;
        for (const auto& [q, r] : it->second) {
          if ((a == q && p == r) || (a == r && p == q)) continue;
          const Quadruple quad{a, p, q, r, n};
          tally(out.census, classify(quad));
          if (sink) out.found.push_back(quad);
        }
      }
    }
  };
  if (workers == 1) {
    probe(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(probe, k);
  }
  for (const Chunk& c : chunks) {
    census.total += c.census.total;
    census.n1 += c.census.n1;
    census.n1_prime += c.census.n1_prime;
    census.n1_dprime += c.census.n1_dprime;
    census.mirrored += c.census.mirrored;
    census.degenerate += c.census.degenerate;
    if (sink) {
      for (const Quadruple& q : c.found) sink(q);
    }
  }
  return census;
}

std::array<std::uint64_t, 4> param_apply(const ParamTuple& pt) {
  const std::uint64_t n2t = pt.n2 * pt.t, n1d = pt.n1 * pt.d;
  const std::uint64_t n1t = pt.n1 * pt.t, n2d = pt.n2 * pt.d;
  if (pt.d == 0 || pt.t == 0 || pt.n1 == 0 || pt.n2 == 0 || n2t <= n1d || n1t <= n2d) {
    throw ValidationError("param_apply: (d,t,n1,n2) = (" + std::to_string(pt.d) + "," +
                          std::to_string(pt.t) + "," + std::to_string(pt.n1) + "," +
                          std::to_string(pt.n2) + ") gives a non-positive form");
  }
  return {n2t - n1d, n2d + n1t, n1d + n2t, n1t - n2d};
}

ParamTuple param_invert(const Quadruple& x) {
  if (!(2 < x.a && x.a < x.q && x.q < x.r && x.r < x.p)) {
    throw ValidationError("param_invert: requires 2 < a < q < r < p");
  }
  if ((x.p - x.r) % 2 != 0 || (x.q - x.a) % 2 != 0) {
    throw ValidationError("param_invert: parity mismatch");
  }
  const std::uint64_t m1 = (x.p - x.r) / 2;
  const std::uint64_t m2 = (x.q - x.a) / 2;
  ParamTuple pt;
  pt.d = std::gcd(m1, m2);
  pt.n1 = m1 / pt.d;
  pt.n2 = m2 / pt.d;
  if ((x.q + x.a) % (2 * pt.n1) != 0 || (x.r + x.p) % (2 * pt.n2) != 0) {
    throw std::logic_error("param_invert: non-integral t");
  }
  pt.t = (x.q + x.a) / (2 * pt.n1);
  if ((x.r + x.p) / (2 * pt.n2) != pt.t) throw std::logic_error("param_invert: inconsistent t");
  return pt;
}

std::uint64_t count_param_side(std::uint64_t limit, const ParamSink& sink) {
  if (limit > kOffdiagBudget) {
    throw CapacityError("count_param_side: limit " + std::to_string(limit) + " exceeds budget");
  }
  if (limit < 8) return 0;
  const std::uint64_t u = isqrt(limit);
  const PrimeTable primes = primes_to_root(limit);
  std::uint64_t count = 0;
  // x3 = n1 d + n2 t <= u; x1 > x2 forces t > d and n2 (t - d) > n1 (t + d).
  for (std::uint64_t d = 1; d < u; ++d) {
    for (std::uint64_t t = d + 1; t < u; ++t) {
      if (std::gcd(d, t) != 1) continue;
      for (std::uint64_t n1 = 1; n1 * d + t <= u; ++n1) {
        const std::uint64_t n2_lo = n1 * (t + d) / (t - d) + 1;
        const std::uint64_t n2_hi = (u - n1 * d) / t;
        for (std::uint64_t n2 = n2_lo; n2 <= n2_hi; ++n2) {
          if (n1 * t <= n2 * d + 2) break;  // x4 > 2, decreasing in n2
          const std::uint64_t x1 = n2 * t - n1 * d, x2 = n2 * d + n1 * t;
          const std::uint64_t x3 = n1 * d + n2 * t, x4 = n1 * t - n2 * d;
          if (x3 * x3 + x4 * x4 > limit) continue;
          if (!primes.contains(x1) || !primes.contains(x2) || !primes.contains(x3)) continue;
          if (std::gcd(n1, n2) != 1) continue;
          ++count;
          if (sink) sink({d, t, n1, n2});
        }
      }
    }
  }
  return count;
}

bool satisfies_change_of_variables(const Quadruple& x, std::uint64_t limit) {
  if (x.q <= x.a || (x.q - x.a) % 2 != 0 || x.p <= x.r) return false;
  const std::uint64_t l1 = (x.q - x.a) / 2, l2 = (x.q + x.a) / 2;
  const std::uint64_t s = l1 + l2;
  return l1 < l2 && s != 2 && is_prime_trial(s) && 4 * l1 * l2 == x.p * x.p - x.r * x.r &&
         (l2 - l1) * (l2 - l1) + x.p * x.p <= limit;
}

ChangeOfVariablesReport change_of_variables_check(std::uint64_t limit) {
  if (limit > kChangeOfVariablesBudget) {
    throw CapacityError("change_of_variables_check: limit " + std::to_string(limit) +
                        " exceeds budget");
  }
  ChangeOfVariablesReport rep;
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>> ells;
  enumerate_offdiag(limit, [&](const Quadruple& x) {
    if (classify(x) != QuadrupleClass::N1) return;
    ++rep.checked;
    if (!satisfies_change_of_variables(x, limit)) ++rep.violations;
    ells.emplace((x.q - x.a) / 2, (x.q + x.a) / 2, x.p, x.r);
  });
  rep.distinct_ell_tuples = ells.size();
  return rep;
}

ExceptionalSetCounts exceptional_set_count(std::uint64_t limit) {
  if (limit < 10'000) throw ValidationError("exceptional_set_count: limit must be >= 10^4");
  const long double root = std::sqrt(static_cast<long double>(limit));
  const long double h = root / std::pow(std::log(static_cast<long double>(limit)), 10.0L);
  const PrimeTable primes = primes_to_root(limit);
  const auto& ps = primes.primes();
  ExceptionalSetCounts out;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const auto r = ps[j];
    if (r == 2) continue;
    for (std::size_t k = j + 1; k < ps.size(); ++k) {
      const auto p = ps[k];
      const bool c1 = static_cast<long double>(r) <= h;
      const bool c2 = static_cast<long double>(p - r) < h;
      const bool c3 = root - h < static_cast<long double>(p);
      out.p1 += c1;
      out.p2 += c2;
      out.p3 += c3;
      out.exact_union += c1 || c2 || c3;
    }
  }
  out.total_upper = out.p1 + out.p2 + out.p3;
  return out;
}

}  // namespace paucity
