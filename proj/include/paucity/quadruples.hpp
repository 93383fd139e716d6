#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace paucity {

/// a^2 + p^2 = q^2 + r^2 = n with a >= 1 and p, q, r prime.
struct Quadruple {
  std::uint64_t a = 0, p = 0, q = 0, r = 0, n = 0;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// Coordinates of x1 = n2 t - n1 d, x2 = n2 d + n1 t, x3 = n1 d + n2 t,
/// x4 = n1 t - n2 d.
struct ParamTuple {
  std::uint64_t d = 0, t = 0, n1 = 0, n2 = 0;
  friend bool operator==(const ParamTuple&, const ParamTuple&) = default;
};

/// Ordered off-diagonal solutions up to a limit. Every one of them falls in
/// exactly one class:
///   n1          2 < a < q < r < p
///   n1_prime    q < r and a, p both strictly inside (q, r)
///   n1_dprime   q < r and q, r both strictly inside (p, a)
///   mirrored    q > r with the rest non-degenerate (image of the three above)
///   degenerate  a = p, q = r, a <= 2, or one of p, q, r equal to 2
struct OffdiagCensus {
  std::uint64_t limit = 0;
  std::uint64_t total = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n1_prime = 0;
  std::uint64_t n1_dprime = 0;
  std::uint64_t mirrored = 0;
  std::uint64_t degenerate = 0;
};

enum class QuadrupleClass { N1, N1Prime, N1DoublePrime, Mirrored, Degenerate };

QuadrupleClass classify(const Quadruple& q);

inline constexpr std::uint64_t kOffdiagBudget = 10'000'000;

using QuadrupleSink = std::function<void(const Quadruple&)>;

/// Probes every (a, p) against the table of prime-pair sums q^2 + r^2 <= limit.
/// Quadruples reach `sink` ordered by (a, p, q, r). CapacityError above the budget.
OffdiagCensus enumerate_offdiag(std::uint64_t limit, const QuadrupleSink& sink = {},
                                unsigned threads = 1);

/// (x1, x2, x3, x4). ValidationError unless n2 t > n1 d and n1 t > n2 d.
std::array<std::uint64_t, 4> param_apply(const ParamTuple& pt);

/// Inverse on N1 quadruples, with (x1, x2, x3, x4) = (r, q, p, a).
ParamTuple param_invert(const Quadruple& q);

using ParamSink = std::function<void(const ParamTuple&)>;

/// Counts tuples with gcd(d, t) = gcd(n1, n2) = 1, x1, x2, x3 prime,
/// 2 < x4 < x2 < x1 < x3 and x3^2 + x4^2 <= limit. Equals OffdiagCensus::n1.
std::uint64_t count_param_side(std::uint64_t limit, const ParamSink& sink = {});

struct ChangeOfVariablesReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t distinct_ell_tuples = 0;
};

/// With l1 = (q - a)/2, l2 = (q + a)/2: l1 < l2, l1 + l2 an odd prime,
/// 4 l1 l2 = p^2 - r^2 and (l2 - l1)^2 + p^2 <= limit.
bool satisfies_change_of_variables(const Quadruple& q, std::uint64_t limit);

inline constexpr std::uint64_t kChangeOfVariablesBudget = 1'000'000;

ChangeOfVariablesReport change_of_variables_check(std::uint64_t limit);

/// Prime pairs 2 < r < p <= sqrt(limit) with r <= h, p - r < h, or p > sqrt(limit) - h,
/// where h = sqrt(limit) / log^10(limit).
struct ExceptionalSetCounts {
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
  std::uint64_t p3 = 0;
  std::uint64_t total_upper = 0;  // p1 + p2 + p3
  std::uint64_t exact_union = 0;
};

ExceptionalSetCounts exceptional_set_count(std::uint64_t limit);

}  // namespace paucity
