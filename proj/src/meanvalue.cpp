#include "paucity/meanvalue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_map>

#include "paucity/errors.hpp"

namespace paucity {

namespace {

struct NamedStatistic {
  Statistic stat;
  std::string_view name;
  bool integer;
};

constexpr std::array<NamedStatistic, 17> kStatistics{{
    {Statistic::S00, "S00", true},          {Statistic::S01, "S01", true},
    {Statistic::S02, "S02", true},          {Statistic::S11, "S11", true},
    {Statistic::S12, "S12", true},          {Statistic::S22, "S22", true},
    {Statistic::M0, "M0", true},            {Statistic::M1, "M1", true},
    {Statistic::M2, "M2", true},            {Statistic::R2Cube, "R2CUBE", true},
    {Statistic::Supp1, "SUPP1", true},      {Statistic::Supp2, "SUPP2", true},
    {Statistic::LandauB, "LANDAU_B", true}, {Statistic::CountA, "COUNT_A", true},
    {Statistic::Lemma31, "LEMMA31", false}, {Statistic::Lemma32, "LEMMA32", false},
    {Statistic::Dispersion, "DISPERSION", false},
}};

constexpr std::size_t index_of(Statistic s) { return static_cast<std::size_t>(s); }

// Neumaier step on an external (sum, carry) pair.
inline void compensated_add(long double& sum, long double& carry, long double v) {
  const long double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v)) carry += (sum - t) + v;
  else carry += (v - t) + sum;
  sum = t;
}

MeanValueSeries empty_series(Statistic s, const CheckpointGrid& grid, std::uint64_t limit) {
  MeanValueSeries out;
  out.statistic = s;
  out.points = grid.points;
  out.limit = limit;
  return out;
}

}  // namespace

std::string_view to_string(Statistic s) { return kStatistics[index_of(s)].name; }

std::optional<Statistic> parse_statistic(std::string_view name) {
  for (const auto& ns : kStatistics) {
    if (ns.name == name) return ns.stat;
  }
  return std::nullopt;
}

const std::vector<Statistic>& all_statistics() {
  static const std::vector<Statistic> all = [] {
    std::vector<Statistic> v;
    for (const auto& ns : kStatistics) v.push_back(ns.stat);
    return v;
  }();
  return all;
}

bool is_integer_valued(Statistic s) { return kStatistics[index_of(s)].integer; }

CheckpointGrid CheckpointGrid::geometric(std::uint64_t start, std::uint64_t ratio,
                                         std::uint64_t limit) {
  if (start < 2 || ratio < 2) throw ValidationError("geometric grid: need start >= 2, ratio >= 2");
  CheckpointGrid g;
  for (std::uint64_t x = start; x <= limit; x *= ratio) {
    g.points.push_back(x);
    if (x > limit / ratio) break;
  }
  if (limit >= 2 && (g.points.empty() || g.points.back() != limit)) g.points.push_back(limit);
  return g;
}

void CheckpointGrid::validate(std::uint64_t limit) const {
  if (points.empty()) throw ValidationError("checkpoint grid is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 2) throw ValidationError("checkpoint below 2");
    if (points[i] > limit) {
      throw ValidationError("checkpoint " + std::to_string(points[i]) + " beyond limit " +
                            std::to_string(limit));
    }
    if (i > 0 && points[i] <= points[i - 1]) {
      throw ValidationError("checkpoints must be strictly increasing");
    }
  }
}

bool MeanValueAccumulator::block_statistic(Statistic s) {
  switch (s) {
    case Statistic::LandauB:
    case Statistic::CountA:
    case Statistic::Lemma31:
    case Statistic::Lemma32:
      return false;
    default:
      return true;
  }
}

MeanValueAccumulator::MeanValueAccumulator(CheckpointGrid grid, std::vector<Statistic> stats,
                                           MeanValueOptions options)
    : grid_(std::move(grid)), stats_(std::move(stats)), options_(options) {
  if (grid_.points.empty()) throw ValidationError("checkpoint grid is empty");
  grid_.validate(grid_.points.back());
  for (Statistic s : stats_) {
    if (!block_statistic(s)) {
      throw ValidationError("statistic " + std::string(to_string(s)) +
                            " is not computed from representation blocks");
    }
  }
  if (!(options_.dispersion_c > 0)) throw ValidationError("dispersion c must be positive");
  totals_.assign(kStatistics.size(), 0);
  real_sum_.assign(kStatistics.size(), 0);
  real_carry_.assign(kStatistics.size(), 0);
  exact_.assign(kStatistics.size(), {});
  real_.assign(kStatistics.size(), {});
}

void MeanValueAccumulator::consume(const RepresentationBlock& block) {
  if (block.lo != next_n_) {
    throw ValidationError("blocks out of order: expected lo=" + std::to_string(next_n_) +
                          ", got " + std::to_string(block.lo));
  }
  const bool want_dispersion =
      std::find(stats_.begin(), stats_.end(), Statistic::Dispersion) != stats_.end();
  const bool use_div = options_.r0 == R0Convention::Divisor;
  const long double c = options_.dispersion_c;
  auto& t = totals_;
  const std::size_t d_idx = index_of(Statistic::Dispersion);

  for (std::size_t i = 0; i < block.size(); ++i) {
    const std::uint64_t n = block.lo + i;
    const std::uint64_t r0 = use_div ? block.r0_div[i] : block.r0_pair[i];
    const std::uint64_t r1 = block.r1[i];
    const std::uint64_t r2 = block.r2[i];
    t[index_of(Statistic::S00)] += r0 * r0;
    t[index_of(Statistic::S01)] += r0 * r1;
    t[index_of(Statistic::S02)] += r0 * r2;
    t[index_of(Statistic::S11)] += r1 * r1;
    t[index_of(Statistic::S12)] += r1 * r2;
    t[index_of(Statistic::S22)] += r2 * r2;
    t[index_of(Statistic::M0)] += r0;
    t[index_of(Statistic::M1)] += r1;
    t[index_of(Statistic::M2)] += r2;
    t[index_of(Statistic::R2Cube)] += r2 * r2 * r2;
    t[index_of(Statistic::Supp1)] += r1 > 0;
    t[index_of(Statistic::Supp2)] += r2 > 0;
    if (want_dispersion && n >= 2) {
      const long double term =
          static_cast<long double>(r1) - c * static_cast<long double>(r0) / std::log(static_cast<long double>(n));
      compensated_add(real_sum_[d_idx], real_carry_[d_idx], term * term);
    }
    while (next_checkpoint_ < grid_.points.size() && grid_.points[next_checkpoint_] == n) {
      for (Statistic s : stats_) {
        const std::size_t k = index_of(s);
        if (is_integer_valued(s)) exact_[k].push_back(t[k]);
        else real_[k].push_back(real_sum_[k] + real_carry_[k]);
      }
      ++next_checkpoint_;
    }
  }
  next_n_ = block.hi;
}

std::vector<MeanValueSeries> MeanValueAccumulator::finish() const {
  if (next_checkpoint_ < grid_.points.size()) {
    throw ValidationError("checkpoint " + std::to_string(grid_.points[next_checkpoint_]) +
                          " beyond covered range [1, " + std::to_string(next_n_ - 1) + "]");
  }
  std::vector<MeanValueSeries> out;
  for (Statistic s : stats_) {
    MeanValueSeries series = empty_series(s, grid_, next_n_ - 1);
    series.exact = exact_[index_of(s)];
    series.real = real_[index_of(s)];
    if (s == Statistic::Dispersion) series.parameter = options_.dispersion_c;
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<MeanValueSeries> accumulate(std::span<const RepresentationBlock> blocks,
                                        const CheckpointGrid& grid,
                                        const std::vector<Statistic>& stats,
                                        const MeanValueOptions& options) {
  MeanValueAccumulator acc(grid, stats, options);
  for (const auto& b : blocks) acc.consume(b);
  return acc.finish();
}

std::pair<MeanValueSeries, MeanValueSeries> support_counts(
    std::span<const RepresentationBlock> blocks, const CheckpointGrid& grid) {
  auto out = accumulate(blocks, grid, {Statistic::Supp1, Statistic::Supp2});
  return {std::move(out[0]), std::move(out[1])};
}

MeanValueSeries dispersion(double c, std::span<const RepresentationBlock> blocks,
                           const CheckpointGrid& grid, R0Convention r0) {
  MeanValueOptions opts;
  opts.r0 = r0;
  opts.dispersion_c = c;
  return std::move(accumulate(blocks, grid, {Statistic::Dispersion}, opts)[0]);
}

std::pair<MeanValueSeries, MeanValueSeries> lemma_sums(std::uint64_t limit,
                                                       const CheckpointGrid& grid,
                                                       const SpfTable& spf) {
  if (limit > spf.limit()) throw ValidationError("lemma_sums: limit beyond SPF table");
  grid.validate(limit);
  MeanValueSeries by_n = empty_series(Statistic::Lemma31, grid, limit);
  MeanValueSeries by_phi = empty_series(Statistic::Lemma32, grid, limit);
  long double s1 = 0, c1 = 0, s2 = 0, c2 = 0;
  std::size_t next = 0;
  const std::uint64_t last = grid.points.back();
  for (std::uint64_t n = 1; n <= last; ++n) {
    const Factorization f = spf.factorize(n);
    if (in_A(f)) {
      const long double w = std::ldexp(1.0L, static_cast<int>(omega(f)));
      compensated_add(s1, c1, w / static_cast<long double>(n));
      compensated_add(s2, c2, w / static_cast<long double>(phi(f)));
    }
    if (grid.points[next] == n) {
      by_n.real.push_back(s1 + c1);
      by_phi.real.push_back(s2 + c2);
      ++next;
    }
  }
  return {std::move(by_n), std::move(by_phi)};
}

std::pair<MeanValueSeries, MeanValueSeries> landau_counts(std::uint64_t limit,
                                                          const CheckpointGrid& grid,
                                                          const SpfTable& spf) {
  if (limit > spf.limit()) throw ValidationError("landau_counts: limit beyond SPF table");
  grid.validate(limit);
  MeanValueSeries b_sum = empty_series(Statistic::LandauB, grid, limit);
  MeanValueSeries a_count = empty_series(Statistic::CountA, grid, limit);
  std::uint64_t nb = 0, na = 0;
  std::size_t next = 0;
  const std::uint64_t last = grid.points.back();
  for (std::uint64_t n = 1; n <= last; ++n) {
    const Factorization f = spf.factorize(n);
    nb += is_sum_two_squares(f);
    na += in_A(f);
    if (grid.points[next] == n) {
      b_sum.exact.push_back(nb);
      a_count.exact.push_back(na);
      ++next;
    }
  }
  return {std::move(b_sum), std::move(a_count)};
}

std::vector<MeanValueSeries> compute_mean_values(const SieveConfig& cfg,
                                                 const CheckpointGrid& grid,
                                                 const std::vector<Statistic>& stats,
                                                 const MeanValueOptions& options) {
  cfg.validate();
  grid.validate(cfg.limit);
  SieveConfig run = cfg;
  run.limit = grid.points.back();

  std::vector<Statistic> block_stats;
  bool want_lemma = false, want_landau = false;
  for (Statistic s : stats) {
    if (MeanValueAccumulator::block_statistic(s)) block_stats.push_back(s);
    else if (s == Statistic::Lemma31 || s == Statistic::Lemma32) want_lemma = true;
    else want_landau = true;
  }

  std::vector<MeanValueSeries> computed;
  if (!block_stats.empty()) {
    MeanValueAccumulator acc(grid, block_stats, options);
    sieve_all(run, [&](const RepresentationBlock& b) { acc.consume(b); });
    computed = acc.finish();
  }
  if (want_lemma || want_landau) {
    const SpfTable spf(run.limit);
    if (want_lemma) {
      auto [a, b] = lemma_sums(run.limit, grid, spf);
      computed.push_back(std::move(a));
      computed.push_back(std::move(b));
    }
    if (want_landau) {
      auto [a, b] = landau_counts(run.limit, grid, spf);
      computed.push_back(std::move(a));
      computed.push_back(std::move(b));
    }
  }

  std::vector<MeanValueSeries> out;
  for (Statistic s : stats) {
    auto it = std::find_if(computed.begin(), computed.end(),
                           [s](const MeanValueSeries& m) { return m.statistic == s; });
    out.push_back(*it);
  }
  return out;
}

PartitionReport partition_s12(std::uint64_t limit) {
  if (limit > kPartitionBudget) {
    throw CapacityError("partition_s12: limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(kPartitionBudget));
  }
  PartitionReport rep;
  rep.x = limit;
  if (limit < 8) return rep;
  const std::uint64_t root = isqrt(limit);
  const PrimeTable primes = sieve_primes(std::max<std::uint64_t>(2, root));
  const auto& ps = primes.primes();

  std::unordered_map<std::uint64_t, std::uint32_t> r2;
  for (std::uint64_t q : ps) {
    for (std::uint64_t r : ps) {
      const std::uint64_t n = q * q + r * r;
      if (n > limit) break;
      ++r2[n];
      rep.diagonal += q == r ? 1 : 2;
    }
  }
  for (const auto& [n, c] : r2) rep.s22 += std::uint64_t{c} * c;
  for (std::uint64_t a = 1; a * a < limit; ++a) {
    for (std::uint64_t p : ps) {
      const std::uint64_t n = a * a + p * p;
      if (n > limit) break;
      if (auto it = r2.find(n); it != r2.end()) rep.s12 += it->second;
    }
  }
  rep.offdiag = rep.s12 - rep.diagonal;
  return rep;
}

DivisorSplit divisor_split(const Factorization& n, double a_exponent, double x) {
  if (!(a_exponent >= 0)) throw ValidationError("divisor_split: A must be >= 0");
  if (!(x >= static_cast<double>(n.value)) || !(x > 1)) {
    throw ValidationError("divisor_split: need n <= x and x > 1");
  }
  const long double scale = std::pow(std::log(static_cast<long double>(x)), a_exponent);
  const long double root = std::sqrt(static_cast<long double>(n.value));
  const long double low = root / scale;
  const long double high = root * scale;
  DivisorSplit out;
  for (std::uint64_t d : divisors(n)) {
    const int c = chi4(d);
    const auto dd = static_cast<long double>(d);
    if (dd <= low) out.small += c;
    else if (dd < high) out.middle += c;
    else out.large += c;
  }
  return out;
}

}  // namespace paucity
