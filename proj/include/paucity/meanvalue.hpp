#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paucity/arith.hpp"
#include "paucity/sieve.hpp"
#include "paucity/statistic.hpp"

namespace paucity {

struct CheckpointGrid {
  std::vector<std::uint64_t> points;

  /// start, start*ratio, ... while <= limit, then limit itself if not yet present.
  static CheckpointGrid geometric(std::uint64_t start, std::uint64_t ratio, std::uint64_t limit);
  /// Nonempty, strictly increasing, every point in [2, limit].
  void validate(std::uint64_t limit) const;
};

/// Which r0 enters products with r0 (S00, S01, S02, M0, dispersion).
enum class R0Convention { Pair, Divisor };

struct MeanValueOptions {
  R0Convention r0 = R0Convention::Pair;
  double dispersion_c = 1.0;
};

/// Partial sums of one statistic at each checkpoint. Integer statistics fill
/// `exact`; harmonic and dispersion sums fill `real`.
struct MeanValueSeries {
  Statistic statistic = Statistic::S01;
  std::vector<std::uint64_t> points;
  std::vector<std::uint64_t> exact;
  std::vector<long double> real;
  std::uint64_t limit = 0;
  double parameter = 0;  // c for the dispersion

  bool integer_valued() const { return !exact.empty() || real.empty(); }
  long double value(std::size_t i) const {
    return integer_valued() ? static_cast<long double>(exact[i]) : real[i];
  }
};

/// Streaming reduction of representation blocks. Blocks must arrive in
/// ascending order without gaps starting at n = 1; real-valued sums are
/// accumulated per n in that order, so the result does not depend on how
/// [1, limit] was cut into blocks.
class MeanValueAccumulator {
 public:
  MeanValueAccumulator(CheckpointGrid grid, std::vector<Statistic> stats,
                       MeanValueOptions options = {});

  void consume(const RepresentationBlock& block);
  /// Throws ValidationError if a checkpoint lies beyond the consumed range.
  std::vector<MeanValueSeries> finish() const;

  /// True for statistics computed from representation blocks.
  static bool block_statistic(Statistic s);

 private:
  CheckpointGrid grid_;
  std::vector<Statistic> stats_;
  MeanValueOptions options_;
  std::uint64_t next_n_ = 1;
  std::size_t next_checkpoint_ = 0;
  std::vector<std::uint64_t> totals_;
  std::vector<long double> real_sum_, real_carry_;
  std::vector<std::vector<std::uint64_t>> exact_;
  std::vector<std::vector<long double>> real_;
};

std::vector<MeanValueSeries> accumulate(std::span<const RepresentationBlock> blocks,
                                        const CheckpointGrid& grid,
                                        const std::vector<Statistic>& stats,
                                        const MeanValueOptions& options = {});

/// SUPP1 and SUPP2.
std::pair<MeanValueSeries, MeanValueSeries> support_counts(
    std::span<const RepresentationBlock> blocks, const CheckpointGrid& grid);

MeanValueSeries dispersion(double c, std::span<const RepresentationBlock> blocks,
                           const CheckpointGrid& grid, R0Convention r0 = R0Convention::Pair);

/// LEMMA31 and LEMMA32, compensated, ascending n.
std::pair<MeanValueSeries, MeanValueSeries> lemma_sums(std::uint64_t limit,
                                                       const CheckpointGrid& grid,
                                                       const SpfTable& spf);

/// LANDAU_B and COUNT_A.
std::pair<MeanValueSeries, MeanValueSeries> landau_counts(std::uint64_t limit,
                                                          const CheckpointGrid& grid,
                                                          const SpfTable& spf);

/// Sieves [1, max grid point] and returns the requested series in the given order.
std::vector<MeanValueSeries> compute_mean_values(const SieveConfig& cfg,
                                                 const CheckpointGrid& grid,
                                                 const std::vector<Statistic>& stats,
                                                 const MeanValueOptions& options = {});

/// S12 split into diagonal ({a,p} = {q,r}) and off-diagonal solutions.
struct PartitionReport {
  std::uint64_t x = 0;
  std::uint64_t s12 = 0;
  std::uint64_t diagonal = 0;
  std::uint64_t offdiag = 0;
  std::uint64_t s22 = 0;
};

inline constexpr std::uint64_t kPartitionBudget = 100'000'000;

/// Counts from the table of prime-pair sums; CapacityError above the budget.
PartitionReport partition_s12(std::uint64_t limit);

struct DivisorSplit {
  std::int64_t small = 0;   // d <= sqrt(n) / log^A x
  std::int64_t middle = 0;  // sqrt(n) / log^A x < d < sqrt(n) log^A x
  std::int64_t large = 0;   // d >= sqrt(n) log^A x
};

inline constexpr double kDefaultSplitExponent = 6.0;

/// chi4-weighted divisor sums over the three ranges. A divisor sitting on both
/// outer boundaries (A = 0, d = sqrt n) is counted once, in `small`.
DivisorSplit divisor_split(const Factorization& n, double a_exponent, double x);

}  // namespace paucity
