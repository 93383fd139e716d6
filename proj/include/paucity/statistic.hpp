#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paucity {

/// Every series the mean-value engine can accumulate.
enum class Statistic {
  S00,       // sum r0^2
  S01,       // sum r0 r1
  S02,       // sum r0 r2
  S11,       // sum r1^2
  S12,       // sum r1 r2
  S22,       // sum r2^2
  M0,        // sum r0
  M1,        // sum r1
  M2,        // sum r2
  R2Cube,    // sum r2^3
  Supp1,     // #{n : r1(n) > 0}
  Supp2,     // #{n : r2(n) > 0}
  LandauB,   // sum b(n)
  CountA,    // #{n in A}
  Lemma31,   // sum 2^omega f_A / n
  Lemma32,   // sum 2^omega f_A / phi
  Dispersion,
};

std::string_view to_string(Statistic s);
/// Accepts the upper-case names used on the command line (S01, SUPP1, LEMMA31, ...).
std::optional<Statistic> parse_statistic(std::string_view name);
const std::vector<Statistic>& all_statistics();

bool is_integer_valued(Statistic s);

}  // namespace paucity
