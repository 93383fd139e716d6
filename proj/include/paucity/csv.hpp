#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paucity/meanvalue.hpp"

namespace paucity {

/// "%.15Lg".
std::string format_real(long double v);

std::vector<std::string> split(std::string_view line, char sep);

inline constexpr std::string_view kMeanCsvHeader =
    "x,statistic,raw_value,normalized_value,predicted_constant,deviation";

/// Column label, e.g. "S01" or "DISPERSION(1)".
std::string series_label(const MeanValueSeries& s);

/// One row per (checkpoint, statistic), checkpoints outermost.
void write_mean_csv(std::ostream& out, const std::vector<MeanValueSeries>& series);

struct MeanCsvRow {
  std::uint64_t x = 0;
  std::string label;
  Statistic statistic = Statistic::S01;
  std::string raw_value;
  long double raw = 0;
};

/// ValidationError on a header or field mismatch.
std::vector<MeanCsvRow> read_mean_csv(std::istream& in);

}  // namespace paucity
