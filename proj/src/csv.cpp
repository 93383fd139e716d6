#include "paucity/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>

#include "paucity/constants.hpp"
#include "paucity/errors.hpp"

namespace paucity {

std::string format_real(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", v);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string series_label(const MeanValueSeries& s) {
  std::string label(to_string(s.statistic));
  if (s.statistic == Statistic::Dispersion) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "(%g)", s.parameter);
    label += buf;
  }
  return label;
}

void write_mean_csv(std::ostream& out, const std::vector<MeanValueSeries>& series) {
  out << kMeanCsvHeader << '\n';
  if (series.empty()) return;
  const auto& points = series.front().points;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = static_cast<long double>(points[i]);
    for (const auto& s : series) {
      const long double raw = s.value(i);
      const MainTermModel model = main_term_model(s.statistic);
      const long double norm = normalize(s.statistic, raw, x);
      out << points[i] << ',' << series_label(s) << ',';
      if (s.integer_valued()) out << s.exact[i];
      else out << format_real(raw);
      out << ',' << format_real(norm) << ',';
      if (model.constant) out << format_real(*model.constant) << ',' << format_real(norm - *model.constant);
      else out << ',';
      out << '\n';
    }
  }
}

std::vector<MeanCsvRow> read_mean_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMeanCsvHeader) {
    throw ValidationError("mean CSV: unexpected header '" + line + "'");
  }
  std::vector<MeanCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) throw ValidationError("mean CSV: expected 6 fields in '" + line + "'");
    MeanCsvRow row;
    try {
      row.x = std::stoull(f[0]);
      row.raw = std::stold(f[2]);
    } catch (const std::exception&) {
      throw ValidationError("mean CSV: bad number in '" + line + "'");
    }
    row.label = f[1];
    const std::string base = row.label.substr(0, row.label.find('('));
    const auto stat = parse_statistic(base);
    if (!stat) throw ValidationError("mean CSV: unknown statistic '" + row.label + "'");
    row.statistic = *stat;
    row.raw_value = f[2];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace paucity
