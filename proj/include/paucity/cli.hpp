#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace paucity {

inline constexpr const char* kVersion = "1.0.0";

/// Runs one subcommand (sieve, mean, constants, congruence, offdiag, report).
/// `args` excludes the program name. Exit codes: 0 success, 2 validation
/// error, 3 capacity or overflow error, 1 anything else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ReportOutputs {
  std::filesystem::path table;
  std::vector<std::filesystem::path> plot_files;
};

/// Joins mean-value CSVs with the predicted main terms. Writes report.csv and
/// one plot_<label>.csv (x, ratio) per series into `out_dir`.
ReportOutputs build_report(const std::vector<std::filesystem::path>& inputs,
                           const std::filesystem::path& out_dir);

}  // namespace paucity
