#pragma once

#include "ogeg/dataset.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ogeg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitConvergence = 4;

inline constexpr const char* kReportSchema = "report_v1";
inline constexpr const char* kToolVersion = "1.0.0";

/// "aarset" (any case) names the embedded dataset. Anything else is read as
/// a file: one positive number per line, or a single-column CSV whose first
/// line may be a header. Blank lines are skipped. Throws DataError naming the
/// offending line (and column for CSV).
Dataset load_dataset(const std::string& source);

/// Parses `args` (without the program name) and runs one subcommand:
/// fit, compare, gof, sample, moments or curves. Reports go to `out`,
/// diagnostics to `err`. Returns one of the kExit* codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ogeg::cli
