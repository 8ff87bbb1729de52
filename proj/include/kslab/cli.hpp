#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kslab/io.hpp"

namespace kslab {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the kslab command line (args excludes the program name). Exit codes:
/// 0 completed, 1 unexpected failure, 2 contract violation or bad usage,
/// 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyOutcome {
  bool ok = false;
  std::vector<std::string> reasons;  // empty when ok
};

/// Recomputes the certified quantities of a report from its embedded input.
VerifyOutcome verify_report(const Json& report);

/// The report with "meta" removed: the part that must be reproducible.
Json report_payload(const Json& report);

}  // namespace kslab
