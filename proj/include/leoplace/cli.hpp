#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "leoplace/geom.hpp"
#include "leoplace/io.hpp"
#include "leoplace/wplace.hpp"

namespace leoplace::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // bad flags, malformed SLO string
  kInputFile = 2,     // unknown preset, unreadable or schema-invalid input
  kSloViolation = 3,
  kOutputFile = 4,    // output path not writable
};

struct VerifyReport {
  bool adherent = false;
  double worst_km = 0.0;
  double limit_km = 0.0;
  double margin_km = 0.0;  // limit - worst; negative on violation
  // Where the worst value occurred: a time for max SLOs, a node for mean.
  std::string where;
};

// Max SLOs check each row's max_km; mean SLOs check each node's time mean,
// which needs `nodes`. `slack_km` widens the limit (e.g. a placement's
// epsilon). Throws io::SchemaError when a mean SLO has no per-node data and
// std::invalid_argument for hop SLOs.
VerifyReport verify_series(const std::vector<io::AggregateRow>& rows,
                           const std::optional<std::vector<io::NodeTimeMean>>& nodes,
                           const wplace::SloSpec& slo,
                           const geom::PhysicalConstants& consts = {},
                           double slack_km = 0.0);

// Entry point of the leoplace tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace leoplace::cli
