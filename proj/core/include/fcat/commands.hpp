#pragma once

#include "fcat/config.hpp"
#include "fcat/report.hpp"

namespace fcat {

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  std::optional<int> samples;
};

// Executes one of: check-axioms | ext-table | realize | verify-equivalence |
// functoriality. Throws Error for an unknown command or missing config
// sections.
Report run_command(const std::string& command, const Config& cfg,
                   const RunOptions& opts = {});

}  // namespace fcat
