// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <string>

#include "blowup/config.hpp"

namespace blowup {

/// Execute one experiment, writing its JSON report and/or CSV series
/// under `out_dir`.  Returns the process exit code: 0 on success, 2 when
/// a certification was evaluated but not achieved.  Errors throw.
int run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                   bool quiet = false);

}  // namespace blowup
