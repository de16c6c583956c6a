#pragma once

#include "symplecta/config.hpp"
#include "symplecta/report.hpp"

namespace symplecta {

/// Runs the configured suite (every suite for Suite::All). Module errors become
/// failed records; the result depends only on the configuration.
Report run_suite(const SuiteConfig& config);

}  // namespace symplecta
