#pragma once

namespace mti::cli {

/// Exit codes: 0 success, 1 a check failed (collapse not within tolerance,
/// an inequality violated, an evaluation error), 2 bad usage or input.
int run(int argc, char** argv);

}  // namespace mti::cli
