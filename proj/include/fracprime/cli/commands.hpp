#pragma once

#include "fracprime/cli/config.hpp"

namespace fracprime::cli {

int cmd_equidist(const RunConfig& cfg);
int cmd_jointavg(const RunConfig& cfg);
int cmd_recurrence(const RunConfig& cfg);
int cmd_seminorm(const RunConfig& cfg);
int cmd_pet(const RunConfig& cfg);
int cmd_sieve(const RunConfig& cfg);

/// Parses argv and dispatches. Exit 0 iff every asserted invariant held.
int run(int argc, char** argv);

}  // namespace fracprime::cli
