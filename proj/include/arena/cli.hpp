#pragma once

namespace arena {

// Full command-line surface: simulate | evaluate | train-toy | replay |
// report. Returns a process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace arena
