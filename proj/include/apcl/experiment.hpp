#pragma once

#include <cstdint>
#include <string>

namespace apcl {

struct CmdOptions {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;         // 0: keep the global worker count
  std::uint64_t seed = 0;  // reserved for randomized batteries
};

// Exit codes: 0 success (for nd-check: ND holds), 2 grep-style "found the
// degenerate direction" (nd-check / decay on the no-decay branch;
// counterexample inverts: 2 means ND holds so no wave exists), 1 any error.
int cmd_spectrum(const CmdOptions& opts);
int cmd_ndcheck(const CmdOptions& opts);
int cmd_solve(const CmdOptions& opts);
int cmd_decay(const CmdOptions& opts);
int cmd_fejer(const CmdOptions& opts);
int cmd_counterexample(const CmdOptions& opts);

}  // namespace apcl
