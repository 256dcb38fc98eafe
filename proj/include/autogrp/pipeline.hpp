#pragma once

#include <string>
#include <utility>
#include <vector>

#include "autogrp/hnn.hpp"

namespace autogrp {

// Scripted end-to-end run on the embedded six generator Sapir input:
// presentation massage down to the HNN shape, the strong coset system for
// the distinguished subgroup, efficiency of its generating set, assembly
// and bounded verification of the asynchronous structure, and the two
// witness families (coset representatives b^{2n}; a trace family whose
// head separation grows with the block count).
struct SapirReport {
  bool ok = false;
  std::string text;  // stage log, one paragraph per stage
  std::vector<std::pair<std::string, std::string>> values;  // trailer
  HnnSystem hs;      // the assembled extension, for artifact output
};

SapirReport pipeline_sapir(const HnnLimits& lim = {}, int drift_blocks = 8,
                           size_t verify_depth = 4);

// The trailer rendered as sorted "key = value" lines.
std::string format_trailer(
    const std::vector<std::pair<std::string, std::string>>& values);

}  // namespace autogrp
