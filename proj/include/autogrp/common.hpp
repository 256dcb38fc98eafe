#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace autogrp {

using Sym = uint16_t;
using State = uint32_t;
using Word = std::vector<Sym>;

inline constexpr Sym kNoSym = 0xffff;
inline constexpr State kNoState = 0xffffffffu;

// Thrown when a construction exceeds its configured state budget.  Callers
// that can degrade gracefully (axiom checks, verifiers) catch this and report
// the step as inconclusive instead of failing hard.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input files, unknown symbols, ill-typed operands.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace autogrp
