#pragma once

#include <string>
#include <vector>

#include "autogrp/common.hpp"

namespace autogrp {

// Tokenizer shared by the fsa/group/subgroup/hnn readers.  Whitespace
// insensitive, '#' starts a comment running to end of line, and the
// punctuation characters { } = ; : , are single tokens.
class Tokenizer {
 public:
  explicit Tokenizer(const std::string& text);

  bool done() const { return pos_ >= toks_.size(); }
  const std::string& peek() const;
  std::string next();
  void expect(const std::string& tok);
  bool accept(const std::string& tok);

  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<std::string> toks_;
  std::vector<int> lines_;
  size_t pos_ = 0;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace autogrp
