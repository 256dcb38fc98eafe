#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "autogrp/common.hpp"

namespace autogrp {

// Ordered group alphabet.  Symbol ids are assigned in insertion order and the
// shortlex order on words uses exactly that id order.  Inverses are optional
// per symbol (the coset separator '#' has none).
class Alphabet {
 public:
  Sym add(const std::string& name);
  Sym add_pair(const std::string& name, const std::string& inv_name);

  void set_inverse(Sym a, Sym b);

  size_t size() const { return names_.size(); }
  const std::string& name(Sym a) const { return names_.at(a); }
  Sym inverse(Sym a) const { return inv_.at(a); }
  bool has_inverse(Sym a) const { return inv_.at(a) != kNoSym; }
  std::optional<Sym> find(const std::string& name) const;

  // Virtual padding id used by pair automata; one past the real symbols.
  Sym pad() const { return static_cast<Sym>(size()); }

  Word inverse_word(const Word& w) const;
  Word free_reduce(const Word& w) const;

  // Space separated symbol names; "_" denotes the empty word.
  Word parse_word(const std::string& text) const;
  std::string format_word(const Word& w) const;

  // Concatenated symbol names without separators (label syntax).  Parsed by
  // greedy longest match; "_" denotes the empty word.
  Word parse_packed(const std::string& text) const;
  std::string format_packed(const Word& w) const;

  bool operator==(const Alphabet& o) const {
    return names_ == o.names_ && inv_ == o.inv_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Sym> inv_;
  std::unordered_map<std::string, Sym> index_;
};

int shortlex_cmp(const Word& u, const Word& v);
inline bool shortlex_less(const Word& u, const Word& v) {
  return shortlex_cmp(u, v) < 0;
}

// Wreath-product order for leveled alphabets (uniform levels degenerate to
// shortlex).  Words are compared first on their highest-level subsequences by
// shortlex, then on the lower-level fragments between those letters, leftmost
// fragment first.  This is a translation invariant reduction order.
struct WordOrder {
  std::vector<int> level;  // empty -> all symbols level 1

  int cmp(const Word& u, const Word& v) const;
  bool less(const Word& u, const Word& v) const { return cmp(u, v) < 0; }
  bool uniform() const;
};

// Strip equal prefixes and suffixes from a balanced group equation.
void cancel_common(const Alphabet& a, Word& lhs, Word& rhs);

}  // namespace autogrp
