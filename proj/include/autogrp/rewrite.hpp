#pragma once

#include <cstdint>
#include <vector>

#include "autogrp/common.hpp"
#include "autogrp/presentation.hpp"
#include "autogrp/word.hpp"

namespace autogrp {

inline constexpr uint32_t kNoRule = 0xffffffffu;

struct Rule {
  Word lhs, rhs;
  bool alive = true;
};

struct KbLimits {
  size_t max_rules = 32768;       // live rules; exceeding this stops completion
  size_t max_len = 64;            // critical pairs with longer sides are dropped
  size_t interreduce_every = 256; // new rules between interreduction passes
};

// A rewriting system over a group alphabet, reducing with respect to the
// shortlex order or, when levels are supplied, the wreath-product order.
// Inverse cancellation rules x x^-1 -> 1 are seeded at construction.
//
// In coset mode the alphabet is split as subgroup letters (lowest level),
// a separator with no inverse, and group letters (highest level). Equations
// containing the separator are kept in the shape
//     sep u  ->  h sep v        (u, v group letters; h subgroup letters)
// by left-dividing the subgroup part; equations whose group parts agree
// collapse to relations between subgroup letters.
class RewritingSystem {
 public:
  RewritingSystem() = default;
  RewritingSystem(const Alphabet& a, std::vector<int> levels = {});

  Alphabet alpha;
  WordOrder order;
  bool coset_mode = false;
  Sym sep = kNoSym;
  std::vector<Rule> rules;
  bool confluent = false;

  // Reduces both sides, orients by the order, and installs a rule.
  // Returns true if a rule was added.
  bool add_equation(Word l, Word r);

  Word reduce(Word w) const;
  bool is_reduced(const Word& w) const;

  size_t live_count() const { return live_; }
  // Live rule indices sorted by the order on left-hand sides.
  std::vector<uint32_t> live_rule_ids() const;

  // Removes rules whose left side reduces under the others and re-reduces
  // right sides; re-oriented remains are reinstalled. Returns true if
  // anything changed.
  bool interreduce();

 private:
  friend bool knuth_bendix(RewritingSystem&, const KbLimits&);

  std::vector<State> tchild_;   // reversed-lhs trie, tnodes_ x alpha.size()
  std::vector<uint32_t> tmatch_;
  size_t tnodes_ = 0;
  size_t live_ = 0;

  State trie_walk(const Word& w) const;  // reversed walk, kNoState if absent
  void add_rule(Word lhs, Word rhs);
  void kill_rule(uint32_t i);
  // First rule matching a suffix of w[0..n); sets *len to the match length.
  uint32_t match_suffix(const Word& w, size_t n, size_t* len) const;
  bool orient(Word& l, Word& r) const;  // false if the sides are equal
};

// Runs Knuth-Bendix completion until no critical pairs remain or a limit
// hits. Returns true (and sets rs.confluent) only when the final system is
// confluent: every overlap resolved and nothing discarded.
bool knuth_bendix(RewritingSystem& rs, const KbLimits& lim = {});

// Group presentation as a rewriting system under plain shortlex.
RewritingSystem make_group_rws(const Presentation& p);

}  // namespace autogrp
