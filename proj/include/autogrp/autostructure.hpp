#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autogrp/fsa.hpp"
#include "autogrp/presentation.hpp"
#include "autogrp/rewrite.hpp"

namespace autogrp {

inline constexpr uint32_t kNoDiff = 0xffffffffu;

// Set of word differences with its transition table. A difference is a
// reduced word d standing for the group element u^-1 v while u and v are
// read in parallel; reading the padded pair (x, y) moves d to
// reduce(x^-1 d y), and the move exists only when the result is already a
// stored difference. Index 0 is always the empty word.
class DiffMachine {
 public:
  DiffMachine();

  uint32_t add(const RewritingSystem& rs, const Word& w);  // interns reduce(w)
  uint32_t find(const Word& reduced) const;                // kNoDiff if absent

  // Interns every difference along the padded alignment of (u, v), starting
  // from the difference `init` (so u = init * v must hold in the group; the
  // default asserts u = v). Returns true if anything was new.
  bool add_pair(const RewritingSystem& rs, const Word& u, const Word& v,
                const Word& init = {});
  // add_pair over every live rule of rs.
  bool add_rule_diffs(const RewritingSystem& rs);

  // Recomputes the transition table; call after any additions.
  void rebuild(const RewritingSystem& rs);

  size_t size() const { return words_.size(); }
  const Word& word(uint32_t d) const { return words_[d]; }
  size_t nsyms() const { return nsyms_; }

  // x or y may equal the pad id (= alphabet size used at rebuild).
  uint32_t step(uint32_t d, Sym x, Sym y) const {
    return delta_[(static_cast<size_t>(d) * (nsyms_ + 1) + x) * (nsyms_ + 1) +
                  y];
  }

 private:
  std::vector<Word> words_;
  std::vector<uint32_t> delta_;
  size_t nsyms_ = 0;
  uint32_t lookup(const Word& w) const;
};

// Acceptor of words with no detectably smaller shortlex equivalent. The
// detector runs every candidate replacement whose running difference stays
// inside wd; with enough differences this is exactly the set of shortlex
// normal forms. Always prefix closed, every state accepting.
Fsa build_word_acceptor(const DiffMachine& wd, const RewritingSystem& rs,
                        uint64_t state_cap = kDefaultStateCap);

// Same acceptor but seeded with several start differences: a word is
// rejected once, for some start d, a strictly smaller word v with
// u = d * v is detected. With starts = {0} this is the plain acceptor;
// coset systems seed one start per subgroup element in the dictionary.
Fsa build_word_acceptor(const DiffMachine& wd, const RewritingSystem& rs,
                        const std::vector<uint32_t>& starts,
                        uint64_t state_cap = kDefaultStateCap);

// Deterministic product (wa-state, wa-state, difference) used by all
// multipliers; per-generator automata differ only in their accept anchors.
struct GeneralMultiplier {
  Fsa graph;                          // pair automaton, accepts all unset
  std::vector<uint32_t> state_diff;   // product state -> difference id
};

GeneralMultiplier build_general_multiplier(
    const DiffMachine& wd, const RewritingSystem& rs, const Fsa& wa,
    uint64_t state_cap = kDefaultStateCap);

// Multi initial variant: one initial product state per start difference
// (duplicates merged); graph.initials lists them in first-occurrence order.
GeneralMultiplier build_general_multiplier(
    const DiffMachine& wd, const RewritingSystem& rs, const Fsa& wa,
    const std::vector<uint32_t>& starts,
    uint64_t state_cap = kDefaultStateCap);

// Multiplier for the group element of `target` (a one letter word for the
// generator multipliers, empty for the padding multiplier): accepts (u, v)
// with u, v accepted words and u * target = v.
Fsa multiplier_for(const GeneralMultiplier& gm, const DiffMachine& wd,
                   const RewritingSystem& rs, const Word& target);

// The unique v with (u, v) accepted, if any.
std::optional<Word> multiplier_image(const Fsa& m, const Word& u);

// A word strictly smaller than w and equal to it in the group, if the
// difference machine can exhibit one; nullopt when w looks minimal.
std::optional<Word> witness_smaller(const DiffMachine& wd,
                                    const RewritingSystem& rs, const Word& w);

// One shortlex automatic structure: the rewriting system it was grown from,
// the word differences, the acceptor and one multiplier per generator plus
// the padding multiplier at index alpha.size().
struct AutomaticStructure {
  RewritingSystem rs;
  DiffMachine wd;
  Fsa wa;
  std::vector<Fsa> mult;
  bool verified = false;
  int rounds = 0;          // correction rounds used
  std::string note;        // human readable failure note when not verified
};

struct AutLimits {
  KbLimits kb;
  int max_rounds = 8;
  uint64_t state_cap = kDefaultStateCap;
};

enum class CheckStatus { ok, failed, inconclusive };

struct AxiomReport {
  CheckStatus status = CheckStatus::ok;
  std::string detail;                    // first failure, human readable
  // counterexamples for the correction loop
  std::vector<std::pair<Word, Word>> equal_pairs;   // u = v in G, u != v
  std::vector<std::pair<Word, Word>> trace_pairs;   // multiplier pairs to trace
};

// Validity checks: the padding multiplier is the diagonal, every generator
// multiplier is total on the acceptor, and composite multipliers agree for
// both sides of every relation (inverse relations x x^-1 = 1 included).
AxiomReport check_axioms(const AutomaticStructure& as,
                         const std::vector<std::pair<Word, Word>>& relations,
                         uint64_t state_cap = kDefaultStateCap);

// Knuth-Bendix, difference collection, construction and correction rounds.
AutomaticStructure compute_automatic_structure(const Presentation& p,
                                               const AutLimits& lim = {});

// The accepted word equal to w, computed letter by letter through the
// multipliers: u_0 = the empty word, u_{i+1} = the partner of (u_i, w[i])
// in the letter multiplier. Each step is one automaton search over |u_i|,
// so the total is quadratic in |w|. Throws input_error when some step has
// no partner, which convicts the structure.
Word word_reduce_quadratic(const AutomaticStructure& s, const Word& w);

}  // namespace autogrp
