#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autogrp/autostructure.hpp"
#include "autogrp/fsa.hpp"
#include "autogrp/presentation.hpp"
#include "autogrp/rewrite.hpp"

namespace autogrp {

// Automatic coset system for a subgroup H of a shortlex automatic group G.
// The acceptor holds exactly one group word per right coset Hg (the
// shortlex-least element of the coset). Multipliers are midfa pair automata
// over the group alphabet: an initial state labelled by a subgroup element
// h accepts (u, v) exactly when u and v are accepted words with u a = h v
// in G, so v represents the coset of u a. Initial-state labels live in the
// dictionary both as words over the subgroup alphabet y1 Y1 ... and as
// reduced group words; the serialized midfa carries the group word form.
struct CosetSystem {
  Presentation group;
  std::string sub_name;
  std::vector<Word> sub_gens;   // defining words over the group alphabet
  Alphabet bsub;                // subgroup letters y1 Y1 y2 Y2 ...
  Alphabet afull;               // subgroup letters, separator, group letters
  Sym sep = kNoSym;

  RewritingSystem grs;          // group words, shortlex
  RewritingSystem crs;          // coset words, wreath-product order
  DiffMachine wd;               // word differences, reduced group words
  std::vector<std::pair<Word, Word>> dict;  // (subgroup word, group value)

  Fsa wa;                       // coset word acceptor
  Fsa graph;                    // shared multiplier graph, labelled initials
  std::vector<uint32_t> graph_diff;  // graph state -> difference id
  std::vector<Fsa> mult;        // determinized; per generator, pad at end

  bool crs_confluent = false;
  bool verified = false;
  bool strong = false;          // every tracked difference within bound k
  int k = 0;                    // longest word difference
  int rounds = 0;
  std::string note;             // failure note when not verified

  Sym to_full(Sym a) const { return static_cast<Sym>(a + bsub.size() + 1); }
  Word to_full(const Word& w) const;   // group word -> full alphabet
  Word to_group(const Word& w) const;  // full alphabet, group letters only
  // Group word of a word over the subgroup alphabet (unreduced).
  Word sub_value(const Word& bword) const;
};

struct CosetLimits {
  KbLimits kb;
  int max_rounds = 8;
  uint64_t state_cap = kDefaultStateCap;
};

// Knuth-Bendix on the group and on the coset system, dictionary and
// difference collection from the coset rules, then construction and
// correction rounds as for the plain automatic structure.
CosetSystem build_coset_system(const Presentation& g, const SubgroupInput& sub,
                               const CosetLimits& lim = {});

// Shortlex-least representative of the coset H w, via the coset rewriting
// system. Usable even when verification failed.
Word coset_rep(const CosetSystem& cs, const Word& w);
// Subgroup-alphabet word h with w = h * coset_rep(w) in G.
Word coset_label(const CosetSystem& cs, const Word& w);

// Representative of H w via the verified multipliers, one letter at a time.
Word coset_reduce(const CosetSystem& cs, const Word& w);
// Does the element of w lie in H?
bool generalized_word_problem(const CosetSystem& cs, const Word& w);

// Number of cosets: the size of the acceptor's language, nullopt if infinite.
std::optional<uint64_t> subgroup_index(const CosetSystem& cs);

// Acceptor of the accepted group words whose element lies in H. Built as
// the product of the group acceptor with coset representatives; a prefix
// whose representative exceeds rep_cap is treated as dead, so the result is
// exact whenever every prefix of an accepted subgroup word keeps its
// representative within the cap.
Fsa subgroup_word_acceptor(const Fsa& group_wa, const CosetSystem& cs,
                           size_t rep_cap = 8,
                           uint64_t state_cap = kDefaultStateCap);

// Efficiency of the chosen subgroup generators: for every subgroup letter b
// with defining word w_b, each subgroup element h arising from accepted
// words as u w_b = h v must be trivial or the value of a single subgroup
// letter. The arising h are the labels of live initial states of the shared
// graph anchored at w_b; coverage of all accepted u is certified against
// the acceptor first.
struct EffReport {
  CheckStatus status = CheckStatus::ok;
  std::string detail;
  Sym bad_b = kNoSym;  // subgroup letter whose multiplier violates
  Word bad_h;          // offending label as a reduced group word
};
EffReport efficiency_check(const CosetSystem& cs,
                           uint64_t state_cap = kDefaultStateCap);

// Quasiconvexity probe: walks words accepted by the group acceptor whose
// element lies in H, up to the given length, and measures the coset
// representative of every prefix. Reports the largest representative seen
// and flags growth when the per-length maxima keep increasing. A probe,
// not a proof, in either direction.
struct QcReport {
  bool growing = false;
  size_t bound = 0;  // longest prefix representative observed
  std::vector<std::pair<Word, Word>> family;  // (prefix, representative)
  std::string detail;
};
QcReport quasiconvexity_probe(const Fsa& group_wa, const CosetSystem& cs,
                              size_t depth, uint64_t node_budget = 200000);

// Directed probe for a family x^n y^n, n = 1..nmax: each member must lie in
// H (and be accepted by group_wa when given); the prefixes x^n witness
// growth when their representatives strictly lengthen.
QcReport quasiconvexity_family(const CosetSystem& cs, const Word& x,
                               const Word& y, int nmax,
                               const Fsa* group_wa = nullptr);

}  // namespace autogrp
