#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "autogrp/autostructure.hpp"
#include "autogrp/cosets.hpp"
#include "autogrp/fsa.hpp"
#include "autogrp/presentation.hpp"

namespace autogrp {

// HNN extension K = <G, z | z^-1 y z = alpha(y)> of a base group G over a
// subgroup H = <Y>, for an automorphism alpha of H permuting the subgroup
// letters. Every element of K has a unique normal form
//     h t_1 z^{n_1} t_2 z^{n_2} ... t_r z^{n_r}
// with h in H, each t_i a coset representative, t_i nonempty for i > 1 and
// n_i nonzero for i < r. Serialized K-words run over the group alphabet
// plus the stable letter pair; the H-part is rendered through the reduced
// group values of the subgroup letters, which keeps the language bijective
// because the coset split of the leading group segment is unique.
struct HnnNormalForm {
  Word h;                                    // subgroup letters, in L_H
  std::vector<std::pair<Word, int>> blocks;  // (rep over group letters, exp)
};

// Two-tape multiplier. The machine is an async Fsa over the K alphabet
// plus end marker; state s reads the tape given by m.reads[s]. gsum renders
// the tracked difference of each state: the proof phase it belongs to and
// the K normal form of g(t) = u(phi)^-1 v(psi).
struct AsyncAutomaton {
  Fsa m;
  std::vector<std::string> gsum;
  size_t max_g = 0;  // largest tracked difference size in the machine
};

struct HnnSystem {
  HnnInput in;
  Alphabet kalpha;           // group letters, then stable letter and inverse
  Sym z = kNoSym;
  Sym zinv = kNoSym;
  AutomaticStructure gas;    // base group
  CosetSystem cs;            // (G, H)
  AutomaticStructure has;    // H over the subgroup alphabet
  std::vector<Sym> aperm;    // alpha as a permutation of subgroup letters
  std::vector<Sym> aperm_inv;
  std::vector<Word> render;  // subgroup letter -> reduced group value
  size_t kbound = 0;         // max subgroup length of any c1 split
  Fsa lk;                    // normal form acceptor over kalpha
  std::vector<AsyncAutomaton> mult;  // kalpha letters, then subgroup letters
  bool verified = false;
  std::string note;

  // Multiplier letters: kalpha ids cover the group letters and z, z^-1;
  // subgroup letter b is addressed as kalpha.size() + b.
  size_t nmult() const { return kalpha.size() + cs.bsub.size(); }
  std::string letter_name(size_t c) const {
    return c < kalpha.size() ? kalpha.name(static_cast<Sym>(c))
                             : cs.bsub.name(static_cast<Sym>(c - kalpha.size()));
  }
};

struct HnnLimits {
  AutLimits aut;        // base group and H structure budgets
  CosetLimits cos;
  uint64_t state_cap = kDefaultStateCap;
  size_t gcap = 32;     // size cap on tracked differences in multipliers
  size_t diff_depth = 6;  // true-pair collection depth for the differences
};

// Builds and verifies every part: automatic structures for G and H, the
// coset system with the efficiency check, alpha as a letter permutation,
// the normal form acceptor and one async multiplier per letter. A failed
// component leaves verified false with a note; budget overruns throw.
HnnSystem build_hnn_system(const HnnInput& in, const HnnLimits& lim = {});

// Unique normal form of the element of w (a word over kalpha), computed by
// left-to-right collection: group letters split as c = c1 c2 with c1 a
// subgroup word and c2 the coset representative, subgroup parts commute
// past z-runs through powers of alpha and past representatives through
// coset re-splitting, and the H-part is finally reduced into L_H.
HnnNormalForm hnn_normal_form(const HnnSystem& hs, const Word& w);

// Right-multiplies a normal form by one multiplier letter.
HnnNormalForm hnn_multiply(const HnnSystem& hs, const HnnNormalForm& nf,
                           size_t c);

// Serialized K-word of a normal form, and the one-step normal form map.
Word lk_word(const HnnSystem& hs, const HnnNormalForm& nf);
Word hnn_reduce(const HnnSystem& hs, const Word& w);

bool nf_equal(const HnnNormalForm& a, const HnnNormalForm& b);

// Multiplier for letter c: accepts (u, v) iff u, v are accepted normal form
// words and u c = v in K. States track the pair of acceptor states, the
// tracked difference g(t) in normal form, and the z-letter offset between
// the tapes; the read head alternates tapes and holds at +-1 z-offset, so
// z-runs stay synchronized while block length differences accumulate freely.
// The difference set is collected from the true pairs (u, nf of u c) up to
// diff_depth and the graph is closed over exactly that set, so acceptance
// certifies u c = v unconditionally while completeness beyond the collected
// set rests on the verifier.
AsyncAutomaton build_async_multiplier(const HnnSystem& hs, size_t c,
                                      uint64_t state_cap = kDefaultStateCap,
                                      size_t gcap = 32, size_t diff_depth = 6);

struct AsyncRun {
  bool accepted = false;
  size_t phi = 0;        // symbols read from tape 1
  size_t psi = 0;        // symbols read from tape 2
  size_t max_drift = 0;  // max |phi - psi| along the run
  std::vector<std::string> trace;  // "phi psi summary" per step
};

// Deterministic run: each state consumes the next symbol (or end marker) of
// the tape its read head points at; a missing arc rejects. Accepts iff both
// end markers were consumed and the final state accepts.
AsyncRun async_run(const AsyncAutomaton& m, const Word& u, const Word& v,
                   bool want_trace = false);

struct HnnReport {
  bool ok = false;
  uint64_t words = 0;    // normal form words enumerated
  uint64_t accepts = 0;  // positive multiplier checks
  uint64_t rejects = 0;  // sampled negative checks
  size_t max_drift = 0;  // largest head offset seen in accepted runs
  size_t max_g = 0;      // largest tracked difference over all multipliers
  std::string detail;    // first failure
};

// Exhaustive desk-scale check: for every accepted word u up to depth and
// every multiplier letter c, the collected normal form v of u c must be
// accepted by the acceptor and by M_c against u, sampled words v' != v must
// be rejected, and every acceptor word must round-trip through collection.
HnnReport verify_async_structure(const HnnSystem& hs, size_t depth,
                                 size_t reject_samples = 3);

}  // namespace autogrp
