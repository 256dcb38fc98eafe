#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "autogrp/common.hpp"
#include "autogrp/word.hpp"

namespace autogrp {

enum class FsaKind { dfa, pair, midfa, async };

// One automaton type covers the four variants used here.
//
//  dfa    deterministic, single initial, partial transition table
//  pair   dfa over the padded pair alphabet (A u {pad})^2 \ {(pad,pad)};
//         `base` holds A and symbols are encoded with pair_sym below
//  midfa  dfa table with several initial states, each optionally labelled
//         by a word (over `base`)
//  async  two tape machine; each state reads the tape given by `reads`,
//         symbols are base symbols plus the end marker (last symbol id)
//
// Absent transitions are dead: there is no explicit failure state.
struct Fsa {
  FsaKind kind = FsaKind::dfa;
  Alphabet base;
  uint32_t nsym = 0;
  std::vector<State> initials;      // sorted, single element unless midfa
  std::vector<Word> labels;         // midfa only, parallel to initials
  std::vector<State> trans;         // nstates * nsym, kNoState = absent
  std::vector<uint8_t> accept;
  std::vector<uint8_t> reads;       // async only, values 1 or 2

  uint32_t nstates() const { return static_cast<uint32_t>(accept.size()); }
  State initial() const { return initials.at(0); }

  State step(State s, Sym a) const {
    return trans[static_cast<size_t>(s) * nsym + a];
  }
  void set_trans(State s, Sym a, State t) {
    trans[static_cast<size_t>(s) * nsym + a] = t;
  }
  State add_state(bool accepting) {
    trans.resize(trans.size() + nsym, kNoState);
    accept.push_back(accepting ? 1 : 0);
    return nstates() - 1;
  }

  // Pair symbol codec.  pd = base.size() is the padding id; the (pad,pad)
  // column is allocated but never used.
  Sym pair_sym(Sym a, Sym b) const {
    return static_cast<Sym>(a * (base.size() + 1) + b);
  }
  Sym pair_left(Sym c) const { return static_cast<Sym>(c / (base.size() + 1)); }
  Sym pair_right(Sym c) const {
    return static_cast<Sym>(c % (base.size() + 1));
  }

  static Fsa empty_dfa(const Alphabet& a, FsaKind kind = FsaKind::dfa);
};

// Stateless skeletons: add states, then set initials.
Fsa make_dfa(const Alphabet& a);
Fsa make_pair_fsa(const Alphabet& a);
Fsa make_async_fsa(const Alphabet& a);  // symbols plus trailing end marker

inline constexpr uint64_t kDefaultStateCap = 1000000;

bool fsa_accepts(const Fsa& d, const Word& w);
// Runs the padded pair (u, v) through a pair automaton.
bool pair_accepts(const Fsa& p, const Word& u, const Word& v);

// Restrict to states that are reachable and can reach an accepting state.
// Keeps at least the initial state(s); prunes midfa initials that are dead.
Fsa fsa_trim(const Fsa& m);

// Subset construction; accepts any Fsa whose language is defined by the
// union over its initial states (midfa) and returns a dfa of the same kind
// family (midfa determinizes to dfa, pair stays pair).
Fsa determinize(const Fsa& m, uint64_t state_cap = kDefaultStateCap);

// Minimal partial dfa with canonical breadth-first state numbering, so equal
// languages over equal alphabets serialize identically.
Fsa minimize(const Fsa& d);

enum class BoolKind { and_, or_, andnot };
Fsa fsa_bool(BoolKind k, const Fsa& a, const Fsa& b,
             uint64_t state_cap = kDefaultStateCap);

// Language of words whose padded pair with some partner is accepted;
// coord = 1 keeps the left tape, coord = 2 the right.
Fsa exists_project(const Fsa& p, int coord,
                   uint64_t state_cap = kDefaultStateCap);

// Relational composition of two pair automata.
Fsa compose(const Fsa& p, const Fsa& q,
            uint64_t state_cap = kDefaultStateCap);

// {(w, w) : w in L(d)} as a pair automaton.
Fsa diagonal_pair(const Fsa& d);

// Accepted words of length <= max_len in shortlex order.
std::vector<Word> fsa_enumerate(const Fsa& d, size_t max_len);

// Number of accepted words of each length 0..nterms-1.
std::vector<uint64_t> growth_series(const Fsa& d, size_t nterms);

// Size of the accepted language, or nullopt if infinite.
std::optional<uint64_t> language_size(const Fsa& d);

// Language equality via canonical minimization.
bool fsa_equal(const Fsa& a, const Fsa& b);

// Shortlex-least word accepted by exactly one of the two automata.
std::optional<Word> fsa_diff_witness(const Fsa& a, const Fsa& b);

// Shortlex-least pair (by left word, then right) accepted by exactly one of
// two pair automata, decoded into its two tapes.
std::optional<std::pair<Word, Word>> pair_diff_witness(const Fsa& a,
                                                       const Fsa& b);

// Checks the padded pair discipline: no (pad,pad) arcs and once a tape has
// been padded it stays padded along every path.
bool pair_padding_ok(const Fsa& p);

}  // namespace autogrp
