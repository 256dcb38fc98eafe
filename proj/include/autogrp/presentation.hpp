#pragma once

#include <string>
#include <utility>
#include <vector>

#include "autogrp/common.hpp"
#include "autogrp/word.hpp"

namespace autogrp {

// A finite group presentation. Relations are equations between words over
// the generator alphabet; free cancellation x x^-1 = 1 is implicit and never
// listed. Every generator must have a declared inverse symbol.
//
// Text form:
//   group {
//     name = f2q ;
//     generators = a A b B ;
//     inverses = a:A b:B ;
//     relations {
//       a b = b a ;
//       b b b = _ ;
//     }
//   }
struct Presentation {
  std::string name;
  Alphabet alpha;
  std::vector<std::pair<Word, Word>> relations;

  void add_relation(Word lhs, Word rhs) {
    relations.emplace_back(std::move(lhs), std::move(rhs));
  }
  void add_relation(const std::string& lhs, const std::string& rhs) {
    relations.emplace_back(alpha.parse_word(lhs), alpha.parse_word(rhs));
  }
};

// Subgroup given by generator words over the parent group's alphabet.
//
//   subgroup {
//     name = h ;
//     of = f2q.grp ;        # optional pointer to the parent group file
//     generators {
//       a a ;
//       b a B ;
//     }
//   }
struct SubgroupInput {
  std::string name;
  std::string of;
  std::vector<Word> generators;
};

// HNN extension of a base group: one stable letter t with t^-1 h t = alpha(h)
// for the subgroup generated by sub_generators. alpha[i] is a word over the
// subgroup alphabet (y1 Y1 y2 Y2 ...) giving the image of y<i+1>. The sub
// block must precede alpha; a missing alpha block means the identity map.
//
//   hnn {
//     name = toy ;
//     base { name = f2 ; generators = a A b B ; inverses = a:A b:B ;
//            relations { } }
//     stable = t T ;
//     sub { a ; }
//     alpha { y1 = y1 ; }
//   }
struct HnnInput {
  std::string name;
  Presentation base;
  std::string stable = "t";
  std::string stable_inv = "T";
  std::vector<Word> sub_generators;
  std::vector<Word> alpha;
};

Presentation parse_group(const std::string& text);
std::string format_group(const Presentation& p);
SubgroupInput parse_subgroup(const std::string& text, const Alphabet& parent);
HnnInput parse_hnn(const std::string& text);

// Subgroup generator alphabet y1 Y1 y2 Y2 ... with yi:Yi inverse pairs.
Alphabet make_sub_alphabet(size_t n);

// Tietze transformations; each returns a presentation of the same group.
//
// add_generator introduces name/inv_name with defining relation name = w.
Presentation tietze_add_generator(const Presentation& p,
                                  const std::string& name,
                                  const std::string& inv_name, const Word& w);

// eliminate removes generator g using a relation whose freely reduced
// relator contains g (or its inverse) exactly once; the solution is
// substituted into every other relation. If solution is non-null it
// receives g's value as a word over the old alphabet. use_relation picks
// the relation by index instead of taking the first usable one. Throws
// input_error when no usable relation exists.
Presentation tietze_eliminate(const Presentation& p, Sym g,
                              Word* solution = nullptr,
                              size_t use_relation = SIZE_MAX);

// Small helpers for massaging individual relations.
// replace_first rewrites the first occurrence of `from` in w to `to`.
bool replace_first(Word& w, const Word& from, const Word& to);
// transfer_suffix right-multiplies both sides of lhs = rhs by the inverse
// of lhs's last n letters; transfer_prefix mirrors it on the left.
void transfer_suffix(const Alphabet& a, Word& lhs, Word& rhs, size_t n);
void transfer_prefix(const Alphabet& a, Word& lhs, Word& rhs, size_t n);

}  // namespace autogrp
