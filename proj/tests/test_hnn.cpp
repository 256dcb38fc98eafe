#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "autogrp/fsa_text.hpp"
#include "autogrp/hnn.hpp"
#include "autogrp/presentation.hpp"
#include "autogrp/rewrite.hpp"
#include "doctest.h"

using namespace autogrp;

namespace {

// K1 = <a,b,z | za = az>: free base, H = <a>, alpha = id.
HnnInput toy_in() {
  HnnInput in;
  in.name = "toy";
  in.base.alpha.add_pair("a", "A");
  in.base.alpha.add_pair("b", "B");
  in.stable = "z";
  in.stable_inv = "Z";
  in.sub_generators = {in.base.alpha.parse_word("a")};
  return in;
}

// K = F2 x Z: H is the whole base group, every element is h z^n.
HnnInput whole_in() {
  HnnInput in = toy_in();
  in.name = "f2xz";
  in.sub_generators = {in.base.alpha.parse_word("a"),
                       in.base.alpha.parse_word("b")};
  return in;
}

// K3 = <a,b,z | zaa = aaz>: H = <a^2> has index 2 in <a>.
HnnInput k3_in() {
  HnnInput in = toy_in();
  in.name = "k3";
  in.sub_generators = {in.base.alpha.parse_word("a a")};
  return in;
}

// K4 = <a,b,z | za = Az>: alpha inverts the subgroup generator.
HnnInput k4_in() {
  HnnInput in = toy_in();
  in.name = "k4";
  in.alpha = {Word{1}};  // y1 -> Y1
  return in;
}

// Confluent rewriting system on the K presentation, used as an
// independent equality oracle where completion terminates.
RewritingSystem k_oracle(const HnnInput& in) {
  Presentation k;
  k.alpha = in.base.alpha;
  Sym z = k.alpha.size();
  k.alpha.add_pair(in.stable, in.stable_inv);
  k.relations = in.base.relations;
  for (size_t i = 0; i < in.sub_generators.size(); ++i) {
    // z^-1 y z = alpha(y) oriented as y z = z alpha(y)
    Word lhs = in.sub_generators[i];
    lhs.push_back(z);
    Word rhs{z};
    for (Sym s : in.alpha.empty() ? Word{static_cast<Sym>(2 * i)}
                                  : in.alpha[i]) {
      Word img = in.sub_generators[s / 2];
      if (s % 2) img = in.base.alpha.inverse_word(img);
      rhs.insert(rhs.end(), img.begin(), img.end());
    }
    k.relations.emplace_back(std::move(lhs), std::move(rhs));
  }
  RewritingSystem rs = make_group_rws(k);
  REQUIRE(knuth_bendix(rs));
  return rs;
}

// Britton's lemma triviality oracle for K3: free-reduce, then repeatedly
// remove pinches z^-1 h z and z h z^-1 with h a word in <a^2> (alpha = id
// keeps h fixed), and test for the empty word. Sound and complete for the
// word problem of the extension, entirely independent of the toolkit.
Word free_reduce(const Alphabet& a, const Word& w) {
  Word out;
  for (Sym s : w) {
    if (!out.empty() && a.inverse(out.back()) == s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

bool k3_trivial(const Alphabet& ka, Word w) {
  const Sym a = *ka.find("a"), ai = *ka.find("A");
  const Sym z = *ka.find("z"), zi = *ka.find("Z");
  w = free_reduce(ka, w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < w.size() && !changed; ++i) {
      if (w[i] != z && w[i] != zi) continue;
      int bal = 0;
      for (size_t j = i + 1; j < w.size(); ++j) {
        if (w[j] == z || w[j] == zi) {
          if (w[j] != ka.inverse(w[i])) break;
          // interior must be an even power of a
          for (size_t t = i + 1; t < j; ++t)
            if (w[t] != a && w[t] != ai) bal = 1;
          long pow = 0;
          for (size_t t = i + 1; t < j; ++t) pow += w[t] == a ? 1 : -1;
          if (bal == 0 && pow % 2 == 0) {
            Word next(w.begin(), w.begin() + i);
            next.insert(next.end(), w.begin() + i + 1, w.begin() + j);
            next.insert(next.end(), w.begin() + j + 1, w.end());
            w = free_reduce(ka, next);
            changed = true;
          }
          break;
        }
      }
    }
  }
  return w.empty();
}

std::vector<Word> words_upto(size_t nsym, size_t maxlen) {
  std::vector<Word> out{Word{}};
  size_t lo = 0;
  for (size_t len = 1; len <= maxlen; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (Sym c = 0; c < static_cast<Sym>(nsym); ++c) {
        Word w = out[i];
        w.push_back(c);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

bool lk_accepts(const HnnSystem& hs, const Word& w) {
  State s = hs.lk.initial();
  for (Sym c : w) {
    s = hs.lk.step(s, c);
    if (s == kNoState) return false;
  }
  return hs.lk.accept[s];
}

}  // namespace

TEST_CASE("toy extension: collection matches the hand normal forms") {
  HnnSystem hs = build_hnn_system(toy_in());
  REQUIRE(hs.verified);
  const Alphabet& ka = hs.kalpha;

  HnnNormalForm za = hnn_normal_form(hs, ka.parse_word("z a"));
  CHECK(za.h == Word{0});  // the element a, as the subgroup letter y1
  REQUIRE(za.blocks.size() == 1);
  CHECK(za.blocks[0].first.empty());
  CHECK(za.blocks[0].second == 1);
  CHECK(lk_word(hs, za) == ka.parse_word("a z"));

  HnnNormalForm b = hnn_normal_form(hs, ka.parse_word("b"));
  CHECK(b.h.empty());
  REQUIRE(b.blocks.size() == 1);
  CHECK(b.blocks[0].first == ka.parse_word("b"));
  CHECK(b.blocks[0].second == 0);

  HnnNormalForm zz = hnn_normal_form(hs, ka.parse_word("z Z"));
  CHECK(zz.h.empty());
  REQUIRE(zz.blocks.size() == 1);
  CHECK(zz.blocks[0].first.empty());
  CHECK(zz.blocks[0].second == 0);
  CHECK(lk_word(hs, zz).empty());
}

TEST_CASE("toy extension: acceptor language and multiplier spot checks") {
  HnnSystem hs = build_hnn_system(toy_in());
  REQUIRE(hs.verified);
  const Alphabet& ka = hs.kalpha;

  CHECK(lk_accepts(hs, {}));
  CHECK(lk_accepts(hs, ka.parse_word("a z")));
  CHECK_FALSE(lk_accepts(hs, ka.parse_word("z a")));
  CHECK_FALSE(lk_accepts(hs, ka.parse_word("z Z")));
  CHECK_FALSE(lk_accepts(hs, ka.parse_word("a A")));

  const Sym a = *ka.find("a"), z = *ka.find("z");
  AsyncRun mz = async_run(hs.mult[z], ka.parse_word("b"), ka.parse_word("b z"));
  CHECK(mz.accepted);
  AsyncRun ma = async_run(hs.mult[a], ka.parse_word("z"), ka.parse_word("a z"));
  CHECK(ma.accepted);
  AsyncRun bad = async_run(hs.mult[a], ka.parse_word("z"), ka.parse_word("z a"));
  CHECK_FALSE(bad.accepted);
}

TEST_CASE("toy extension: bijectivity against the confluent oracle") {
  HnnInput in = toy_in();
  HnnSystem hs = build_hnn_system(in);
  REQUIRE(hs.verified);
  RewritingSystem oracle = k_oracle(in);

  std::map<Word, Word> cls;  // oracle form -> hnn form
  for (const Word& w : words_upto(hs.kalpha.size(), 5)) {
    Word key = oracle.reduce(w);
    Word nf = hnn_reduce(hs, w);
    CHECK(lk_accepts(hs, nf));
    CHECK(oracle.reduce(nf) == key);  // same element after rendering
    auto [it, fresh] = cls.emplace(key, nf);
    if (!fresh) CHECK(it->second == nf);
  }
  // distinct classes stay distinct
  std::set<Word> forms;
  for (const auto& [key, nf] : cls) forms.insert(nf);
  CHECK(forms.size() == cls.size());
}

TEST_CASE("toy extension: exhaustive verification at depth 6") {
  HnnSystem hs = build_hnn_system(toy_in());
  REQUIRE(hs.verified);
  HnnReport hr = verify_async_structure(hs, 6);
  CHECK(hr.ok);
  CHECK(hr.words == 10945);
  CHECK(hr.rejects > 0);
  // free base: a pushed label dies inside one block, so the tapes never
  // separate by more than the length of a single rendered letter
  CHECK(hr.max_drift <= 2);
}

TEST_CASE("whole subgroup: degenerate blocks and verification") {
  HnnInput in = whole_in();
  HnnSystem hs = build_hnn_system(in);
  REQUIRE(hs.verified);
  const Alphabet& ka = hs.kalpha;

  // every element collects to h z^n: one block with empty representative
  for (const char* s : {"a z b", "z b a z", "b Z a Z"}) {
    HnnNormalForm nf = hnn_normal_form(hs, ka.parse_word(s));
    REQUIRE(nf.blocks.size() == 1);
    CHECK(nf.blocks[0].first.empty());
  }
  RewritingSystem oracle = k_oracle(in);
  std::map<Word, Word> cls;
  for (const Word& w : words_upto(ka.size(), 4)) {
    Word key = oracle.reduce(w);
    Word nf = hnn_reduce(hs, w);
    CHECK(oracle.reduce(nf) == key);
    auto [it, fresh] = cls.emplace(key, nf);
    if (!fresh) CHECK(it->second == nf);
  }
  HnnReport hr = verify_async_structure(hs, 4);
  CHECK(hr.ok);
}

TEST_CASE("index two subgroup: bijectivity against the pinch oracle") {
  HnnInput in = k3_in();
  HnnSystem hs = build_hnn_system(in);
  REQUIRE(hs.verified);
  const Alphabet& ka = hs.kalpha;

  std::map<Word, std::vector<Word>> buckets;  // hnn form -> inputs
  for (const Word& w : words_upto(ka.size(), 4))
    buckets[hnn_reduce(hs, w)].push_back(w);
  for (const auto& [nf, ws] : buckets) {
    CHECK(lk_accepts(hs, nf));
    // every word in a bucket equals its normal form in the group
    for (const Word& w : ws) {
      Word prod = w;
      Word ni = ka.inverse_word(nf);
      prod.insert(prod.end(), ni.begin(), ni.end());
      CHECK(k3_trivial(ka, prod));
    }
  }
  // representatives of distinct buckets are genuinely different elements
  std::vector<Word> reps;
  for (const auto& [nf, ws] : buckets) reps.push_back(nf);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      Word prod = reps[i];
      Word ri = ka.inverse_word(reps[j]);
      prod.insert(prod.end(), ri.begin(), ri.end());
      CHECK_FALSE(k3_trivial(ka, prod));
    }
  HnnReport hr = verify_async_structure(hs, 4);
  CHECK(hr.ok);
}

TEST_CASE("inverting alpha: conjugation identities hold") {
  HnnInput in = k4_in();
  HnnSystem hs = build_hnn_system(in);
  REQUIRE(hs.verified);
  const Alphabet& ka = hs.kalpha;
  RewritingSystem oracle = k_oracle(in);

  // z^-1 a^m z = A^m and pushing z past h applies alpha^-1
  for (int m = 1; m <= 4; ++m) {
    std::string am, iam;
    for (int i = 0; i < m; ++i) {
      am += "a ";
      iam += "A ";
    }
    Word lhs = hnn_reduce(hs, ka.parse_word("Z " + am + "z"));
    CHECK(lhs == hnn_reduce(hs, ka.parse_word(iam)));
    Word push = hnn_reduce(hs, ka.parse_word("z " + am));
    CHECK(push == hnn_reduce(hs, ka.parse_word(iam + "z")));
    // two z's undo the inversion
    Word two = hnn_reduce(hs, ka.parse_word("z z " + am));
    CHECK(two == hnn_reduce(hs, ka.parse_word(am + "z z")));
  }
  std::map<Word, Word> cls;
  for (const Word& w : words_upto(ka.size(), 4)) {
    Word key = oracle.reduce(w);
    Word nf = hnn_reduce(hs, w);
    CHECK(oracle.reduce(nf) == key);
    auto [it, fresh] = cls.emplace(key, nf);
    if (!fresh) CHECK(it->second == nf);
  }
  HnnReport hr = verify_async_structure(hs, 4);
  CHECK(hr.ok);
}

TEST_CASE("free base keeps the tapes together on long block families") {
  HnnSystem hs = build_hnn_system(toy_in());
  REQUIRE(hs.verified);
  const Alphabet& ka = hs.kalpha;
  const Sym a = *ka.find("a");
  const Word period = ka.parse_word("b z a z");
  for (int r = 1; r <= 6; ++r) {
    Word u;
    for (int i = 0; i < r; ++i) u.insert(u.end(), period.begin(), period.end());
    HnnNormalForm nu = hnn_normal_form(hs, u);
    HnnNormalForm nv = hnn_multiply(hs, nu, a);
    AsyncRun run = async_run(hs.mult[a], lk_word(hs, nu), lk_word(hs, nv));
    CHECK(run.accepted);
    CHECK(run.max_drift <= 2);
  }
}

TEST_CASE("async multipliers serialize with read attributes") {
  HnnSystem hs = build_hnn_system(toy_in());
  REQUIRE(hs.verified);
  const Sym a = *hs.kalpha.find("a");
  const Fsa& m = hs.mult[a].m;
  REQUIRE(!m.reads.empty());
  for (uint8_t r : m.reads) CHECK((r == 1 || r == 2));
  std::string text = fsa_to_text(m);
  CHECK(text.find("reads =") != std::string::npos);
  Fsa back = fsa_from_text(text);
  CHECK(back.reads == m.reads);
  CHECK(fsa_to_text(back) == text);

  // determinism: a rebuilt system serializes byte-identically
  HnnSystem again = build_hnn_system(toy_in());
  CHECK(fsa_to_text(again.lk) == fsa_to_text(hs.lk));
  CHECK(fsa_to_text(again.mult[a].m) == text);
}

TEST_CASE("hnn input validation and budget guards") {
  HnnInput bad = toy_in();
  bad.alpha = {Word{0, 0}};  // must be a single letter
  CHECK_THROWS_AS(build_hnn_system(bad), input_error);

  HnnInput clash = toy_in();
  clash.stable = "a";
  clash.stable_inv = "A";
  CHECK_THROWS_AS(build_hnn_system(clash), input_error);

  HnnSystem empty;
  CHECK_THROWS_AS(hnn_reduce(empty, {}), input_error);
  CHECK_THROWS_AS(hnn_multiply(empty, HnnNormalForm{}, 0), input_error);

  HnnSystem hs = build_hnn_system(toy_in());
  REQUIRE(hs.verified);
  CHECK_THROWS_AS(hnn_normal_form(hs, Word{static_cast<Sym>(99)}), input_error);
  CHECK_THROWS_AS(hnn_multiply(hs, hnn_normal_form(hs, {}), hs.nmult()),
                  input_error);
}
