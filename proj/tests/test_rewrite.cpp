#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "autogrp/presentation.hpp"
#include "autogrp/rewrite.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace autogrp;

namespace {

Presentation z2_pres() {
  Presentation p;
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  p.add_relation("b a", "a b");
  return p;
}

std::vector<std::pair<Word, Word>> live_rules(const RewritingSystem& rs) {
  std::vector<std::pair<Word, Word>> out;
  for (uint32_t i : rs.live_rule_ids())
    out.emplace_back(rs.rules[i].lhs, rs.rules[i].rhs);
  return out;
}

}  // namespace

TEST_CASE("free group: completion is immediate") {
  Presentation p;
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  RewritingSystem rs = make_group_rws(p);
  CHECK(knuth_bendix(rs));
  CHECK(rs.confluent);
  CHECK(rs.live_count() == 4);  // just the cancellation rules
  for (const Word& w : oracle::all_words(4, 5))
    CHECK(rs.reduce(w) == p.alpha.free_reduce(w));
}

TEST_CASE("cyclic group of order two") {
  Presentation p;
  p.alpha.add_pair("a", "A");
  p.add_relation("a a", "_");
  RewritingSystem rs = make_group_rws(p);
  REQUIRE(knuth_bendix(rs));

  auto rules = live_rules(rs);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0] == std::make_pair(p.alpha.parse_word("A"),
                                   p.alpha.parse_word("a")));
  CHECK(rules[1] == std::make_pair(p.alpha.parse_word("a a"), Word{}));

  CHECK(rs.reduce(p.alpha.parse_word("a a a")) == p.alpha.parse_word("a"));
  std::set<Word> nfs;
  for (const Word& w : oracle::all_words(2, 4)) nfs.insert(rs.reduce(w));
  CHECK(nfs == std::set<Word>{{}, {0}});
}

TEST_CASE("Z^2: canonical eight rule system") {
  RewritingSystem rs = make_group_rws(z2_pres());
  REQUIRE(knuth_bendix(rs));
  CHECK(rs.confluent);
  CHECK(rs.live_count() == 8);

  const Alphabet& a = rs.alpha;
  CHECK(rs.reduce(a.parse_word("b a b a")) == a.parse_word("a a b b"));
  CHECK(rs.is_reduced(a.parse_word("a a b b")));
  CHECK(!rs.is_reduced(a.parse_word("a b a")));

  // every word up to length five hits the abelianized normal form
  for (const Word& w : oracle::all_words(4, 5)) {
    auto [x, y] = oracle::z2_value(w);
    CHECK(rs.reduce(w) == oracle::z2_nf(x, y));
  }

  // exhaustive local confluence: unique normal forms along all paths
  auto rules = live_rules(rs);
  for (const Word& w : oracle::all_words(4, 6)) {
    std::set<Word> nf = oracle::normal_forms(rules, w);
    REQUIRE(nf.size() == 1);
    CHECK(*nf.begin() == rs.reduce(w));
  }

  // a redundant consequence must interreduce away to the same eight rules
  RewritingSystem rs2 = make_group_rws(z2_pres());
  rs2.add_equation(rs2.alpha.parse_word("b a b a"),
                   rs2.alpha.parse_word("a b b a"));
  REQUIRE(knuth_bendix(rs2));
  CHECK(live_rules(rs2) == rules);
}

TEST_CASE("S3: six elements, five rules") {
  Presentation p;
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  p.add_relation("a a", "_");
  p.add_relation("b b", "_");
  p.add_relation("a b a b a b", "_");
  RewritingSystem rs = make_group_rws(p);
  REQUIRE(knuth_bendix(rs));
  CHECK(rs.live_count() == 5);

  const Alphabet& a = p.alpha;
  CHECK(rs.reduce(a.parse_word("a b a b")) == a.parse_word("b a"));

  // normal forms biject with the six permutations
  std::set<Word> nfs;
  std::set<oracle::Perm3> perms;
  for (const Word& w : oracle::all_words(4, 6)) {
    Word nf = rs.reduce(w);
    CHECK(oracle::s3_eval(nf) == oracle::s3_eval(w));
    nfs.insert(nf);
    perms.insert(oracle::s3_eval(w));
  }
  CHECK(nfs.size() == 6);
  CHECK(perms.size() == 6);
  std::set<Word> expect;
  for (const char* s : {"_", "a", "b", "a b", "b a", "a b a"})
    expect.insert(a.parse_word(s));
  CHECK(nfs == expect);
}

TEST_CASE("rule budget stops completion honestly") {
  Presentation p;
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  p.add_relation("b a", "a b");
  RewritingSystem rs = make_group_rws(p);
  KbLimits lim;
  lim.max_rules = 5;
  CHECK(!knuth_bendix(rs, lim));
  CHECK(!rs.confluent);
  // the partial system still rewrites soundly
  Word w = rs.reduce(rs.alpha.parse_word("a A b a"));
  auto [x, y] = oracle::z2_value(w);
  CHECK(x == 1);
  CHECK(y == 1);
}

TEST_CASE("coset mode: Z with subgroup 2Z") {
  // alphabet y Y # a A, subgroup generated by a^2
  Alphabet al;
  al.add_pair("y", "Y");
  Sym sep = al.add("#");
  al.add_pair("a", "A");
  RewritingSystem rs(al, {1, 1, 2, 3, 3});
  rs.coset_mode = true;
  rs.sep = sep;
  rs.add_equation(al.parse_word("# a a"), al.parse_word("y #"));
  rs.add_equation(al.parse_word("# A A"), al.parse_word("Y #"));
  REQUIRE(knuth_bendix(rs));
  CHECK(rs.confluent);

  CHECK(rs.reduce(al.parse_word("# a a a a")) == al.parse_word("y y #"));
  CHECK(rs.reduce(al.parse_word("# a a a")) == al.parse_word("y # a"));
  // the inverse coset of a is a itself times Y
  CHECK(rs.reduce(al.parse_word("# A")) == al.parse_word("Y # a"));

  // cosets of 2Z: representatives are only _ and a
  std::set<Word> reps;
  for (int n = -4; n <= 4; n++) {
    Word w{sep};
    for (int i = 0; i < std::abs(n); i++) w.push_back(n > 0 ? 3 : 4);
    Word r = rs.reduce(w);
    // strip the subgroup prefix
    auto it = std::find(r.begin(), r.end(), sep);
    REQUIRE(it != r.end());
    reps.insert(Word(it + 1, r.end()));
  }
  CHECK(reps == std::set<Word>{{}, {3}});
}

TEST_CASE("coset mode: free group modulo <a>") {
  Alphabet al;
  al.add_pair("y", "Y");
  Sym sep = al.add("#");
  al.add_pair("a", "A");
  al.add_pair("b", "B");
  RewritingSystem rs(al, {1, 1, 2, 3, 3, 3, 3});
  rs.coset_mode = true;
  rs.sep = sep;
  rs.add_equation(al.parse_word("# a"), al.parse_word("y #"));
  REQUIRE(knuth_bendix(rs));

  // the equation # A = Y # is derived, not supplied
  CHECK(rs.reduce(al.parse_word("# A")) == al.parse_word("Y #"));
  CHECK(rs.reduce(al.parse_word("# a b A")) == al.parse_word("y # b A"));
  CHECK(rs.reduce(al.parse_word("# a b a B A")) ==
        al.parse_word("y # b a B A"));

  // coset representatives never start with a or A
  for (const Word& w : oracle::all_words(4, 4)) {
    Word in{sep};
    for (Sym s : w) in.push_back(static_cast<Sym>(s + 3));
    Word r = rs.reduce(in);
    auto it = std::find(r.begin(), r.end(), sep);
    Word rep(it + 1, r.end());
    if (!rep.empty()) CHECK(rep[0] >= 5);
  }
}

TEST_CASE("wreath order completes Z^2 with b heavier than a") {
  Alphabet al;
  al.add_pair("a", "A");
  al.add_pair("b", "B");
  RewritingSystem rs(al, {1, 1, 2, 2});
  rs.add_equation(al.parse_word("b a"), al.parse_word("a b"));
  REQUIRE(knuth_bendix(rs));
  Word nf = rs.reduce(al.parse_word("b a b A"));
  auto [x, y] = oracle::z2_value(nf);
  CHECK(x == 0);
  CHECK(y == 2);
  for (const Word& w : oracle::all_words(4, 4)) {
    auto [wx, wy] = oracle::z2_value(w);
    CHECK(rs.reduce(w) == rs.reduce(oracle::z2_nf(wx, wy)));
  }
}
