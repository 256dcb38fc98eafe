#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "autogrp/cosets.hpp"
#include "autogrp/autostructure.hpp"
#include "autogrp/fsa_text.hpp"
#include "autogrp/presentation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace autogrp;

namespace {

Presentation f2_pres() {
  Presentation p;
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  return p;
}

Presentation z2_pres() {
  Presentation p = f2_pres();
  p.add_relation("b a", "a b");
  return p;
}

SubgroupInput sub_of(const Presentation& p,
                     const std::vector<std::string>& gens) {
  SubgroupInput s;
  s.name = "h";
  for (const auto& g : gens) s.generators.push_back(p.alpha.parse_word(g));
  return s;
}

std::set<Word> accepted_upto(const Fsa& f, size_t maxlen) {
  auto v = fsa_enumerate(f, maxlen);
  return {v.begin(), v.end()};
}

// independent free reduction over a A b B (inverse = id ^ 1)
Word stack_reduce(const Word& w) {
  Word st;
  for (Sym s : w) {
    if (!st.empty() && st.back() == (s ^ 1))
      st.pop_back();
    else
      st.push_back(s);
  }
  return st;
}

}  // namespace

TEST_CASE("free group modulo <a>: acceptor, dictionary, word problem") {
  Presentation p = f2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a"}));
  REQUIRE(cs.verified);
  CHECK(cs.crs_confluent);
  CHECK(cs.strong);
  CHECK(cs.k == 1);

  // representatives: freely reduced words not starting with a or A
  std::set<Word> want;
  for (const Word& w : oracle::all_words(4, 3))
    if (stack_reduce(w) == w && (w.empty() || w[0] >= 2)) want.insert(w);
  CHECK(accepted_upto(cs.wa, 3) == want);
  CHECK(!subgroup_index(cs).has_value());

  // dictionary holds the trivial element and both subgroup letters
  auto has_entry = [&](const char* b, const char* val) {
    Word bw = cs.bsub.parse_word(b);
    Word vw = p.alpha.parse_word(val);
    for (const auto& e : cs.dict)
      if (e.first == bw && e.second == vw) return true;
    return false;
  };
  CHECK(has_entry("_", "_"));
  CHECK(has_entry("y1", "a"));
  CHECK(has_entry("Y1", "A"));
  CHECK(cs.graph.labels.size() == cs.graph.initials.size());

  REQUIRE(cs.mult.size() == 5);
  for (const Fsa& m : cs.mult) {
    CHECK(m.initials.size() == 1);
    CHECK(pair_padding_ok(m));
  }
  CHECK(fsa_equal(cs.mult[4], diagonal_pair(cs.wa)));

  // membership against an independent stack oracle, both reduction routes
  for (const Word& w : oracle::all_words(4, 6)) {
    Word r = stack_reduce(w);
    bool member =
        std::all_of(r.begin(), r.end(), [](Sym s) { return s <= 1; });
    CHECK(generalized_word_problem(cs, w) == member);
  }
  for (const Word& w : oracle::all_words(4, 4))
    CHECK(coset_reduce(cs, w) == coset_rep(cs, w));

  // accepted words are exactly their own representatives
  for (const Word& w : oracle::all_words(4, 4)) {
    Word rep = coset_rep(cs, w);
    CHECK(fsa_accepts(cs.wa, rep));
    CHECK(fsa_accepts(cs.wa, w) == (w == rep));
  }
}

TEST_CASE("free group modulo <a>: subgroup language and efficiency") {
  Presentation p = f2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a"}));
  REQUIRE(cs.verified);
  AutomaticStructure as = compute_automatic_structure(p);
  REQUIRE(as.verified);

  // L(W) n H = a* u A*
  Fsa sub_wa = subgroup_word_acceptor(as.wa, cs);
  std::set<Word> want;
  want.insert(Word{});
  for (size_t n = 1; n <= 4; ++n) {
    want.insert(Word(n, 0));
    want.insert(Word(n, 1));
  }
  CHECK(accepted_upto(sub_wa, 4) == want);
  CHECK(growth_series(sub_wa, 4) == std::vector<uint64_t>{1, 2, 2, 2});

  EffReport er = efficiency_check(cs);
  CHECK(er.status == CheckStatus::ok);

  QcReport qc = quasiconvexity_probe(as.wa, cs, 6);
  CHECK(!qc.growing);
  CHECK(qc.bound == 0);
  CHECK(quasiconvexity_probe(as.wa, cs, 0).bound == 0);
}

TEST_CASE("whole group as a subgroup: one coset") {
  Presentation p = f2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a", "b"}));
  REQUIRE(cs.verified);
  CHECK(subgroup_index(cs) == uint64_t{1});
  CHECK(accepted_upto(cs.wa, 3) == std::set<Word>{{}});
  for (const Word& w : oracle::all_words(4, 4))
    CHECK(generalized_word_problem(cs, w));

  AutomaticStructure as = compute_automatic_structure(p);
  REQUIRE(as.verified);
  CHECK(fsa_equal(subgroup_word_acceptor(as.wa, cs), as.wa));
}

TEST_CASE("index two subgroup of the free group matches coset enumeration") {
  Presentation p = f2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a", "b b", "b a B"}));
  REQUIRE(cs.verified);
  CHECK(subgroup_index(cs) == uint64_t{2});
  CHECK(accepted_upto(cs.wa, 2) ==
        std::set<Word>{{}, p.alpha.parse_word("b")});

  oracle::ToddCoxeter tc(4, {1, 0, 3, 2}, {},
                         {p.alpha.parse_word("a"), p.alpha.parse_word("b b"),
                          p.alpha.parse_word("b a B")});
  REQUIRE(tc.run());
  CHECK(tc.index() == 2);
  for (const Word& w : oracle::all_words(4, 5))
    CHECK(generalized_word_problem(cs, w) == (tc.coset_of(w) == 1));
  for (const Word& u : oracle::all_words(4, 3))
    for (const Word& v : oracle::all_words(4, 3))
      CHECK((coset_rep(cs, u) == coset_rep(cs, v)) ==
            (tc.coset_of(u) == tc.coset_of(v)));

  AutomaticStructure as = compute_automatic_structure(p);
  REQUIRE(as.verified);
  Fsa sub_wa = subgroup_word_acceptor(as.wa, cs);
  std::set<Word> want;
  for (const Word& w : oracle::all_words(4, 3))
    if (stack_reduce(w) == w && tc.coset_of(w) == 1) want.insert(w);
  CHECK(accepted_upto(sub_wa, 3) == want);
}

TEST_CASE("Z^2 modulo <a>: representatives are powers of b") {
  Presentation p = z2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a"}));
  REQUIRE(cs.verified);
  std::set<Word> want;
  want.insert(Word{});
  for (size_t n = 1; n <= 3; ++n) {
    want.insert(Word(n, 2));
    want.insert(Word(n, 3));
  }
  CHECK(accepted_upto(cs.wa, 3) == want);
  CHECK(!subgroup_index(cs).has_value());
  for (const Word& w : oracle::all_words(4, 5))
    CHECK(generalized_word_problem(cs, w) ==
          (oracle::z2_value(w).second == 0));
}

TEST_CASE("index three subgroup of Z^2 matches coset enumeration") {
  Presentation p = z2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a", "b b b"}));
  REQUIRE(cs.verified);
  CHECK(subgroup_index(cs) == uint64_t{3});
  CHECK(accepted_upto(cs.wa, 2) ==
        std::set<Word>{{}, p.alpha.parse_word("b"), p.alpha.parse_word("B")});

  oracle::ToddCoxeter tc(4, {1, 0, 3, 2}, {p.alpha.parse_word("b a B A")},
                         {p.alpha.parse_word("a"), p.alpha.parse_word("b b b")});
  REQUIRE(tc.run());
  CHECK(tc.index() == 3);
  for (const Word& w : oracle::all_words(4, 5))
    CHECK(generalized_word_problem(cs, w) == (tc.coset_of(w) == 1));
}

TEST_CASE("tracked differences obey the strong bound along accepted pairs") {
  Presentation p = f2_pres();
  for (const auto& gens : {std::vector<std::string>{"a"},
                           std::vector<std::string>{"a", "b b", "b a B"}}) {
    CosetSystem cs = build_coset_system(p, sub_of(p, gens));
    REQUIRE(cs.verified);
    for (const Word& u : fsa_enumerate(cs.wa, 4)) {
      for (Sym a = 0; a < 4; ++a) {
        auto v = multiplier_image(cs.mult[a], u);
        REQUIRE(v.has_value());
        Word ua = u;
        ua.push_back(a);
        Word h = ua;
        Word vi = p.alpha.inverse_word(*v);
        h.insert(h.end(), vi.begin(), vi.end());
        h = cs.grs.reduce(h);
        // h must be a known dictionary value
        bool known = false;
        for (const auto& e : cs.dict) known = known || e.second == h;
        CHECK(known);
        // every intermediate difference stays within the bound
        const size_t n = std::max(u.size(), v->size());
        for (size_t t = 0; t <= n; ++t) {
          Word d(u.begin(), u.begin() + std::min(t, u.size()));
          d = p.alpha.inverse_word(d);
          d.insert(d.end(), h.begin(), h.end());
          d.insert(d.end(), v->begin(),
                   v->begin() + std::min(t, v->size()));
          CHECK(cs.grs.reduce(d).size() <= static_cast<size_t>(cs.k));
        }
      }
    }
  }
}

TEST_CASE("efficiency check flags a tampered initial label") {
  // Z^2 keeps the a-labelled initial live through real arcs (b a = a b)
  Presentation p = z2_pres();
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a"}));
  REQUIRE(cs.verified);
  REQUIRE(efficiency_check(cs).status == CheckStatus::ok);

  uint32_t da = cs.wd.find(p.alpha.parse_word("a"));
  uint32_t db = cs.wd.find(p.alpha.parse_word("b"));
  REQUIRE(da != kNoDiff);
  REQUIRE(db != kNoDiff);
  CosetSystem bad = cs;
  bool tampered = false;
  for (State s : bad.graph.initials)
    if (bad.graph_diff[s] == da) {
      bad.graph_diff[s] = db;  // now labelled b, not a subgroup element
      tampered = true;
      break;
    }
  REQUIRE(tampered);
  EffReport er = efficiency_check(bad);
  CHECK(er.status == CheckStatus::failed);
  CHECK(er.bad_h == p.alpha.parse_word("b"));
}

TEST_CASE("budget and verification guards") {
  Presentation p = f2_pres();
  CosetLimits tiny;
  tiny.state_cap = 2;
  CHECK_THROWS_AS(build_coset_system(p, sub_of(p, {"a"}), tiny), budget_error);

  CosetLimits none;
  none.max_rounds = 0;
  CosetSystem cs = build_coset_system(p, sub_of(p, {"a"}), none);
  CHECK(!cs.verified);
  CHECK_THROWS_AS(coset_reduce(cs, {}), input_error);

  SubgroupInput empty;
  empty.name = "h";
  CHECK_THROWS_AS(build_coset_system(p, empty), input_error);
}

TEST_CASE("coset construction is deterministic") {
  Presentation p = f2_pres();
  CosetSystem c1 = build_coset_system(p, sub_of(p, {"a", "b b", "b a B"}));
  CosetSystem c2 = build_coset_system(p, sub_of(p, {"a", "b b", "b a B"}));
  REQUIRE(c1.verified);
  CHECK(fsa_to_text(c1.wa) == fsa_to_text(c2.wa));
  CHECK(fsa_to_text(c1.graph) == fsa_to_text(c2.graph));
  REQUIRE(c1.mult.size() == c2.mult.size());
  for (size_t i = 0; i < c1.mult.size(); ++i)
    CHECK(fsa_to_text(c1.mult[i]) == fsa_to_text(c2.mult[i]));
  CHECK(c1.dict == c2.dict);
}
