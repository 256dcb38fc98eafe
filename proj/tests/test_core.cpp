#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "autogrp/fsa.hpp"
#include "autogrp/fsa_text.hpp"
#include "autogrp/presentation.hpp"
#include "autogrp/word.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace autogrp;

namespace {

Alphabet f2_alpha() {
  Alphabet a;
  a.add_pair("a", "A");
  a.add_pair("b", "B");
  return a;
}

// Minimal acceptor of freely reduced words over a A b B: one start state
// plus one state per last letter, all accepting.
Fsa f2_acceptor() {
  Alphabet al = f2_alpha();
  Fsa f = make_dfa(al);
  State s0 = f.add_state(true);
  State last[4];
  for (Sym x = 0; x < 4; x++) last[x] = f.add_state(true);
  for (Sym x = 0; x < 4; x++) {
    f.set_trans(s0, x, last[x]);
    for (Sym y = 0; y < 4; y++)
      if (y != al.inverse(x)) f.set_trans(last[x], y, last[y]);
  }
  f.initials = {s0};
  return f;
}

}  // namespace

TEST_CASE("alphabet, parsing and free reduction") {
  Alphabet a = f2_alpha();
  CHECK(a.size() == 4);
  CHECK(a.inverse(0) == 1);
  CHECK(a.name(3) == "B");
  CHECK(a.find("b").value() == 2);
  CHECK(!a.find("x").has_value());

  Word w = a.parse_word("a b B A a");
  CHECK(a.format_word(w) == "a b B A a");
  CHECK(a.free_reduce(w) == a.parse_word("a"));
  CHECK(a.inverse_word(a.parse_word("a b")) == a.parse_word("B A"));
  CHECK(a.parse_word("_").empty());
  CHECK(a.format_word({}) == "_");

  Word lhs = a.parse_word("a b a B");
  Word rhs = a.parse_word("a a a a B");
  REQUIRE(rhs.size() == 5);
  cancel_common(a, lhs, rhs);
  CHECK(a.format_word(lhs) == "b");
  CHECK(a.format_word(rhs) == "a a");

  // packed labels use greedy longest match
  Alphabet y;
  y.add_pair("y1", "Y1");
  y.add_pair("y10", "Y10");
  CHECK(y.parse_packed("y10y1") == Word{2, 0});
  CHECK(y.format_packed({2, 0}) == "y10y1");
  CHECK(y.parse_packed("_").empty());
  CHECK_THROWS_AS(y.parse_packed("y2"), input_error);
}

TEST_CASE("shortlex and wreath product orders") {
  Alphabet a = f2_alpha();
  CHECK(shortlex_cmp({}, {0}) < 0);
  CHECK(shortlex_cmp({0, 0}, {1}) > 0);     // longer is bigger
  CHECK(shortlex_cmp({0, 2}, {0, 3}) < 0);  // ab < aB
  CHECK(shortlex_cmp({2, 0}, {2, 0}) == 0);

  // levels: a A low, b B high -- the order compares b-subwords first, then
  // the low-level fragments between them, leftmost first
  WordOrder o{{1, 1, 2, 2}};
  CHECK(o.cmp(a.parse_word("b"), a.parse_word("a a a")) > 0);
  CHECK(o.cmp(a.parse_word("a b"), a.parse_word("b a")) > 0);
  CHECK(o.cmp(a.parse_word("b a"), a.parse_word("b a a")) < 0);
  CHECK(o.cmp(a.parse_word("b b"), a.parse_word("a b")) > 0);
  CHECK(o.cmp(a.parse_word("a b a b a"), a.parse_word("a b a b a")) == 0);
  // uniform levels degenerate to shortlex
  WordOrder u{{1, 1, 1, 1}};
  CHECK(u.cmp(a.parse_word("a a"), a.parse_word("B")) > 0);
}

TEST_CASE("free group acceptor: language, growth, minimality") {
  Fsa f = f2_acceptor();
  Alphabet a = f.base;

  for (const Word& w : oracle::all_words(4, 6)) {
    bool reduced = a.free_reduce(w) == w;
    CHECK(fsa_accepts(f, w) == reduced);
    CHECK(oracle::walk(f, w) == reduced);
  }

  CHECK(growth_series(f, 5) == std::vector<uint64_t>{1, 4, 12, 36, 108});
  CHECK(!language_size(f).has_value());

  std::vector<Word> expect;
  for (const Word& w : oracle::all_words(4, 3))
    if (a.free_reduce(w) == w) expect.push_back(w);
  CHECK(fsa_enumerate(f, 3) == expect);

  Fsa m = minimize(f);
  CHECK(m.nstates() == 5);
  CHECK(oracle::distinct_behaviours(f, 2) == 5);
  CHECK(fsa_equal(m, f));

  // a redundant duplicate state must minimize away
  Fsa g = f;
  State extra = g.add_state(true);
  for (Sym y = 0; y < 4; y++)
    if (y != a.inverse(0)) g.set_trans(extra, y, g.step(g.step(g.initial(), 0), y));
  g.set_trans(g.initial(), 0, extra);
  CHECK(minimize(g).nstates() == 5);
  CHECK(fsa_equal(g, f));
}

TEST_CASE("boolean operations against enumeration") {
  Alphabet a;
  a.add_pair("a", "A");
  a.add_pair("b", "B");

  // L1: even number of a's
  Fsa f1 = make_dfa(a);
  State e = f1.add_state(true), o = f1.add_state(false);
  f1.set_trans(e, 0, o);
  f1.set_trans(o, 0, e);
  for (Sym s = 1; s < 4; s++) {
    f1.set_trans(e, s, e);
    f1.set_trans(o, s, o);
  }
  f1.initials = {e};

  // L2: ends with b
  Fsa f2 = make_dfa(a);
  State n = f2.add_state(false), y = f2.add_state(true);
  for (Sym s = 0; s < 4; s++) {
    f2.set_trans(n, s, s == 2 ? y : n);
    f2.set_trans(y, s, s == 2 ? y : n);
  }
  f2.initials = {n};

  Fsa fand = fsa_bool(BoolKind::and_, f1, f2);
  Fsa forr = fsa_bool(BoolKind::or_, f1, f2);
  Fsa fnot = fsa_bool(BoolKind::andnot, f1, f2);
  for (const Word& w : oracle::all_words(4, 5)) {
    bool in1 = oracle::walk(f1, w), in2 = oracle::walk(f2, w);
    CHECK(fsa_accepts(fand, w) == (in1 && in2));
    CHECK(fsa_accepts(forr, w) == (in1 || in2));
    CHECK(fsa_accepts(fnot, w) == (in1 && !in2));
  }

  // finite language size: words over {a} of length <= 2
  Fsa fin = make_dfa(a);
  State s0 = fin.add_state(true), s1 = fin.add_state(true),
        s2 = fin.add_state(true);
  fin.set_trans(s0, 0, s1);
  fin.set_trans(s1, 0, s2);
  fin.initials = {s0};
  CHECK(language_size(fin).value() == 3);

  auto w = fsa_diff_witness(f1, f2);
  REQUIRE(w.has_value());
  CHECK(*w == Word{});  // empty word: even a-count but no trailing b
  CHECK(!fsa_diff_witness(f1, f1).has_value());
}

TEST_CASE("midfa determinization is the union over starts") {
  Alphabet a = f2_alpha();
  Fsa m = make_dfa(a);
  m.kind = FsaKind::midfa;
  State p = m.add_state(true), q = m.add_state(true);
  m.set_trans(p, 0, p);  // a^n from p
  m.set_trans(q, 2, q);  // b^n from q
  m.initials = {p, q};
  m.labels = {a.parse_word("_"), a.parse_word("b")};

  Fsa d = determinize(m);
  CHECK(d.kind == FsaKind::dfa);
  CHECK(d.initials.size() == 1);
  for (const Word& w : oracle::all_words(4, 5))
    CHECK(fsa_accepts(d, w) == oracle::walk(m, w));
}

TEST_CASE("pair automata: diagonal, projection, composition") {
  Fsa f = f2_acceptor();
  Fsa diag = diagonal_pair(f);
  CHECK(diag.kind == FsaKind::pair);
  CHECK(pair_padding_ok(diag));

  std::vector<Word> ws = fsa_enumerate(f, 3);
  for (const Word& u : ws)
    for (const Word& v : ws) {
      CHECK(pair_accepts(diag, u, v) == (u == v));
      CHECK(oracle::pair_walk(diag, u, v) == (u == v));
    }

  CHECK(fsa_equal(exists_project(diag, 1), f));
  CHECK(fsa_equal(exists_project(diag, 2), f));
  CHECK(fsa_equal(compose(diag, diag), minimize(diag)));

  // tiny relation {(a, ab)}: right tape one longer, so padding appears
  Alphabet al = f.base;
  Fsa rel = make_pair_fsa(al);
  State r0 = rel.add_state(false), r1 = rel.add_state(false),
        r2 = rel.add_state(true);
  rel.set_trans(r0, rel.pair_sym(0, 0), r1);
  rel.set_trans(r1, rel.pair_sym(al.pad(), 2), r2);
  rel.initials = {r0};
  CHECK(pair_padding_ok(rel));
  CHECK(pair_accepts(rel, al.parse_word("a"), al.parse_word("a b")));
  CHECK(!pair_accepts(rel, al.parse_word("a"), al.parse_word("a")));
  CHECK(oracle::pair_walk(rel, al.parse_word("a"), al.parse_word("a b")));

  // a resumed tape after padding violates the discipline
  Fsa bad = rel;
  bad.set_trans(r2, bad.pair_sym(0, 2), r2);
  CHECK(!pair_padding_ok(bad));

  Fsa none = make_pair_fsa(al);
  none.add_state(false);
  none.initials = {0};
  auto w = pair_diff_witness(rel, none);
  REQUIRE(w.has_value());
  CHECK(w->first == al.parse_word("a"));
  CHECK(w->second == al.parse_word("a b"));

  // composition of {(a, ab)} with its reverse {(ab, a)} relates a to a
  Fsa rev = make_pair_fsa(al);
  State v0 = rev.add_state(false), v1 = rev.add_state(false),
        v2 = rev.add_state(true);
  rev.set_trans(v0, rev.pair_sym(0, 0), v1);
  rev.set_trans(v1, rev.pair_sym(2, al.pad()), v2);
  rev.initials = {v0};
  Fsa comp = compose(rel, rev);
  CHECK(pair_accepts(comp, al.parse_word("a"), al.parse_word("a")));
  CHECK(!pair_accepts(comp, al.parse_word("a"), al.parse_word("a b")));
  CHECK(!pair_accepts(comp, al.parse_word("b"), al.parse_word("b")));

  // middle tape shorter than an outer tape: {(_, a)} o {(a, ab)} relates
  // the empty word to ab; the left machine ends early and must freeze
  Fsa grow = make_pair_fsa(al);
  State g0 = grow.add_state(false), g1 = grow.add_state(true);
  grow.set_trans(g0, grow.pair_sym(al.pad(), 0), g1);
  grow.initials = {g0};
  Fsa two = compose(grow, rel);
  CHECK(pair_accepts(two, Word{}, al.parse_word("a b")));
  CHECK(!pair_accepts(two, Word{}, al.parse_word("a")));
  CHECK(!pair_accepts(two, al.parse_word("a"), al.parse_word("a b")));
}

TEST_CASE("fsa text form round trips byte for byte") {
  Fsa f = minimize(f2_acceptor());
  std::string t1 = fsa_to_text(f);
  Fsa g = fsa_from_text(t1);
  CHECK(fsa_equal(f, g));
  CHECK(fsa_to_text(g) == t1);

  // midfa with labels
  Alphabet a = f2_alpha();
  Fsa m = make_dfa(a);
  m.kind = FsaKind::midfa;
  State p = m.add_state(true), q = m.add_state(true);
  m.set_trans(p, 0, q);
  m.initials = {p, q};
  m.labels = {a.parse_word("_"), a.parse_word("a b")};
  Fsa m2 = fsa_from_text(fsa_to_text(m));
  CHECK(m2.kind == FsaKind::midfa);
  CHECK(m2.labels.size() == 2);
  CHECK(m2.labels[1] == a.parse_word("a b"));
  CHECK(fsa_to_text(m2) == fsa_to_text(m));

  // pair machine with padded arcs
  Fsa rel = make_pair_fsa(a);
  State r0 = rel.add_state(false), r1 = rel.add_state(true);
  rel.set_trans(r0, rel.pair_sym(0, a.pad()), r1);
  rel.initials = {r0};
  Fsa rel2 = fsa_from_text(fsa_to_text(rel));
  CHECK(rel2.kind == FsaKind::pair);
  CHECK(pair_accepts(rel2, a.parse_word("a"), {}));
  CHECK(fsa_to_text(rel2) == fsa_to_text(rel));

  // async machine keeps its reads line and end marker arcs
  Fsa as = make_async_fsa(a);
  State s0 = as.add_state(false), s1 = as.add_state(true);
  as.set_trans(s0, 0, s0);
  as.set_trans(s0, 4, s1);  // end marker
  as.initials = {s0};
  as.reads = {1, 2};
  Fsa as2 = fsa_from_text(fsa_to_text(as));
  CHECK(as2.kind == FsaKind::async);
  CHECK(as2.nsym == 5);
  CHECK(as2.reads == std::vector<uint8_t>{1, 2});
  CHECK(as2.step(0, 4) == 1);
  CHECK(fsa_to_text(as2) == fsa_to_text(as));

  CHECK_THROWS_AS(fsa_from_text("fsa { alphabet = a A ; }"), input_error);
  CHECK_THROWS_AS(
      fsa_from_text("fsa { alphabet = a ; states = 1 ; initial = 1 ; "
                    "accepting = 1 ; arcs { 1 q 1 ; } }"),
      input_error);
  CHECK_THROWS_AS(
      fsa_from_text("fsa { alphabet = a ; states = 1 ; initial = 2 ; "
                    "accepting = 1 ; arcs { } }"),
      input_error);
}

TEST_CASE("group, subgroup and hnn records") {
  std::string src = R"(
    # free abelian of rank two
    group {
      name = z2 ;
      generators = a A b B ;
      inverses = a:A b:B ;
      relations {
        b a = a b ;
      }
    }
  )";
  Presentation p = parse_group(src);
  CHECK(p.name == "z2");
  CHECK(p.alpha.size() == 4);
  REQUIRE(p.relations.size() == 1);
  CHECK(p.relations[0].first == p.alpha.parse_word("b a"));
  CHECK(p.relations[0].second == p.alpha.parse_word("a b"));

  Presentation p2 = parse_group(format_group(p));
  CHECK(p2.alpha == p.alpha);
  CHECK(p2.relations == p.relations);
  CHECK(format_group(p2) == format_group(p));

  CHECK_THROWS_AS(
      parse_group("group { generators = a ; relations { } }"), input_error);

  SubgroupInput sub = parse_subgroup(R"(
    subgroup {
      name = h ;
      of = z2.grp ;
      generators {
        a a ;
        b a B ;
      }
    }
  )", p.alpha);
  CHECK(sub.name == "h");
  CHECK(sub.of == "z2.grp");
  REQUIRE(sub.generators.size() == 2);
  CHECK(sub.generators[1] == p.alpha.parse_word("b a B"));

  HnnInput h = parse_hnn(R"(
    hnn {
      name = toy ;
      base {
        name = f1 ;
        generators = a A ;
        inverses = a:A ;
        relations { }
      }
      stable = t T ;
      sub { a ; }
      alpha { y1 = y1 y1 ; }
    }
  )");
  CHECK(h.name == "toy");
  CHECK(h.stable == "t");
  CHECK(h.base.alpha.size() == 2);
  REQUIRE(h.sub_generators.size() == 1);
  REQUIRE(h.alpha.size() == 1);
  CHECK(h.alpha[0] == Word{0, 0});

  HnnInput hid = parse_hnn(
      "hnn { base { generators = a A ; inverses = a:A ; relations { } } "
      "sub { a ; } }");
  CHECK(hid.alpha == std::vector<Word>{{0}});

  CHECK_THROWS_AS(parse_hnn(
      "hnn { base { generators = t T ; inverses = t:T ; relations { } } "
      "sub { t ; } }"), input_error);
}

TEST_CASE("tietze transformations") {
  Alphabet a = f2_alpha();
  Presentation p;
  p.name = "f2";
  p.alpha = a;

  Presentation q = tietze_add_generator(p, "c", "C", a.parse_word("a b"));
  CHECK(q.alpha.size() == 6);
  REQUIRE(q.relations.size() == 1);
  CHECK(q.relations[0].first == Word{4});
  CHECK(q.relations[0].second == q.alpha.parse_word("a b"));
  CHECK_THROWS_AS(tietze_add_generator(q, "c", "C", Word{}), input_error);

  // eliminating a solves a = c B from c = a b
  Word sol;
  Presentation r = tietze_eliminate(q, 0, &sol);
  CHECK(sol == q.alpha.parse_word("c B"));
  CHECK(r.alpha.size() == 4);
  CHECK(r.alpha.name(0) == "b");
  CHECK(r.alpha.name(2) == "c");
  CHECK(r.relations.empty());

  // with a second relation the solution is substituted
  Presentation q2 = q;
  q2.add_relation(q2.alpha.parse_word("a a a"), {});
  Presentation r2 = tietze_eliminate(q2, 0, &sol);
  REQUIRE(r2.relations.size() == 1);
  CHECK(r2.alpha.format_word(r2.relations[0].first) == "c B c B c B");
  CHECK(r2.relations[0].second.empty());

  // no relation isolates a in <a, b | b b = a a>
  Presentation bad;
  bad.alpha = f2_alpha();
  bad.add_relation("b b", "a a");
  CHECK_THROWS_AS(tietze_eliminate(bad, 0, nullptr), input_error);

  Word w = a.parse_word("a b a b");
  CHECK(replace_first(w, a.parse_word("b a"), a.parse_word("B")));
  CHECK(a.format_word(w) == "a B b");
  CHECK(!replace_first(w, a.parse_word("a a"), {}));

  Word lhs = a.parse_word("a b b"), rhs = a.parse_word("B a");
  transfer_suffix(a, lhs, rhs, 2);
  CHECK(a.format_word(lhs) == "a");
  CHECK(a.format_word(rhs) == "B a B B");
  transfer_prefix(a, lhs, rhs, 1);
  CHECK(a.format_word(lhs) == "_");
  CHECK(a.format_word(rhs) == "A B a B B");
}
