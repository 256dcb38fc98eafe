#include "autogrp/pipeline.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "autogrp/cosets.hpp"
#include "autogrp/presentation.hpp"

namespace autogrp {

namespace {

Presentation sapir_original() {
  Presentation p;
  p.name = "sapir";
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  p.alpha.add_pair("r", "R");
  p.alpha.add_pair("t", "T");
  p.alpha.add_pair("x", "X");
  p.alpha.add_pair("z", "Z");
  p.add_relation("x a x a", "t");
  p.add_relation("b x b x", "t");
  p.add_relation("b b t a a", "t");
  p.add_relation("A b r", "r A b");
  p.add_relation("z t", "t z");
  p.add_relation("b t a z", "z b t a");
  return p;
}

// Rebuilds p on a fresh alphabet listing the surviving generators in the
// given display order (a pure renaming, so the same group).
Presentation reorder_generators(const Presentation& p,
                                const std::vector<std::string>& order) {
  Presentation q;
  q.name = p.name;
  for (const auto& n : order) {
    Sym s = p.alpha.find(n).value();
    q.alpha.add_pair(n, p.alpha.name(p.alpha.inverse(s)));
  }
  std::vector<Sym> remap(p.alpha.size(), kNoSym);
  for (size_t i = 0; i < p.alpha.size(); ++i)
    remap[i] = q.alpha.find(p.alpha.name(static_cast<Sym>(i))).value();
  for (const auto& [l, r] : p.relations) {
    Word nl, nr;
    for (Sym s : l) nl.push_back(remap[s]);
    for (Sym s : r) nr.push_back(remap[s]);
    q.add_relation(std::move(nl), std::move(nr));
  }
  return q;
}

// Equality of relation lists up to free reduction and side swap.
bool same_relations(const Presentation& got, const Presentation& want) {
  if (!(got.alpha == want.alpha)) return false;
  if (got.relations.size() != want.relations.size()) return false;
  auto norm = [&](const std::pair<Word, Word>& rel) {
    Word l = got.alpha.free_reduce(rel.first);
    Word r = got.alpha.free_reduce(rel.second);
    return l < r ? std::make_pair(l, r) : std::make_pair(r, l);
  };
  for (size_t i = 0; i < got.relations.size(); ++i)
    if (norm(got.relations[i]) != norm(want.relations[i])) return false;
  return true;
}

std::string show(const Presentation& p) { return format_group(p); }

struct StageLog {
  std::ostringstream text;
  std::vector<std::pair<std::string, std::string>>* values;
  bool failed = false;

  void kv(const std::string& k, const std::string& v) {
    values->emplace_back(k, v);
  }
  void kv(const std::string& k, uint64_t v) { kv(k, std::to_string(v)); }
  bool fail(const std::string& why) {
    text << "FAILED: " << why << "\n";
    failed = true;
    return false;
  }
};

}  // namespace

std::string format_trailer(
    const std::vector<std::pair<std::string, std::string>>& values) {
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream o;
  for (const auto& [k, v] : sorted) o << k << " = " << v << "\n";
  return o.str();
}

SapirReport pipeline_sapir(const HnnLimits& lim, int drift_blocks,
                           size_t verify_depth) {
  SapirReport rep;
  StageLog log;
  log.values = &rep.values;
  auto finish = [&]() {
    rep.ok = !log.failed;
    log.kv("ok", rep.ok ? "1" : "0");
    rep.text = log.text.str();
    return rep;
  };

  // Stage 1: the input presentation.
  Presentation p0 = sapir_original();
  log.text << "stage 1: input presentation\n" << show(p0);
  log.kv("stage1_generators", p0.alpha.size() / 2);
  log.kv("stage1_relations", p0.relations.size());

  // Stage 2: eliminate t through its second defining relation t = bxbx.
  Word sol_t;
  Presentation p1 = tietze_eliminate(p0, p0.alpha.find("t").value(), &sol_t, 1);
  log.text << "stage 2: eliminate t = " << p0.alpha.format_word(sol_t) << "\n"
           << show(p1);
  {
    Presentation want;
    want.alpha = p1.alpha;
    want.add_relation("x a x a", "b x b x");
    want.add_relation("b b x b x a a", "x b x");
    want.add_relation("A b r", "r A b");
    want.add_relation("z b x b x", "b x b x z");
    want.add_relation("b b x b x a z", "z b b x b x a");
    if (!same_relations(p1, want))
      return log.fail("stage 2 presentation differs from the expected form"),
             finish();
  }
  log.kv("stage2_relations", p1.relations.size());

  // Stage 3: introduce u = xa and v = bx, eliminate a = x^-1 u then
  // x = b^-1 v, and list the generators in display order.
  Presentation p2 = tietze_add_generator(p1, "u", "U",
                                         p1.alpha.parse_word("x a"));
  p2 = tietze_add_generator(p2, "v", "V", p2.alpha.parse_word("b x"));
  Word sol_a, sol_x;
  Presentation p3 = tietze_eliminate(p2, p2.alpha.find("a").value(), &sol_a);
  Presentation p4 = tietze_eliminate(p3, p3.alpha.find("x").value(), &sol_x);
  Presentation k1 = reorder_generators(p4, {"u", "v", "b", "r", "z"});
  log.text << "stage 3: substitute u = xa, v = bx (a = "
           << p2.alpha.format_word(sol_a) << ", then x = "
           << p3.alpha.format_word(sol_x) << ")\n"
           << show(k1);
  {
    Presentation want;
    want.alpha = k1.alpha;
    want.add_relation("u u", "v v");
    want.add_relation("b v b u V b u", "B v v");
    want.add_relation("U B v b r", "r U B v b");
    want.add_relation("z v v", "v v z");
    want.add_relation("b v b u z", "z b v b u");
    if (!same_relations(k1, want))
      return log.fail("stage 3 presentation differs from the expected form"),
             finish();
  }
  log.kv("stage3_relations", k1.relations.size());

  // Stage 4: simplify with u^2 = v^2. The second relation loses its tail
  // (v^-1 b u moves to the right hand side) and v v rewrites to u u; the
  // z commutation with v^2 becomes commutation with u^2.
  Presentation k2 = k1;
  {
    auto& [l1, r1] = k2.relations[1];
    transfer_suffix(k2.alpha, l1, r1, 3);
    if (!replace_first(r1, k2.alpha.parse_word("v v U"),
                       k2.alpha.parse_word("u")))
      return log.fail("stage 4 simplification site missing"), finish();
    auto& [l3, r3] = k2.relations[3];
    bool a = replace_first(l3, k2.alpha.parse_word("v v"),
                           k2.alpha.parse_word("u u"));
    bool b = replace_first(r3, k2.alpha.parse_word("v v"),
                           k2.alpha.parse_word("u u"));
    if (!a || !b) return log.fail("stage 4 simplification site missing"),
                         finish();
  }
  log.text << "stage 4: simplify with u u = v v\n" << show(k2);
  {
    Presentation want;
    want.alpha = k2.alpha;
    want.add_relation("u u", "v v");
    want.add_relation("b v b u", "B u B v");
    want.add_relation("U B v b r", "r U B v b");
    want.add_relation("z u u", "u u z");
    want.add_relation("b v b u z", "z b v b u");
    if (!same_relations(k2, want))
      return log.fail("stage 4 presentation differs from the expected form"),
             finish();
  }

  // Stage 5: the base group G keeps the z free relations; z becomes the
  // stable letter centralising H = <uu, bvbU> (the second generator is
  // bvbu times the inverse of the first, so the subgroup is the same and
  // the commutation relations are equivalent).
  Presentation g;
  g.name = "sapir_g";
  g.alpha.add_pair("u", "U");
  g.alpha.add_pair("v", "V");
  g.alpha.add_pair("b", "B");
  g.alpha.add_pair("r", "R");
  for (const auto& [l, r] : k2.relations) {
    bool hasz = false;
    for (Sym s : l) hasz |= k2.alpha.name(s) == "z" || k2.alpha.name(s) == "Z";
    for (Sym s : r) hasz |= k2.alpha.name(s) == "z" || k2.alpha.name(s) == "Z";
    if (hasz) continue;
    g.add_relation(k2.alpha.format_word(l), k2.alpha.format_word(r));
  }
  log.text << "stage 5: base group\n" << show(g);
  log.kv("stage5_base_relations", g.relations.size());
  if (g.relations.size() != 3)
    return log.fail("base group should keep exactly three relations"),
           finish();

  // Stage 6: assemble the extension. This builds the shortlex structure of
  // G, the strong coset system for H, checks that the generating set is
  // efficient, harvests the subgroup presentation, and constructs the
  // normal form acceptor and the asynchronous multipliers.
  HnnInput in;
  in.name = "sapir_k";
  in.base = g;
  in.stable = "z";
  in.stable_inv = "Z";
  in.sub_generators = {g.alpha.parse_word("u u"), g.alpha.parse_word("b v b U")};
  HnnSystem hs = build_hnn_system(in, lim);
  rep.hs = hs;
  if (!hs.verified)
    return log.fail("extension assembly: " + hs.note), finish();
  log.text << "stage 6: coset system and extension assembled\n";
  log.text << "  coset word acceptor: " << hs.cs.wa.nstates()
           << " states (expected 302)\n";
  uint64_t mmax = 0, msum = 0;
  for (const Fsa& m : hs.cs.mult) {
    mmax = std::max<uint64_t>(mmax, m.nstates());
    msum += m.nstates();
  }
  log.text << "  coset multipliers: largest " << mmax << " states (expected"
           << " about 1400), " << hs.cs.mult.size() << " machines\n";
  log.text << "  difference bound k = " << hs.cs.k << ", correction rounds = "
           << hs.cs.rounds << "\n";
  log.kv("coset_wa_states", hs.cs.wa.nstates());
  log.kv("coset_wa_expected", uint64_t{302});
  log.kv("coset_mult_max_states", mmax);
  log.kv("coset_k", uint64_t(hs.cs.k));
  if (hs.cs.wa.nstates() != 302)
    log.text << "  note: state count differs from the expected 302; check"
                " alphabet order and minimization conventions\n";

  // The harvested subgroup presentation: free of rank 2 exactly when its
  // confluent system keeps nothing beyond the four cancellation rules.
  bool hfree = true;
  for (uint32_t i : hs.has.rs.live_rule_ids()) {
    const auto& rule = hs.has.rs.rules[i];
    hfree &= rule.lhs.size() == 2 && rule.rhs.empty() &&
             rule.lhs[1] == hs.has.rs.alpha.inverse(rule.lhs[0]);
  }
  log.text << "  subgroup on 2 letters is "
           << (hfree ? "free of rank 2" : "NOT free") << "\n";
  log.kv("subgroup_free_rank2", hfree ? "1" : "0");
  if (!hfree) return log.fail("harvested subgroup should be free"), finish();

  // Stage 7: efficiency of Y = {uu, bvbU}, reported explicitly.
  EffReport eff = efficiency_check(hs.cs, lim.state_cap);
  log.text << "stage 7: efficiency of the generating set: "
           << (eff.status == CheckStatus::ok ? "ok" : eff.detail) << "\n";
  log.kv("efficiency_ok", eff.status == CheckStatus::ok ? "1" : "0");
  if (eff.status != CheckStatus::ok)
    return log.fail("efficiency check: " + eff.detail), finish();

  // Stage 8: the subgroup is not quasiconvex in the acceptor language:
  // the words (buBV)^n (BvbU)^n land in H while the prefixes (buBV)^n
  // pick up ever longer representatives b^{2n}.
  QcReport qc = quasiconvexity_family(hs.cs, g.alpha.parse_word("b u B V"),
                                      g.alpha.parse_word("B v b U"), 4,
                                      &hs.gas.wa);
  log.text << "stage 8: quasiconvexity witness family\n";
  for (const auto& [prefix, repw] : qc.family)
    log.text << "  rep( " << g.alpha.format_word(prefix) << " ) = "
             << g.alpha.format_word(repw) << "\n";
  log.kv("qc_growing", qc.growing ? "1" : "0");
  log.kv("qc_bound", uint64_t(qc.bound));
  bool b2n = qc.family.size() == 4;
  for (size_t n = 1; n <= qc.family.size(); ++n) {
    const Word want(2 * n, *g.alpha.find("b"));
    b2n &= n <= qc.family.size() && qc.family[n - 1].second == want;
  }
  log.kv("qc_reps_are_b2n", b2n ? "1" : "0");
  if (!qc.growing || !b2n)
    return log.fail("quasiconvexity family does not show b^{2n} growth"),
           finish();

  // Stage 9: bounded verification of the asynchronous structure.
  HnnReport hr = verify_async_structure(hs, verify_depth);
  log.text << "stage 9: asynchronous structure verified to depth "
           << verify_depth << ": " << (hr.ok ? "ok" : hr.detail) << " ("
           << hr.words << " words, " << hr.accepts << " accepts, "
           << hr.rejects << " rejects, max separation " << hr.max_drift
           << ", " << hr.max_g << " tracked differences)\n";
  log.kv("verify_depth", uint64_t(verify_depth));
  log.kv("verify_ok", hr.ok ? "1" : "0");
  log.kv("verify_words", hr.words);
  log.kv("verify_max_drift", uint64_t(hr.max_drift));
  if (!hr.ok) return log.fail("verification: " + hr.detail), finish();

  // Stage 10: the separation family. Multiplying (u b z b z)^m u by u
  // merges the last block to the subgroup element u^2, whose label then
  // cascades left through every z block, stretching representative after
  // representative; the two tape heads drift apart linearly while the
  // tracked differences stay in the same finite set.
  log.text << "stage 10: head separation family (u b z b z)^m u times u\n";
  const Sym lu = *hs.kalpha.find("u");
  const Word period = hs.kalpha.parse_word("u b z b z");
  size_t prev = 0;
  bool grew = true, accepted = true;
  for (int m = 1; m <= drift_blocks; ++m) {
    Word um;
    for (int i = 0; i < m; ++i) um.insert(um.end(), period.begin(), period.end());
    um.push_back(lu);
    HnnNormalForm nu = hnn_normal_form(hs, um);
    HnnNormalForm nv = hnn_multiply(hs, nu, lu);
    AsyncRun run = async_run(hs.mult[lu], lk_word(hs, nu), lk_word(hs, nv));
    log.text << "  m = " << m << ": separation " << run.max_drift
             << (run.accepted ? "" : " (rejected)") << "\n";
    accepted &= run.accepted;
    grew &= run.max_drift > prev && run.max_drift >= 2 * size_t(m);
    prev = run.max_drift;
  }
  log.kv("drift_blocks", uint64_t(drift_blocks));
  log.kv("drift_final", uint64_t(prev));
  log.kv("drift_growing", grew && accepted ? "1" : "0");
  if (!grew || !accepted)
    return log.fail("separation family should grow and stay accepted"),
           finish();

  log.text << "conclusion: the extension carries a verified asynchronous"
              " structure at the tested depth\n";
  return finish();
}

}  // namespace autogrp
