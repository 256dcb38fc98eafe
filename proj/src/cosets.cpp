#include "autogrp/cosets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace autogrp {

Word CosetSystem::to_full(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Sym a : w) out.push_back(to_full(a));
  return out;
}

Word CosetSystem::to_group(const Word& w) const {
  const Sym off = static_cast<Sym>(bsub.size() + 1);
  Word out;
  out.reserve(w.size());
  for (Sym s : w) {
    if (s < off) throw input_error("expected group letters after the separator");
    out.push_back(static_cast<Sym>(s - off));
  }
  return out;
}

Word CosetSystem::sub_value(const Word& bword) const {
  Word out;
  for (Sym b : bword) {
    Word g = sub_gens.at(b / 2);
    if (b % 2) g = group.alpha.inverse_word(g);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

namespace {

// Reduced coset word of sep w, shaped h sep v.
Word coset_normal(const CosetSystem& cs, const Word& w) {
  Word in{cs.sep};
  Word f = cs.to_full(w);
  in.insert(in.end(), f.begin(), f.end());
  return cs.crs.reduce(in);
}

// B-prefix and group part of a word shaped h sep v.
std::pair<Word, Word> split_coset(const CosetSystem& cs, const Word& w) {
  auto it = std::find(w.begin(), w.end(), cs.sep);
  if (it == w.end()) throw input_error("coset word lost its separator");
  return {Word(w.begin(), it), cs.to_group(Word(it + 1, w.end()))};
}

// Installs a subgroup word and its inverse in the dictionary.
bool dict_add(CosetSystem& cs, const Word& bword) {
  bool any = false;
  Word b = cs.crs.reduce(bword);
  Word bi = cs.crs.reduce(cs.afull.inverse_word(b));
  for (const Word* p : {&b, &bi}) {
    bool seen = false;
    for (const auto& e : cs.dict)
      if (e.first == *p) {
        seen = true;
        break;
      }
    if (seen) continue;
    Word val = cs.grs.reduce(cs.sub_value(*p));
    cs.dict.emplace_back(*p, val);
    cs.wd.add(cs.grs, val);
    any = true;
  }
  return any;
}

// Harvests dictionary entries and word differences from the coset rules:
// a rule sep u -> h sep v states u = h v in the group, a pure group rule
// states plain equality. Subgroup-only rules carry no differences.
bool harvest(CosetSystem& cs) {
  bool any = false;
  any |= dict_add(cs, {});
  for (Sym b = 0; b < static_cast<Sym>(cs.bsub.size()); ++b)
    any |= dict_add(cs, {b});
  for (uint32_t i : cs.crs.live_rule_ids()) {
    const Word& lhs = cs.crs.rules[i].lhs;
    const Word& rhs = cs.crs.rules[i].rhs;
    if (lhs.empty()) continue;
    if (lhs[0] == cs.sep) {
      auto [hl, u] = split_coset(cs, lhs);
      auto [h, v] = split_coset(cs, rhs);
      (void)hl;  // empty by the coset rule shape
      any |= dict_add(cs, h);
      any |= cs.wd.add_pair(cs.grs, u, v, cs.grs.reduce(cs.sub_value(h)));
    } else if (lhs[0] > cs.sep) {
      any |= cs.wd.add_pair(cs.grs, cs.to_group(lhs), cs.to_group(rhs));
    }
  }
  any |= cs.wd.add_rule_diffs(cs.grs);
  for (Sym a = 0; a < static_cast<Sym>(cs.grs.alpha.size()); ++a)
    cs.wd.add(cs.grs, {a});
  return any;
}

// Start differences, one per distinct dictionary value, dictionary order.
std::vector<uint32_t> start_ids(const CosetSystem& cs) {
  std::vector<uint32_t> s;
  for (const auto& e : cs.dict) {
    uint32_t d = cs.wd.find(e.second);
    if (d == kNoDiff) continue;
    if (std::find(s.begin(), s.end(), d) == s.end()) s.push_back(d);
  }
  return s;
}

Fsa det_multiplier(const Fsa& graph, const std::vector<uint32_t>& gdiff,
                   uint32_t anchor, uint64_t cap) {
  Fsa m = graph;
  m.labels.clear();
  for (State s = 0; s < m.nstates(); ++s)
    m.accept[s] = (anchor != kNoDiff && gdiff[s] == anchor) ? 1 : 0;
  return minimize(determinize(m, cap));
}

// Teaches the systems from axiom counterexamples. Pairs in the same coset
// feed the coset rewriting system and the difference machine; multiplier
// traces walk letter by letter through the coset normal form.
bool correct(CosetSystem& cs, const AxiomReport& rep) {
  bool changed = false;
  for (const auto& [u, v] : rep.equal_pairs) {
    Word nu = coset_normal(cs, u);
    Word nv = coset_normal(cs, v);
    if (nu != nv) changed |= cs.crs.add_equation(nu, nv);
    Word h = u;
    Word vi = cs.grs.alpha.inverse_word(v);
    h.insert(h.end(), vi.begin(), vi.end());
    changed |= cs.wd.add_pair(cs.grs, u, v, cs.grs.reduce(h));
  }
  for (const auto& [u, t] : rep.trace_pairs) {
    Word cur = u;
    for (Sym g : t) {
      Word step = cur;
      step.push_back(g);
      auto [h, x] = split_coset(cs, coset_normal(cs, step));
      changed |= dict_add(cs, h);
      changed |= cs.wd.add_pair(cs.grs, cur, x,
                                cs.grs.reduce(cs.sub_value(h)));
      cur = std::move(x);
    }
  }
  return changed;
}

}  // namespace

CosetSystem build_coset_system(const Presentation& g, const SubgroupInput& sub,
                               const CosetLimits& lim) {
  if (sub.generators.empty())
    throw input_error("subgroup needs at least one generator");
  CosetSystem cs;
  cs.group = g;
  cs.sub_name = sub.name;
  cs.sub_gens = sub.generators;
  for (const Word& w : cs.sub_gens)
    if (w.empty()) throw input_error("empty subgroup generator");

  cs.grs = make_group_rws(g);
  knuth_bendix(cs.grs, lim.kb);

  cs.bsub = make_sub_alphabet(cs.sub_gens.size());
  cs.afull = cs.bsub;
  try {
    cs.sep = cs.afull.add("#");
    for (Sym a = 0; a < static_cast<Sym>(g.alpha.size()); ++a)
      cs.afull.add(g.alpha.name(a));
  } catch (const input_error&) {
    throw input_error(
        "group alphabet collides with subgroup symbols y1 Y1 ... or '#'");
  }
  for (Sym a = 0; a < static_cast<Sym>(g.alpha.size()); ++a)
    if (g.alpha.has_inverse(a))
      cs.afull.set_inverse(cs.to_full(a), cs.to_full(g.alpha.inverse(a)));

  std::vector<int> lv(cs.afull.size(), 3);
  for (size_t b = 0; b < cs.bsub.size(); ++b) lv[b] = 1;
  lv[cs.sep] = 2;
  cs.crs = RewritingSystem(cs.afull, lv);
  cs.crs.coset_mode = true;
  cs.crs.sep = cs.sep;
  for (const auto& [l, r] : g.relations)
    cs.crs.add_equation(cs.to_full(l), cs.to_full(r));
  for (size_t i = 0; i < cs.sub_gens.size(); ++i) {
    Word l{cs.sep};
    Word f = cs.to_full(cs.sub_gens[i]);
    l.insert(l.end(), f.begin(), f.end());
    cs.crs.add_equation(l, Word{static_cast<Sym>(2 * i), cs.sep});
  }
  cs.crs_confluent = knuth_bendix(cs.crs, lim.kb);

  const Sym na = static_cast<Sym>(g.alpha.size());
  harvest(cs);
  for (int round = 1; round <= lim.max_rounds; ++round) {
    cs.rounds = round;
    cs.wd.rebuild(cs.grs);
    std::vector<uint32_t> starts = start_ids(cs);
    cs.wa = build_word_acceptor(cs.wd, cs.grs, starts, lim.state_cap);
    GeneralMultiplier gm =
        build_general_multiplier(cs.wd, cs.grs, cs.wa, starts, lim.state_cap);
    cs.graph = std::move(gm.graph);
    cs.graph_diff = std::move(gm.state_diff);
    cs.graph.labels.clear();
    for (State s : cs.graph.initials)
      cs.graph.labels.push_back(cs.wd.word(cs.graph_diff[s]));
    cs.mult.clear();
    for (Sym a = 0; a < na; ++a)
      cs.mult.push_back(det_multiplier(cs.graph, cs.graph_diff,
                                       cs.wd.find(cs.grs.reduce({a})),
                                       lim.state_cap));
    cs.mult.push_back(
        det_multiplier(cs.graph, cs.graph_diff, 0, lim.state_cap));

    AutomaticStructure shim;
    shim.rs = cs.grs;
    shim.wa = cs.wa;
    shim.mult = cs.mult;
    AxiomReport rep = check_axioms(shim, g.relations, lim.state_cap);
    for (size_t i = 0; i < cs.wd.size(); ++i)
      cs.k = std::max(cs.k, static_cast<int>(cs.wd.word(
                                static_cast<uint32_t>(i)).size()));
    if (rep.status == CheckStatus::ok) {
      cs.verified = true;
      cs.strong = true;
      cs.note.clear();
      return cs;
    }
    cs.note = rep.detail;
    bool changed = correct(cs, rep);
    changed |= harvest(cs);
    if (!changed) break;  // nothing new to learn; fail honestly
  }
  cs.verified = false;
  return cs;
}

Word coset_rep(const CosetSystem& cs, const Word& w) {
  return split_coset(cs, coset_normal(cs, w)).second;
}

Word coset_label(const CosetSystem& cs, const Word& w) {
  return split_coset(cs, coset_normal(cs, w)).first;
}

Word coset_reduce(const CosetSystem& cs, const Word& w) {
  if (!cs.verified)
    throw input_error("coset system is not verified");
  Word rep;
  for (Sym a : w) {
    if (a >= cs.mult.size() - 1) throw input_error("letter outside the group");
    auto v = multiplier_image(cs.mult[a], rep);
    if (!v) throw input_error("multiplier image missing for an accepted word");
    rep = std::move(*v);
  }
  return rep;
}

bool generalized_word_problem(const CosetSystem& cs, const Word& w) {
  return coset_reduce(cs, w).empty();
}

std::optional<uint64_t> subgroup_index(const CosetSystem& cs) {
  return language_size(cs.wa);
}

Fsa subgroup_word_acceptor(const Fsa& group_wa, const CosetSystem& cs,
                           size_t rep_cap, uint64_t state_cap) {
  if (!(group_wa.base == cs.grs.alpha))
    throw input_error("group acceptor alphabet differs from the coset system");
  const Sym na = static_cast<Sym>(group_wa.base.size());
  Fsa out = make_dfa(group_wa.base);
  std::map<std::pair<State, Word>, State> idx;
  std::vector<std::pair<State, Word>> nodes;
  auto intern = [&](State s, Word rep) -> State {
    auto key = std::make_pair(s, rep);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    if (out.nstates() >= state_cap)
      throw budget_error("subgroup acceptor exceeds state cap");
    State id = out.add_state(group_wa.accept[s] && rep.empty());
    idx.emplace(std::move(key), id);
    nodes.emplace_back(s, std::move(rep));
    return id;
  };
  intern(group_wa.initial(), {});
  out.initials = {0};
  for (State s = 0; s < out.nstates(); ++s) {
    const std::pair<State, Word> cur = nodes[s];
    for (Sym a = 0; a < na; ++a) {
      State t = group_wa.step(cur.first, a);
      if (t == kNoState) continue;
      Word w = cur.second;
      w.push_back(a);
      Word rep = coset_rep(cs, w);
      if (rep.size() > rep_cap) continue;  // treated as dead beyond the cap
      out.set_trans(s, a, intern(t, std::move(rep)));
    }
  }
  return minimize(out);
}

EffReport efficiency_check(const CosetSystem& cs, uint64_t state_cap) {
  EffReport er;
  if (!cs.verified) {
    er.status = CheckStatus::inconclusive;
    er.detail = "coset system is not verified";
    return er;
  }
  const Sym nb = static_cast<Sym>(cs.bsub.size());
  std::set<Word> allowed;
  allowed.insert(Word{});
  for (Sym b = 0; b < nb; ++b)
    allowed.insert(cs.grs.reduce(cs.sub_value({b})));

  // The shared graph only ever had to carry the letter multipliers, so the
  // pairs (u, rep of u wb) of a multi letter defining word can walk through
  // differences it never stored. When coverage fails, teach the shortest
  // uncovered word's pairs (every prefix against its coset data, all true
  // facts of the verified system) into a local machine and rebuild.
  DiffMachine wd = cs.wd;
  std::vector<uint32_t> starts = start_ids(cs);
  Fsa graph = cs.graph;
  std::vector<uint32_t> gdiff = cs.graph_diff;

  for (Sym b = 0; b < nb; ++b) {
    Word wb = cs.grs.reduce(cs.sub_value({b}));
    for (int round = 0;; ++round) {
      uint32_t anchor = wd.find(wb);
      if (anchor == kNoDiff) {
        er.status = CheckStatus::inconclusive;
        er.detail = "defining word of " + cs.bsub.name(b) +
                    " has no tracked difference";
        return er;
      }
      // A live initial with a disallowed label witnesses a genuine
      // violation (every machine arc is a true group fact), so scan labels
      // first.
      std::vector<std::vector<State>> radj(graph.nstates());
      for (State s = 0; s < graph.nstates(); ++s)
        for (uint32_t c = 0; c < graph.nsym; ++c) {
          State t = graph.trans[static_cast<size_t>(s) * graph.nsym + c];
          if (t != kNoState) radj[t].push_back(s);
        }
      std::vector<uint8_t> co(graph.nstates(), 0);
      std::deque<State> q;
      for (State s = 0; s < graph.nstates(); ++s)
        if (gdiff[s] == anchor) {
          co[s] = 1;
          q.push_back(s);
        }
      while (!q.empty()) {
        State s = q.front();
        q.pop_front();
        for (State p : radj[s])
          if (!co[p]) {
            co[p] = 1;
            q.push_back(p);
          }
      }
      for (State i : graph.initials) {
        if (!co[i]) continue;
        Word h = wd.word(gdiff[i]);
        if (allowed.count(h)) continue;
        er.status = CheckStatus::failed;
        er.bad_b = b;
        er.bad_h = h;
        er.detail = "multiplier for " + cs.bsub.name(b) +
                    " has a live initial labelled " +
                    cs.grs.alpha.format_word(h);
        return er;
      }
      // For the positive verdict the composite multiplier must also cover
      // every accepted word, otherwise some arising h could be invisible.
      Fsa det = det_multiplier(graph, gdiff, anchor, state_cap);
      Fsa ex = minimize(exists_project(det, 1, state_cap));
      if (fsa_equal(ex, cs.wa)) break;
      std::optional<Word> miss =
          round < 16 ? fsa_diff_witness(cs.wa, ex) : std::nullopt;
      size_t before = wd.size() + starts.size();
      if (miss) {
        // The coset rewriting can leave a reducible rep behind, so take the
        // partner from the verified multipliers and the label as the exact
        // quotient u wb v^-1.
        Word p;
        for (size_t i = 0; i <= miss->size(); ++i) {
          if (i) p.push_back((*miss)[i - 1]);
          Word full = p;
          full.insert(full.end(), wb.begin(), wb.end());
          Word v = coset_reduce(cs, full);
          Word hw = full;
          Word vi = cs.grs.alpha.inverse_word(v);
          hw.insert(hw.end(), vi.begin(), vi.end());
          Word hval = cs.grs.reduce(hw);
          uint32_t d = wd.add(cs.grs, hval);
          if (std::find(starts.begin(), starts.end(), d) == starts.end())
            starts.push_back(d);
          wd.add_pair(cs.grs, p, v, hval);
        }
      }
      if (!miss || wd.size() + starts.size() == before) {
        er.status = CheckStatus::inconclusive;
        er.detail = "composite multiplier for " + cs.bsub.name(b) +
                    " is not total on the acceptor";
        return er;
      }
      wd.rebuild(cs.grs);
      GeneralMultiplier gm =
          build_general_multiplier(wd, cs.grs, cs.wa, starts, state_cap);
      graph = std::move(gm.graph);
      gdiff = std::move(gm.state_diff);
    }
  }
  er.detail = "every live initial label is trivial or a single subgroup letter";
  return er;
}

QcReport quasiconvexity_probe(const Fsa& group_wa, const CosetSystem& cs,
                              size_t depth, uint64_t node_budget) {
  QcReport out;
  if (depth == 0) {
    out.detail = "depth 0: nothing sampled";
    return out;
  }
  const Sym na = static_cast<Sym>(group_wa.base.size());
  struct Node {
    State s;
    Word rep;
    uint64_t parent;
    Sym via;
    size_t maxrep;
  };
  std::vector<Node> nodes;
  std::map<std::pair<State, Word>, uint64_t> idx;
  nodes.push_back({group_wa.initial(), {}, ~uint64_t{0}, 0, 0});
  idx.emplace(std::make_pair(group_wa.initial(), Word{}), 0);
  // Per-length maxima over prefixes of subgroup words, with a witness node.
  std::map<size_t, std::pair<size_t, uint64_t>> best;
  size_t lo = 0, hi = 1;
  bool exhausted = false;
  for (size_t len = 1; len <= depth && !exhausted; ++len) {
    for (size_t i = lo; i < hi && !exhausted; ++i) {
      const Node cur = nodes[i];
      for (Sym a = 0; a < na; ++a) {
        State t = group_wa.step(cur.s, a);
        if (t == kNoState) continue;
        Word w = cur.rep;
        w.push_back(a);
        Word rep = coset_rep(cs, w);
        auto key = std::make_pair(t, rep);
        if (idx.count(key)) continue;
        if (nodes.size() >= node_budget) {
          out.detail = "node budget exhausted";
          exhausted = true;
          break;
        }
        const size_t mr = std::max(cur.maxrep, rep.size());
        idx.emplace(key, nodes.size());
        nodes.push_back({t, std::move(rep), i, a, mr});
        const Node& nn = nodes.back();
        if (group_wa.accept[t] && nn.rep.empty()) {
          auto it = best.find(len);
          if (it == best.end() || mr > it->second.first)
            best[len] = {mr, nodes.size() - 1};
        }
      }
    }
    lo = hi;
    hi = nodes.size();
    if (lo == hi) break;  // no longer words reachable
  }
  if (best.empty()) {
    out.detail = out.detail.empty() ? "no subgroup words within depth"
                                    : out.detail;
    return out;
  }
  for (const auto& kv : best) out.bound = std::max(out.bound, kv.second.first);
  // Growth heuristic: the last three per-length maxima strictly increase.
  std::vector<size_t> maxima;
  for (const auto& kv : best) maxima.push_back(kv.second.first);
  if (maxima.size() >= 3) {
    size_t n = maxima.size();
    out.growing = maxima[n - 3] < maxima[n - 2] &&
                  maxima[n - 2] < maxima[n - 1] && maxima[n - 1] >= 3;
  }
  // Witnesses: for each recorded length, the prefix attaining the maximum.
  for (const auto& kv : best) {
    uint64_t n = kv.second.second;
    // find the first node along the path whose representative attains it
    std::vector<uint64_t> path;
    for (uint64_t p = n; p != ~uint64_t{0}; p = nodes[p].parent)
      path.push_back(p);
    std::reverse(path.begin(), path.end());
    Word prefix;
    for (size_t j = 1; j < path.size(); ++j) {
      prefix.push_back(nodes[path[j]].via);
      if (nodes[path[j]].rep.size() == kv.second.first) {
        out.family.emplace_back(prefix, nodes[path[j]].rep);
        break;
      }
    }
    if (kv.second.first == 0)
      out.family.emplace_back(Word{}, Word{});
  }
  if (out.detail.empty())
    out.detail = out.growing ? "prefix representatives keep growing"
                             : "prefix representatives stay bounded";
  return out;
}

QcReport quasiconvexity_family(const CosetSystem& cs, const Word& x,
                               const Word& y, int nmax, const Fsa* group_wa) {
  QcReport out;
  Word xn, yn;
  std::vector<size_t> lens;
  for (int n = 1; n <= nmax; ++n) {
    xn.insert(xn.end(), x.begin(), x.end());
    yn.insert(yn.end(), y.begin(), y.end());
    Word w = xn;
    w.insert(w.end(), yn.begin(), yn.end());
    if (!coset_rep(cs, w).empty()) {
      out.detail = "family member " + std::to_string(n) +
                   " lies outside the subgroup";
      out.family.clear();
      out.growing = false;
      return out;
    }
    if (group_wa && !fsa_accepts(*group_wa, w)) {
      out.detail = "family member " + std::to_string(n) +
                   " is not an accepted word";
      out.family.clear();
      out.growing = false;
      return out;
    }
    Word r = coset_rep(cs, xn);
    out.bound = std::max(out.bound, r.size());
    lens.push_back(r.size());
    out.family.emplace_back(xn, std::move(r));
  }
  bool inc = lens.size() >= 2;
  for (size_t i = 1; i < lens.size(); ++i) inc = inc && lens[i] > lens[i - 1];
  out.growing = inc;
  out.detail = inc ? "prefix representatives strictly lengthen"
                   : "no growth across the family";
  return out;
}

}  // namespace autogrp
