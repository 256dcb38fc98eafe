#include "autogrp/autostructure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace autogrp {

namespace {

// Comparison tag of the candidate word against the prefix read so far.
constexpr uint32_t kCmpEq = 0;
constexpr uint32_t kCmpLess = 1;
constexpr uint32_t kCmpGreater = 2;
constexpr uint32_t kCmpPad = 3;

uint64_t pack_item(uint32_t d, uint32_t c) {
  return (static_cast<uint64_t>(d) << 2) | c;
}

uint32_t next_cmp(uint32_t c, Sym x, Sym y) {
  if (c != kCmpEq) return c;
  if (y < x) return kCmpLess;
  return y == x ? kCmpEq : kCmpGreater;
}

}  // namespace

DiffMachine::DiffMachine() { words_.emplace_back(); }

uint32_t DiffMachine::lookup(const Word& w) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] == w) return static_cast<uint32_t>(i);
  return kNoDiff;
}

uint32_t DiffMachine::find(const Word& reduced) const { return lookup(reduced); }

uint32_t DiffMachine::add(const RewritingSystem& rs, const Word& w) {
  Word r = rs.reduce(w);
  Word ri = rs.reduce(rs.alpha.inverse_word(r));
  uint32_t id = lookup(r);
  if (id == kNoDiff) {
    id = static_cast<uint32_t>(words_.size());
    words_.push_back(std::move(r));
  }
  if (lookup(ri) == kNoDiff) words_.push_back(std::move(ri));  // keep symmetric
  return id;
}

bool DiffMachine::add_pair(const RewritingSystem& rs, const Word& u,
                           const Word& v, const Word& init) {
  const size_t before = words_.size();
  Word d = words_[add(rs, init)];
  const size_t n = std::max(u.size(), v.size());
  for (size_t i = 0; i < n; ++i) {
    Word next;
    if (i < u.size()) next.push_back(rs.alpha.inverse(u[i]));
    next.insert(next.end(), d.begin(), d.end());
    if (i < v.size()) next.push_back(v[i]);
    d = words_[add(rs, next)];
  }
  return words_.size() > before;
}

bool DiffMachine::add_rule_diffs(const RewritingSystem& rs) {
  bool any = false;
  for (uint32_t i : rs.live_rule_ids())
    any |= add_pair(rs, rs.rules[i].lhs, rs.rules[i].rhs);
  return any;
}

void DiffMachine::rebuild(const RewritingSystem& rs) {
  nsyms_ = rs.alpha.size();
  const size_t stride = nsyms_ + 1;
  delta_.assign(words_.size() * stride * stride, kNoDiff);
  for (size_t d = 0; d < words_.size(); ++d) {
    for (size_t x = 0; x <= nsyms_; ++x) {
      for (size_t y = 0; y <= nsyms_; ++y) {
        if (x == nsyms_ && y == nsyms_) continue;
        Word w;
        if (x < nsyms_) w.push_back(rs.alpha.inverse(static_cast<Sym>(x)));
        w.insert(w.end(), words_[d].begin(), words_[d].end());
        if (y < nsyms_) w.push_back(static_cast<Sym>(y));
        delta_[(d * stride + x) * stride + y] = lookup(rs.reduce(w));
      }
    }
  }
}

Fsa build_word_acceptor(const DiffMachine& wd, const RewritingSystem& rs,
                        uint64_t state_cap) {
  return build_word_acceptor(wd, rs, std::vector<uint32_t>{0}, state_cap);
}

Fsa build_word_acceptor(const DiffMachine& wd, const RewritingSystem& rs,
                        const std::vector<uint32_t>& starts,
                        uint64_t state_cap) {
  const Sym na = static_cast<Sym>(rs.alpha.size());
  const Sym pad = na;
  Fsa w = make_dfa(rs.alpha);
  std::map<std::vector<uint64_t>, State> index;
  std::vector<std::vector<uint64_t>> sets;
  auto intern = [&](std::vector<uint64_t> s) -> State {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (w.nstates() >= state_cap)
      throw budget_error("word acceptor exceeds state cap");
    State id = w.add_state(true);
    index.emplace(s, id);
    sets.push_back(std::move(s));
    return id;
  };
  std::vector<uint64_t> first;
  for (uint32_t d : starts) first.push_back(pack_item(d, kCmpEq));
  std::sort(first.begin(), first.end());
  first.erase(std::unique(first.begin(), first.end()), first.end());
  intern(std::move(first));
  w.initials = {0};
  for (State s = 0; s < w.nstates(); ++s) {
    const std::vector<uint64_t> cur = sets[s];
    for (Sym a = 0; a < na; ++a) {
      std::vector<uint64_t> next;
      bool dead = false;
      for (uint64_t item : cur) {
        const uint32_t d = static_cast<uint32_t>(item >> 2);
        const uint32_t c = static_cast<uint32_t>(item & 3);
        for (Sym y = 0; y <= pad; ++y) {
          if (c == kCmpPad && y != pad) continue;
          const uint32_t d2 = wd.step(d, a, y);
          if (d2 == kNoDiff) continue;
          const uint32_t c2 = y == pad ? kCmpPad : next_cmp(c, a, y);
          if (d2 == 0 && (c2 == kCmpLess || c2 == kCmpPad)) {
            dead = true;  // a smaller equal word completes here
            break;
          }
          next.push_back(pack_item(d2, c2));
        }
        if (dead) break;
      }
      if (dead) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      w.set_trans(s, a, intern(std::move(next)));
    }
  }
  return minimize(w);
}

GeneralMultiplier build_general_multiplier(const DiffMachine& wd,
                                           const RewritingSystem& rs,
                                           const Fsa& wa, uint64_t state_cap) {
  return build_general_multiplier(wd, rs, wa, std::vector<uint32_t>{0},
                                  state_cap);
}

GeneralMultiplier build_general_multiplier(const DiffMachine& wd,
                                           const RewritingSystem& rs,
                                           const Fsa& wa,
                                           const std::vector<uint32_t>& starts,
                                           uint64_t state_cap) {
  for (uint8_t f : wa.accept)
    if (!f)
      throw input_error("multiplier construction needs a prefix closed acceptor");
  const Sym na = static_cast<Sym>(rs.alpha.size());
  const Sym pad = na;
  const uint64_t nw = wa.nstates();
  const uint64_t wpad = nw;  // virtual state after a tape has been padded
  const uint64_t nd = wd.size();
  auto enc = [&](uint64_t s1, uint64_t s2, uint64_t d) {
    return (s1 * (nw + 1) + s2) * nd + d;
  };
  GeneralMultiplier gm;
  gm.graph = make_pair_fsa(rs.alpha);
  std::unordered_map<uint64_t, State> index;
  std::vector<uint64_t> code;
  auto intern = [&](uint64_t c) -> State {
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    if (gm.graph.nstates() >= state_cap)
      throw budget_error("multiplier exceeds state cap");
    State id = gm.graph.add_state(false);
    index.emplace(c, id);
    code.push_back(c);
    return id;
  };
  gm.graph.initials.clear();
  for (uint32_t d : starts) {
    State s = intern(enc(wa.initial(), wa.initial(), d));
    if (std::find(gm.graph.initials.begin(), gm.graph.initials.end(), s) ==
        gm.graph.initials.end())
      gm.graph.initials.push_back(s);
  }
  for (State s = 0; s < gm.graph.nstates(); ++s) {
    const uint64_t c = code[s];
    const uint32_t d = static_cast<uint32_t>(c % nd);
    const uint64_t s2 = (c / nd) % (nw + 1);
    const uint64_t s1 = c / nd / (nw + 1);
    for (Sym x = 0; x <= pad; ++x) {
      uint64_t t1;
      if (x == pad) {
        t1 = wpad;
      } else if (s1 == wpad) {
        continue;  // a padded tape stays padded
      } else {
        State t = wa.step(static_cast<State>(s1), x);
        if (t == kNoState) continue;
        t1 = t;
      }
      for (Sym y = 0; y <= pad; ++y) {
        if (x == pad && y == pad) continue;
        uint64_t t2;
        if (y == pad) {
          t2 = wpad;
        } else if (s2 == wpad) {
          continue;
        } else {
          State t = wa.step(static_cast<State>(s2), y);
          if (t == kNoState) continue;
          t2 = t;
        }
        const uint32_t d2 = wd.step(d, x, y);
        if (d2 == kNoDiff) continue;
        gm.graph.set_trans(s, gm.graph.pair_sym(x, y), intern(enc(t1, t2, d2)));
      }
    }
  }
  gm.state_diff.resize(code.size());
  for (size_t i = 0; i < code.size(); ++i)
    gm.state_diff[i] = static_cast<uint32_t>(code[i] % nd);
  return gm;
}

Fsa multiplier_for(const GeneralMultiplier& gm, const DiffMachine& wd,
                   const RewritingSystem& rs, const Word& target) {
  const uint32_t td = wd.find(rs.reduce(target));
  Fsa m = gm.graph;
  if (td != kNoDiff)
    for (State s = 0; s < m.nstates(); ++s)
      m.accept[s] = gm.state_diff[s] == td ? 1 : 0;
  return minimize(m);
}

std::optional<Word> multiplier_image(const Fsa& m, const Word& u) {
  const Sym pad = static_cast<Sym>(m.base.size());
  const size_t n = u.size();
  constexpr uint64_t kRoot = ~uint64_t{0};
  // Node = state * 2 + (candidate tape already padded).
  using Parent = std::pair<uint64_t, Sym>;
  std::vector<std::map<uint64_t, Parent>> layer(n + 1);
  layer[0].emplace(uint64_t{m.initial()} * 2, Parent{kRoot, 0});
  for (size_t i = 0; i < n; ++i) {
    for (const auto& kv : layer[i]) {
      const State s = static_cast<State>(kv.first >> 1);
      const bool vpad = kv.first & 1;
      for (Sym y = 0; y <= pad; ++y) {
        if (vpad && y != pad) continue;
        const State t = m.step(s, m.pair_sym(u[i], y));
        if (t == kNoState) continue;
        layer[i + 1].emplace(uint64_t{t} * 2 + (y == pad ? 1 : 0),
                             Parent{kv.first, y});
      }
    }
  }
  // Completion: accept right away, or keep feeding the candidate tape.
  std::optional<uint64_t> end;
  for (const auto& kv : layer[n]) {
    if (m.accept[kv.first >> 1]) {
      end = kv.first;
      break;
    }
  }
  Word tail;
  if (!end) {
    struct TEnt {
      State prev;
      Sym y;
      uint64_t seed;
    };
    std::map<State, TEnt> tpar;
    std::deque<State> queue;
    for (const auto& kv : layer[n]) {
      if (kv.first & 1) continue;
      const State s = static_cast<State>(kv.first >> 1);
      if (tpar.count(s)) continue;
      tpar[s] = {kNoState, 0, kv.first};
      queue.push_back(s);
    }
    State found = kNoState;
    while (!queue.empty() && found == kNoState) {
      const State s = queue.front();
      queue.pop_front();
      for (Sym y = 0; y < pad; ++y) {
        const State t = m.step(s, m.pair_sym(pad, y));
        if (t == kNoState || tpar.count(t)) continue;
        tpar[t] = {s, y, tpar[s].seed};
        if (m.accept[t]) {
          found = t;
          break;
        }
        queue.push_back(t);
      }
    }
    if (found == kNoState) return std::nullopt;
    State s = found;
    while (tpar[s].prev != kNoState) {
      tail.push_back(tpar[s].y);
      s = tpar[s].prev;
    }
    std::reverse(tail.begin(), tail.end());
    end = tpar[s].seed;
  }
  Word v;
  uint64_t node = *end;
  for (size_t j = n; j > 0; --j) {
    const Parent& p = layer[j].at(node);
    if (p.second != pad) v.push_back(p.second);
    node = p.first;
  }
  std::reverse(v.begin(), v.end());
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}

std::optional<Word> witness_smaller(const DiffMachine& wd,
                                    const RewritingSystem& rs, const Word& w) {
  const Sym pad = static_cast<Sym>(rs.alpha.size());
  constexpr uint64_t kRoot = ~uint64_t{0};
  using Parent = std::pair<uint64_t, Sym>;
  std::vector<std::map<uint64_t, Parent>> layer(w.size() + 1);
  layer[0].emplace(pack_item(0, kCmpEq), Parent{kRoot, 0});
  for (size_t i = 0; i < w.size(); ++i) {
    const Sym a = w[i];
    for (const auto& kv : layer[i]) {
      const uint32_t d = static_cast<uint32_t>(kv.first >> 2);
      const uint32_t c = static_cast<uint32_t>(kv.first & 3);
      for (Sym y = 0; y <= pad; ++y) {
        if (c == kCmpPad && y != pad) continue;
        const uint32_t d2 = wd.step(d, a, y);
        if (d2 == kNoDiff) continue;
        const uint32_t c2 = y == pad ? kCmpPad : next_cmp(c, a, y);
        if (d2 == 0 && (c2 == kCmpLess || c2 == kCmpPad)) {
          Word v;
          if (y != pad) v.push_back(y);
          uint64_t node = kv.first;
          for (size_t j = i; j > 0; --j) {
            const Parent& p = layer[j].at(node);
            if (p.second != pad) v.push_back(p.second);
            node = p.first;
          }
          std::reverse(v.begin(), v.end());
          v.insert(v.end(), w.begin() + static_cast<long>(i) + 1, w.end());
          return v;
        }
        layer[i + 1].emplace(pack_item(d2, c2), Parent{kv.first, y});
      }
    }
  }
  return std::nullopt;
}

namespace {

// Repeated witness descent: returns a word the difference machine cannot
// improve any further.
Word descend(const DiffMachine& wd, const RewritingSystem& rs, Word w) {
  for (;;) {
    auto s = witness_smaller(wd, rs, w);
    if (!s) return w;
    w = std::move(*s);
  }
}

Fsa composite(const AutomaticStructure& as, const Word& w, uint64_t cap) {
  const size_t na = as.rs.alpha.size();
  if (w.empty()) return as.mult[na];
  Fsa cur = as.mult[w[0]];
  for (size_t i = 1; i < w.size(); ++i)
    cur = minimize(compose(cur, as.mult[w[i]], cap));
  return cur;
}

}  // namespace

AxiomReport check_axioms(const AutomaticStructure& as,
                         const std::vector<std::pair<Word, Word>>& relations,
                         uint64_t state_cap) {
  AxiomReport rep;
  const Alphabet& alpha = as.rs.alpha;
  const Sym na = static_cast<Sym>(alpha.size());
  auto fail = [&](const std::string& d) {
    if (rep.status != CheckStatus::failed) {
      rep.status = CheckStatus::failed;
      rep.detail = d;
    }
  };
  try {
    if (!fsa_accepts(as.wa, {})) fail("empty word rejected by the acceptor");
    Fsa diag = diagonal_pair(as.wa);
    if (!fsa_equal(as.mult[na], diag)) {
      auto wit = pair_diff_witness(as.mult[na], diag);
      if (wit) {
        rep.equal_pairs.push_back(*wit);
        fail("normal forms not unique: " + alpha.format_word(wit->first) +
             " = " + alpha.format_word(wit->second));
      } else {
        fail("padding multiplier differs from the diagonal");
      }
    }
    for (Sym a = 0; a < na; ++a) {
      Fsa ex = minimize(exists_project(as.mult[a], 1, state_cap));
      if (fsa_equal(ex, as.wa)) continue;
      auto u = fsa_diff_witness(ex, as.wa);
      if (u) {
        rep.trace_pairs.push_back({*u, Word{a}});
        fail("multiplier for " + alpha.name(a) + " misses " +
             alpha.format_word(*u));
      } else {
        fail("totality check mismatch for " + alpha.name(a));
      }
    }
    if (rep.status == CheckStatus::ok) {
      std::vector<std::pair<Word, Word>> rels;
      for (Sym a = 0; a < na; ++a)
        if (alpha.has_inverse(a))
          rels.push_back({Word{a, alpha.inverse(a)}, {}});
      rels.insert(rels.end(), relations.begin(), relations.end());
      for (const auto& [l, r] : rels) {
        Fsa ml = composite(as, l, state_cap);
        Fsa mr = composite(as, r, state_cap);
        if (fsa_equal(ml, mr)) continue;
        auto wit = pair_diff_witness(ml, mr);
        if (wit) {
          rep.trace_pairs.push_back({wit->first, l});
          rep.trace_pairs.push_back({wit->first, r});
          fail("relation " + alpha.format_word(l) + " = " +
               alpha.format_word(r) + " fails at " +
               alpha.format_word(wit->first));
        } else {
          fail("relation composite mismatch");
        }
      }
    }
  } catch (const budget_error& e) {
    if (rep.status == CheckStatus::ok) {
      rep.status = CheckStatus::inconclusive;
      rep.detail = e.what();
    }
  }
  return rep;
}

AutomaticStructure compute_automatic_structure(const Presentation& p,
                                               const AutLimits& lim) {
  AutomaticStructure as;
  as.rs = make_group_rws(p);
  knuth_bendix(as.rs, lim.kb);
  const Sym na = static_cast<Sym>(as.rs.alpha.size());
  for (Sym a = 0; a < na; ++a) as.wd.add(as.rs, {a});
  as.wd.add_rule_diffs(as.rs);
  for (int round = 1; round <= lim.max_rounds; ++round) {
    as.rounds = round;
    as.wd.rebuild(as.rs);
    as.wa = build_word_acceptor(as.wd, as.rs, lim.state_cap);
    GeneralMultiplier gm =
        build_general_multiplier(as.wd, as.rs, as.wa, lim.state_cap);
    as.mult.clear();
    for (Sym a = 0; a < na; ++a)
      as.mult.push_back(multiplier_for(gm, as.wd, as.rs, {a}));
    as.mult.push_back(multiplier_for(gm, as.wd, as.rs, {}));
    AxiomReport rep = check_axioms(as, p.relations, lim.state_cap);
    if (rep.status == CheckStatus::ok) {
      as.verified = true;
      as.note.clear();
      return as;
    }
    as.note = rep.detail;
    bool changed = false;
    for (const auto& [u, v] : rep.equal_pairs) {
      changed |= as.rs.add_equation(u, v);
      changed |= as.wd.add_pair(as.rs, u, v);
    }
    for (const auto& [u, t] : rep.trace_pairs) {
      Word cur = u;
      for (Sym g : t) {
        Word step = cur;
        step.push_back(g);
        Word next = descend(as.wd, as.rs, as.rs.reduce(step));
        changed |= as.rs.add_equation(step, next);
        changed |= as.wd.add_pair(as.rs, cur, next);
        cur = std::move(next);
      }
    }
    changed |= as.wd.add_rule_diffs(as.rs);
    if (!changed) break;  // no new information; report the failure honestly
  }
  as.verified = false;
  return as;
}

Word word_reduce_quadratic(const AutomaticStructure& s, const Word& w) {
  Word u;
  for (Sym a : w) {
    std::optional<Word> v = multiplier_image(s.mult.at(a), u);
    if (!v)
      throw input_error("multiplier for " + s.rs.alpha.name(a) +
                        " has no partner for an accepted word");
    u = std::move(*v);
  }
  return u;
}

}  // namespace autogrp
