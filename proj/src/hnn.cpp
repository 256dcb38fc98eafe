#include "autogrp/hnn.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace autogrp {

namespace {

HnnNormalForm identity_nf() {
  HnnNormalForm nf;
  nf.blocks.push_back({Word{}, 0});
  return nf;
}

Word alpha_pow(const HnnSystem& hs, Word w, long long m) {
  if (w.empty() || m == 0) return w;
  const std::vector<Sym>& p = m > 0 ? hs.aperm : hs.aperm_inv;
  long long times = m > 0 ? m : -m;
  for (long long i = 0; i < times; ++i)
    for (Sym& y : w) y = p[y];
  return w;
}

// Pushes the subgroup word g leftward starting just right of z^{n_j} for
// j = i1-1: across each z-run by a power of alpha, across each
// representative by a coset re-split (which cannot empty a representative
// other than the first, since t not in H forces t*g not in H), and finally
// into the H-part.
void push_left(const HnnSystem& hs, HnnNormalForm& nf, size_t i1, Word g) {
  for (size_t j = i1; j-- > 0 && !g.empty();) {
    g = alpha_pow(hs, g, -static_cast<long long>(nf.blocks[j].second));
    if (nf.blocks[j].first.empty()) continue;
    Word gg = nf.blocks[j].first;
    Word gv = hs.cs.sub_value(g);
    gg.insert(gg.end(), gv.begin(), gv.end());
    nf.blocks[j].first = coset_rep(hs.cs, gg);
    g = coset_label(hs.cs, gg);
  }
  if (!g.empty()) {
    Word h = nf.h;
    h.insert(h.end(), g.begin(), g.end());
    nf.h = hs.has.rs.reduce(h);
  }
}

// Right-multiplies the normal form by one multiplier letter.
void absorb(const HnnSystem& hs, HnnNormalForm& nf, size_t c) {
  size_t nk = hs.kalpha.size();
  size_t L = nf.blocks.size() - 1;
  if (c == hs.z || c == hs.zinv) {
    nf.blocks[L].second += (c == hs.z) ? 1 : -1;
    return;
  }
  if (c >= nk) {
    push_left(hs, nf, L + 1, Word{static_cast<Sym>(c - nk)});
    return;
  }
  Sym a = static_cast<Sym>(c);
  if (nf.blocks[L].second == 0) {
    Word g = nf.blocks[L].first;
    g.push_back(a);
    Word t = coset_rep(hs.cs, g);
    Word lab = coset_label(hs.cs, g);
    if (t.empty() && L > 0)
      nf.blocks.pop_back();
    else
      nf.blocks[L].first = t;
    push_left(hs, nf, L, lab);
    return;
  }
  // z^{n_L} a = alpha^{-n_L}(c1) z^{n_L} c2
  Word c2 = coset_rep(hs.cs, Word{a});
  Word c1 = coset_label(hs.cs, Word{a});
  push_left(hs, nf, L + 1, c1);
  if (!c2.empty()) nf.blocks.push_back({c2, 0});
}

std::string nf_key(const HnnNormalForm& nf) {
  std::string k;
  for (Sym y : nf.h) {
    k += static_cast<char>('0' + (y % 64));
    k += static_cast<char>('0' + (y / 64));
  }
  for (const auto& [t, n] : nf.blocks) {
    k += '|';
    for (Sym a : t) {
      k += static_cast<char>('0' + (a % 64));
      k += static_cast<char>('0' + (a / 64));
    }
    k += ':';
    k += std::to_string(n);
  }
  return k;
}

size_t nf_size(const HnnNormalForm& nf) {
  size_t s = nf.h.size();
  for (const auto& [t, n] : nf.blocks)
    s += t.size() + static_cast<size_t>(n < 0 ? -n : n);
  return s;
}

std::string nf_text(const HnnSystem& hs, const HnnNormalForm& nf) {
  std::ostringstream o;
  o << (nf.h.empty() ? "_" : hs.cs.bsub.format_word(nf.h));
  for (const auto& [t, n] : nf.blocks) {
    if (t.empty() && n == 0 && nf.blocks.size() == 1) break;
    o << " (" << (t.empty() ? "_" : hs.in.base.alpha.format_word(t)) << ","
      << n << ")";
  }
  return o.str();
}

// ---- normal form acceptor ----

Fsa build_lk(const HnnSystem& hs, uint64_t state_cap) {
  const Fsa& hw = hs.has.wa;
  const Fsa& ww = hs.cs.wa;
  uint32_t nh = hw.nstates();
  uint32_t nw = ww.nstates();
  uint32_t base_w = nh;
  uint32_t zp = nh + nw;
  uint32_t zm = zp + 1;
  uint32_t next = zm + 1;
  std::vector<std::map<Sym, std::vector<uint32_t>>> arcs(next);
  std::vector<uint8_t> acc(next, 1);
  auto add_arc = [&](uint32_t s, Sym x, uint32_t t) {
    arcs[s][x].push_back(t);
  };
  auto new_node = [&]() {
    arcs.emplace_back();
    acc.push_back(0);
    return next++;
  };
  State w0 = ww.initial();
  for (uint32_t s = 0; s < nh; ++s) {
    acc[s] = hw.accept[s];
    // one rendering path per H-acceptor arc
    for (Sym y = 0; y < hw.nsym; ++y) {
      State t = hw.step(s, y);
      if (t == kNoState) continue;
      const Word& r = hs.render[y];
      uint32_t cur = s;
      for (size_t i = 0; i < r.size(); ++i) {
        uint32_t nxt = (i + 1 == r.size()) ? t : new_node();
        add_arc(cur, r[i], nxt);
        cur = nxt;
      }
    }
    if (!hw.accept[s]) continue;
    // switch into the first block or a first z-run
    for (Sym a = 0; a < ww.nsym; ++a) {
      State wt = ww.step(w0, a);
      if (wt != kNoState) add_arc(s, a, base_w + wt);
    }
    add_arc(s, hs.z, zp);
    add_arc(s, hs.zinv, zm);
  }
  for (uint32_t s = 0; s < nw; ++s) {
    acc[base_w + s] = ww.accept[s];
    for (Sym a = 0; a < ww.nsym; ++a) {
      State wt = ww.step(s, a);
      if (wt != kNoState) add_arc(base_w + s, a, base_w + wt);
    }
    if (!ww.accept[s]) continue;
    add_arc(base_w + s, hs.z, zp);
    add_arc(base_w + s, hs.zinv, zm);
  }
  add_arc(zp, hs.z, zp);
  add_arc(zm, hs.zinv, zm);
  for (Sym a = 0; a < ww.nsym; ++a) {
    State wt = ww.step(w0, a);
    if (wt == kNoState) continue;
    add_arc(zp, a, base_w + wt);
    add_arc(zm, a, base_w + wt);
  }
  // subset construction over the K alphabet
  Fsa d = make_dfa(hs.kalpha);
  std::map<std::vector<uint32_t>, State> ids;
  std::queue<std::vector<uint32_t>> todo;
  auto intern = [&](std::vector<uint32_t> key) {
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    bool a = false;
    for (uint32_t n : key) a = a || acc[n];
    State s = d.add_state(a);
    if (d.nstates() > state_cap) throw budget_error("normal form acceptor");
    ids.emplace(key, s);
    todo.push(std::move(key));
    return s;
  };
  intern({hw.initial()});
  d.initials = {0};
  while (!todo.empty()) {
    std::vector<uint32_t> key = todo.front();
    todo.pop();
    State s = ids.at(key);
    for (Sym x = 0; x < d.nsym; ++x) {
      std::vector<uint32_t> tgt;
      for (uint32_t n : key) {
        auto it = arcs[n].find(x);
        if (it == arcs[n].end()) continue;
        tgt.insert(tgt.end(), it->second.begin(), it->second.end());
      }
      if (tgt.empty()) continue;
      State t = intern(std::move(tgt));
      d.set_trans(s, x, t);
    }
  }
  return minimize(d);
}

// ---- async multiplier graph ----

// State of the shared multiplier graph: acceptor states of both tapes, the
// interned tracked difference, the z-letter offset, whose turn it is, and
// the end flags. Only the accept anchor differs between letters.
struct AsyncGraph {
  Fsa m;
  std::vector<std::string> gsum;
  std::vector<uint32_t> gid;      // tracked difference per state
  std::vector<uint8_t> terminal;  // both end markers consumed
  size_t max_g = 0;
  std::vector<size_t> state_g;            // nf_size of the difference per state
  std::map<std::string, uint32_t> gkeys;  // difference key -> id
};

struct GPool {
  std::map<std::string, uint32_t> ids;
  std::vector<HnnNormalForm> nfs;

  uint32_t intern(const HnnNormalForm& nf) {
    std::string k = nf_key(nf);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(nfs.size());
    ids.emplace(std::move(k), id);
    nfs.push_back(nf);
    return id;
  }
};

void absorb_nf(const HnnSystem& hs, HnnNormalForm& r, const HnnNormalForm& g) {
  for (Sym y : g.h) absorb(hs, r, hs.kalpha.size() + y);
  for (const auto& [t, n] : g.blocks) {
    for (Sym a : t) absorb(hs, r, a);
    size_t c = n > 0 ? hs.z : hs.zinv;
    for (int i = n < 0 ? -n : n; i > 0; --i) absorb(hs, r, c);
  }
}

int rule_side(int zd, int turn, bool ue, bool ve) {
  if (ue) return 2;
  if (ve) return 1;
  if (zd > 0) return 2;
  if (zd < 0) return 1;
  return turn == 0 ? 1 : 2;
}

// Memoized one-letter products of interned tracked differences.
struct GCtx {
  const HnnSystem& hs;
  size_t gcap;
  GPool pool;
  uint32_t g0;
  std::map<std::tuple<uint32_t, Sym, int>, uint32_t> memo;

  GCtx(const HnnSystem& h, size_t cap) : hs(h), gcap(cap) {
    g0 = pool.intern(identity_nf());
  }

  uint32_t step(uint32_t gi, Sym x, int side) {
    auto key = std::make_tuple(gi, x, side);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    HnnNormalForm nf;
    if (side == 1) {  // g' = x^-1 g
      nf = identity_nf();
      absorb(hs, nf, hs.kalpha.inverse(x));
      absorb_nf(hs, nf, pool.nfs[gi]);
    } else {  // g' = g x
      nf = pool.nfs[gi];
      absorb(hs, nf, x);
    }
    uint32_t id = nf_size(nf) > gcap ? kNoDiff : pool.intern(nf);
    memo.emplace(key, id);
    return id;
  }
};

// Differences arising on the true pairs (u, nf of u c) up to depth, under
// the read discipline. The closure below only steps inside this set, which
// keeps the graph small; a difference first arising beyond depth surfaces
// as a verifier failure, never as a wrong acceptance.
std::set<uint32_t> collect_differences(const HnnSystem& hs, GCtx& gc,
                                       size_t depth) {
  std::set<uint32_t> allowed;
  allowed.insert(gc.g0);
  std::vector<Word> words = fsa_enumerate(hs.lk, depth);
  for (const Word& u : words) {
    HnnNormalForm nu = identity_nf();
    for (Sym s : u) absorb(hs, nu, s);
    for (size_t c = 0; c < hs.nmult(); ++c) {
      HnnNormalForm nv = nu;
      absorb(hs, nv, c);
      Word v = lk_word(hs, nv);
      uint32_t g = gc.g0;
      size_t pu = 0, pv = 0;
      int zd = 0, turn = 0;
      bool ue = false, ve = false;
      while (!(ue && ve)) {
        int side = rule_side(zd, turn, ue, ve);
        if (side == 1) {
          if (pu == u.size()) {
            ue = true;
            continue;
          }
          Sym x = u[pu++];
          g = gc.step(g, x, 1);
          if (x == hs.z || x == hs.zinv) ++zd;
          turn = 1;
        } else {
          if (pv == v.size()) {
            ve = true;
            continue;
          }
          Sym x = v[pv++];
          g = gc.step(g, x, 2);
          if (x == hs.z || x == hs.zinv) --zd;
          turn = 0;
        }
        if (g == kNoDiff || zd < -2 || zd > 2) break;
        allowed.insert(g);
      }
    }
  }
  return allowed;
}

AsyncGraph build_async_graph(const HnnSystem& hs, uint64_t state_cap,
                             size_t gcap, size_t diff_depth) {
  AsyncGraph g;
  g.m = make_async_fsa(hs.kalpha);
  size_t nk = hs.kalpha.size();
  Sym end = static_cast<Sym>(nk);
  GCtx gc(hs, gcap);
  std::set<uint32_t> allowed = collect_differences(hs, gc, diff_depth);
  GPool& pool = gc.pool;
  uint32_t g0 = gc.g0;
  auto step_g = [&](uint32_t gi, Sym x, int side) -> uint32_t {
    uint32_t id = gc.step(gi, x, side);
    return id != kNoDiff && allowed.count(id) ? id : kNoDiff;
  };

  // key: lku, lkv, gid, zd+2, turn, uend, vend
  using Key = std::array<uint32_t, 7>;
  std::map<Key, State> ids;
  std::queue<Key> todo;
  auto phase = [&](const Key& k) -> const char* {
    if (k[5] || k[6]) return "iv";
    if (k[3] != 2) return "iii";
    const HnnNormalForm& nf = pool.nfs[k[2]];
    for (const auto& [t, n] : nf.blocks)
      if (n != 0) return "iii";
    for (const auto& [t, n] : nf.blocks)
      if (!t.empty()) return "ii";
    return "i";
  };
  auto intern = [&](Key k) {
    if (k[5]) {  // canonicalize ended tapes
      k[0] = 0;
      k[4] = 0;
    }
    if (k[6]) k[1] = 0;
    if (k[5] && k[6]) k[3] = 2;
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    State s = g.m.add_state(false);
    if (g.m.nstates() > state_cap) throw budget_error("async multiplier");
    g.m.reads.push_back(static_cast<uint8_t>(
        k[5] && k[6] ? 1 : rule_side(static_cast<int>(k[3]) - 2, k[4], k[5], k[6])));
    g.gid.push_back(k[2]);
    g.terminal.push_back(k[5] && k[6] ? 1 : 0);
    size_t sz = nf_size(pool.nfs[k[2]]);
    g.state_g.push_back(sz);
    g.max_g = std::max(g.max_g, sz);
    g.gsum.push_back(std::string(phase(k)) + " g=" +
                     nf_text(hs, pool.nfs[k[2]]));
    ids.emplace(k, s);
    todo.push(k);
    return s;
  };

  State lk0 = hs.lk.initial();
  intern({lk0, lk0, g0, 2, 0, 0, 0});
  g.m.initials = {0};
  while (!todo.empty()) {
    Key k = todo.front();
    todo.pop();
    // re-canonicalize to find our id
    Key ck = k;
    State s = ids.at(ck);
    if (k[5] && k[6]) continue;  // terminal
    int side = g.m.reads[s];
    uint32_t lks = side == 1 ? k[0] : k[1];
    for (Sym x = 0; x < nk; ++x) {
      State lk2 = hs.lk.step(lks, x);
      if (lk2 == kNoState) continue;
      uint32_t g2 = step_g(k[2], x, side);
      if (g2 == kNoDiff) continue;
      int zd = static_cast<int>(k[3]) - 2;
      if (x == hs.z || x == hs.zinv) zd += side == 1 ? 1 : -1;
      if (zd < -2 || zd > 2) continue;
      Key nk2 = k;
      nk2[side == 1 ? 0 : 1] = lk2;
      nk2[2] = g2;
      nk2[3] = static_cast<uint32_t>(zd + 2);
      nk2[4] = side == 1 ? 1 : 0;
      g.m.set_trans(s, x, intern(nk2));
    }
    // end marker: legal only on an accepting acceptor state
    if (hs.lk.accept[lks]) {
      Key nk2 = k;
      nk2[side == 1 ? 5 : 6] = 1;
      g.m.set_trans(s, end, intern(nk2));
    }
  }
  g.gkeys = std::move(pool.ids);
  return g;
}

// Anchors the shared graph at one target difference and trims to the states
// that can still reach the accepting terminal, renumbering breadth-first.
AsyncAutomaton anchor_graph(const HnnSystem& hs, const AsyncGraph& g,
                            uint32_t target) {
  uint32_t n = g.m.nstates();
  std::vector<uint8_t> acc(n, 0);
  for (uint32_t s = 0; s < n; ++s)
    if (g.terminal[s] && g.gid[s] == target) acc[s] = 1;
  // co-reachability
  std::vector<std::vector<uint32_t>> rev(n);
  for (uint32_t s = 0; s < n; ++s)
    for (uint32_t x = 0; x < g.m.nsym; ++x) {
      State t = g.m.step(s, static_cast<Sym>(x));
      if (t != kNoState) rev[t].push_back(s);
    }
  std::vector<uint8_t> live(n, 0);
  std::queue<uint32_t> q;
  for (uint32_t s = 0; s < n; ++s)
    if (acc[s]) {
      live[s] = 1;
      q.push(s);
    }
  while (!q.empty()) {
    uint32_t s = q.front();
    q.pop();
    for (uint32_t p : rev[s])
      if (!live[p]) {
        live[p] = 1;
        q.push(p);
      }
  }
  AsyncAutomaton am;
  am.m = make_async_fsa(hs.kalpha);
  std::vector<State> remap(n, kNoState);
  std::queue<uint32_t> bfs;
  auto keep = [&](uint32_t s) {
    if (remap[s] != kNoState) return remap[s];
    State t = am.m.add_state(acc[s]);
    am.m.reads.push_back(g.m.reads[s]);
    am.gsum.push_back(g.gsum[s]);
    am.max_g = std::max(am.max_g, g.state_g[s]);
    remap[s] = t;
    bfs.push(s);
    return t;
  };
  keep(0);
  am.m.initials = {0};
  if (!live[0]) return am;  // empty language, initial kept alone
  while (!bfs.empty()) {
    uint32_t s = bfs.front();
    bfs.pop();
    for (uint32_t x = 0; x < g.m.nsym; ++x) {
      State t = g.m.step(s, static_cast<Sym>(x));
      if (t == kNoState || !live[t]) continue;
      am.m.set_trans(remap[s], static_cast<Sym>(x), keep(t));
    }
  }
  return am;
}

AsyncAutomaton anchor_letter(const HnnSystem& hs, const AsyncGraph& g,
                             size_t c) {
  HnnNormalForm t = identity_nf();
  absorb(hs, t, c);
  auto it = g.gkeys.find(nf_key(t));
  if (it != g.gkeys.end()) {
    for (uint32_t s = 0; s < g.m.nstates(); ++s)
      if (g.terminal[s] && g.gid[s] == it->second)
        return anchor_graph(hs, g, it->second);
  }
  // no reachable accepting terminal: empty multiplier
  AsyncAutomaton am;
  am.m = make_async_fsa(hs.kalpha);
  am.m.add_state(false);
  am.m.reads.push_back(1);
  am.gsum.push_back("i g=_");
  am.m.initials = {0};
  return am;
}

}  // namespace

Word lk_word(const HnnSystem& hs, const HnnNormalForm& nf) {
  Word out;
  for (Sym y : nf.h) {
    const Word& r = hs.render[y];
    out.insert(out.end(), r.begin(), r.end());
  }
  for (const auto& [t, n] : nf.blocks) {
    out.insert(out.end(), t.begin(), t.end());
    Sym zl = n > 0 ? hs.z : hs.zinv;
    for (int i = n < 0 ? -n : n; i > 0; --i) out.push_back(zl);
  }
  return out;
}

bool nf_equal(const HnnNormalForm& a, const HnnNormalForm& b) {
  return a.h == b.h && a.blocks == b.blocks;
}

HnnNormalForm hnn_normal_form(const HnnSystem& hs, const Word& w) {
  if (!hs.verified) throw input_error("hnn system not verified");
  HnnNormalForm nf = identity_nf();
  for (Sym c : w) {
    if (c >= hs.kalpha.size()) throw input_error("letter outside the K alphabet");
    absorb(hs, nf, c);
  }
  return nf;
}

HnnNormalForm hnn_multiply(const HnnSystem& hs, const HnnNormalForm& nf,
                           size_t c) {
  if (!hs.verified) throw input_error("hnn system not verified");
  if (c >= hs.nmult()) throw input_error("multiplier letter out of range");
  HnnNormalForm r = nf;
  absorb(hs, r, c);
  return r;
}

Word hnn_reduce(const HnnSystem& hs, const Word& w) {
  return lk_word(hs, hnn_normal_form(hs, w));
}

AsyncAutomaton build_async_multiplier(const HnnSystem& hs, size_t c,
                                      uint64_t state_cap, size_t gcap,
                                      size_t diff_depth) {
  if (!hs.verified) throw input_error("hnn system not verified");
  if (c >= hs.nmult()) throw input_error("multiplier letter out of range");
  AsyncGraph g = build_async_graph(hs, state_cap, gcap, diff_depth);
  return anchor_letter(hs, g, c);
}

HnnSystem build_hnn_system(const HnnInput& in, const HnnLimits& lim) {
  HnnSystem hs;
  hs.in = in;
  hs.kalpha = in.base.alpha;
  Sym z = hs.kalpha.add(in.stable);
  Sym zi = hs.kalpha.add(in.stable_inv);
  hs.kalpha.set_inverse(z, zi);
  hs.z = z;
  hs.zinv = zi;
  if (in.sub_generators.empty())
    throw input_error("hnn extension needs subgroup generators");

  hs.gas = compute_automatic_structure(in.base, lim.aut);
  if (!hs.gas.verified) {
    hs.note = "base group structure unverified: " + hs.gas.note;
    return hs;
  }
  SubgroupInput si;
  si.name = in.name.empty() ? "h" : in.name + "_h";
  si.generators = in.sub_generators;
  hs.cs = build_coset_system(in.base, si, lim.cos);
  if (!hs.cs.verified || !hs.cs.strong) {
    hs.note = "coset system unverified: " + hs.cs.note;
    return hs;
  }
  EffReport eff = efficiency_check(hs.cs, lim.state_cap);
  if (eff.status != CheckStatus::ok) {
    hs.note = "subgroup generators not efficient: " + eff.detail;
    return hs;
  }

  size_t nb = hs.cs.bsub.size();
  hs.aperm.assign(nb, kNoSym);
  if (in.alpha.empty()) {
    for (size_t y = 0; y < nb; ++y) hs.aperm[y] = static_cast<Sym>(y);
  } else {
    if (in.alpha.size() != in.sub_generators.size())
      throw input_error("alpha must list every subgroup generator");
    for (size_t i = 0; i < in.alpha.size(); ++i) {
      if (in.alpha[i].size() != 1)
        throw input_error("alpha must map subgroup letters to single letters");
      Sym im = in.alpha[i][0];
      if (im >= nb) throw input_error("alpha image outside subgroup letters");
      hs.aperm[2 * i] = im;
      hs.aperm[2 * i + 1] = hs.cs.bsub.inverse(im);
    }
  }
  hs.aperm_inv.assign(nb, kNoSym);
  for (size_t y = 0; y < nb; ++y) {
    if (hs.aperm[y] == kNoSym || hs.aperm_inv[hs.aperm[y]] != kNoSym)
      throw input_error("alpha is not a bijection on the subgroup letters");
    hs.aperm_inv[hs.aperm[y]] = static_cast<Sym>(y);
  }

  // H presented over the subgroup letters by the collected subgroup rules
  Presentation hp;
  hp.name = si.name;
  hp.alpha = hs.cs.bsub;
  for (uint32_t id : hs.cs.crs.live_rule_ids()) {
    const Rule& r = hs.cs.crs.rules[id];
    if (r.lhs.empty() || r.lhs[0] >= hs.cs.sep) continue;
    bool pure = true;
    for (Sym x : r.rhs) pure = pure && x < hs.cs.sep;
    if (pure) hp.relations.emplace_back(r.lhs, r.rhs);
  }
  hs.has = compute_automatic_structure(hp, lim.aut);
  if (!hs.has.verified) {
    hs.note = "subgroup structure unverified: " + hs.has.note;
    return hs;
  }
  for (const auto& [l, r] : hp.relations) {
    Word al = l, ar = r;
    for (Sym& y : al) y = hs.aperm[y];
    for (Sym& y : ar) y = hs.aperm[y];
    if (hs.has.rs.reduce(al) != hs.has.rs.reduce(ar))
      throw input_error("alpha does not preserve the subgroup relations");
  }

  hs.render.resize(nb);
  for (size_t y = 0; y < nb; ++y) {
    hs.render[y] = hs.gas.rs.reduce(hs.cs.sub_value(Word{static_cast<Sym>(y)}));
    if (hs.render[y].empty())
      throw input_error("subgroup generator reduces to the identity");
  }
  hs.kbound = 1;
  for (Sym a = 0; a < in.base.alpha.size(); ++a)
    hs.kbound = std::max(hs.kbound, coset_label(hs.cs, Word{a}).size());

  hs.lk = build_lk(hs, lim.state_cap);
  hs.verified = true;  // collection and runner are usable from here

  AsyncGraph graph =
      build_async_graph(hs, lim.state_cap, lim.gcap, lim.diff_depth);
  for (size_t c = 0; c < hs.nmult(); ++c)
    hs.mult.push_back(anchor_letter(hs, graph, c));
  return hs;
}

AsyncRun async_run(const AsyncAutomaton& am, const Word& u, const Word& v,
                   bool want_trace) {
  const Fsa& m = am.m;
  AsyncRun r;
  if (m.nstates() == 0) return r;
  State s = m.initial();
  size_t pu = 0, pv = 0;
  bool ue = false, ve = false;
  Sym end = static_cast<Sym>(m.base.size());
  while (true) {
    if (ue && ve) {
      r.accepted = m.accept[s];
      break;
    }
    int side = m.reads[s];
    Sym x;
    if (side == 1)
      x = pu < u.size() ? u[pu] : end;
    else
      x = pv < v.size() ? v[pv] : end;
    State t = x < m.nsym ? m.step(s, x) : kNoState;
    if (t == kNoState) break;
    if (side == 1) {
      if (x == end)
        ue = true;
      else
        ++pu;
    } else {
      if (x == end)
        ve = true;
      else
        ++pv;
    }
    s = t;
    r.phi = pu;
    r.psi = pv;
    size_t drift = pu > pv ? pu - pv : pv - pu;
    r.max_drift = std::max(r.max_drift, drift);
    if (want_trace)
      r.trace.push_back(std::to_string(pu) + " " + std::to_string(pv) + " " +
                        am.gsum[t]);
  }
  return r;
}

HnnReport verify_async_structure(const HnnSystem& hs, size_t depth,
                                 size_t reject_samples) {
  if (!hs.verified) throw input_error("hnn system not verified");
  HnnReport rep;
  for (const AsyncAutomaton& am : hs.mult)
    rep.max_g = std::max(rep.max_g, am.max_g);
  std::vector<Word> words = fsa_enumerate(hs.lk, depth);
  rep.words = words.size();
  auto fail = [&](const std::string& d) {
    rep.ok = false;
    rep.detail = d;
    return rep;
  };
  for (const Word& u : words) {
    HnnNormalForm nu = hnn_normal_form(hs, u);
    if (lk_word(hs, nu) != u)
      return fail("acceptor word does not round-trip: " +
                  hs.kalpha.format_word(u));
    for (size_t c = 0; c < hs.nmult(); ++c) {
      HnnNormalForm nv = hnn_multiply(hs, nu, c);
      Word v = lk_word(hs, nv);
      if (!fsa_accepts(hs.lk, v))
        return fail("normal form of u c not accepted: u = " +
                    hs.kalpha.format_word(u) + ", c = " + hs.letter_name(c));
      AsyncRun run = async_run(hs.mult[c], u, v);
      if (!run.accepted)
        return fail("multiplier rejects (u, u c): u = " +
                    hs.kalpha.format_word(u) + ", c = " + hs.letter_name(c) +
                    ", v = " + hs.kalpha.format_word(v));
      ++rep.accepts;
      rep.max_drift = std::max(rep.max_drift, run.max_drift);
      size_t tried = 0;
      for (const Word& w : words) {
        if (tried >= reject_samples) break;
        if (w == v) continue;
        ++tried;
        if (async_run(hs.mult[c], u, w).accepted)
          return fail("multiplier accepts a wrong pair: u = " +
                      hs.kalpha.format_word(u) + ", c = " + hs.letter_name(c) +
                      ", v = " + hs.kalpha.format_word(w));
        ++rep.rejects;
      }
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace autogrp
