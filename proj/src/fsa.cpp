#include "autogrp/fsa.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <unordered_map>

namespace autogrp {

namespace {

struct U64VecHash {
  size_t operator()(const std::vector<uint64_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

void sort_unique(std::vector<uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Fsa Fsa::empty_dfa(const Alphabet& a, FsaKind kind) {
  Fsa f;
  f.kind = kind;
  f.base = a;
  f.nsym = kind == FsaKind::pair
               ? static_cast<uint32_t>((a.size() + 1) * (a.size() + 1))
               : static_cast<uint32_t>(a.size());
  f.initials = {0};
  f.add_state(false);
  if (kind == FsaKind::midfa) f.labels = {Word{}};
  return f;
}

Fsa make_dfa(const Alphabet& a) {
  Fsa f;
  f.kind = FsaKind::dfa;
  f.base = a;
  f.nsym = static_cast<uint32_t>(a.size());
  return f;
}

Fsa make_pair_fsa(const Alphabet& a) {
  Fsa f;
  f.kind = FsaKind::pair;
  f.base = a;
  f.nsym = static_cast<uint32_t>((a.size() + 1) * (a.size() + 1));
  return f;
}

Fsa make_async_fsa(const Alphabet& a) {
  Fsa f;
  f.kind = FsaKind::async;
  f.base = a;
  f.nsym = static_cast<uint32_t>(a.size()) + 1;
  return f;
}

bool fsa_accepts(const Fsa& d, const Word& w) {
  for (State s0 : d.initials) {
    State s = s0;
    bool ok = true;
    for (Sym a : w) {
      s = d.step(s, a);
      if (s == kNoState) {
        ok = false;
        break;
      }
    }
    if (ok && d.accept[s]) return true;
  }
  return false;
}

bool pair_accepts(const Fsa& p, const Word& u, const Word& v) {
  Sym pad = p.base.pad();
  size_t t_max = std::max(u.size(), v.size());
  State s = p.initial();
  for (size_t t = 0; t < t_max; t++) {
    Sym a = t < u.size() ? u[t] : pad;
    Sym b = t < v.size() ? v[t] : pad;
    s = p.step(s, p.pair_sym(a, b));
    if (s == kNoState) return false;
  }
  return p.accept[s];
}

Fsa fsa_trim(const Fsa& m) {
  uint32_t n = m.nstates();
  std::vector<uint8_t> reach(n, 0);
  std::deque<State> q;
  for (State s : m.initials)
    if (!reach[s]) {
      reach[s] = 1;
      q.push_back(s);
    }
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    for (Sym a = 0; a < m.nsym; a++) {
      State t = m.step(s, a);
      if (t != kNoState && !reach[t]) {
        reach[t] = 1;
        q.push_back(t);
      }
    }
  }

  // reverse edges over reachable part
  std::vector<std::vector<State>> rev(n);
  for (State s = 0; s < n; s++) {
    if (!reach[s]) continue;
    for (Sym a = 0; a < m.nsym; a++) {
      State t = m.step(s, a);
      if (t != kNoState && reach[t]) rev[t].push_back(s);
    }
  }
  std::vector<uint8_t> live(n, 0);
  for (State s = 0; s < n; s++)
    if (reach[s] && m.accept[s]) {
      live[s] = 1;
      q.push_back(s);
    }
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    for (State r : rev[s])
      if (!live[r]) {
        live[r] = 1;
        q.push_back(r);
      }
  }

  bool any_initial = false;
  for (State s : m.initials) any_initial |= live[s] != 0;
  if (!any_initial) return Fsa::empty_dfa(m.base, m.kind);

  std::vector<State> remap(n, kNoState);
  uint32_t nn = 0;
  for (State s = 0; s < n; s++)
    if (live[s]) remap[s] = nn++;

  Fsa out;
  out.kind = m.kind;
  out.base = m.base;
  out.nsym = m.nsym;
  out.trans.assign(static_cast<size_t>(nn) * m.nsym, kNoState);
  out.accept.assign(nn, 0);
  if (!m.reads.empty()) out.reads.assign(nn, 0);
  for (State s = 0; s < n; s++) {
    if (!live[s]) continue;
    out.accept[remap[s]] = m.accept[s];
    if (!m.reads.empty()) out.reads[remap[s]] = m.reads[s];
    for (Sym a = 0; a < m.nsym; a++) {
      State t = m.step(s, a);
      if (t != kNoState && live[t]) out.set_trans(remap[s], a, remap[t]);
    }
  }
  for (size_t i = 0; i < m.initials.size(); i++) {
    State s = m.initials[i];
    if (!live[s]) continue;
    out.initials.push_back(remap[s]);
    if (!m.labels.empty()) out.labels.push_back(m.labels[i]);
  }
  return out;
}

namespace {

// Shared subset construction.  `step` appends NFA successors of a packed
// state to `out`; `closure` saturates a sorted set in place (may be null).
Fsa subset_construct(
    const Fsa& shape, FsaKind out_kind, std::vector<uint64_t> start,
    const std::function<bool(uint64_t)>& is_acc,
    const std::function<void(uint64_t, Sym, std::vector<uint64_t>&)>& step,
    const std::function<void(std::vector<uint64_t>&)>& closure, uint32_t nsym,
    uint64_t cap) {
  Fsa out;
  out.kind = out_kind;
  out.base = shape.base;
  out.nsym = nsym;

  sort_unique(start);
  if (closure) closure(start);

  std::unordered_map<std::vector<uint64_t>, State, U64VecHash> id;
  std::vector<std::vector<uint64_t>> sets;
  auto intern = [&](std::vector<uint64_t>&& s) -> State {
    auto it = id.find(s);
    if (it != id.end()) return it->second;
    State ns = static_cast<State>(sets.size());
    if (ns >= cap) throw budget_error("subset construction exceeded state cap");
    id.emplace(s, ns);
    sets.push_back(std::move(s));
    bool acc = false;
    for (uint64_t m : sets.back()) acc = acc || is_acc(m);
    out.add_state(acc);
    return ns;
  };

  intern(std::move(start));
  out.initials = {0};
  for (size_t s = 0; s < sets.size(); s++) {
    for (Sym a = 0; a < nsym; a++) {
      std::vector<uint64_t> next;
      for (uint64_t m : sets[s]) step(m, a, next);
      if (next.empty()) continue;
      sort_unique(next);
      if (closure) closure(next);
      out.set_trans(static_cast<State>(s), a, intern(std::move(next)));
    }
  }
  return out;
}

// Canonical breadth-first renumbering from the initial states.
void canonical_renumber(Fsa& f) {
  uint32_t n = f.nstates();
  std::vector<State> order;
  std::vector<State> remap(n, kNoState);
  for (State s : f.initials)
    if (remap[s] == kNoState) {
      remap[s] = static_cast<State>(order.size());
      order.push_back(s);
    }
  for (size_t i = 0; i < order.size(); i++) {
    State s = order[i];
    for (Sym a = 0; a < f.nsym; a++) {
      State t = f.step(s, a);
      if (t != kNoState && remap[t] == kNoState) {
        remap[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  // states not reached stay out (callers trim first)
  uint32_t nn = static_cast<uint32_t>(order.size());
  Fsa out;
  out.kind = f.kind;
  out.base = f.base;
  out.nsym = f.nsym;
  out.trans.assign(static_cast<size_t>(nn) * f.nsym, kNoState);
  out.accept.assign(nn, 0);
  if (!f.reads.empty()) out.reads.assign(nn, 0);
  for (uint32_t ns = 0; ns < nn; ns++) {
    State s = order[ns];
    out.accept[ns] = f.accept[s];
    if (!f.reads.empty()) out.reads[ns] = f.reads[s];
    for (Sym a = 0; a < f.nsym; a++) {
      State t = f.step(s, a);
      if (t != kNoState && remap[t] != kNoState) out.set_trans(ns, a, remap[t]);
    }
  }
  std::vector<std::pair<State, Word>> ini;
  for (size_t i = 0; i < f.initials.size(); i++)
    ini.emplace_back(remap[f.initials[i]],
                     f.labels.empty() ? Word{} : f.labels[i]);
  std::sort(ini.begin(), ini.end());
  for (auto& [s, l] : ini) {
    out.initials.push_back(s);
    if (!f.labels.empty()) out.labels.push_back(l);
  }
  f = std::move(out);
}

}  // namespace

Fsa determinize(const Fsa& m, uint64_t state_cap) {
  FsaKind k = m.kind == FsaKind::pair ? FsaKind::pair : FsaKind::dfa;
  std::vector<uint64_t> start(m.initials.begin(), m.initials.end());
  Fsa out = subset_construct(
      m, k, std::move(start), [&](uint64_t s) { return m.accept[s] != 0; },
      [&](uint64_t s, Sym a, std::vector<uint64_t>& next) {
        State t = m.step(static_cast<State>(s), a);
        if (t != kNoState) next.push_back(t);
      },
      nullptr, m.nsym, state_cap);
  out = fsa_trim(out);
  canonical_renumber(out);
  return out;
}

Fsa minimize(const Fsa& d) {
  if (d.initials.size() != 1)
    throw input_error("minimize requires a single initial state");
  Fsa t = fsa_trim(d);
  uint32_t n = t.nstates();
  if (n <= 1) {
    canonical_renumber(t);
    return t;
  }

  // Moore refinement over the live part; absent arcs act as a virtual dead
  // class that no live state can join.
  std::vector<uint32_t> cls(n);
  for (State s = 0; s < n; s++) cls[s] = t.accept[s];
  uint32_t ncls = 2;
  {
    bool all_acc = true;
    for (State s = 0; s < n; s++) all_acc = all_acc && t.accept[s];
    if (all_acc) ncls = 1;  // trimmed: every state accepting is possible
  }
  std::vector<uint32_t> sig;
  std::vector<uint32_t> ncls_of(n);
  while (true) {
    std::unordered_map<std::string, uint32_t> seen;
    seen.reserve(n * 2);
    uint32_t next_id = 0;
    for (State s = 0; s < n; s++) {
      sig.clear();
      sig.push_back(cls[s]);
      for (Sym a = 0; a < t.nsym; a++) {
        State to = t.step(s, a);
        sig.push_back(to == kNoState ? 0xffffffffu : cls[to]);
      }
      std::string key(reinterpret_cast<const char*>(sig.data()),
                      sig.size() * sizeof(uint32_t));
      auto it = seen.find(key);
      if (it == seen.end()) it = seen.emplace(std::move(key), next_id++).first;
      ncls_of[s] = it->second;
    }
    if (next_id == ncls) break;
    ncls = next_id;
    cls.swap(ncls_of);
  }

  Fsa q;
  q.kind = t.kind;
  q.base = t.base;
  q.nsym = t.nsym;
  q.trans.assign(static_cast<size_t>(ncls) * t.nsym, kNoState);
  q.accept.assign(ncls, 0);
  for (State s = 0; s < n; s++) {
    q.accept[cls[s]] = t.accept[s];
    for (Sym a = 0; a < t.nsym; a++) {
      State to = t.step(s, a);
      if (to != kNoState) q.set_trans(cls[s], a, cls[to]);
    }
  }
  q.initials = {cls[t.initial()]};
  canonical_renumber(q);
  return q;
}

Fsa fsa_bool(BoolKind k, const Fsa& a, const Fsa& b, uint64_t state_cap) {
  if (a.nsym != b.nsym || !(a.base == b.base))
    throw input_error("boolean op on automata over different alphabets");
  if (a.initials.size() != 1 || b.initials.size() != 1)
    throw input_error("boolean op requires single initial states");

  const uint64_t kSink = 0xffffffffull;
  auto pack = [](uint64_t x, uint64_t y) { return (x << 32) | y; };
  auto acc_of = [&](const Fsa& f, uint64_t s) {
    return s != kSink && f.accept[static_cast<State>(s)];
  };
  auto is_acc = [&](uint64_t m) {
    bool aa = acc_of(a, m >> 32), ab = acc_of(b, m & 0xffffffffull);
    switch (k) {
      case BoolKind::and_: return aa && ab;
      case BoolKind::or_: return aa || ab;
      case BoolKind::andnot: return aa && !ab;
    }
    return false;
  };
  auto step = [&](uint64_t m, Sym s, std::vector<uint64_t>& next) {
    uint64_t xa = m >> 32, xb = m & 0xffffffffull;
    uint64_t ta = xa == kSink ? kSink : a.step(static_cast<State>(xa), s);
    uint64_t tb = xb == kSink ? kSink : b.step(static_cast<State>(xb), s);
    if (ta == kNoState) ta = kSink;
    if (tb == kNoState) tb = kSink;
    if (ta == kSink && tb == kSink) return;
    if (k == BoolKind::and_ && (ta == kSink || tb == kSink)) return;
    next.push_back(pack(ta, tb));
  };
  Fsa out = subset_construct(a, a.kind,
                             {pack(a.initial(), b.initial())}, is_acc, step,
                             nullptr, a.nsym, state_cap);
  return minimize(out);
}

Fsa exists_project(const Fsa& p, int coord, uint64_t state_cap) {
  if (p.kind != FsaKind::pair) throw input_error("exists_project wants a pair fsa");
  uint32_t n = static_cast<uint32_t>(p.base.size());
  Sym pad = p.base.pad();

  // States from which acceptance is reachable reading only pad on `coord`.
  std::vector<uint8_t> pacc(p.nstates(), 0);
  {
    std::vector<std::vector<State>> rev(p.nstates());
    for (State s = 0; s < p.nstates(); s++)
      for (Sym b = 0; b < n; b++) {
        Sym c = coord == 1 ? p.pair_sym(pad, b) : p.pair_sym(b, pad);
        State t = p.step(s, c);
        if (t != kNoState) rev[t].push_back(s);
      }
    std::deque<State> q;
    for (State s = 0; s < p.nstates(); s++)
      if (p.accept[s]) {
        pacc[s] = 1;
        q.push_back(s);
      }
    while (!q.empty()) {
      State s = q.front();
      q.pop_front();
      for (State r : rev[s])
        if (!pacc[r]) {
          pacc[r] = 1;
          q.push_back(r);
        }
    }
  }

  Fsa shape;
  shape.base = p.base;
  Fsa out = subset_construct(
      shape, FsaKind::dfa, {p.initial()},
      [&](uint64_t s) { return pacc[s] != 0; },
      [&](uint64_t s, Sym a, std::vector<uint64_t>& next) {
        for (Sym b = 0; b <= n; b++) {
          Sym c = coord == 1 ? p.pair_sym(a, b) : p.pair_sym(b, a);
          State t = p.step(static_cast<State>(s), c);
          if (t != kNoState) next.push_back(t);
        }
      },
      nullptr, n, state_cap);
  return minimize(out);
}

Fsa compose(const Fsa& p, const Fsa& q, uint64_t state_cap) {
  if (p.kind != FsaKind::pair || q.kind != FsaKind::pair ||
      !(p.base == q.base))
    throw input_error("compose wants two pair fsas over one alphabet");
  uint32_t n = static_cast<uint32_t>(p.base.size());
  Sym pad = p.base.pad();
  // Once both tapes of a machine have ended it freezes accepting in dp/dq
  // while the other machine finishes its longer tape.
  const State dp = p.nstates(), dq = q.nstates();
  auto pack = [](State x, State y) {
    return (static_cast<uint64_t>(x) << 32) | y;
  };

  // Middle tape runs past both outer tapes: epsilon moves consume (pad,b)
  // in p and (b,pad) in q.
  auto closure = [&](std::vector<uint64_t>& set) {
    std::deque<uint64_t> work(set.begin(), set.end());
    std::vector<uint64_t> seen = set;
    std::sort(seen.begin(), seen.end());
    while (!work.empty()) {
      uint64_t m = work.front();
      work.pop_front();
      State sp = static_cast<State>(m >> 32), sq = static_cast<State>(m);
      if (sp == dp || sq == dq) continue;  // middle tape already over
      for (Sym b = 0; b < n; b++) {
        State tp = p.step(sp, p.pair_sym(pad, b));
        if (tp == kNoState) continue;
        State tq = q.step(sq, q.pair_sym(b, pad));
        if (tq == kNoState) continue;
        uint64_t t = pack(tp, tq);
        auto it = std::lower_bound(seen.begin(), seen.end(), t);
        if (it != seen.end() && *it == t) continue;
        seen.insert(it, t);
        work.push_back(t);
      }
    }
    set = std::move(seen);
  };

  auto is_acc = [&](uint64_t m) {
    State sp = static_cast<State>(m >> 32), sq = static_cast<State>(m);
    return (sp == dp || p.accept[sp]) && (sq == dq || q.accept[sq]);
  };
  auto step = [&](uint64_t m, Sym c, std::vector<uint64_t>& next) {
    Sym x = p.pair_left(c), y = p.pair_right(c);
    if (x == pad && y == pad) return;
    State sp = static_cast<State>(m >> 32), sq = static_cast<State>(m);
    for (Sym b = 0; b <= n; b++) {
      State tp, tq;
      if (x == pad && b == pad) {
        tp = (sp == dp || p.accept[sp]) ? dp : kNoState;
      } else if (sp == dp) {
        continue;  // frozen machines read nothing further
      } else {
        tp = p.step(sp, p.pair_sym(x, b));
      }
      if (tp == kNoState) continue;
      if (b == pad && y == pad) {
        tq = (sq == dq || q.accept[sq]) ? dq : kNoState;
      } else if (sq == dq) {
        continue;
      } else {
        tq = q.step(sq, q.pair_sym(b, y));
      }
      if (tq == kNoState) continue;
      next.push_back(pack(tp, tq));
    }
  };

  Fsa out = subset_construct(p, FsaKind::pair, {pack(p.initial(), q.initial())},
                             is_acc, step, closure, p.nsym, state_cap);
  // skip arcs on the unused (pad,pad) column if any crept in
  return minimize(out);
}

Fsa diagonal_pair(const Fsa& d) {
  if (d.initials.size() != 1) throw input_error("diagonal_pair wants a dfa");
  Fsa out;
  out.kind = FsaKind::pair;
  out.base = d.base;
  out.nsym = static_cast<uint32_t>((d.base.size() + 1) * (d.base.size() + 1));
  out.trans.assign(static_cast<size_t>(d.nstates()) * out.nsym, kNoState);
  out.accept = d.accept;
  out.initials = d.initials;
  for (State s = 0; s < d.nstates(); s++)
    for (Sym a = 0; a < d.base.size(); a++) {
      State t = d.step(s, a);
      if (t != kNoState) out.set_trans(s, out.pair_sym(a, a), t);
    }
  return minimize(out);
}

std::vector<Word> fsa_enumerate(const Fsa& d, size_t max_len) {
  Fsa t = d.initials.size() == 1 ? fsa_trim(d) : determinize(d);
  uint32_t n = t.nstates();

  // distance from each state to the nearest accepting state
  std::vector<uint32_t> dist(n, 0xffffffffu);
  {
    std::vector<std::vector<State>> rev(n);
    for (State s = 0; s < n; s++)
      for (Sym a = 0; a < t.nsym; a++) {
        State to = t.step(s, a);
        if (to != kNoState) rev[to].push_back(s);
      }
    std::deque<State> q;
    for (State s = 0; s < n; s++)
      if (t.accept[s]) {
        dist[s] = 0;
        q.push_back(s);
      }
    while (!q.empty()) {
      State s = q.front();
      q.pop_front();
      for (State r : rev[s])
        if (dist[r] == 0xffffffffu) {
          dist[r] = dist[s] + 1;
          q.push_back(r);
        }
    }
  }

  std::vector<std::vector<Word>> bucket(max_len + 1);
  Word prefix;
  std::function<void(State)> dfs = [&](State s) {
    if (t.accept[s]) bucket[prefix.size()].push_back(prefix);
    if (prefix.size() == max_len) return;
    for (Sym a = 0; a < t.nsym; a++) {
      State to = t.step(s, a);
      if (to == kNoState) continue;
      if (dist[to] > max_len - prefix.size() - 1) continue;
      prefix.push_back(a);
      dfs(to);
      prefix.pop_back();
    }
  };
  dfs(t.initial());
  std::vector<Word> out;
  for (auto& b : bucket)
    for (auto& w : b) out.push_back(std::move(w));
  return out;
}

std::vector<uint64_t> growth_series(const Fsa& d, size_t nterms) {
  Fsa t = d.initials.size() == 1 ? d : determinize(d);
  std::vector<uint64_t> counts;
  std::vector<uint64_t> cur(t.nstates(), 0), next;
  cur[t.initial()] = 1;
  for (size_t len = 0; len < nterms; len++) {
    uint64_t acc = 0;
    for (State s = 0; s < t.nstates(); s++)
      if (t.accept[s]) acc += cur[s];
    counts.push_back(acc);
    next.assign(t.nstates(), 0);
    for (State s = 0; s < t.nstates(); s++) {
      if (!cur[s]) continue;
      for (Sym a = 0; a < t.nsym; a++) {
        State to = t.step(s, a);
        if (to != kNoState) next[to] += cur[s];
      }
    }
    cur.swap(next);
  }
  return counts;
}

std::optional<uint64_t> language_size(const Fsa& d) {
  Fsa t = d.initials.size() == 1 ? fsa_trim(d) : fsa_trim(determinize(d));
  uint32_t n = t.nstates();
  // cycle detection on the live graph
  std::vector<int> mark(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::optional<uint64_t>> memo(n);
  std::function<std::optional<uint64_t>(State)> count =
      [&](State s) -> std::optional<uint64_t> {
    if (mark[s] == 1) return std::nullopt;  // cycle
    if (mark[s] == 2) return memo[s];
    mark[s] = 1;
    uint64_t total = t.accept[s] ? 1 : 0;
    for (Sym a = 0; a < t.nsym; a++) {
      State to = t.step(s, a);
      if (to == kNoState) continue;
      auto sub = count(to);
      if (!sub) {
        mark[s] = 2;
        memo[s] = std::nullopt;
        return std::nullopt;
      }
      total += *sub;
    }
    mark[s] = 2;
    memo[s] = total;
    return total;
  };
  auto r = count(t.initial());
  if (!r) return std::nullopt;
  return r;
}

bool fsa_equal(const Fsa& a, const Fsa& b) {
  if (a.nsym != b.nsym || !(a.base == b.base)) return false;
  Fsa ma = minimize(a.initials.size() == 1 ? a : determinize(a));
  Fsa mb = minimize(b.initials.size() == 1 ? b : determinize(b));
  return ma.trans == mb.trans && ma.accept == mb.accept;
}

std::optional<Word> fsa_diff_witness(const Fsa& a, const Fsa& b) {
  Fsa da = a.initials.size() == 1 ? a : determinize(a);
  Fsa db = b.initials.size() == 1 ? b : determinize(b);
  const uint64_t kSink = 0xffffffffull;
  auto pack = [](uint64_t x, uint64_t y) { return (x << 32) | y; };
  auto acc = [&](const Fsa& f, uint64_t s) {
    return s != kSink && f.accept[static_cast<State>(s)];
  };

  std::unordered_map<uint64_t, std::pair<uint64_t, Sym>> parent;
  std::deque<uint64_t> q;
  uint64_t start = pack(da.initial(), db.initial());
  parent[start] = {start, kNoSym};
  q.push_back(start);
  while (!q.empty()) {
    uint64_t m = q.front();
    q.pop_front();
    if (acc(da, m >> 32) != acc(db, m & 0xffffffffull)) {
      Word w;
      uint64_t cur = m;
      while (parent[cur].second != kNoSym) {
        w.push_back(parent[cur].second);
        cur = parent[cur].first;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    uint64_t xa = m >> 32, xb = m & 0xffffffffull;
    for (Sym s = 0; s < da.nsym; s++) {
      uint64_t ta = xa == kSink ? kSink : da.step(static_cast<State>(xa), s);
      uint64_t tb = xb == kSink ? kSink : db.step(static_cast<State>(xb), s);
      if (ta == kNoState) ta = kSink;
      if (tb == kNoState) tb = kSink;
      if (ta == kSink && tb == kSink) continue;
      uint64_t t = pack(ta, tb);
      if (parent.count(t)) continue;
      parent[t] = {m, s};
      q.push_back(t);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Word, Word>> pair_diff_witness(const Fsa& a,
                                                       const Fsa& b) {
  auto w = fsa_diff_witness(a, b);
  if (!w) return std::nullopt;
  Sym pad = a.base.pad();
  Word u, v;
  for (Sym c : *w) {
    Sym x = a.pair_left(c), y = a.pair_right(c);
    if (x != pad) u.push_back(x);
    if (y != pad) v.push_back(y);
  }
  return std::make_pair(u, v);
}

bool pair_padding_ok(const Fsa& p) {
  if (p.kind != FsaKind::pair) return false;
  Sym pad = p.base.pad();
  uint32_t n = static_cast<uint32_t>(p.base.size());
  // flag bit0 = left tape padded, bit1 = right tape padded
  std::vector<uint8_t> seen(p.nstates() * 4, 0);
  std::deque<std::pair<State, int>> q;
  for (State s : p.initials) {
    seen[s * 4] = 1;
    q.push_back({s, 0});
  }
  while (!q.empty()) {
    auto [s, f] = q.front();
    q.pop_front();
    for (Sym x = 0; x <= n; x++)
      for (Sym y = 0; y <= n; y++) {
        State t = p.step(s, p.pair_sym(x, y));
        if (t == kNoState) continue;
        if (x == pad && y == pad) return false;
        if ((f & 1) && x != pad) return false;
        if ((f & 2) && y != pad) return false;
        int nf = f | (x == pad ? 1 : 0) | (y == pad ? 2 : 0);
        if (!seen[t * 4 + nf]) {
          seen[t * 4 + nf] = 1;
          q.push_back({t, nf});
        }
      }
  }
  return true;
}

}  // namespace autogrp
