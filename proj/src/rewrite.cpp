#include "autogrp/rewrite.hpp"

#include <algorithm>
#include <set>

namespace autogrp {

RewritingSystem::RewritingSystem(const Alphabet& a, std::vector<int> levels) {
  alpha = a;
  order.level = std::move(levels);
  tchild_.assign(alpha.size(), kNoState);
  tmatch_.assign(1, kNoRule);
  tnodes_ = 1;
  for (size_t i = 0; i < alpha.size(); i++) {
    Sym s = static_cast<Sym>(i);
    if (alpha.has_inverse(s)) add_rule({s, alpha.inverse(s)}, {});
  }
}

State RewritingSystem::trie_walk(const Word& w) const {
  State n = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    n = tchild_[static_cast<size_t>(n) * alpha.size() + *it];
    if (n == kNoState) return kNoState;
  }
  return n;
}

void RewritingSystem::add_rule(Word lhs, Word rhs) {
  State n = 0;
  for (auto it = lhs.rbegin(); it != lhs.rend(); ++it) {
    size_t slot = static_cast<size_t>(n) * alpha.size() + *it;
    State c = tchild_[slot];
    if (c == kNoState) {
      c = static_cast<State>(tnodes_++);
      tchild_.resize(tchild_.size() + alpha.size(), kNoState);
      tmatch_.push_back(kNoRule);
      tchild_[slot] = c;
    }
    n = c;
  }
  if (tmatch_[n] != kNoRule) kill_rule(tmatch_[n]);
  tmatch_[n] = static_cast<uint32_t>(rules.size());
  rules.push_back({std::move(lhs), std::move(rhs), true});
  live_++;
}

void RewritingSystem::kill_rule(uint32_t i) {
  if (!rules[i].alive) return;
  rules[i].alive = false;
  live_--;
  State n = trie_walk(rules[i].lhs);
  if (n != kNoState && tmatch_[n] == i) tmatch_[n] = kNoRule;
}

uint32_t RewritingSystem::match_suffix(const Word& w, size_t n,
                                       size_t* len) const {
  State node = 0;
  for (size_t d = 1; d <= n; d++) {
    node = tchild_[static_cast<size_t>(node) * alpha.size() + w[n - d]];
    if (node == kNoState) return kNoRule;
    if (tmatch_[node] != kNoRule) {
      *len = d;
      return tmatch_[node];
    }
  }
  return kNoRule;
}

Word RewritingSystem::reduce(Word w) const {
  Word out;
  out.reserve(w.size());
  std::vector<Sym> pending(w.rbegin(), w.rend());
  size_t steps = 0;
  while (!pending.empty()) {
    out.push_back(pending.back());
    pending.pop_back();
    size_t len = 0;
    uint32_t ri = match_suffix(out, out.size(), &len);
    if (ri != kNoRule) {
      out.resize(out.size() - len);
      const Word& rhs = rules[ri].rhs;
      pending.insert(pending.end(), rhs.rbegin(), rhs.rend());
      if (++steps > (1u << 24))
        throw budget_error("rewriting budget exceeded");
    }
  }
  return out;
}

bool RewritingSystem::is_reduced(const Word& w) const {
  size_t len;
  for (size_t n = 1; n <= w.size(); n++)
    if (match_suffix(w, n, &len) != kNoRule) return false;
  return true;
}

bool RewritingSystem::orient(Word& l, Word& r) const {
  int c = order.cmp(l, r);
  if (c == 0) return false;
  if (c < 0) std::swap(l, r);
  return true;
}

namespace {

// Splits a coset-mode word as h sep u and validates the shape.
void split_sep(const Word& w, Sym sep, Word* h, Word* u) {
  h->clear();
  u->clear();
  bool seen = false;
  for (Sym s : w) {
    if (s == sep) {
      if (seen) throw input_error("word has two separators");
      seen = true;
    } else if (seen) {
      u->push_back(s);
    } else {
      h->push_back(s);
    }
  }
}

}  // namespace

bool RewritingSystem::add_equation(Word l, Word r) {
  l = reduce(std::move(l));
  r = reduce(std::move(r));
  if (l == r) return false;
  if (coset_mode) {
    bool ls = std::find(l.begin(), l.end(), sep) != l.end();
    bool rs = std::find(r.begin(), r.end(), sep) != r.end();
    if (ls != rs) throw input_error("separator on one side of an equation");
    if (ls) {
      Word hl, ul, hr, ur;
      split_sep(l, sep, &hl, &ul);
      split_sep(r, sep, &hr, &ur);
      int c = order.cmp(ul, ur);
      if (c == 0) {
        // group parts agree: the subgroup parts are equal in the subgroup
        l = std::move(hl);
        r = std::move(hr);
      } else {
        if (c < 0) {
          std::swap(hl, hr);
          std::swap(ul, ur);
        }
        // larger side becomes sep ul; divide its subgroup part onto the other
        Word h = alpha.inverse_word(hl);
        h.insert(h.end(), hr.begin(), hr.end());
        l.assign(1, sep);
        l.insert(l.end(), ul.begin(), ul.end());
        r = reduce(std::move(h));
        r.push_back(sep);
        r.insert(r.end(), ur.begin(), ur.end());
      }
      if (l == r) return false;
    }
  }
  if (!orient(l, r)) return false;
  add_rule(std::move(l), std::move(r));
  return true;
}

bool RewritingSystem::interreduce() {
  bool changed = false;
  bool again = true;
  while (again) {
    again = false;
    std::vector<std::pair<Word, Word>> requeue;
    for (uint32_t i = 0; i < rules.size(); i++) {
      if (!rules[i].alive) continue;
      State node = trie_walk(rules[i].lhs);
      tmatch_[node] = kNoRule;
      if (!is_reduced(rules[i].lhs)) {
        rules[i].alive = false;
        live_--;
        requeue.emplace_back(rules[i].lhs, rules[i].rhs);
      } else {
        tmatch_[node] = i;
        Word nr = reduce(rules[i].rhs);
        if (nr != rules[i].rhs) {
          rules[i].rhs = std::move(nr);
          changed = true;
        }
      }
    }
    for (auto& [l, r] : requeue) add_equation(std::move(l), std::move(r));
    if (!requeue.empty()) changed = again = true;
  }
  return changed;
}

std::vector<uint32_t> RewritingSystem::live_rule_ids() const {
  std::vector<uint32_t> ids;
  for (uint32_t i = 0; i < rules.size(); i++)
    if (rules[i].alive) ids.push_back(i);
  std::sort(ids.begin(), ids.end(), [&](uint32_t a, uint32_t b) {
    return order.less(rules[a].lhs, rules[b].lhs);
  });
  return ids;
}

namespace {

// Resolves all proper overlaps where a suffix of lhs[a] meets a prefix of
// lhs[b]. Stops early if either rule dies or the rule budget is hit.
void resolve_overlaps(RewritingSystem& rs, uint32_t a, uint32_t b,
                      const KbLimits& lim, bool* discarded, size_t* fresh) {
  const Word lhs_a = rs.rules[a].lhs;
  const Word lhs_b = rs.rules[b].lhs;
  size_t top = std::min(lhs_a.size(), lhs_b.size()) - 1;
  for (size_t olap = 1; olap <= top; olap++) {
    if (!rs.rules[a].alive || !rs.rules[b].alive) return;
    if (rs.live_count() > lim.max_rules) return;
    if (!std::equal(lhs_a.end() - olap, lhs_a.end(), lhs_b.begin())) continue;
    Word left = rs.rules[a].rhs;
    left.insert(left.end(), lhs_b.begin() + olap, lhs_b.end());
    Word right(lhs_a.begin(), lhs_a.end() - olap);
    right.insert(right.end(), rs.rules[b].rhs.begin(), rs.rules[b].rhs.end());
    left = rs.reduce(std::move(left));
    right = rs.reduce(std::move(right));
    if (left == right) continue;
    if (left.size() > lim.max_len || right.size() > lim.max_len) {
      *discarded = true;
      continue;
    }
    if (rs.add_equation(std::move(left), std::move(right)) &&
        ++*fresh >= lim.interreduce_every) {
      *fresh = 0;
      rs.interreduce();
    }
  }
}

}  // namespace

bool knuth_bendix(RewritingSystem& rs, const KbLimits& lim) {
  rs.confluent = false;
  bool discarded = false;
  size_t fresh = 0;
  std::set<std::pair<size_t, uint32_t>> queue;
  std::vector<uint8_t> processed;
  size_t watermark = 0;
  auto sync = [&]() {
    for (; watermark < rs.rules.size(); watermark++)
      if (rs.rules[watermark].alive)
        queue.insert({rs.rules[watermark].lhs.size(),
                      static_cast<uint32_t>(watermark)});
  };
  sync();
  while (true) {
    while (!queue.empty()) {
      if (rs.live_count() > lim.max_rules) {
        rs.interreduce();
        return false;
      }
      uint32_t k = queue.begin()->second;
      queue.erase(queue.begin());
      if (!rs.rules[k].alive) continue;
      for (uint32_t j = 0; j < rs.rules.size(); j++) {
        if (!rs.rules[j].alive) continue;
        if (j != k && (j >= processed.size() || !processed[j])) continue;
        resolve_overlaps(rs, k, j, lim, &discarded, &fresh);
        if (j != k && rs.rules[k].alive && rs.rules[j].alive)
          resolve_overlaps(rs, j, k, lim, &discarded, &fresh);
        if (!rs.rules[k].alive) break;
        if (rs.live_count() > lim.max_rules) break;
      }
      if (processed.size() < rs.rules.size())
        processed.resize(rs.rules.size(), 0);
      if (rs.rules[k].alive) processed[k] = 1;
      sync();
    }
    if (rs.interreduce()) {
      sync();
      if (!queue.empty()) continue;
    }
    break;
  }
  rs.confluent = !discarded;
  return rs.confluent;
}

RewritingSystem make_group_rws(const Presentation& p) {
  RewritingSystem rs(p.alpha);
  for (auto& [l, r] : p.relations) rs.add_equation(l, r);
  return rs;
}

}  // namespace autogrp
