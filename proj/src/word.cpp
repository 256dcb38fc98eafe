#include "autogrp/word.hpp"

#include <algorithm>

namespace autogrp {

Sym Alphabet::add(const std::string& name) {
  if (name.empty() || name == "_")
    throw input_error("bad symbol name '" + name + "'");
  if (index_.count(name))
    throw input_error("duplicate symbol '" + name + "'");
  Sym id = static_cast<Sym>(names_.size());
  names_.push_back(name);
  inv_.push_back(kNoSym);
  index_.emplace(name, id);
  return id;
}

Sym Alphabet::add_pair(const std::string& name, const std::string& inv_name) {
  Sym a = add(name);
  if (inv_name == name) {
    set_inverse(a, a);
    return a;
  }
  Sym b = add(inv_name);
  set_inverse(a, b);
  return a;
}

void Alphabet::set_inverse(Sym a, Sym b) {
  inv_.at(a) = b;
  inv_.at(b) = a;
}

std::optional<Sym> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::inverse_word(const Word& w) const {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Sym i = inverse(*it);
    if (i == kNoSym)
      throw input_error("symbol '" + name(*it) + "' has no inverse");
    r.push_back(i);
  }
  return r;
}

Word Alphabet::free_reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Sym s : w) {
    if (!out.empty() && inv_[out.back()] == s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Word Alphabet::parse_word(const std::string& text) const {
  Word w;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) i++;
    if (i >= text.size()) break;
    size_t j = i;
    while (j < text.size() && !isspace(static_cast<unsigned char>(text[j])))
      j++;
    std::string tok = text.substr(i, j - i);
    i = j;
    if (tok == "_") continue;
    auto s = find(tok);
    if (!s) throw input_error("unknown symbol '" + tok + "'");
    w.push_back(*s);
  }
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  if (w.empty()) return "_";
  std::string out;
  for (size_t i = 0; i < w.size(); i++) {
    if (i) out += ' ';
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::parse_packed(const std::string& text) const {
  Word w;
  if (text == "_") return w;
  size_t i = 0;
  while (i < text.size()) {
    size_t best = 0;
    Sym hit = kNoSym;
    for (Sym s = 0; s < size(); s++) {
      const std::string& n = names_[s];
      if (n.size() > best && text.compare(i, n.size(), n) == 0) {
        best = n.size();
        hit = s;
      }
    }
    if (hit == kNoSym)
      throw input_error("cannot parse label '" + text + "' at offset " +
                        std::to_string(i));
    w.push_back(hit);
    i += best;
  }
  return w;
}

std::string Alphabet::format_packed(const Word& w) const {
  if (w.empty()) return "_";
  std::string out;
  for (Sym s : w) out += name(s);
  return out;
}

int shortlex_cmp(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  for (size_t i = 0; i < u.size(); i++)
    if (u[i] != v[i]) return u[i] < v[i] ? -1 : 1;
  return 0;
}

bool WordOrder::uniform() const {
  for (size_t i = 1; i < level.size(); i++)
    if (level[i] != level[0]) return false;
  return true;
}

namespace {

// Compare u[ub..ue) and v[vb..ve) under the wreath-product order.
int wreath_cmp(const WordOrder& o, const Word& u, size_t ub, size_t ue,
               const Word& v, size_t vb, size_t ve) {
  int top = 0;
  for (size_t i = ub; i < ue; i++) top = std::max(top, o.level[u[i]]);
  for (size_t i = vb; i < ve; i++) top = std::max(top, o.level[v[i]]);
  if (top == 0) return 0;  // both ranges empty

  std::vector<size_t> up, vp;  // positions of top-level letters
  for (size_t i = ub; i < ue; i++)
    if (o.level[u[i]] == top) up.push_back(i);
  for (size_t i = vb; i < ve; i++)
    if (o.level[v[i]] == top) vp.push_back(i);

  if (up.size() != vp.size()) return up.size() < vp.size() ? -1 : 1;
  for (size_t i = 0; i < up.size(); i++)
    if (u[up[i]] != v[vp[i]]) return u[up[i]] < v[vp[i]] ? -1 : 1;

  // Equal top subsequences: compare the fragments between them, left first.
  size_t us = ub, vs = vb;
  for (size_t i = 0; i <= up.size(); i++) {
    size_t uend = i < up.size() ? up[i] : ue;
    size_t vend = i < vp.size() ? vp[i] : ve;
    int c = wreath_cmp(o, u, us, uend, v, vs, vend);
    if (c) return c;
    us = uend + 1;
    vs = vend + 1;
  }
  return 0;
}

}  // namespace

int WordOrder::cmp(const Word& u, const Word& v) const {
  if (level.empty() || uniform()) return shortlex_cmp(u, v);
  return wreath_cmp(*this, u, 0, u.size(), v, 0, v.size());
}

void cancel_common(const Alphabet& a, Word& lhs, Word& rhs) {
  lhs = a.free_reduce(lhs);
  rhs = a.free_reduce(rhs);
  size_t p = 0;
  while (p < lhs.size() && p < rhs.size() && lhs[p] == rhs[p]) p++;
  size_t s = 0;
  while (s + p < lhs.size() && s + p < rhs.size() &&
         lhs[lhs.size() - 1 - s] == rhs[rhs.size() - 1 - s])
    s++;
  lhs = Word(lhs.begin() + p, lhs.end() - s);
  rhs = Word(rhs.begin() + p, rhs.end() - s);
}

}  // namespace autogrp
