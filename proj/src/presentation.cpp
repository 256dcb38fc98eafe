#include "autogrp/presentation.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "autogrp/text.hpp"

namespace autogrp {

namespace {

// Reads generator tokens until one of the stop punctuation marks; "_" is the
// empty word and must stand alone.
Word read_word(Tokenizer& tk, const Alphabet& a, const char* stops) {
  Word w;
  bool saw_empty = false;
  while (!strchr(stops, tk.peek()[0]) || tk.peek().size() > 1) {
    std::string t = tk.next();
    if (t == "_") {
      saw_empty = true;
      continue;
    }
    auto s = a.find(t);
    if (!s) tk.fail("unknown generator '" + t + "'");
    w.push_back(*s);
  }
  if (saw_empty && !w.empty()) tk.fail("'_' must stand alone");
  return w;
}

void parse_group_body(Tokenizer& tk, Presentation& p) {
  while (!tk.accept("}")) {
    std::string key = tk.next();
    if (key == "relations" || key == "equations") {
      tk.expect("{");
      while (!tk.accept("}")) {
        Word lhs = read_word(tk, p.alpha, "=");
        tk.expect("=");
        Word rhs = read_word(tk, p.alpha, ";");
        tk.expect(";");
        p.add_relation(std::move(lhs), std::move(rhs));
      }
      continue;
    }
    tk.expect("=");
    if (key == "name") {
      p.name = tk.next();
      tk.expect(";");
    } else if (key == "generators") {
      while (!tk.accept(";")) p.alpha.add(tk.next());
    } else if (key == "inverses") {
      // Names not in the generator list are added here, so a file may list
      // only the positive letters and fix the order afterwards.
      while (!tk.accept(";")) {
        std::string a = tk.next();
        tk.expect(":");
        std::string b = tk.next();
        auto sa = p.alpha.find(a);
        if (!sa) sa = p.alpha.add(a);
        auto sb = p.alpha.find(b);
        if (!sb) sb = p.alpha.add(b);
        if (p.alpha.has_inverse(*sa) || p.alpha.has_inverse(*sb))
          tk.fail("conflicting inverse for " + a);
        p.alpha.set_inverse(*sa, *sb);
      }
    } else if (key == "order") {
      if (!p.relations.empty()) tk.fail("order must precede the relations");
      Alphabet na;
      while (!tk.accept(";")) {
        std::string n = tk.next();
        if (!p.alpha.find(n)) tk.fail("unknown generator '" + n + "' in order");
        if (na.find(n)) tk.fail("duplicate generator '" + n + "' in order");
        na.add(n);
      }
      if (na.size() != p.alpha.size())
        tk.fail("order must list every generator");
      for (size_t i = 0; i < p.alpha.size(); i++) {
        Sym s = static_cast<Sym>(i);
        if (p.alpha.has_inverse(s))
          na.set_inverse(*na.find(p.alpha.name(s)),
                         *na.find(p.alpha.name(p.alpha.inverse(s))));
      }
      p.alpha = std::move(na);
    } else {
      tk.fail("unknown group field '" + key + "'");
    }
  }
  for (size_t i = 0; i < p.alpha.size(); i++)
    if (!p.alpha.has_inverse(static_cast<Sym>(i)))
      throw input_error("generator " + p.alpha.name(static_cast<Sym>(i)) +
                        " has no inverse");
}

std::string word_text(const Alphabet& a, const Word& w) {
  return a.format_word(w);
}

std::string swap_case(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    unsigned char u = static_cast<unsigned char>(c);
    c = islower(u) ? static_cast<char>(toupper(u))
                   : static_cast<char>(tolower(u));
  }
  return out;
}

}  // namespace

Presentation parse_group(const std::string& text) {
  Tokenizer tk(text);
  tk.expect("group");
  tk.expect("{");
  Presentation p;
  parse_group_body(tk, p);
  return p;
}

std::string format_group(const Presentation& p) {
  std::ostringstream o;
  o << "group {\n";
  if (!p.name.empty()) o << "  name = " << p.name << " ;\n";
  o << "  generators =";
  for (size_t i = 0; i < p.alpha.size(); i++)
    o << ' ' << p.alpha.name(static_cast<Sym>(i));
  o << " ;\n  inverses =";
  for (size_t i = 0; i < p.alpha.size(); i++) {
    Sym s = static_cast<Sym>(i);
    if (p.alpha.inverse(s) >= s)
      o << ' ' << p.alpha.name(s) << ':' << p.alpha.name(p.alpha.inverse(s));
  }
  o << " ;\n  relations {\n";
  for (auto& [l, r] : p.relations)
    o << "    " << word_text(p.alpha, l) << " = " << word_text(p.alpha, r)
      << " ;\n";
  o << "  }\n}\n";
  return o.str();
}

SubgroupInput parse_subgroup(const std::string& text, const Alphabet& parent) {
  Tokenizer tk(text);
  tk.expect("subgroup");
  tk.expect("{");
  SubgroupInput sub;
  while (!tk.accept("}")) {
    std::string key = tk.next();
    if (key == "generators") {
      tk.expect("{");
      while (!tk.accept("}")) {
        sub.generators.push_back(read_word(tk, parent, ";"));
        tk.expect(";");
      }
      continue;
    }
    tk.expect("=");
    if (key == "name") sub.name = tk.next();
    else if (key == "of") sub.of = tk.next();
    else tk.fail("unknown subgroup field '" + key + "'");
    tk.expect(";");
  }
  if (sub.generators.empty()) throw input_error("subgroup has no generators");
  return sub;
}

HnnInput parse_hnn(const std::string& text, const std::string& dir) {
  Tokenizer tk(text);
  tk.expect("hnn");
  tk.expect("{");
  HnnInput h;
  bool have_base = false, have_sub = false;
  Alphabet suba;
  auto load = [&dir](const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative() && !dir.empty()) p = std::filesystem::path(dir) / p;
    return read_file(p.string());
  };
  while (!tk.accept("}")) {
    std::string key = tk.next();
    if (key == "base") {
      if (tk.accept("=")) {  // reference to a group file
        h.base = parse_group(load(tk.next()));
        tk.expect(";");
      } else {
        tk.expect("{");
        parse_group_body(tk, h.base);
      }
      have_base = true;
      continue;
    }
    if (key == "sub") {
      if (!have_base) tk.fail("sub block before base");
      if (tk.accept("=")) {  // reference to a subgroup file
        h.sub_generators =
            parse_subgroup(load(tk.next()), h.base.alpha).generators;
        tk.expect(";");
      } else {
        tk.expect("{");
        while (!tk.accept("}")) {
          h.sub_generators.push_back(read_word(tk, h.base.alpha, ";"));
          tk.expect(";");
        }
      }
      have_sub = true;
      suba = make_sub_alphabet(h.sub_generators.size());
      continue;
    }
    if (key == "alpha") {
      if (!have_sub) tk.fail("alpha block before sub");
      tk.expect("{");
      h.alpha.assign(h.sub_generators.size(), Word{});
      std::vector<bool> seen(h.sub_generators.size(), false);
      while (!tk.accept("}")) {
        std::string gen = tk.next();
        auto s = suba.find(gen);
        if (!s || *s % 2 != 0) tk.fail("alpha must map a y-generator");
        if (!tk.accept("=")) tk.expect(":");
        Word img = read_word(tk, suba, ";");
        tk.expect(";");
        size_t idx = *s / 2;
        if (seen[idx]) tk.fail("duplicate alpha image for " + gen);
        seen[idx] = true;
        h.alpha[idx] = std::move(img);
      }
      for (size_t i = 0; i < seen.size(); i++)
        if (!seen[i]) tk.fail("alpha missing image for y" + std::to_string(i + 1));
      continue;
    }
    tk.expect("=");
    if (key == "name") {
      h.name = tk.next();
      tk.expect(";");
    } else if (key == "stable") {
      h.stable = tk.next();
      if (tk.accept(";")) {  // inverse name by case swap
        h.stable_inv = swap_case(h.stable);
        if (h.stable_inv == h.stable)
          tk.fail("stable letter needs a distinct inverse name");
      } else {
        h.stable_inv = tk.next();
        tk.expect(";");
      }
    } else {
      tk.fail("unknown hnn field '" + key + "'");
    }
  }
  if (!have_base) throw input_error("hnn record missing base group");
  if (!have_sub) throw input_error("hnn record missing sub block");
  if (h.base.alpha.find(h.stable) || h.base.alpha.find(h.stable_inv))
    throw input_error("stable letter collides with a base generator");
  if (h.alpha.empty()) {
    // identity map by default
    for (size_t i = 0; i < h.sub_generators.size(); i++)
      h.alpha.push_back({static_cast<Sym>(2 * i)});
  }
  return h;
}

Alphabet make_sub_alphabet(size_t n) {
  Alphabet a;
  for (size_t i = 1; i <= n; i++)
    a.add_pair("y" + std::to_string(i), "Y" + std::to_string(i));
  return a;
}

Presentation tietze_add_generator(const Presentation& p,
                                  const std::string& name,
                                  const std::string& inv_name, const Word& w) {
  if (p.alpha.find(name) || p.alpha.find(inv_name))
    throw input_error("generator " + name + " already present");
  Presentation q = p;
  Sym g = q.alpha.add_pair(name, inv_name);
  q.add_relation(Word{g}, w);
  return q;
}

bool replace_first(Word& w, const Word& from, const Word& to) {
  if (from.empty() || w.size() < from.size()) return false;
  for (size_t i = 0; i + from.size() <= w.size(); i++)
    if (std::equal(from.begin(), from.end(), w.begin() + i)) {
      Word out(w.begin(), w.begin() + i);
      out.insert(out.end(), to.begin(), to.end());
      out.insert(out.end(), w.begin() + i + from.size(), w.end());
      w = std::move(out);
      return true;
    }
  return false;
}

void transfer_suffix(const Alphabet& a, Word& lhs, Word& rhs, size_t n) {
  if (n > lhs.size()) throw input_error("transfer_suffix: suffix too long");
  Word suf(lhs.end() - n, lhs.end());
  lhs.erase(lhs.end() - n, lhs.end());
  Word inv = a.inverse_word(suf);
  rhs.insert(rhs.end(), inv.begin(), inv.end());
  lhs = a.free_reduce(lhs);
  rhs = a.free_reduce(rhs);
}

void transfer_prefix(const Alphabet& a, Word& lhs, Word& rhs, size_t n) {
  if (n > lhs.size()) throw input_error("transfer_prefix: prefix too long");
  Word pre(lhs.begin(), lhs.begin() + n);
  lhs.erase(lhs.begin(), lhs.begin() + n);
  Word inv = a.inverse_word(pre);
  rhs.insert(rhs.begin(), inv.begin(), inv.end());
  lhs = a.free_reduce(lhs);
  rhs = a.free_reduce(rhs);
}

namespace {

// Substitute every occurrence of g / g^-1 in w by sol / sol^-1.
Word substitute(const Alphabet& a, const Word& w, Sym g, const Word& sol) {
  Sym gi = a.inverse(g);
  Word soli = a.inverse_word(sol);
  Word out;
  for (Sym s : w) {
    if (s == g) out.insert(out.end(), sol.begin(), sol.end());
    else if (s == gi) out.insert(out.end(), soli.begin(), soli.end());
    else out.push_back(s);
  }
  return a.free_reduce(out);
}

}  // namespace

Presentation tietze_eliminate(const Presentation& p, Sym g, Word* solution,
                              size_t use_relation) {
  Sym gi = p.alpha.inverse(g);
  if (gi == g) throw input_error("cannot eliminate an involutory generator");
  if (use_relation != SIZE_MAX && use_relation >= p.relations.size())
    throw input_error("relation index out of range");

  // Find a relation whose relator mentions g exactly once.
  size_t pick = p.relations.size();
  Word sol;
  for (size_t i = 0; i < p.relations.size(); i++) {
    if (use_relation != SIZE_MAX && i != use_relation) continue;
    Word rel = p.relations[i].first;
    Word ri = p.alpha.inverse_word(p.relations[i].second);
    rel.insert(rel.end(), ri.begin(), ri.end());
    rel = p.alpha.free_reduce(rel);
    size_t count = 0, pos = 0;
    for (size_t j = 0; j < rel.size(); j++)
      if (rel[j] == g || rel[j] == gi) {
        count++;
        pos = j;
      }
    if (count != 1) continue;
    // rel = x e y = 1 with e in {g, g^-1}; g = (x^-1 y^-1)^(e) as below.
    Word x(rel.begin(), rel.begin() + pos);
    Word y(rel.begin() + pos + 1, rel.end());
    if (rel[pos] == g) {
      sol = p.alpha.inverse_word(x);
      Word yi = p.alpha.inverse_word(y);
      sol.insert(sol.end(), yi.begin(), yi.end());
    } else {
      sol = y;
      sol.insert(sol.end(), x.begin(), x.end());
    }
    sol = p.alpha.free_reduce(sol);
    pick = i;
    break;
  }
  if (pick == p.relations.size())
    throw input_error("no relation isolates generator " + p.alpha.name(g));
  if (solution) *solution = sol;

  // New alphabet without g, g^-1; remap the survivors.
  Presentation q;
  q.name = p.name;
  std::vector<Sym> remap(p.alpha.size(), kNoSym);
  for (size_t i = 0; i < p.alpha.size(); i++) {
    Sym s = static_cast<Sym>(i);
    if (s == g || s == gi) continue;
    remap[s] = q.alpha.add(p.alpha.name(s));
  }
  for (size_t i = 0; i < p.alpha.size(); i++) {
    Sym s = static_cast<Sym>(i);
    if (remap[s] != kNoSym)
      q.alpha.set_inverse(remap[s], remap[p.alpha.inverse(s)]);
  }
  auto remap_word = [&](const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Sym s : w) out.push_back(remap[s]);
    return out;
  };
  for (size_t i = 0; i < p.relations.size(); i++) {
    if (i == pick) continue;
    Word l = substitute(p.alpha, p.relations[i].first, g, sol);
    Word r = substitute(p.alpha, p.relations[i].second, g, sol);
    cancel_common(p.alpha, l, r);
    if (l.empty() && r.empty()) continue;
    q.add_relation(remap_word(l), remap_word(r));
  }
  return q;
}

}  // namespace autogrp
