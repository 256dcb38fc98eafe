#include "autogrp/fsa_text.hpp"

#include <sstream>

#include "autogrp/text.hpp"

namespace autogrp {

namespace {

const char* kind_name(FsaKind k) {
  switch (k) {
    case FsaKind::dfa: return "dfa";
    case FsaKind::pair: return "pair";
    case FsaKind::midfa: return "midfa";
    case FsaKind::async: return "async";
  }
  return "dfa";
}

std::string sym_name(const Fsa& f, Sym c) {
  if (f.kind == FsaKind::pair) {
    Sym x = f.pair_left(c), y = f.pair_right(c);
    Sym pad = f.base.pad();
    std::string l = x == pad ? "_" : f.base.name(x);
    std::string r = y == pad ? "_" : f.base.name(y);
    return l + "," + r;
  }
  if (f.kind == FsaKind::async && c == f.base.size()) return "$";
  return f.base.name(c);
}

uint32_t kind_nsym(FsaKind k, size_t nbase) {
  if (k == FsaKind::pair)
    return static_cast<uint32_t>((nbase + 1) * (nbase + 1));
  if (k == FsaKind::async) return static_cast<uint32_t>(nbase + 1);
  return static_cast<uint32_t>(nbase);
}

}  // namespace

std::string fsa_to_text(const Fsa& f) {
  std::ostringstream o;
  o << "fsa {\n";
  if (f.kind != FsaKind::dfa)
    o << "  kind = " << kind_name(f.kind) << " ;\n";
  o << "  alphabet =";
  for (size_t i = 0; i < f.base.size(); i++)
    o << ' ' << f.base.name(static_cast<Sym>(i));
  o << " ;\n";
  bool any_inv = false;
  for (size_t i = 0; i < f.base.size(); i++)
    any_inv = any_inv || f.base.has_inverse(static_cast<Sym>(i));
  if (any_inv) {
    o << "  inverses =";
    for (size_t i = 0; i < f.base.size(); i++) {
      Sym s = static_cast<Sym>(i);
      if (f.base.has_inverse(s) && f.base.inverse(s) >= s)
        o << ' ' << f.base.name(s) << ':' << f.base.name(f.base.inverse(s));
    }
    o << " ;\n";
  }
  o << "  states = " << f.nstates() << " ;\n";
  o << "  initial =";
  for (State s : f.initials) o << ' ' << s + 1;
  o << " ;\n";
  if (!f.labels.empty()) {
    o << "  labels =";
    for (size_t i = 0; i < f.initials.size(); i++)
      o << ' ' << f.initials[i] + 1 << ':' << f.base.format_packed(f.labels[i]);
    o << " ;\n";
  }
  o << "  accepting =";
  for (State s = 0; s < f.nstates(); s++)
    if (f.accept[s]) o << ' ' << s + 1;
  o << " ;\n";
  if (!f.reads.empty()) {
    o << "  reads =";
    for (State s = 0; s < f.nstates(); s++)
      o << ' ' << s + 1 << ':' << int(f.reads[s]);
    o << " ;\n";
  }
  o << "  arcs {\n";
  for (State s = 0; s < f.nstates(); s++)
    for (Sym a = 0; a < f.nsym; a++) {
      State t = f.step(s, a);
      if (t != kNoState)
        o << "    " << s + 1 << ' ' << sym_name(f, a) << ' ' << t + 1
          << " ;\n";
    }
  o << "  }\n}\n";
  return o.str();
}

Fsa fsa_from_text(const std::string& text) {
  Tokenizer tk(text);
  tk.expect("fsa");
  tk.expect("{");

  Fsa f;
  uint32_t nstates = 0;
  bool have_states = false;
  std::vector<std::pair<uint32_t, std::string>> labels;
  std::vector<std::pair<uint32_t, int>> reads;
  std::vector<uint32_t> initial_nos, accept_nos;
  std::vector<std::pair<std::string, std::string>> inv_pairs;

  auto parse_state_no = [&](const std::string& t) -> uint32_t {
    for (char c : t)
      if (!isdigit(static_cast<unsigned char>(c)))
        tk.fail("expected state number, got '" + t + "'");
    unsigned long v = std::stoul(t);
    if (v == 0) tk.fail("state numbers start at 1");
    return static_cast<uint32_t>(v);
  };

  while (!tk.accept("}")) {
    std::string key = tk.next();
    if (key == "arcs") {
      tk.expect("{");
      if (!have_states) tk.fail("arcs before states line");
      // finalize the skeleton before reading arcs
      f.nsym = kind_nsym(f.kind, f.base.size());
      f.trans.assign(static_cast<size_t>(nstates) * f.nsym, kNoState);
      f.accept.assign(nstates, 0);
      while (!tk.accept("}")) {
        uint32_t src = parse_state_no(tk.next());
        std::string name = tk.next();
        Sym sym;
        if (f.kind == FsaKind::pair) {
          std::string rname;
          tk.expect(",");
          rname = tk.next();
          Sym pad = f.base.pad();
          Sym l = name == "_" ? pad : f.base.find(name).value_or(kNoSym);
          Sym r = rname == "_" ? pad : f.base.find(rname).value_or(kNoSym);
          if (l == kNoSym || r == kNoSym)
            tk.fail("unknown pair symbol '" + name + "," + rname + "'");
          sym = f.pair_sym(l, r);
        } else if (f.kind == FsaKind::async && name == "$") {
          sym = static_cast<Sym>(f.base.size());
        } else {
          auto s = f.base.find(name);
          if (!s) tk.fail("unknown symbol '" + name + "'");
          sym = *s;
        }
        uint32_t dst = parse_state_no(tk.next());
        if (src > nstates || dst > nstates) tk.fail("state number out of range");
        f.set_trans(src - 1, sym, dst - 1);
        tk.expect(";");
      }
      continue;
    }
    tk.expect("=");
    if (key == "kind") {
      std::string v = tk.next();
      if (v == "dfa") f.kind = FsaKind::dfa;
      else if (v == "pair") f.kind = FsaKind::pair;
      else if (v == "midfa") f.kind = FsaKind::midfa;
      else if (v == "async") f.kind = FsaKind::async;
      else tk.fail("unknown kind '" + v + "'");
      tk.expect(";");
    } else if (key == "alphabet") {
      while (!tk.accept(";")) f.base.add(tk.next());
    } else if (key == "inverses") {
      while (!tk.accept(";")) {
        std::string a = tk.next();
        tk.expect(":");
        std::string b = tk.next();
        inv_pairs.emplace_back(a, b);
      }
    } else if (key == "states") {
      nstates = parse_state_no(tk.next());
      have_states = true;
      tk.expect(";");
    } else if (key == "initial") {
      while (!tk.accept(";")) initial_nos.push_back(parse_state_no(tk.next()));
    } else if (key == "labels") {
      while (!tk.accept(";")) {
        uint32_t s = parse_state_no(tk.next());
        tk.expect(":");
        labels.emplace_back(s, tk.next());
      }
    } else if (key == "accepting") {
      while (!tk.accept(";")) accept_nos.push_back(parse_state_no(tk.next()));
    } else if (key == "reads") {
      while (!tk.accept(";")) {
        uint32_t s = parse_state_no(tk.next());
        tk.expect(":");
        reads.emplace_back(s, std::stoi(tk.next()));
      }
    } else {
      tk.fail("unknown fsa field '" + key + "'");
    }
  }

  if (!have_states) throw input_error("fsa record missing states line");
  if (f.accept.size() != nstates) {
    // no arcs block appeared; still build the skeleton
    f.nsym = kind_nsym(f.kind, f.base.size());
    f.trans.assign(static_cast<size_t>(nstates) * f.nsym, kNoState);
    f.accept.assign(nstates, 0);
  }
  for (auto& [a, b] : inv_pairs) {
    auto sa = f.base.find(a), sb = f.base.find(b);
    if (!sa || !sb) throw input_error("inverse of unknown symbol " + a);
    f.base.set_inverse(*sa, *sb);
  }
  for (uint32_t s : initial_nos) {
    if (s > nstates) throw input_error("initial state out of range");
    f.initials.push_back(s - 1);
  }
  if (f.initials.empty()) throw input_error("fsa record missing initial line");
  for (uint32_t s : accept_nos) {
    if (s > nstates) throw input_error("accepting state out of range");
    f.accept[s - 1] = 1;
  }
  if (!labels.empty()) {
    f.labels.assign(f.initials.size(), Word{});
    for (auto& [s, text_label] : labels) {
      bool found = false;
      for (size_t i = 0; i < f.initials.size(); i++)
        if (f.initials[i] == s - 1) {
          f.labels[i] = f.base.parse_packed(text_label);
          found = true;
        }
      if (!found) throw input_error("label on non-initial state");
    }
  }
  if (!reads.empty()) {
    f.reads.assign(nstates, 1);
    for (auto& [s, r] : reads) {
      if (s > nstates || (r != 1 && r != 2))
        throw input_error("bad reads entry");
      f.reads[s - 1] = static_cast<uint8_t>(r);
    }
  }
  return f;
}

void fsa_save(const Fsa& f, const std::string& path) {
  write_file(path, fsa_to_text(f));
}

Fsa fsa_load(const std::string& path) { return fsa_from_text(read_file(path)); }

}  // namespace autogrp
