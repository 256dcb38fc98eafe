#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "autogrp/autostructure.hpp"
#include "autogrp/cosets.hpp"
#include "autogrp/fsa.hpp"
#include "autogrp/presentation.hpp"

using namespace autogrp;

Presentation full_g() {
  Presentation p;
  p.alpha.add_pair("u", "U");
  p.alpha.add_pair("v", "V");
  p.alpha.add_pair("b", "B");
  p.alpha.add_pair("r", "R");
  p.add_relation("u u", "v v");
  p.add_relation("b v b u", "B u B v");
  p.add_relation("U B v b r", "r U B v b");
  return p;
}

Fsa det_mult(const Fsa& graph, const std::vector<uint32_t>& gdiff,
             uint32_t anchor, uint64_t cap) {
  Fsa m = graph;
  m.labels.clear();
  for (State s = 0; s < m.nstates(); ++s)
    m.accept[s] = (anchor != kNoDiff && gdiff[s] == anchor) ? 1 : 0;
  return minimize(determinize(m, cap));
}

int main() {
  Presentation p = full_g();
  SubgroupInput si;
  si.name = "h";
  si.generators = {p.alpha.parse_word("u u"), p.alpha.parse_word("b v b U")};
  CosetSystem cs = build_coset_system(p, si);
  std::cout << "verified=" << cs.verified << " wa=" << cs.wa.nstates() << "\n";

  DiffMachine wd = cs.wd;
  std::vector<uint32_t> starts;
  for (State i : cs.graph.initials)
    if (std::find(starts.begin(), starts.end(), cs.graph_diff[i]) ==
        starts.end())
      starts.push_back(cs.graph_diff[i]);
  Fsa graph = cs.graph;
  std::vector<uint32_t> gdiff = cs.graph_diff;

  Sym b = 2;  // y2
  Word wb = cs.grs.reduce(cs.sub_value({b}));
  std::cout << "wb=" << p.alpha.format_word(wb) << "\n";
  for (int round = 0; round < 200; ++round) {
    uint32_t anchor = wd.find(wb);
    Fsa det = det_mult(graph, gdiff, anchor, kDefaultStateCap);
    Fsa ex = minimize(exists_project(det, 1, kDefaultStateCap));
    if (fsa_equal(ex, cs.wa)) {
      std::cout << "round " << round << ": PASS\n";
      return 0;
    }
    auto miss = fsa_diff_witness(cs.wa, ex);
    if (!miss) {
      std::cout << "round " << round << ": no witness?!\n";
      return 1;
    }
    size_t before = wd.size() + starts.size();
    Word pre;
    for (size_t i = 0; i <= miss->size(); ++i) {
      if (i) pre.push_back((*miss)[i - 1]);
      Word full = pre;
      full.insert(full.end(), wb.begin(), wb.end());
      Word hval = cs.grs.reduce(cs.sub_value(coset_label(cs, full)));
      uint32_t d = wd.add(cs.grs, hval);
      if (std::find(starts.begin(), starts.end(), d) == starts.end())
        starts.push_back(d);
      wd.add_pair(cs.grs, pre, coset_rep(cs, full), hval);
    }
    std::cout << "round " << round << ": miss='" << p.alpha.format_word(*miss)
              << "' diffs " << before << " -> " << wd.size() + starts.size()
              << " ex=" << ex.nstates() << "\n";
    if (wd.size() + starts.size() == before) {
      std::cout << "STALLED; dissect witness\n";
      Word u = *miss;
      Word full = u;
      full.insert(full.end(), wb.begin(), wb.end());
      Word v = coset_rep(cs, full);
      Word hval = cs.grs.reduce(cs.sub_value(coset_label(cs, full)));
      std::cout << "u='" << p.alpha.format_word(u) << "' v='"
                << p.alpha.format_word(v) << "' h='"
                << p.alpha.format_word(hval) << "'\n";
      // is v accepted by wa?
      State s = cs.wa.initial();
      for (Sym y : v) {
        s = cs.wa.step(s, y);
        if (s == kNoState) break;
      }
      std::cout << "v wa-state: " << (s == kNoState ? -1 : (int)s) << "\n";
      // walk the pair through wd
      wd.rebuild(cs.grs);
      const Sym pad = static_cast<Sym>(p.alpha.size());
      uint32_t d = wd.find(cs.grs.reduce(hval));
      std::cout << "start diff " << d << " in starts: "
                << (std::find(starts.begin(), starts.end(), d) != starts.end())
                << "\n";
      size_t n = std::max(u.size(), v.size());
      for (size_t i = 0; i < n; ++i) {
        Sym x = i < u.size() ? u[i] : pad;
        Sym y = i < v.size() ? v[i] : pad;
        uint32_t d2 = wd.step(d, x, y);
        std::cout << "  step " << i << " (" << (int)x << "," << (int)y
                  << "): " << d << " -> "
                  << (d2 == kNoDiff ? std::string("DEAD")
                                    : std::to_string(d2))
                  << "\n";
        if (d2 == kNoDiff) break;
        d = d2;
      }
      std::cout << "final diff word: '" << p.alpha.format_word(wd.word(d))
                << "' anchor word '" << p.alpha.format_word(wb) << "'\n";
      return 1;
    }
    wd.rebuild(cs.grs);
    GeneralMultiplier gm =
        build_general_multiplier(wd, cs.grs, cs.wa, starts, kDefaultStateCap);
    graph = std::move(gm.graph);
    gdiff = std::move(gm.state_diff);
  }
  std::cout << "round cap hit\n";
  return 1;
}
