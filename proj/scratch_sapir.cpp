#include <iostream>

#include "autogrp/cosets.hpp"
#include "autogrp/hnn.hpp"
#include "autogrp/rewrite.hpp"

using namespace autogrp;

Presentation mini_g() {
  Presentation p;
  p.name = "gmini";
  p.alpha.add_pair("u", "U");
  p.alpha.add_pair("v", "V");
  p.alpha.add_pair("b", "B");
  p.add_relation("u u", "v v");
  p.add_relation("b v b u", "B u B v");
  return p;
}

Presentation full_g() {
  Presentation p = mini_g();
  p.name = "gsap";
  p.alpha.add_pair("r", "R");
  p.add_relation("U B v b r", "r U B v b");
  return p;
}

void probe(const char* tag, const Presentation& p) {
  std::cout << "=== " << tag << " ===\n";
  SubgroupInput si;
  si.name = "h";
  si.generators = {p.alpha.parse_word("u u"), p.alpha.parse_word("b v b U")};
  CosetSystem cs = build_coset_system(p, si);
  std::cout << "coset verified=" << cs.verified << " strong=" << cs.strong
            << " wa=" << cs.wa.nstates() << " k=" << cs.k
            << " note=" << cs.note << "\n";
  if (!cs.verified) return;
  EffReport eff = efficiency_check(cs);
  std::cout << "efficiency=" << (eff.status == CheckStatus::ok) << " detail=" << eff.detail << "\n";
  // non-quasiconvexity witness: rep of (b u B V)^n should be b^{2n}
  for (int n = 1; n <= 4; ++n) {
    Word w;
    Word pq = p.alpha.parse_word("b u B V");
    for (int i = 0; i < n; ++i) w.insert(w.end(), pq.begin(), pq.end());
    std::cout << "rep((buBV)^" << n << ") = '"
              << p.alpha.format_word(coset_rep(cs, w)) << "'\n";
  }
  // chain probe: push each subgroup letter value through low reps
  std::vector<Word> reps = fsa_enumerate(cs.wa, 5);
  std::cout << "reps<=5: " << reps.size() << "\n";
  for (Sym y = 0; y < cs.bsub.size(); ++y) {
    Word val = cs.sub_value(Word{y});
    int shown = 0;
    for (const Word& t : reps) {
      if (t.empty()) continue;
      Word g = t;
      g.insert(g.end(), val.begin(), val.end());
      Word rep = coset_rep(cs, g);
      Word lab = coset_label(cs, g);
      if (lab.empty() || rep == t) continue;
      if (shown++ >= 4) break;
      std::cout << "  " << cs.bsub.name(y) << ": t='" << p.alpha.format_word(t)
                << "' -> rep='" << p.alpha.format_word(rep) << "' label='"
                << cs.bsub.format_word(lab) << "'\n";
    }
  }
}



void hnn_probe(const char* tag, const Presentation& base, int rmax) {
  std::cout << "=== hnn " << tag << " ===\n";
  HnnInput in;
  in.name = std::string(tag) + "k";
  in.base = base;
  in.stable = "z";
  in.stable_inv = "Z";
  in.sub_generators = {base.alpha.parse_word("u u"),
                       base.alpha.parse_word("b v b U")};
  HnnLimits lim;
  HnnSystem hs = build_hnn_system(in, lim);
  std::cout << "hnn verified=" << hs.verified << " note='" << hs.note
            << "' lk=" << hs.lk.nstates() << " kbound=" << hs.kbound << "\n";
  if (!hs.verified) return;
  HnnReport hr = verify_async_structure(hs, 3);
  std::cout << "verify d3: ok=" << hr.ok << " words=" << hr.words
            << " accepts=" << hr.accepts << " max_drift=" << hr.max_drift
            << " max_g=" << hr.max_g << " detail='" << hr.detail << "'\n";
  // drift family u_r = (u b z b z)^r u, multiplied by letter u
  Sym lu = hs.kalpha.parse_word("u")[0];
  const Word per = hs.kalpha.parse_word("u b z b z");
  for (int r = 1; r <= rmax; ++r) {
    Word ur;
    for (int i = 0; i < r; ++i) ur.insert(ur.end(), per.begin(), per.end());
    ur.push_back(lu);
    HnnNormalForm a = hnn_normal_form(hs, ur);
    HnnNormalForm b2 = hnn_multiply(hs, a, lu);
    AsyncRun run = async_run(hs.mult[lu], lk_word(hs, a), lk_word(hs, b2));
    std::cout << "r=" << r << " accept=" << run.accepted
              << " drift=" << run.max_drift << "\n";
  }
}

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "hnnmini") { hnn_probe("mini", mini_g(), 8); return 0; }
  if (argc > 1 && std::string(argv[1]) == "hnnfull") { hnn_probe("full", full_g(), 8); return 0; }
  probe("mini", mini_g());
  if (argc > 1) probe("full", full_g());
  return 0;
}
