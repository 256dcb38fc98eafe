#include <iostream>

#include "autogrp/hnn.hpp"
#include "autogrp/rewrite.hpp"

using namespace autogrp;

Presentation f2() {
  Presentation p;
  p.name = "f2";
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  return p;
}

Presentation kpres(const std::vector<std::pair<std::string, std::string>>& rels) {
  Presentation p;
  p.name = "k";
  p.alpha.add_pair("a", "A");
  p.alpha.add_pair("b", "B");
  p.alpha.add_pair("z", "Z");
  for (auto& [l, r] : rels) p.add_relation(l, r);
  return p;
}

void kb_probe(const char* tag, const Presentation& p) {
  RewritingSystem rs = make_group_rws(p);
  bool c = knuth_bendix(rs);
  std::cout << tag << ": confluent=" << c << " rules=" << rs.live_rule_ids().size() << "\n";
}

int main() {
  // --- oracle KB confluence ---
  kb_probe("K1 (za=az)", kpres({{"z a", "a z"}}));
  kb_probe("K2 (za=az, zb=bz)", kpres({{"z a", "a z"}, {"z b", "b z"}}));
  kb_probe("K3 (zaa=aaz)", kpres({{"z a a", "a a z"}}));
  kb_probe("K4 (za=Az)", kpres({{"z a", "A z"}}));

  // --- toy1 system ---
  HnnInput in;
  in.name = "toy";
  in.base = f2();
  in.stable = "z";
  in.stable_inv = "Z";
  in.sub_generators = {in.base.alpha.parse_word("a")};
  HnnSystem hs = build_hnn_system(in);
  std::cout << "toy1 verified=" << hs.verified << " note=" << hs.note << "\n";
  if (!hs.verified) return 1;
  std::cout << "lk states=" << hs.lk.nstates() << "\n";
  for (const Word& w : fsa_enumerate(hs.lk, 2))
    std::cout << "  lk: '" << hs.kalpha.format_word(w) << "'\n";
  std::cout << "nf(z a) = '" << hs.kalpha.format_word(hs.kalpha.parse_word("z a")) << "' -> '"
            << hs.kalpha.format_word(hnn_reduce(hs, hs.kalpha.parse_word("z a"))) << "'\n";
  std::cout << "nmult=" << hs.nmult() << "\n";
  for (size_t c = 0; c < hs.nmult(); ++c)
    std::cout << "  M_" << hs.letter_name(c) << ": " << hs.mult[c].m.nstates()
              << " states, max_g=" << hs.mult[c].max_g << "\n";
  // spec examples
  Word u = hs.kalpha.parse_word("b");
  Word v = hs.kalpha.parse_word("b z");
  AsyncRun r1 = async_run(hs.mult[hs.z], u, v);
  std::cout << "M_z(b, b z): " << r1.accepted << "\n";
  AsyncRun r2 = async_run(hs.mult[0], hs.kalpha.parse_word("z"), hs.kalpha.parse_word("a z"));
  std::cout << "M_a(z, a z): " << r2.accepted << "\n";
  AsyncRun r3 = async_run(hs.mult[0], hs.kalpha.parse_word("z"), hs.kalpha.parse_word("z a"));
  std::cout << "M_a(z, z a): " << r3.accepted << " (want 0)\n";
  HnnReport rep = verify_async_structure(hs, 4);
  std::cout << "verify d4: ok=" << rep.ok << " words=" << rep.words
            << " max_drift=" << rep.max_drift << " max_g=" << rep.max_g
            << " detail=" << rep.detail << "\n";

  // --- drift fixture probe: H = <aa> in F2 ---
  HnnInput in3;
  in3.name = "drift";
  in3.base = f2();
  in3.stable = "z";
  in3.stable_inv = "Z";
  in3.sub_generators = {in3.base.alpha.parse_word("a a")};
  HnnSystem h3 = build_hnn_system(in3);
  std::cout << "drift verified=" << h3.verified << " note=" << h3.note << "\n";
  if (h3.verified) {
    const Alphabet& ka = h3.kalpha;
    auto show = [&](const char* t, const Word& w) {
      std::cout << t << " rep='" << in3.base.alpha.format_word(coset_rep(h3.cs, w))
                << "' label='" << h3.cs.bsub.format_word(coset_label(h3.cs, w)) << "'\n";
    };
    show("Ab:", in3.base.alpha.parse_word("A b"));
    show("ab:", in3.base.alpha.parse_word("a b"));
    // chain probe: t*aa -> rep/label, then push that label through t again
    Word t = coset_rep(h3.cs, in3.base.alpha.parse_word("A b"));
    Word g = t;
    Word aa = in3.base.alpha.parse_word("a a");
    g.insert(g.end(), aa.begin(), aa.end());
    show("t.aa:", g);
    Word lab = coset_label(h3.cs, g);
    Word g2 = t;
    Word lv = h3.cs.sub_value(lab);
    g2.insert(g2.end(), lv.begin(), lv.end());
    show("t.val(lab):", g2);
    // family: u_r = (t z)^r, multiply by y1 (index kalpha.size())
    for (int r = 1; r <= 8; ++r) {
      Word ur;
      for (int i = 0; i < r; ++i) {
        ur.insert(ur.end(), t.begin(), t.end());
        ur.push_back(h3.z);
      }
      HnnNormalForm nu = hnn_normal_form(h3, ur);
      HnnNormalForm nv = hnn_multiply(h3, nu, ka.size());
      Word vr = lk_word(h3, nv);
      AsyncRun run = async_run(h3.mult[ka.size()], ur, vr);
      std::cout << "r=" << r << " u='" << ka.format_word(ur) << "' v='"
                << ka.format_word(vr) << "' acc=" << run.accepted
                << " drift=" << run.max_drift << "\n";
    }
    HnnReport rep3 = verify_async_structure(h3, 4);
    std::cout << "drift verify d4: ok=" << rep3.ok << " words=" << rep3.words
              << " max_drift=" << rep3.max_drift << " max_g=" << rep3.max_g
              << " detail=" << rep3.detail << "\n";
  }

  // --- alpha fixture: z a Z = A ---
  HnnInput in4;
  in4.name = "kalpha";
  in4.base = f2();
  in4.stable = "z";
  in4.stable_inv = "Z";
  in4.sub_generators = {in4.base.alpha.parse_word("a")};
  in4.alpha = {Word{1}};  // y1 -> Y1
  HnnSystem h4 = build_hnn_system(in4);
  std::cout << "kalpha verified=" << h4.verified << " note=" << h4.note << "\n";
  if (h4.verified) {
    const Alphabet& ka = h4.kalpha;
    // z^-1 a z = A  => nf("Z a z") should equal nf("A")
    std::cout << "nf(Z a z)='" << ka.format_word(hnn_reduce(h4, ka.parse_word("Z a z")))
              << "' nf(A)='" << ka.format_word(hnn_reduce(h4, ka.parse_word("A"))) << "'\n";
    HnnReport rep4 = verify_async_structure(h4, 4);
    std::cout << "kalpha verify d4: ok=" << rep4.ok << " words=" << rep4.words
              << " max_drift=" << rep4.max_drift << " detail=" << rep4.detail << "\n";
  }

  // --- degenerate: H = whole F2 ---
  HnnInput in2;
  in2.name = "deg";
  in2.base = f2();
  in2.stable = "z";
  in2.stable_inv = "Z";
  in2.sub_generators = {in2.base.alpha.parse_word("a"), in2.base.alpha.parse_word("b")};
  HnnSystem h2 = build_hnn_system(in2);
  std::cout << "deg verified=" << h2.verified << " note=" << h2.note << "\n";
  if (h2.verified) {
    HnnReport rep2 = verify_async_structure(h2, 4);
    std::cout << "deg verify d4: ok=" << rep2.ok << " words=" << rep2.words
              << " max_drift=" << rep2.max_drift << " detail=" << rep2.detail << "\n";
  }
  return 0;
}
