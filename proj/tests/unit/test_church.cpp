#include "ctg/church.hpp"

#include <gtest/gtest.h>

using namespace ctg;

TEST(Church, TFamilyOnTraces) {
  const Nat e = canon_code(arith_do({ArithFn::Succ}));
  const Nat c = run_protocol(e, 4).code();
  auto pt = [](const Nat& a, const Nat& b, const Nat& k) { return ppair(ppair(num(a), num(b)), num(k)); };
  EXPECT_EQ(t_family()->at(pt(e, 4, c))->kind, NK::One);
  EXPECT_EQ(t_family()->at(pt(0, 0, 0))->kind, NK::Zero);
  EXPECT_EQ(t_family()->at(ppair(ppair(bot(g_nat()), num(4)), num(c)))->kind, NK::Zero);
}

TEST(Church, UMorphism) {
  Tm u = u_morphism();
  const Nat c = run_protocol(canon_code(arith_do({ArithFn::Succ})), 4).code();
  Tm uc = app(u, numeral_tm(cwf_terminal(), c));
  EXPECT_EQ(read_closed(uc), Nat(5));
  for (int n = 0; n < 20; ++n) EXPECT_EQ(read_closed(app(u, numeral_tm(cwf_terminal(), n))), u_extract(n));
}

TEST(Church, TypeAssembles) {
  const CtType& t = ct_type();
  EXPECT_TRUE(pi_parts(t.ct).has_value());
  EXPECT_EQ(t.ct.ctx->kind, NK::One);
  EXPECT_EQ(ct_term().ty.fam->desc(), t.ct.fam->desc());
}

TEST(Church, ValidatesSamples) {
  CtReport rep = validate_ct(ct_samples(), 10);
  for (const auto& s : rep.samples) {
    EXPECT_TRUE(s.echo_ok) << s.name;
    EXPECT_EQ(s.moves_before_echo, 0u) << s.name;
    for (const auto& p : s.probes) {
      EXPECT_TRUE(p.t_ok) << s.name << " n=" << p.n;
      EXPECT_TRUE(p.played_ok) << s.name << " n=" << p.n;
      EXPECT_TRUE(p.fibers_one) << s.name << " n=" << p.n;
      EXPECT_EQ(p.u, p.expected) << s.name << " n=" << p.n;
    }
  }
  EXPECT_TRUE(rep.total) << rep.total_label;
  EXPECT_TRUE(rep.realizes_ok) << rep.realizes_label;
  EXPECT_TRUE(rep.empty_has_no_winner);
  EXPECT_TRUE(rep.ok()) << rep.text();
}

TEST(Church, ConstSevenAtEveryInput) {
  CtReport rep = validate_ct({{"const7", arith_do({ArithFn::Const, 7})}}, 6);
  for (const auto& p : rep.samples.at(0).probes) EXPECT_EQ(p.u, Nat(7));
}

TEST(Church, DaggerCodeIsTheCanonicalRealizer) {
  for (const auto& s : ct_samples()) EXPECT_EQ(ct_dagger_code(canon_code(hat(s.f))), canon_code(s.f)) << s.name;
}
