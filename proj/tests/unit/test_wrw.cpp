#include "ctg/dowrwli.hpp"

#include <gtest/gtest.h>

using namespace ctg;

namespace {

Occ o_q(Tag t, std::uint32_t j = 0) { return Occ{Move{t, Op::O, QA::Q}, j}; }
Occ o_a(Tag t, std::uint32_t j) { return Occ{Move{t, Op::O, QA::A}, j}; }

Do succ_do() { return arith_do({ArithFn::Succ}); }
Do double_do() { return arith_do({ArithFn::Double}); }
Do add3_do() { return arith_do({ArithFn::AddK, 3}); }

}  // namespace

TEST(NpGame, ShapesAndText) {
  EXPECT_TRUE(same_game(np_wimp(np_nat(), np_nat())->shape, g_rlimp(g_sbang(g_nat()), g_nat())));
  EXPECT_EQ(np_text(np_prod(np_nat(), np_one())), "(N & 1)");
  EXPECT_TRUE(same_np(np_from_desc(np_wimp(np_nat(), np_nat())->desc), np_wimp(np_nat(), np_nat())));
  EXPECT_TRUE(np_well_opened(np_wimp(np_nat(), np_nat())));
  EXPECT_FALSE(np_well_opened(np_sbang(np_nat())));
}

TEST(NpGame, CanonicalPoints) {
  auto pts = canonical_points(np_prod(np_nat(), np_nat()), 32);
  bool found = false;
  for (const auto& p : pts) {
    EXPECT_EQ(canonical_desc(canon_code(p)), desc_code(p->desc()));
    if (read(left_of(p)) == Nat(2) && read(right_of(p)) == Nat(3)) found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(canonical_points(np_prod(np_nat(), np_zero()), 8).empty());
  auto ones = canonical_points(np_sbang(np_one()), 8);
  ASSERT_EQ(ones.size(), 1u);
  EXPECT_EQ(ones[0], hat(top()));
  for (const auto& p : canonical_points(np_prod(np_nat(), np_nat()), 6))
    EXPECT_TRUE(check_winning(p, 6).total);
}

TEST(NpGame, NormalizeReadsNumerals) {
  auto p = compose_point(sk_one(num(3)), succ_sk());
  EXPECT_EQ(normalize(np_nat(), unlift(compose_sk(sk_one(num(3)), succ_sk()))), num(4));
  (void)p;
  EXPECT_EQ(normalize(np_nat(), bot(g_nat())), bot(g_nat()));
  EXPECT_EQ(normalize(np_prod(np_nat(), np_one()), ppair(num(1), top())), ppair(num(1), top()));
}

TEST(Wrw, ArithExtensionThroughProtocol) {
  for (int n = 0; n <= 10; ++n) {
    EXPECT_EQ(extension(succ_do(), n), Nat(n + 1));
    EXPECT_EQ(extension(double_do(), n), Nat(2 * n));
  }
}

TEST(Wrw, DerelictionPlayOnN) {
  const Nat e = canon_code(hat(num(5)));
  auto der = wrw_dereliction(np_nat());
  JSeq s = play(der, {o_q(t_real(e, t_right(t_q()))), o_a(t_real(e, t_left(t_num(5))), 2)});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.move(2).tag, t_real(e, t_left(t_q())));
  EXPECT_EQ(s.move(4).tag, t_real(e, t_right(t_num(5))));
  EXPECT_EQ(s.just(4), 1u);
}

TEST(Wrw, ForcedDomainRepliesOnly) {
  const Nat e = canon_code(hat(num(5)));
  auto der = wrw_dereliction(np_nat());
  JSeq s;
  s.push(Move{t_real(e, t_right(t_q())), Op::O, QA::Q}, 0);
  auto r = der->next(s);
  ASSERT_TRUE(r.has_value());
  s.push(r->m, r->j);
  auto om = der->o_moves(s, 16);
  EXPECT_TRUE(om.obligated);
  ASSERT_EQ(om.moves.size(), 1u);
  EXPECT_EQ(om.moves[0].m.tag, t_real(e, t_left(t_num(5))));
  EXPECT_FALSE(der->o_move_ok(s, o_a(t_real(e, t_left(t_num(6))), 2)));
  EXPECT_THROW(play(der, {o_q(t_real(e, t_right(t_q()))), o_a(t_real(e, t_left(t_num(6))), 2)}), IllegalOMove);
}

TEST(Wrw, OpeningsCarryRealizers) {
  auto ext = succ_do()->o_extensions(JSeq{}, 16);
  ASSERT_EQ(ext.size(), kRealizerChoices);
  for (const auto& o : ext) {
    EXPECT_EQ(o.m.tag->kind, TagKind::Real);
    EXPECT_TRUE(canonical_desc(o.m.tag->num).has_value());
  }
}

TEST(Wrw, ComposeSuccDouble) {
  auto f = bullet(double_do(), succ_do());
  for (int n = 0; n <= 20; ++n) EXPECT_EQ(extension(f, n), Nat(2 * (n + 1)));
  EXPECT_EQ(extension(bullet(succ_do(), double_do()), 3), Nat(7));
}

TEST(Wrw, RealizerMapAgreesWithCodomain) {
  auto f = bullet(double_do(), succ_do());
  for (int n = 0; n < 4; ++n) {
    const Nat e = canon_code(hat(num(n)));
    EXPECT_EQ(f->realize_cod(e), canon_code(num(2 * (n + 1))));
    EXPECT_EQ(succ_do()->cod(e), num(n + 1));
  }
}

TEST(Wrw, CategoryLaws) {
  auto id = wrw_dereliction(np_nat());
  for (const auto& f : {succ_do(), double_do()}) {
    auto l = bullet(id, f), r = bullet(f, id);
    EXPECT_TRUE(play_equal(l, f, 8).equal) << play_equal(l, f, 8).text();
    EXPECT_TRUE(play_equal(r, f, 8).equal) << play_equal(r, f, 8).text();
  }
  auto f = succ_do(), g = double_do(), h = add3_do();
  auto v = play_equal(bullet(h, bullet(g, f)), bullet(bullet(h, g), f), 8);
  EXPECT_TRUE(v.equal) << v.text();
  EXPECT_EQ(v.positions, 2 * kRealizerChoices);  // every opening, every forced domain answer
  EXPECT_EQ(extension(bullet(h, bullet(g, f)), 4), Nat(13));
}

TEST(Wrw, DistinctMorphismsAreSeparated) {
  auto v = play_equal(succ_do(), double_do(), 8);
  EXPECT_FALSE(v.equal);
  EXPECT_TRUE(v.witness.has_value());
}

TEST(Wrw, PromotionLemma) {
  auto n = np_nat();
  auto v1 = play_equal(promote_do(wrw_dereliction(n)), wrw_copycat(np_sbang(n)), 8);
  EXPECT_TRUE(v1.equal) << v1.text();
  for (const auto& phi : {succ_do(), double_do()}) {
    auto v2 = play_equal(compose_do(promote_do(phi), wrw_dereliction(n)), phi, 8);
    EXPECT_TRUE(v2.equal) << v2.text();
  }
  // (ψ • φ)† = ψ† ∘ φ†
  auto phi = succ_do(), psi = double_do();
  auto v3 = play_equal(promote_do(bullet(psi, phi)), compose_do(promote_do(phi), promote_do(psi)), 8);
  EXPECT_TRUE(v3.equal) << v3.text();
}

TEST(Wrw, WinningByTypedEnumeration) {
  for (const auto& f : {succ_do(), double_do(), bullet(double_do(), succ_do())}) {
    auto rep = check_winning(f, 8);
    EXPECT_TRUE(rep.total && rep.innocent && rep.noetherian) << rep.label();
  }
  EXPECT_TRUE(np_member(np_wimp(np_nat(), np_nat()), succ_do()));
}

TEST(Wrw, PairOfConstants) {
  auto dom = np_sbang(np_nat());
  auto p = pair_do(const_do(dom, fam_const(np_nat()), num(2)), const_do(dom, fam_const(np_nat()), num(7)));
  const Nat e = canon_code(hat(num(0)));
  JSeq l = play(p, {o_q(t_real(e, t_right(t_left(t_q()))))});
  JSeq r = play(p, {o_q(t_real(e, t_right(t_right(t_q()))))});
  EXPECT_EQ(l.move(2).tag, t_real(e, t_right(t_left(t_num(2)))));
  EXPECT_EQ(r.move(2).tag, t_real(e, t_right(t_right(t_num(7)))));
  EXPECT_EQ(p->cod(e), ppair(num(2), num(7)));
}

TEST(Wrw, TrivialFamilies) {
  auto t = trivial_do(np_sbang(np_zero()), fam_const(np_nat()));
  EXPECT_TRUE(t->o_extensions(JSeq{}, 16).empty());
  EXPECT_TRUE(compose_do(promote_do(t), t)->trivial());
  EXPECT_TRUE(play_equal(wrw_copycat(np_one()), wrw_copycat(np_one()), 8).equal);
  EXPECT_TRUE(wrw_copycat(np_one())->o_extensions(JSeq{}, 16).empty());
}

TEST(Wrw, DescriptionsRebuild) {
  auto f = bullet(double_do(), succ_do());
  EXPECT_EQ(build_do(f->desc()), f);
  EXPECT_EQ(desc_decode(desc_code(f->desc())), f->desc());
}

TEST(Effectivity, TPredicateOnSuccRealizer) {
  const Nat e = canon_code(succ_do());
  auto run = run_protocol(e, 4);
  ASSERT_TRUE(run.result.has_value());
  EXPECT_EQ(*run.result, Nat(5));
  const Nat c = run.code();
  EXPECT_TRUE(t_pred(e, 4, c));
  EXPECT_EQ(u_extract(c), Nat(5));
  EXPECT_FALSE(t_pred(e, 5, c));
  EXPECT_EQ(u_extract(c + 1), Nat(0));
}
