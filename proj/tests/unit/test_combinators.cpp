#include "ctg/combinators.hpp"

#include <gtest/gtest.h>

using namespace ctg;

namespace {

Occ o_q(Tag t, std::uint32_t j = 0) { return Occ{Move{t, Op::O, QA::Q}, j}; }
Occ o_a(Tag t, std::uint32_t j) { return Occ{Move{t, Op::O, QA::A}, j}; }

// Reads the numeral a closed skeleton on !1 -o N or 1 -o N produces.
std::optional<Nat> read_lifted(const TSkeleton& phi) { return read(unlift(phi)); }

}  // namespace

TEST(Flat, EmptyFlatIsZeroAndNaturalsAnswer) {
  EXPECT_TRUE(same_game(mk_flat({}).game, g_zero()));
  EXPECT_EQ(read(num(5)), Nat(5));
  EXPECT_FALSE(read(bot(g_nat())));
  FlatGame b = mk_flat({t_sym("tt"), t_sym("ff")});
  EXPECT_EQ(play(b.value(t_sym("tt")), {o_q(t_q())}).move(2).tag, t_sym("tt"));
}

TEST(Compose, SuccThenDoubleVisiblePlay) {
  auto sk = compose_sk(succ_sk(), double_sk());
  JSeq s = play(sk, {o_q(t_right(t_q())), o_a(t_left(t_num(3)), 2)});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.move(2).tag, t_left(t_q()));
  EXPECT_EQ(s.move(4).tag, t_right(t_num(8)));
  EXPECT_EQ(s.just(2), 1u);
  EXPECT_EQ(s.just(4), 1u);
}

TEST(Compose, ExtensionsMatchArithmetic) {
  auto sd = compose_sk(succ_sk(), double_sk());
  auto ds = compose_sk(double_sk(), succ_sk());
  for (int n = 0; n <= 50; ++n) {
    EXPECT_EQ(extension_plain(sd, n), Nat(2 * (n + 1)));
    EXPECT_EQ(extension_plain(ds, n), Nat(2 * n + 1));
  }
}

TEST(Compose, CopycatIsUnit) {
  auto cp = copycat_sk(g_nat());
  for (auto f : {succ_sk(), double_sk()}) {
    EXPECT_TRUE(play_equal(compose_sk(cp, f), f, 8).equal);
    EXPECT_TRUE(play_equal(compose_sk(f, cp), f, 8).equal);
  }
}

TEST(Compose, Associative) {
  auto f = succ_sk(), g = double_sk(), h = arith_sk({ArithFn::AddK, 3}, g_limp(g_nat(), g_nat()), {});
  auto l = compose_sk(compose_sk(f, g), h);
  auto r = compose_sk(f, compose_sk(g, h));
  auto v = play_equal(l, r, 8);
  EXPECT_TRUE(v.equal) << v.text();
  EXPECT_EQ(extension_plain(l, 4), Nat(13));
}

TEST(Compose, DistinctWitness) {
  auto v = play_equal(compose_sk(succ_sk(), double_sk()), compose_sk(double_sk(), succ_sk()), 8);
  EXPECT_FALSE(v.equal);
  EXPECT_TRUE(v.witness.has_value());
}

TEST(Copycat, CopiesEveryAnswer) {
  for (int n : {0, 1, 7}) {
    JSeq s = play(copycat_sk(g_nat()), {o_q(t_right(t_q())), o_a(t_left(t_num(n)), 2)});
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s.move(2).tag, t_left(t_q()));
    EXPECT_EQ(s.move(4).tag, t_right(t_num(n)));
    EXPECT_EQ(s.just(4), 1u);
  }
}

TEST(Copycat, DerelictionUsesThread) {
  JSeq s = play(dereliction_sk(g_nat(), 0), {o_q(t_right(t_q())), o_a(t_left(t_exp(0, t_num(4))), 2)});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.move(2).tag, t_left(t_exp(0, t_q())));
  EXPECT_EQ(s.move(4).tag, t_right(t_num(4)));
}

TEST(Copycat, OnOneNeverMoves) {
  EXPECT_TRUE(play(copycat_sk(g_one()), {}).empty());
  EXPECT_TRUE(check_winning(copycat_sk(g_one()), 8).total);
}

TEST(Pazo, SumsTwoApplications) {
  auto run = [](const ArithFn& fn) {
    auto f = sk_bang_one(succ_bang_sk(fn));
    return read_lifted(compose_sk(promote_sk(f), pazo_sk()));
  };
  EXPECT_EQ(run({ArithFn::AddK, 5}), Nat(11));
  EXPECT_EQ(run({ArithFn::Id}), Nat(1));
  EXPECT_EQ(run({ArithFn::Double}), Nat(2));
}

TEST(Promote, ThreadsAnswerIndependently) {
  auto p = promote_sk(succ_bang_sk({ArithFn::Succ}));
  JSeq s = play(p, {o_q(t_right(t_exp(0, t_q())))});
  ASSERT_EQ(s.size(), 2u);
  Tag ask0 = s.move(2).tag;
  EXPECT_EQ(ask0, t_left(t_exp(cantor(0, 0), t_q())));
  // The later thread is answered first: the earlier question stays visible.
  s = play(p, {o_q(t_right(t_exp(0, t_q()))), o_q(t_right(t_exp(4, t_q()))), o_a(t_left(t_exp(cantor(0, 4), t_num(9))), 4),
               o_a(t_left(t_exp(cantor(0, 0), t_num(2))), 2)});
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s.move(4).tag, t_left(t_exp(cantor(0, 4), t_q())));
  EXPECT_EQ(s.move(6).tag, t_right(t_exp(4, t_num(10))));
  EXPECT_EQ(s.move(8).tag, t_right(t_exp(0, t_num(3))));
}

TEST(Promote, DerelictionAfterPromotionIsIdentity) {
  auto phi = succ_bang_sk({ArithFn::Double});
  auto lhs = compose_sk(promote_sk(phi), dereliction_sk(g_nat(), 0));
  auto v = play_equal(lhs, phi, 8, 4);
  EXPECT_TRUE(v.equal) << v.text();
}

TEST(Promote, TopValuedNeverTouchesDomain) {
  auto phi = arith_sk({ArithFn::Const, 2}, g_imp(g_nat(), g_nat()), {PathStep{TagKind::Exp, 0}});
  JSeq s = play(promote_sk(phi), {o_q(t_right(t_exp(3, t_q())))});
  EXPECT_EQ(s.move(2).tag, t_right(t_exp(3, t_num(2))));
}

TEST(Pair, OpensLeftOrRight) {
  auto p = pair_sk(sk_one(num(5)), sk_one(num(7)));
  EXPECT_EQ(play(p, {o_q(t_right(t_left(t_q())))}).move(2).tag, t_right(t_left(t_num(5))));
  EXPECT_EQ(play(p, {o_q(t_right(t_right(t_q())))}).move(2).tag, t_right(t_right(t_num(7))));
  EXPECT_TRUE(check_winning(p, 8).total);
}

TEST(Tensor, InterleavingsAgree) {
  auto t = tensor_sk(sk_one(num(2)), sk_one(num(3)));
  JSeq a = play(t, {o_q(t_right(t_left(t_q()))), o_q(t_right(t_right(t_q())))});
  JSeq b = play(t, {o_q(t_right(t_right(t_q()))), o_q(t_right(t_left(t_q())))});
  EXPECT_EQ(a.move(2).tag, t_right(t_left(t_num(2))));
  EXPECT_EQ(a.move(4).tag, t_right(t_right(t_num(3))));
  EXPECT_EQ(b.move(2).tag, t_right(t_right(t_num(3))));
  EXPECT_EQ(b.move(4).tag, t_right(t_left(t_num(2))));
}

TEST(Tensor, PointVersionAgreesWithLifted) {
  auto lifted = unlift(tensor_sk(sk_one(num(2)), sk_one(num(3))));
  auto point = tensor_point(num(2), num(3));
  EXPECT_TRUE(play_equal(lifted, point, 6).equal);
  EXPECT_TRUE(play_equal(point, lifted, 6).equal);
}

TEST(Notations, DaggerRoundTrip) {
  EXPECT_EQ(ddagger(dagger_point(num(5))), num(5));
  auto d = dagger_point(num(5));
  JSeq s = play(d, {o_q(t_exp(3, t_q()))});
  EXPECT_EQ(s.move(2).tag, t_exp(3, t_num(5)));
  auto opaque = make_skeleton(g_bang(g_nat()), nullptr, WinningCert::none(),
                               [](const JSeq&) { return std::optional<Occ>{}; });
  EXPECT_THROW(ddagger(opaque), NotInnocent);
}

TEST(Notations, PointComposition) {
  EXPECT_EQ(read(compose_point(num(4), succ_sk())), Nat(5));
  EXPECT_EQ(read(compose_point(num(4), compose_sk(succ_sk(), double_sk()))), Nat(10));
}

TEST(Points, PairProjections) {
  auto p = ppair(num(2), top());
  EXPECT_EQ(left_of(p), num(2));
  EXPECT_EQ(right_of(p), top());
  EXPECT_EQ(hat(unhat(hat(num(4)))), hat(num(4)));
}

TEST(Descriptions, RebuildGivesSameSkeleton) {
  auto sk = compose_sk(promote_sk(succ_bang_sk({ArithFn::Succ})), dereliction_sk(g_nat(), 0));
  EXPECT_EQ(build_skeleton(sk->desc()), sk);
  EXPECT_EQ(build_skeleton(desc_decode(desc_code(sk->desc())).value()), sk);
}

TEST(Winning, CertificatesPropagate) {
  auto sk = compose_sk(succ_sk(), double_sk());
  EXPECT_TRUE(sk->cert().total && sk->cert().innocent);
  auto r = check_winning(sk, 8);
  EXPECT_TRUE(r.total && r.innocent && r.noetherian) << r.label();
  auto r2 = check_winning(pair_sk(succ_sk(), double_sk()), 6);
  EXPECT_TRUE(r2.total) << r2.label();
}

TEST(Polarity, OnlyPlayerSwitchesInImplication) {
  auto sk = compose_sk(succ_sk(), double_sk());
  for (const JSeq& s : odd_positions(sk, 8, 4, 2000)) {
    for (std::size_t i = 2; i <= s.size(); ++i) {
      bool switched = (s.move(i).tag->kind) != (s.move(i - 1).tag->kind);
      if (switched) EXPECT_EQ(s.move(i).op, Op::P) << jseq_text(s);
    }
  }
}
