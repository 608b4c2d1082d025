#include "ctg/combinators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ctg;

namespace {

Occ occ(Tag t, Op op, QA qa, std::uint32_t j) { return Occ{Move{t, op, qa}, j}; }

// N -o N position q^[1] q^[0] n^[0] m^[1].
JSeq typical(const Nat& n, const Nat& m) {
  JSeq s;
  s.occ = {occ(t_right(t_q()), Op::O, QA::Q, 0), occ(t_left(t_q()), Op::P, QA::Q, 1),
           occ(t_left(t_num(n)), Op::O, QA::A, 2), occ(t_right(t_num(m)), Op::P, QA::A, 1)};
  return s;
}

// Views unfolded clause by clause, independent of the library.
std::vector<std::size_t> view_oracle(const JSeq& s, std::size_t n, Op self) {
  if (n == 0) return {};
  const Occ& o = s.at(n);
  if (o.m.op == self) {
    auto v = view_oracle(s, n - 1, self);
    v.push_back(n);
    return v;
  }
  if (o.j == 0) return {n};
  auto v = view_oracle(s, o.j, self);
  v.push_back(n);
  return v;
}

}  // namespace

TEST(Legal, EmptyIsLegal) { EXPECT_TRUE(legal(JSeq{}, *arena_of(g_nat()))); }

TEST(Legal, TypicalLinearPosition) {
  EXPECT_TRUE(legal(typical(3, 4), *arena_of(g_limp(g_nat(), g_nat()))));
}

TEST(Legal, TwoOpponentQuestionsViolateAlternation) {
  JSeq s;
  s.occ = {occ(t_q(), Op::O, QA::Q, 0), occ(t_q(), Op::O, QA::Q, 0)};
  EXPECT_FALSE(legal(s, *arena_of(g_nat())));
  EXPECT_NE(legality_reason(s, *arena_of(g_nat())), "");
}

TEST(Views, EmptyAndSingle) {
  EXPECT_TRUE(p_view(JSeq{}).empty());
  JSeq s;
  s.push(q_move(), 0);
  EXPECT_EQ(o_view(s), s);
}

TEST(Views, AnswerToInnerQuestionKeepsWholePosition) {
  JSeq s = typical(3, 4).prefix(3);
  EXPECT_EQ(p_view(s), s);
}

TEST(Views, OMoveJustifiedByEarlierMoveDropsTheMiddle) {
  JSeq s;
  Tag a = t_sym("a");
  s.occ = {occ(a, Op::O, QA::Q, 0), occ(a, Op::P, QA::Q, 1), occ(a, Op::O, QA::Q, 2),
           occ(a, Op::P, QA::Q, 3), occ(a, Op::O, QA::Q, 4), occ(a, Op::P, QA::Q, 5),
           occ(a, Op::O, QA::Q, 2)};
  EXPECT_EQ(p_view_indices(s), (std::vector<std::size_t>{1, 2, 7}));
  JSeq t = s.prefix(6);
  t.occ[5].j = 3;
  EXPECT_EQ(o_view_indices(t), (std::vector<std::size_t>{1, 2, 3, 6}));
}

TEST(Views, MatchClauseUnfoldingOnRandomSequences) {
  std::mt19937 rng(7);
  Tag a = t_sym("a");
  for (int trial = 0; trial < 2000; ++trial) {
    JSeq s;
    const std::size_t len = 1 + rng() % 9;
    for (std::size_t i = 1; i <= len; ++i) {
      Op op = i % 2 == 1 ? Op::O : Op::P;
      std::vector<std::uint32_t> cands;
      for (std::size_t k = 1; k < i; ++k)
        if (s.move(k).op != op) cands.push_back(static_cast<std::uint32_t>(k));
      std::uint32_t j = 0;
      if (op == Op::P || (!cands.empty() && rng() % 4 != 0)) j = cands[rng() % cands.size()];
      s.push(Move{a, op, QA::Q}, j);
    }
    EXPECT_EQ(p_view_indices(s), view_oracle(s, s.size(), Op::P)) << jseq_text(s);
    EXPECT_EQ(o_view_indices(s), view_oracle(s, s.size(), Op::O)) << jseq_text(s);
  }
}

TEST(Views, ViewsOfLegalPositionsAreLegal) {
  GameExpr g = g_imp(g_nat(), g_nat());
  Arena ar = arena_of(g);
  for (const JSeq& s : enumerate_positions(g, 5, 2, 3000)) {
    ASSERT_TRUE(legal(s, *ar));
    std::vector<std::size_t> keep = p_view_indices(s);
    JSeq v = jsub(s, keep);
    for (std::size_t i = 1; i <= v.size(); ++i) EXPECT_LT(v.just(i), i);
  }
}

TEST(Play, NumeralAnswers) {
  JSeq s = play(num(5), {Occ{q_move(), 0}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.move(2).tag, t_num(5));
  EXPECT_EQ(s.just(2), 1u);
}

TEST(Play, BottomStaysStuck) {
  JSeq s = play(bot(g_nat()), {Occ{q_move(), 0}});
  EXPECT_EQ(s.size(), 1u);
}

TEST(Play, TopOnOneIsEmpty) { EXPECT_TRUE(play(top(), {}).empty()); }

TEST(Play, RejectsIllegalOMove) {
  EXPECT_THROW(play(num(5), {Occ{Move{t_num(3), Op::O, QA::A}, 0}}), IllegalOMove);
}

TEST(Play, DeterministicTranscripts) {
  auto sk = compose_sk(succ_sk(), double_sk());
  std::vector<Occ> script = {Occ{Move{t_right(t_q()), Op::O, QA::Q}, 0}, Occ{Move{t_left(t_num(3)), Op::O, QA::A}, 2}};
  EXPECT_EQ(to_transcript(play(sk, script)), to_transcript(play(sk, script)));
  auto back = parse_transcript(to_transcript(play(sk, script)));
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, play(sk, script));
  EXPECT_EQ(play(sk, {script[0]}), play(sk, script).prefix(2));
}

TEST(Winning, NumeralIsWinning) {
  auto r = check_winning(num(3), 8);
  EXPECT_TRUE(r.total && r.innocent && r.noetherian);
}

TEST(Winning, BottomOnZeroIsNotTotal) {
  // 0 has no moves at all: its only skeleton is vacuous, the empty-type
  // witness is the bottom skeleton on N.
  EXPECT_FALSE(check_winning(bot(g_nat()), 8).total);
}

TEST(Winning, CopycatOnNatIsWinning) {
  auto r = check_winning(copycat_sk(g_nat()), 8);
  EXPECT_TRUE(r.total && r.innocent && r.noetherian) << r.label();
}

TEST(Winning, FailureIsMonotoneInDepth) {
  auto sk = bot(g_limp(g_nat(), g_nat()));
  for (std::size_t d = 1; d <= 6; ++d) EXPECT_FALSE(check_winning(sk, d).total);
}

TEST(WellOpened, Examples) {
  EXPECT_TRUE(is_well_opened(g_nat(), 6));
  EXPECT_TRUE(is_well_opened(g_one(), 6));
  EXPECT_FALSE(is_well_opened(g_bang(g_nat()), 6));
}

TEST(Thread, FollowsJustifierChains) {
  JSeq s;
  s.occ = {occ(t_exp(0, t_q()), Op::O, QA::Q, 0), occ(t_exp(0, t_num(1)), Op::P, QA::A, 1),
           occ(t_exp(1, t_q()), Op::O, QA::Q, 0), occ(t_exp(1, t_num(2)), Op::P, QA::A, 3)};
  JSeq t = thread(s, {3});
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.move(1).tag, t_exp(1, t_q()));
  EXPECT_EQ(t.just(2), 1u);
  EXPECT_EQ(thread(s, {1, 3}), s);
  EXPECT_TRUE(thread(s, {}).empty());
  EXPECT_THROW(thread(s, {2}), NotInitial);
}

TEST(Arena, AxiomsOnConstructedGames) {
  for (GameExpr g : {g_nat(), g_limp(g_nat(), g_nat()), g_imp(g_imp(g_nat(), g_nat()), g_nat()),
                     g_tensor(g_nat(), g_one()), g_prod(g_nat(), g_nat()), g_sbang(g_nat())}) {
    Arena ar = arena_of(g);
    std::vector<Move> frontier = ar->initial(3);
    for (const Move& m : frontier) EXPECT_TRUE(m.op == Op::O && m.qa == QA::Q);
    for (int depth = 0; depth < 5 && !frontier.empty(); ++depth) {
      std::vector<Move> next;
      for (const Move& m : frontier)
        for (const Move& n : ar->enabled_by(m, 3)) {
          EXPECT_NE(m.op, n.op) << game_text(g);
          if (n.qa == QA::A) EXPECT_EQ(m.qa, QA::Q);
          next.push_back(n);
        }
      frontier = next;
    }
  }
}

TEST(Tags, TextRoundTrip) {
  for (const char* s : {"q", "5", "<a,b>", "inl(inr(exp(3,q)))", "real(12,inl(q))"}) {
    auto t = parse_tag(s);
    ASSERT_TRUE(t) << s;
    EXPECT_EQ(tag_text(*t), s);
    EXPECT_EQ(tag_decode(tag_code(*t)), *t);
  }
}
